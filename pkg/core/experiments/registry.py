"""
实验注册器
"""
import logging
from typing import Any, Dict, List, Optional

from core.estimators import ReplicatePool
from data_models import ExperimentSpec
from .base_experiment import BaseExperiment
from .result import ExperimentResult

logger = logging.getLogger(__name__)


class ExperimentRegistry:
    """实验注册器 - 按名称管理所有实验族"""

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self._experiments: Dict[str, BaseExperiment] = {}
        self._load_experiments()

    def _load_experiments(self):
        """加载所有实验族"""
        from .lattice import VerifyExperiment
        from .rates import (ConvexityExperiment, FeketeExperiment, LeftTailExperiment, MonotoneExperiment,
                            ShapeExperiment, TailExperiment)
        from .transversal import CornerExperiment, EndpointExperiment, IdentityExperiment, MidpointExperiment
        from .uniform import UniformWalkExperiment

        for experiment in (
            VerifyExperiment(), ShapeExperiment(), TailExperiment(), FeketeExperiment(),
            MidpointExperiment(), EndpointExperiment(), CornerExperiment(), IdentityExperiment(),
            LeftTailExperiment(), UniformWalkExperiment(), MonotoneExperiment(),
            ConvexityExperiment(),
        ):
            self.register_experiment(experiment)
        logger.debug(f"Loaded {len(self._experiments)} experiments: {list(self._experiments)}")

    def register_experiment(self, experiment: BaseExperiment):
        """注册实验"""
        self._experiments[experiment.name] = experiment
        logger.debug(f"Registered experiment: {experiment.name}")

    def get_experiment_by_name(self, name: str) -> Optional[BaseExperiment]:
        """根据名称获取实验实例"""
        return self._experiments.get(name)

    def get_available_experiments(self) -> List[Dict[str, Any]]:
        return [experiment.get_schema() for experiment in self._experiments.values()]

    def run(self, spec: ExperimentSpec, pool: Optional[ReplicatePool] = None) -> ExperimentResult:
        """按声明分派到对应实验族"""
        experiment = self.get_experiment_by_name(spec.experiment)
        if experiment is None:
            return ExperimentResult.error_result(f"Unknown experiment: {spec.experiment}",
                                                 error_code="SPEC_VALIDATION_ERROR",
                                                 experiment_name=spec.experiment)
        self.logger.info(f"Running {spec.experiment} on {spec.distribution} (seed={spec.seed})")
        return experiment.execute(spec, pool)


# 全局注册器实例
_registry_instance: Optional[ExperimentRegistry] = None


def get_experiment_registry() -> ExperimentRegistry:
    """获取实验注册器单例"""
    global _registry_instance
    if _registry_instance is None:
        _registry_instance = ExperimentRegistry()
    return _registry_instance


def run_experiment(spec: ExperimentSpec, pool: Optional[ReplicatePool] = None) -> ExperimentResult:
    return get_experiment_registry().run(spec, pool)
