"""
实验基类 - 定义统一的实验接口
"""
import logging
import time
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from config import Config
from core.estimators import RateEstimate, ReplicatePool, ShapeEstimate
from core.exceptions import LPPError
from data_models import ExperimentSpec, ResultRow
from .result import ExperimentResult

logger = logging.getLogger(__name__)


class BaseExperiment(ABC):
    """所有实验族的基类"""

    def __init__(self):
        self.logger = logging.getLogger(self.__class__.__name__)

    @property
    @abstractmethod
    def name(self) -> str:
        """实验族名称（即子命令名）"""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        """实验描述"""
        pass

    @abstractmethod
    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        """执行实验并返回结果行"""
        pass

    def get_schema(self) -> Dict[str, Any]:
        return {"name": self.name, "description": self.description}

    def execute(self, spec: ExperimentSpec, pool: Optional[ReplicatePool] = None) -> ExperimentResult:
        """执行实验；领域异常转为带错误码的失败结果"""
        pool = pool or ReplicatePool(workers=spec.workers)
        started = time.perf_counter()
        try:
            rows = self.run(spec, pool)
        except LPPError as e:
            self.logger.error(f"{self.name} failed: {e.message}")
            return ExperimentResult.error_result(e.message, error_code=e.error_code, experiment_name=self.name)
        elapsed = time.perf_counter() - started
        self.logger.info(f"{self.name} finished: {len(rows)} rows in {elapsed:.2f}s")
        return ExperimentResult.success_result(rows, experiment_name=self.name)

    # 结果行构造

    def base_row(self, spec: ExperimentSpec, started: Optional[float] = None, **values) -> ResultRow:
        """公共列；只有开启计时时才写 wall_time_s，保证默认输出与线程数无关"""
        wall_time = time.perf_counter() - started if spec.timing and started is not None else None
        return ResultRow(
            experiment=self.name,
            distribution=spec.distribution,
            seed=spec.seed,
            wall_time_s=wall_time,
            tool_version=Config.TOOL_VERSION,
            **values,
        )

    def estimate_row(self, spec: ExperimentSpec, estimate: RateEstimate, started: Optional[float] = None,
                     **values) -> ResultRow:
        fields = dict(
            t=estimate.t,
            r=estimate.r,
            n=estimate.n,
            n_samples=estimate.n_samples,
            method=estimate.method.label,
            p_hat=estimate.p_hat,
            ci_low=estimate.ci_low,
            ci_high=estimate.ci_high,
            fekete_bound=estimate.fekete_bound,
            std_err=estimate.std_err,
            p_point=estimate.p_point,
            status="zero-hit" if estimate.zero_hit else None,
        )
        fields.update(values)
        return self.base_row(spec, started, **fields)

    def shape_row(self, spec: ExperimentSpec, estimate: ShapeEstimate, started: Optional[float] = None) -> ResultRow:
        return self.base_row(spec, started, t=estimate.t, n=estimate.n, n_samples=estimate.n_samples,
                             method="direct", mean=estimate.mean, std_err=estimate.std_err)
