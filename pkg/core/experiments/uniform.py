"""
uniform-walk：均匀上右游走中点分布的精确值，作为测地线中点的对照基线
"""
import math
from typing import List

from core.estimators import ReplicatePool
from core.oracle import uniform_corner_rate, uniform_midpoint_prob
from data_models import ExperimentSpec, ResultRow
from .base_experiment import BaseExperiment

UNIFORM_CORNER_LIMIT = 2.0 * math.log(2.0)


class UniformWalkExperiment(BaseExperiment):
    """给出 k 时输出 P(offset = k)；否则输出角路径速率 (1/n)·log C(2n,n)"""

    @property
    def name(self) -> str:
        return "uniform-walk"

    @property
    def description(self) -> str:
        return "Exact midpoint law of the uniform up-right walk"

    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        rows = []
        for n in spec.scales:
            if spec.k is not None:
                p = uniform_midpoint_prob(n, spec.k)
                rows.append(self.base_row(spec, n=n, method="exact", p_hat=p,
                                          t=spec.k / n, note=f"k={spec.k}"))
            else:
                rate = uniform_corner_rate(n)
                rows.append(self.base_row(spec, n=n, method="exact", p_hat=math.exp(-n * rate),
                                          t=0.5, fekete_bound=rate,
                                          note=f"target_rate={UNIFORM_CORNER_LIMIT!r}"))
        return rows
