"""
verify：动态规划与暴力枚举逐位一致（值与最右测地线都必须相同）
"""
import time
from typing import List

import numpy as np

from config import Config
from core.distributions import WeightDistribution, field_seed, sample_many
from core.estimators import ReplicatePool
from core.exceptions import OracleSizeError
from core.lpp import WeightField, last_passage, sample_field
from core.oracle import brute_force_passage
from data_models import ExperimentSpec, ResultRow
from .base_experiment import BaseExperiment

DEFAULT_MAX_N = 7
DEFAULT_FIELDS = 500
TIE_FIELDS = 50
TIE_LEVELS = 3


def planted_tie_field(n: int, seed: int) -> WeightField:
    """取值 {0, 1, 2} 的整数权重场，大量路径并列"""
    draws = sample_many(WeightDistribution.exponential(), seed, (n + 1) * (n + 1))
    weights = np.minimum(np.floor(draws * 1.5), TIE_LEVELS - 1).reshape(n + 1, n + 1)
    return WeightField.from_weights(weights)


def agrees(field: WeightField, n: int) -> bool:
    result = last_passage(field, (0, 0), (n, n))
    value, path = brute_force_passage(field, n)
    return result.value == value and result.geodesic == path


class VerifyExperiment(BaseExperiment):
    """在 n = 1..max_n 的随机场与人为并列场上对照两种算法"""

    @property
    def name(self) -> str:
        return "verify"

    @property
    def description(self) -> str:
        return "DP last-passage values and rightmost geodesics against brute-force path enumeration"

    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        max_n = spec.max_n or DEFAULT_MAX_N
        if max_n > Config.ORACLE_MAX_N:
            raise OracleSizeError(f"max_n={max_n} exceeds oracle limit {Config.ORACLE_MAX_N}")
        fields = spec.fields or DEFAULT_FIELDS
        dist = spec.weight_distribution
        rows = []
        for n in range(1, max_n + 1):
            started = time.perf_counter()
            mismatches = sum(
                not agrees(sample_field(dist, n, n, field_seed(spec.seed, index)), n)
                for index in range(fields)
            )
            rows.append(self._row(spec, started, n, fields, mismatches, "random fields"))
            if mismatches:
                self.logger.error(f"DP and enumeration disagree on {mismatches}/{fields} fields at n={n}")

        started = time.perf_counter()
        tie_mismatches = 0
        for index in range(TIE_FIELDS):
            n = 1 + index % max_n
            tie_mismatches += not agrees(planted_tie_field(n, field_seed(spec.seed, fields + index)), n)
        rows.append(self._row(spec, started, max_n, TIE_FIELDS, tie_mismatches, "planted ties"))
        return rows

    def _row(self, spec: ExperimentSpec, started: float, n: int, fields: int, mismatches: int,
             kind: str) -> ResultRow:
        return self.base_row(spec, started, n=n, n_samples=fields, method="enumeration",
                             status="fail" if mismatches else "pass",
                             note=f"{kind}; mismatches={mismatches}")
