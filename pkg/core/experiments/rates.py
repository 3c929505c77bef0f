"""
通过值尾概率相关的实验族：shape、tail、fekete、monotone、convexity、left-tail
"""
import math
import time
from typing import List, Optional

from core.distributions import cramer_rate
from core.estimators import (
    Corridor,
    ReplicatePool,
    estimate_left_tail,
    estimate_shape,
    estimate_tail,
    estimate_tail_tilted,
    fekete_curve,
    left_tail_scan,
    verify_convexity,
    verify_monotone_in_t,
)
from core.oracle import corner_passage_tail
from data_models import ExperimentSpec, ResultRow
from .base_experiment import BaseExperiment


def corridor_for(spec: ExperimentSpec, t: float, n: int, to_corner: bool = False) -> Corridor:
    return Corridor.through(t, n, halfwidth=spec.halfwidth, spacing=spec.spacing,
                            offset=spec.offset, to_corner=to_corner)


def corner_note(spec: ExperimentSpec, t: float, r: float, n: int) -> Optional[str]:
    """角方向上通过值是独立同分布和，附上精确尾概率与有限 n 界"""
    if abs(abs(t) - 0.5) > 1e-12:
        return None
    dist = spec.weight_distribution
    exact = corner_passage_tail(dist, n, r)
    rate = cramer_rate(dist, r) if r > 0 else 0.0
    return f"exact={exact!r}; bound=exp(-n*J)={math.exp(-n * rate)!r}"


class ShapeExperiment(BaseExperiment):

    @property
    def name(self) -> str:
        return "shape"

    @property
    def description(self) -> str:
        return "Mean of G/n in direction t with standard error"

    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        rows = []
        for n in spec.scales:
            started = time.perf_counter()
            estimate = estimate_shape(spec.weight_distribution, spec.t, n, spec.samples, spec.seed, pool)
            rows.append(self.shape_row(spec, estimate, started))
        return rows


class TailExperiment(BaseExperiment):

    @property
    def name(self) -> str:
        return "tail"

    @property
    def description(self) -> str:
        return "P(G >= rn) in direction t, direct or corridor-tilted"

    def estimate(self, spec: ExperimentSpec, n: int, pool: ReplicatePool):
        dist = spec.weight_distribution
        if spec.method == "tilted":
            corridor = corridor_for(spec, spec.t, n)
            return estimate_tail_tilted(dist, spec.t, spec.r, n, spec.samples, spec.tilt, corridor,
                                        spec.seed, pool)
        return estimate_tail(dist, spec.t, spec.r, n, spec.samples, spec.seed, pool)

    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        rows = []
        for n in spec.scales:
            started = time.perf_counter()
            estimate = self.estimate(spec, n, pool)
            rows.append(self.estimate_row(spec, estimate, started, note=corner_note(spec, spec.t, spec.r, n)))
        return rows


class FeketeExperiment(BaseExperiment):
    """逐个 n 输出有限 n 的 Fekete 上界"""

    @property
    def name(self) -> str:
        return "fekete"

    @property
    def description(self) -> str:
        return "Finite-n upper bounds -log(p)/n on the rate J_t(r) over an ascending n_list"

    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        started = time.perf_counter()
        estimates = fekete_curve(spec.weight_distribution, spec.t, spec.r, spec.scales, spec.samples, spec.seed,
                                 method=spec.method, tilt=spec.tilt, halfwidth=spec.halfwidth, pool=pool)
        return [self.estimate_row(spec, estimate, started, note=corner_note(spec, spec.t, spec.r, estimate.n))
                for estimate in estimates]


class MonotoneExperiment(BaseExperiment):

    @property
    def name(self) -> str:
        return "monotone"

    @property
    def description(self) -> str:
        return "Monotonicity of the rate J_t(r) in t within two combined standard errors"

    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        rows = []
        for n in spec.scales:
            started = time.perf_counter()
            report = verify_monotone_in_t(spec.weight_distribution, spec.r, n, spec.t_list, spec.samples,
                                          spec.seed, method=spec.method, halfwidth=spec.halfwidth, pool=pool)
            violating = {t for pair in report.violations for t in pair}
            for estimate in report.estimates:
                if estimate.zero_hit:
                    status = "zero-hit"
                else:
                    status = "fail" if estimate.t in violating else "pass"
                rows.append(self.estimate_row(spec, estimate, started, status=status))
        return rows


class ConvexityExperiment(BaseExperiment):
    """(t, r) 网格逐格估计，违反凸性的三点中间格记为 fail"""

    @property
    def name(self) -> str:
        return "convexity"

    @property
    def description(self) -> str:
        return "Joint convexity of the rate J_t(r) over a (t, r) grid within two combined standard errors"

    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        rows = []
        for n in spec.scales:
            started = time.perf_counter()
            report = verify_convexity(spec.weight_distribution, n, spec.t_list, spec.r_list, spec.samples,
                                      spec.seed, method=spec.method, halfwidth=spec.halfwidth, pool=pool)
            middles = {middle: (first, last) for first, middle, last in report.violations}
            for estimate in report.rows:
                point = (estimate.t, estimate.r)
                if estimate.zero_hit:
                    rows.append(self.estimate_row(spec, estimate, started, status="zero-hit"))
                elif point in middles:
                    first, last = middles[point]
                    rows.append(self.estimate_row(spec, estimate, started, status="fail",
                                                  note=f"chord={first!r}..{last!r}"))
                else:
                    rows.append(self.estimate_row(spec, estimate, started, status="pass"))
        return rows


class LeftTailExperiment(BaseExperiment):

    @property
    def name(self) -> str:
        return "left-tail"

    @property
    def description(self) -> str:
        return "P(G <= (mu0 - eps) n) on the diagonal by down-tilted sampling"

    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        dist = spec.weight_distribution
        started = time.perf_counter()
        if len(spec.scales) == 1:
            estimate = estimate_left_tail(dist, spec.eps, spec.scales[0], spec.samples, spec.seed,
                                          mu0=spec.mu0, tilt=spec.tilt, pool=pool)
            return [self.estimate_row(spec, estimate, started, note=f"eps={spec.eps!r}")]

        report = left_tail_scan(dist, spec.eps, spec.scales, spec.samples, spec.seed, mu0=spec.mu0,
                                tilt=spec.tilt, pool=pool)
        flag = "true" if report.superexponential else "false"
        return [self.estimate_row(spec, estimate, started, note=f"eps={spec.eps!r}; superexponential={flag}")
                for estimate in report.estimates]
