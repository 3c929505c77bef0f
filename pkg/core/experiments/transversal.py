"""
测地线横向涨落的实验族：midpoint、endpoint、corner、identity
"""
import time
from typing import List

from core.distributions import corner_rate_theoretical
from core.estimators import (
    ReplicatePool,
    estimate_endpoint_tail,
    estimate_midpoint_tail,
    midpoint_rate_identity,
)
from core.exceptions import UnsupportedLawError
from data_models import ExperimentSpec, ResultRow
from .base_experiment import BaseExperiment
from .rates import corridor_for

CORNER_T = 0.5


class MidpointExperiment(BaseExperiment):

    @property
    def name(self) -> str:
        return "midpoint"

    @property
    def description(self) -> str:
        return "P(Mid.e1 >= floor(n/2+tn)) with exact-location and displacement counters"

    def direction(self, spec: ExperimentSpec) -> float:
        return spec.t

    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        t = self.direction(spec)
        rows = []
        for n in spec.scales:
            started = time.perf_counter()
            corridor = corridor_for(spec, t, n, to_corner=True) if spec.method == "tilted" else None
            estimate = estimate_midpoint_tail(spec.weight_distribution, t, n, spec.samples, spec.seed,
                                              method=spec.method, tilt=spec.tilt, corridor=corridor,
                                              mu0=spec.mu0, pool=pool)
            rows.append(self.estimate_row(spec, estimate, started,
                                          note=f"p_displacement={estimate.p_displacement!r}"))
        return rows


class CornerExperiment(MidpointExperiment):
    """t = 1/2 时中点事件就是测地线走角路径 (0,0)→(n,0)→(n,n)"""

    @property
    def name(self) -> str:
        return "corner"

    @property
    def description(self) -> str:
        return "Probability that the geodesic is the corner path, rate 2 - 2 log 2 for exp:1"

    def direction(self, spec: ExperimentSpec) -> float:
        return CORNER_T

    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        rows = super().run(spec, pool)
        try:
            target = corner_rate_theoretical(spec.weight_distribution)
        except UnsupportedLawError:
            return rows
        return [row.model_copy(update={"note": f"{row.note}; target_rate={target!r}"}) for row in rows]


class EndpointExperiment(BaseExperiment):

    @property
    def name(self) -> str:
        return "endpoint"

    @property
    def description(self) -> str:
        return "P(End.e1 >= floor(n/2+tn)) for the point-to-line argmax"

    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        rows = []
        for n in spec.scales:
            started = time.perf_counter()
            corridor = corridor_for(spec, spec.t, n) if spec.method == "tilted" else None
            estimate = estimate_endpoint_tail(spec.weight_distribution, spec.t, n, spec.samples, spec.seed,
                                              method=spec.method, tilt=spec.tilt, corridor=corridor,
                                              mu0=spec.mu0, pool=pool)
            rows.append(self.estimate_row(spec, estimate, started))
        return rows


class IdentityExperiment(BaseExperiment):
    """每个 n 两行：中点一侧（A = fekete_bound/2）与通过值一侧（B = fekete_bound）"""

    @property
    def name(self) -> str:
        return "identity"

    @property
    def description(self) -> str:
        return "Midpoint tail rate against twice the passage-value rate at level mu0"

    def run(self, spec: ExperimentSpec, pool: ReplicatePool) -> List[ResultRow]:
        rows = []
        for n in spec.scales:
            started = time.perf_counter()
            report = midpoint_rate_identity(spec.weight_distribution, spec.t, n, spec.samples, spec.seed,
                                            mu0=spec.mu0, halfwidth=spec.halfwidth, pool=pool)
            (a_low, a_high), (b_low, b_high) = report.a_interval, report.b_interval
            summary = (f"A={report.a!r}; A_ci={a_low!r}..{a_high!r}; B={report.b!r}; B_ci={b_low!r}..{b_high!r}; "
                       f"relative_gap={report.relative_gap!r}")
            if report.closed_form is not None:
                summary += f"; target={report.closed_form!r}"
            rows.append(self.estimate_row(spec, report.midpoint, started, note=f"side=midpoint; {summary}"))
            rows.append(self.estimate_row(spec, report.passage, started, note=f"side=passage; {summary}"))
        return rows
