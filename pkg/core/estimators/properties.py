"""
结构性质的经验验证：t 方向单调性、(t, r) 联合凸性、左尾超指数衰减与中点速率恒等式
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.distributions import WeightDistribution, cramer_rate, diagonal_shape, shape_function, solve_tilt
from core.exceptions import RangeError, UnsupportedLawError
from .corridor import Corridor
from .geodesic import estimate_midpoint_tail
from .pool import ReplicatePool
from .results import RateEstimate, summarize_events
from .sampling import check_samples, direct_plan, direction_target, tilted_plan
from .tail import check_ascending, estimate_tail, estimate_tail_tilted, sample_passage_values

logger = logging.getLogger(__name__)

SIGMA_TOLERANCE = 2.0


def combined_std_err(first: RateEstimate, second: RateEstimate) -> float:
    return math.hypot(first.fekete_std_err, second.fekete_std_err)


@dataclass
class MonotonicityReport:
    """J_t(r) 关于 t 单调不减的逐对检查"""
    r: float
    n: int
    estimates: List[RateEstimate]
    excluded: List[float] = field(default_factory=list)
    violations: List[Tuple[float, float]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class LeftTailReport:
    """P(G ≤ (μ0-ε)n) 的 -log p̂/n 序列；严格递增且间隔超过合成标准误即为超指数衰减的迹象"""
    eps: float
    mu0: float
    estimates: List[RateEstimate]
    superexponential: bool = False

    @property
    def rates(self) -> List[float]:
        return [estimate.fekete_bound for estimate in self.estimates]

    @property
    def zero_hit(self) -> List[int]:
        return [estimate.n for estimate in self.estimates if estimate.zero_hit]


@dataclass
class IdentityReport:
    """A = -log p̂_mid/(2n) 与 B = 通过值在 r=μ0 处的有限 n 界，二者都逼近 J_t(μ0)"""
    t: float
    n: int
    mu0: float
    midpoint: RateEstimate
    passage: RateEstimate
    closed_form: Optional[float] = None

    @property
    def a(self) -> float:
        return self.midpoint.fekete_bound / 2.0

    @property
    def b(self) -> float:
        return self.passage.fekete_bound

    @property
    def a_interval(self) -> Tuple[float, float]:
        low, high = self.midpoint.fekete_interval
        return (low / 2.0, high / 2.0)

    @property
    def b_interval(self) -> Tuple[float, float]:
        return self.passage.fekete_interval

    @property
    def relative_gap(self) -> float:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            return math.inf
        scale = max(self.a, self.b)
        return abs(self.a - self.b) / scale if scale > 0 else 0.0


def verify_monotone_in_t(dist: WeightDistribution, r: float, n: int, t_list: Sequence[float],
                         per_t_samples: int, seed: int, method: str = "direct",
                         halfwidth: Optional[int] = None,
                         pool: Optional[ReplicatePool] = None) -> MonotonicityReport:
    """逐个 t 估计 Fekete 界，相邻一对下降超过 2 倍合成标准误即判为违反；零命中的 t 不参与比较"""
    check_ascending(t_list, "t_list")
    if t_list[0] < 0 or t_list[-1] > 0.5:
        raise RangeError(f"t_list must lie in [0, 1/2], got {list(t_list)}")

    estimates = []
    for t in t_list:
        if method == "tilted":
            corridor = Corridor.through(t, n, halfwidth=halfwidth, to_corner=False)
            estimates.append(estimate_tail_tilted(dist, t, r, n, per_t_samples, None, corridor, seed, pool))
        else:
            estimates.append(estimate_tail(dist, t, r, n, per_t_samples, seed, pool))

    report = MonotonicityReport(r=r, n=n, estimates=estimates)
    compared = []
    for estimate in estimates:
        if estimate.zero_hit:
            report.excluded.append(estimate.t)
            logger.warning(f"Zero hits at t={estimate.t}: excluded from monotonicity check")
        else:
            compared.append(estimate)
    for left, right in zip(compared[:-1], compared[1:]):
        drop = left.fekete_bound - right.fekete_bound
        if drop > SIGMA_TOLERANCE * combined_std_err(left, right):
            report.violations.append((left.t, right.t))
            logger.warning(f"Monotonicity violated between t={left.t} and t={right.t}: drop {drop:.4g}")
    return report


GridPoint = Tuple[float, float]


@dataclass
class ConvexityReport:
    """(t, r) 网格上 Fekete 界的凸性检查：共线三点的中间一点不得高出弦超过 2 倍合成标准误"""
    n: int
    t_list: List[float]
    r_list: List[float]
    estimates: Dict[GridPoint, RateEstimate]
    excluded: List[GridPoint] = field(default_factory=list)
    violations: List[Tuple[GridPoint, GridPoint, GridPoint]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def rows(self) -> List[RateEstimate]:
        return [self.estimates[(t, r)] for t in self.t_list for r in self.r_list]

    def check(self) -> 'ConvexityReport':
        self.excluded = [point for point in self.estimates if self.estimates[point].zero_hit]
        self.violations = []
        for a, b, c, w in grid_triples(self.t_list, self.r_list):
            if a in self.excluded or b in self.excluded or c in self.excluded:
                continue
            first, middle, last = self.estimates[a], self.estimates[b], self.estimates[c]
            excess = middle.fekete_bound - (w * first.fekete_bound + (1.0 - w) * last.fekete_bound)
            std_err = math.sqrt((w * first.fekete_std_err) ** 2 + middle.fekete_std_err ** 2
                                + ((1.0 - w) * last.fekete_std_err) ** 2)
            if excess > SIGMA_TOLERANCE * std_err:
                self.violations.append((a, b, c))
                logger.warning(f"Convexity violated at (t, r)={b} between {a} and {c}: excess {excess:.4g}")
        return self


Triple = Tuple[GridPoint, GridPoint, GridPoint, float]


def grid_triples(t_list: Sequence[float], r_list: Sequence[float]) -> Iterator[Triple]:
    """网格上相邻的共线三点 (a, b, c, w)，b = w·a + (1-w)·c；沿 r、沿 t 与两条对角线"""
    for di, dj in ((0, 1), (1, 0), (1, 1), (1, -1)):
        for i in range(len(t_list)):
            for j in range(len(r_list)):
                if not (0 <= i - di and i + di < len(t_list) and 0 <= j - dj < len(r_list)
                        and 0 <= j + dj < len(r_list)):
                    continue
                a = (t_list[i - di], r_list[j - dj])
                b = (t_list[i], r_list[j])
                c = (t_list[i + di], r_list[j + dj])
                weights = [(c[axis] - b[axis]) / (c[axis] - a[axis]) for axis in (0, 1) if c[axis] != a[axis]]
                if max(weights) - min(weights) <= 1e-9:
                    yield a, b, c, weights[0]


def verify_convexity(dist: WeightDistribution, n: int, t_list: Sequence[float], r_list: Sequence[float],
                     per_cell_samples: int, seed: int, method: str = "direct",
                     halfwidth: Optional[int] = None,
                     pool: Optional[ReplicatePool] = None) -> ConvexityReport:
    """逐格估计 J_t(r) 的 Fekete 界并检查联合凸性；零命中的格点不参与比较"""
    check_ascending(t_list, "t_list")
    check_ascending(r_list, "r_list")
    if t_list[0] < -0.5 or t_list[-1] > 0.5:
        raise RangeError(f"t_list must lie in [-1/2, 1/2], got {list(t_list)}")
    if r_list[0] < 0:
        raise RangeError(f"r_list must be non-negative, got {list(r_list)}")

    estimates = {}
    for t in t_list:
        corridor = Corridor.through(t, n, halfwidth=halfwidth, to_corner=False) if method == "tilted" else None
        for r in r_list:
            if corridor is not None:
                estimates[(t, r)] = estimate_tail_tilted(dist, t, r, n, per_cell_samples, None, corridor, seed, pool)
            else:
                estimates[(t, r)] = estimate_tail(dist, t, r, n, per_cell_samples, seed, pool)
    report = ConvexityReport(n=n, t_list=list(t_list), r_list=list(r_list), estimates=estimates).check()
    if report.excluded:
        logger.warning(f"Zero hits at {report.excluded}: excluded from convexity check")
    return report


def left_tail_tilt(dist: WeightDistribution, eps: float, mu0: float) -> float:
    """整个矩形向下倾斜，使单点均值变为 mean·(μ0-ε)/μ0"""
    if eps < 0 or eps >= mu0:
        raise RangeError(f"eps must satisfy 0 <= eps < mu0={mu0}, got {eps}")
    return solve_tilt(dist, dist.mean * (mu0 - eps) / mu0)


def estimate_left_tail(dist: WeightDistribution, eps: float, n: int, n_samples: int, seed: int,
                       mu0: Optional[float] = None, tilt: Optional[float] = None,
                       pool: Optional[ReplicatePool] = None) -> RateEstimate:
    """P(G_{0,(n/2,n/2)} ≤ (μ0-ε)n)，整块向下倾斜的重要性抽样"""
    check_samples(n_samples)
    mu0 = diagonal_shape(dist, mu0)
    if tilt is None:
        tilt = left_tail_tilt(dist, eps, mu0)
    target = direction_target(n, 0.0)
    mask = np.ones((target[0] + 1, target[1] + 1), dtype=np.bool_)
    mask[0, 0] = False
    plan = tilted_plan(dist, tilt, mask, None) if tilt != 0.0 else direct_plan(dist, *target)
    values, sums = sample_passage_values(dist, target, plan, n_samples, seed, pool, desc=f"left tail n={n}")
    level = (mu0 - eps) * n
    estimate = summarize_events(values <= level, plan.log_weights(sums), t=0.0, r=mu0 - eps, n=n,
                                method=plan.method)
    logger.info(f"left tail eps={eps} n={n} lambda={tilt:.4g}: p_hat={estimate.p_hat:.6g}")
    return estimate


def left_tail_scan(dist: WeightDistribution, eps: float, n_list: Sequence[int], per_n_samples: int,
                   seed: int, mu0: Optional[float] = None, tilt: Optional[float] = None,
                   pool: Optional[ReplicatePool] = None) -> LeftTailReport:
    """tilt 为空时按 ε 取整块倾斜，0 即直接抽样"""
    check_ascending(n_list, "n_list")
    mu0 = diagonal_shape(dist, mu0)
    estimates = [estimate_left_tail(dist, eps, n, per_n_samples, seed, mu0=mu0, tilt=tilt, pool=pool)
                 for n in n_list]
    report = LeftTailReport(eps=eps, mu0=mu0, estimates=estimates)
    if report.zero_hit:
        logger.warning(f"Zero hits at n={report.zero_hit}: no superexponential claim")
        return report
    report.superexponential = all(
        right.fekete_bound - left.fekete_bound > combined_std_err(left, right)
        for left, right in zip(estimates[:-1], estimates[1:])
    )
    return report


def midpoint_rate_identity(dist: WeightDistribution, t: float, n: int, budget: int, seed: int,
                           mu0: Optional[float] = None, halfwidth: Optional[int] = None,
                           pool: Optional[ReplicatePool] = None) -> IdentityReport:
    """中点尾的速率应为通过值尾在 r=μ0 处速率的两倍；每一侧各用 budget 个倾斜重复"""
    if not 0 < t <= 0.5 + 1e-12:
        raise RangeError(f"direction t must satisfy 0 < t <= 1/2, got {t}")
    mu0 = diagonal_shape(dist, mu0)
    try:
        mu_t = dist.mean if abs(t - 0.5) <= 1e-12 else shape_function(dist, t)
    except UnsupportedLawError:
        mu_t = None
        logger.warning(f"No closed-form mu_t for {dist.descriptor}; mu_t < mu0 not checked")
    if mu_t is not None and not mu_t < mu0:
        raise RangeError(f"rate identity needs mu_t < mu0, got mu_t={mu_t:.6g}, mu0={mu0:.6g}")

    midpoint = estimate_midpoint_tail(dist, t, n, budget, seed, method="tilted", mu0=mu0,
                                      halfwidth=halfwidth, pool=pool)
    corridor = Corridor.through(t, n, halfwidth=halfwidth, to_corner=False)
    passage = estimate_tail_tilted(dist, t, mu0, n, budget, None, corridor, seed, pool)
    closed_form = cramer_rate(dist, mu0) if abs(t - 0.5) <= 1e-12 else None
    report = IdentityReport(t=t, n=n, mu0=mu0, midpoint=midpoint, passage=passage, closed_form=closed_form)
    logger.info(f"identity t={t} n={n}: A={report.a:.6g} B={report.b:.6g} gap={report.relative_gap:.3g}")
    return report
