"""
通过值的右尾概率、形状函数与Fekete上界曲线
"""
import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from core.distributions import WeightDistribution
from core.exceptions import RangeError
from .corridor import Corridor
from .kernels import passage_batch
from .pool import ReplicatePool
from .results import RateEstimate, ShapeEstimate, summarize_events
from .sampling import TiltPlan, check_samples, default_tilt, direct_plan, direction_target, seed_key, tilted_plan

logger = logging.getLogger(__name__)


def sample_passage_values(dist: WeightDistribution, target, plan: TiltPlan, n_samples: int,
                          seed: int, pool: Optional[ReplicatePool] = None, desc: str = "passage"):
    """返回 (G 值数组, 倾斜区权重和数组)"""
    pool = pool or ReplicatePool()
    a, b = target
    key = seed_key(seed)

    def kernel(start: int, stop: int):
        values = np.empty(stop - start, dtype=np.float64)
        sums = np.empty(stop - start, dtype=np.float64)
        passage_batch(dist.code, dist.shape, key, start, stop, a, b, plan.rates, plan.mask, values, sums)
        return values, sums

    return pool.run(kernel, int(n_samples), desc)


def estimate_tail(dist: WeightDistribution, t: float, r: float, n: int, n_samples: int, seed: int,
                  pool: Optional[ReplicatePool] = None) -> RateEstimate:
    """直接蒙特卡洛估计 P(G_{0,(⌊n/2+tn⌋,⌊n/2-tn⌋)} ≥ rn)，Wilson区间"""
    check_samples(n_samples)
    if r < 0:
        raise RangeError(f"level r must be non-negative, got {r}")
    target = direction_target(n, t)
    plan = direct_plan(dist, *target)
    values, _ = sample_passage_values(dist, target, plan, n_samples, seed, pool, desc=f"tail n={n}")
    estimate = summarize_events(values >= r * n, None, t=t, r=r, n=n, method=plan.method)
    logger.info(f"tail t={t} r={r} n={n}: p_hat={estimate.p_hat:.6g} "
                f"[{estimate.ci_low:.3g}, {estimate.ci_high:.3g}] hits={estimate.hits}")
    return estimate


def estimate_tail_tilted(dist: WeightDistribution, t: float, r: float, n: int, n_samples: int,
                         tilt: Optional[float], corridor: Optional[Corridor], seed: int,
                         pool: Optional[ReplicatePool] = None) -> RateEstimate:
    """走廊内指数倾斜的重要性抽样；逐重复乘以似然比 exp(-λS + m·cgf(λ))"""
    check_samples(n_samples)
    if r < 0:
        raise RangeError(f"level r must be non-negative, got {r}")
    target = direction_target(n, t)
    if tilt is None:
        tilt = default_tilt(dist, t, r)
    if corridor is None:
        corridor = Corridor.through(t, n, to_corner=False)
    corridor.check(t, n)

    mask = corridor.tilt_mask(*target)
    plan = tilted_plan(dist, tilt, mask, corridor.halfwidth)
    values, sums = sample_passage_values(dist, target, plan, n_samples, seed, pool, desc=f"tilted tail n={n}")
    estimate = summarize_events(values >= r * n, plan.log_weights(sums), t=t, r=r, n=n, method=plan.method)
    logger.info(f"tilted tail t={t} r={r} n={n} lambda={tilt:.4g}: p_hat={estimate.p_hat:.6g} "
                f"[{estimate.ci_low:.3g}, {estimate.ci_high:.3g}]")
    return estimate


def estimate_shape(dist: WeightDistribution, t: float, n: int, n_samples: int, seed: int,
                   pool: Optional[ReplicatePool] = None) -> ShapeEstimate:
    """G_{0,(⌊n/2+tn⌋,⌊n/2-tn⌋)}/n 的样本均值与标准误"""
    check_samples(n_samples)
    target = direction_target(n, t)
    plan = direct_plan(dist, *target)
    values, _ = sample_passage_values(dist, target, plan, n_samples, seed, pool, desc=f"shape n={n}")
    scaled = values / n
    mean = math.fsum(scaled.tolist()) / scaled.size
    std = float(np.std(scaled, ddof=1)) if scaled.size > 1 else 0.0
    estimate = ShapeEstimate(t=t, n=n, n_samples=int(n_samples), mean=mean,
                             std_err=std / math.sqrt(scaled.size))
    logger.info(f"shape t={t} n={n}: mean={estimate.mean:.6g} +- {estimate.std_err:.3g}")
    return estimate


def check_ascending(values: Sequence, name: str):
    if len(values) == 0:
        raise RangeError(f"{name} must not be empty")
    if any(b <= a for a, b in zip(values[:-1], values[1:])):
        raise RangeError(f"{name} must be strictly ascending, got {list(values)}")


def fekete_curve(dist: WeightDistribution, t: float, r: float, n_list: Sequence[int], per_n_samples: int,
                 seed: int, method: str = "direct", tilt: Optional[float] = None,
                 halfwidth: Optional[int] = None, pool: Optional[ReplicatePool] = None) -> List[RateEstimate]:
    """每个 n 的 -log p̂/n 都是 J_t(r) 的有限 n 上界（次可加序列）"""
    check_ascending(n_list, "n_list")
    estimates = []
    for n in n_list:
        if method == "tilted":
            corridor = Corridor.through(t, n, halfwidth=halfwidth, to_corner=False)
            estimate = estimate_tail_tilted(dist, t, r, n, per_n_samples, tilt, corridor, seed, pool)
        else:
            estimate = estimate_tail(dist, t, r, n, per_n_samples, seed, pool)
        if estimate.zero_hit:
            logger.warning(f"Zero hits at n={n}: Fekete bound is infinite")
        estimates.append(estimate)
    return estimates
