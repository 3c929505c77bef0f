"""
测地线横向涨落的尾概率：中点 Mid_{0,n} 与点到线端点 End_{0,n}
"""
import logging
import math
from typing import Optional

import numpy as np

from core.distributions import WeightDistribution, diagonal_shape
from core.exceptions import ParityError, RangeError
from core.lpp import floored_target
from .corridor import Corridor
from .kernels import endpoint_batch, midpoint_batch
from .pool import ReplicatePool
from .results import RateEstimate, summarize_events
from .sampling import TiltPlan, check_samples, direct_plan, geodesic_tilt, seed_key, tilted_plan

logger = logging.getLogger(__name__)


def _check_geodesic_args(t: float, n: int, n_samples: int):
    check_samples(n_samples)
    if n < 2 or n % 2:
        raise ParityError(f"geodesic events need an even n >= 2, got {n}")
    if not 0 < t <= 0.5 + 1e-12:
        raise RangeError(f"direction t must satisfy 0 < t <= 1/2, got {t}")


def _plan(dist: WeightDistribution, t: float, n: int, method: str, tilt: Optional[float],
          corridor: Optional[Corridor], mu0: Optional[float], halfwidth: Optional[int],
          endpoint: bool) -> TiltPlan:
    if method == "direct":
        return direct_plan(dist, n, n)
    if method != "tilted":
        raise RangeError(f"unknown sampling method {method!r}")
    if corridor is None:
        corridor = Corridor.through(t, n, halfwidth=halfwidth, to_corner=not endpoint)
    corridor.check(t, n)
    mask = corridor.tilt_mask(n, n, triangle=endpoint)
    if tilt is None:
        sites = int(np.count_nonzero(mask))
        tilt = geodesic_tilt(dist, t, n, diagonal_shape(dist, mu0), sites, legs=1 if endpoint else 2)
        logger.debug(f"Geodesic tilt lambda={tilt:.6g} over {sites} sites")
    return tilted_plan(dist, tilt, mask, corridor.halfwidth)


def threshold(t: float, n: int) -> int:
    """⌊n/2 + tn⌋"""
    return floored_target(n, t)[0]


def estimate_midpoint_tail(dist: WeightDistribution, t: float, n: int, n_samples: int, seed: int,
                           method: str = "direct", tilt: Optional[float] = None,
                           corridor: Optional[Corridor] = None, mu0: Optional[float] = None,
                           halfwidth: Optional[int] = None,
                           pool: Optional[ReplicatePool] = None) -> RateEstimate:
    """P(Mid·e1 ≥ ⌊n/2+tn⌋)；同一批重复还记录 Mid·e1 = ⌊n/2+tn⌋ 与位移 D ≥ ⌈tn⌉"""
    _check_geodesic_args(t, n, n_samples)
    plan = _plan(dist, t, n, method, tilt, corridor, mu0, halfwidth, endpoint=False)
    pool = pool or ReplicatePool()
    key = seed_key(seed)

    def kernel(start: int, stop: int):
        size = stop - start
        mids = np.empty(size, dtype=np.int64)
        disps = np.empty(size, dtype=np.int64)
        sums = np.empty(size, dtype=np.float64)
        ties = np.empty(size, dtype=np.bool_)
        midpoint_batch(dist.code, dist.shape, key, start, stop, n, plan.rates, plan.mask, mids, disps, sums, ties)
        return mids, disps, sums, ties

    mids, disps, sums, ties = pool.run(kernel, int(n_samples), desc=f"midpoint n={n}")
    tied = int(np.count_nonzero(ties))
    if tied:
        logger.warning(f"{tied} replicates hit exact ties; rightmost geodesic used")

    a = threshold(t, n)
    displacement = math.ceil(t * n - 1e-9)
    estimate = summarize_events(mids >= a, plan.log_weights(sums), t=t, r=None, n=n, method=plan.method,
                                point=mids == a, displacement=disps >= displacement)
    logger.info(f"midpoint t={t} n={n} ({plan.method.label}): p_hat={estimate.p_hat:.6g} "
                f"p_point={estimate.p_point:.6g} p_disp={estimate.p_displacement:.6g}")
    return estimate


def estimate_endpoint_tail(dist: WeightDistribution, t: float, n: int, n_samples: int, seed: int,
                           method: str = "direct", tilt: Optional[float] = None,
                           corridor: Optional[Corridor] = None, mu0: Optional[float] = None,
                           halfwidth: Optional[int] = None,
                           pool: Optional[ReplicatePool] = None) -> RateEstimate:
    """P(End·e1 ≥ ⌊n/2+tn⌋)，End 为点到线问题的 argmax（并列取较大的x）"""
    _check_geodesic_args(t, n, n_samples)
    plan = _plan(dist, t, n, method, tilt, corridor, mu0, halfwidth, endpoint=True)
    pool = pool or ReplicatePool()
    key = seed_key(seed)

    def kernel(start: int, stop: int):
        size = stop - start
        ends = np.empty(size, dtype=np.int64)
        values = np.empty(size, dtype=np.float64)
        sums = np.empty(size, dtype=np.float64)
        endpoint_batch(dist.code, dist.shape, key, start, stop, n, plan.rates, plan.mask, ends, values, sums)
        return ends, values, sums

    ends, _, sums = pool.run(kernel, int(n_samples), desc=f"endpoint n={n}")
    a = threshold(t, n)
    estimate = summarize_events(ends >= a, plan.log_weights(sums), t=t, r=None, n=n, method=plan.method,
                                point=ends == a)
    logger.info(f"endpoint t={t} n={n} ({plan.method.label}): p_hat={estimate.p_hat:.6g}")
    return estimate
