"""
Cramér速率函数与形状函数

角方向 t=1/2 只有一条路径，通过值是独立同分布和，因此该方向的速率函数
就是经典的Cramér速率函数，由cgf的Legendre-Fenchel变换给出。
"""
import logging
import math
from typing import Tuple

from scipy import optimize

from core.exceptions import DistributionDomainError, RangeError, UnsupportedLawError
from .weights import WeightDistribution, WeightKind

logger = logging.getLogger(__name__)

LAMBDA_TOL = 1e-12
MAX_EXPANSIONS = 1100


def _tilt_bracket(dist: WeightDistribution, x: float) -> Tuple[float, float]:
    """括住 cgf'(λ) = x 的根；cgf' 单调递增，在 λ→λ_max 时发散，在 λ→-∞ 时趋于0"""
    lam_max = dist.cgf_domain_sup
    if x > dist.mean:
        lo, hi = 0.0, 0.5 * lam_max
        for _ in range(MAX_EXPANSIONS):
            if dist.cgf_derivative(hi) >= x:
                return lo, hi
            lo, hi = hi, 0.5 * (hi + lam_max)
            if not hi < lam_max:
                break
    else:
        lo, hi = -1.0, 0.0
        for _ in range(MAX_EXPANSIONS):
            if dist.cgf_derivative(lo) <= x:
                return lo, hi
            lo, hi = 2.0 * lo, lo
    raise DistributionDomainError(f"cannot bracket tilt for level {x}")


def solve_tilt(dist: WeightDistribution, x: float) -> float:
    """求解 cgf'(λ) = x（Brent法，绝对容差 1e-12）"""
    if not x > 0:
        raise DistributionDomainError(f"tilt level must be positive, got {x}")
    if x == dist.mean:
        return 0.0
    lo, hi = _tilt_bracket(dist, x)
    lam, info = optimize.brentq(lambda lam: dist.cgf_derivative(lam) - x, lo, hi,
                                xtol=LAMBDA_TOL, full_output=True)
    if not info.converged:
        logger.warning(f"Tilt solver did not converge at level {x}: {info.flag}")
    return lam


def cramer_rate(dist: WeightDistribution, x: float) -> float:
    """I(x) = sup_{0≤λ<λ_max} (λx - cgf(λ))；x ≤ 均值时恰为0"""
    if not x > 0:
        raise DistributionDomainError(f"cramer_rate requires x > 0, got {x}")
    if x <= dist.mean:
        return 0.0
    lam = solve_tilt(dist, x)
    return max(lam * x - dist.cgf(lam), 0.0)


def gamma_cramer_rate(dist: WeightDistribution, x: float) -> float:
    """Gamma族的闭式速率函数 θx - k - k·log(θx/k)，用于交叉检验"""
    if not x > 0:
        raise DistributionDomainError(f"cramer_rate requires x > 0, got {x}")
    if x <= dist.mean:
        return 0.0
    k, theta = dist.shape, dist.rate
    return theta * x - k - k * math.log(theta * x / k)


def shape_function(dist: WeightDistribution, t: float) -> float:
    """指数权重的形状函数 μ_t = (1 + 2·sqrt(1/4 - t²)) / θ"""
    if dist.kind is not WeightKind.EXPONENTIAL:
        raise UnsupportedLawError(f"No closed-form shape function for {dist}")
    if abs(t) > 0.5:
        raise RangeError(f"direction t must satisfy |t| <= 1/2, got {t}")
    return (1.0 + 2.0 * math.sqrt(max(0.25 - t * t, 0.0))) / dist.rate


def diagonal_shape(dist: WeightDistribution, mu0: float = None) -> float:
    """μ0：用户提供的估计优先，否则只对指数分布可用"""
    if mu0 is not None:
        if not mu0 > 0:
            raise RangeError(f"mu0 must be positive, got {mu0}")
        return float(mu0)
    return shape_function(dist, 0.0)


def corner_rate_theoretical(dist: WeightDistribution) -> float:
    """角路径概率的速率 2·J_{1/2}(μ0) = 2 - 2·log 2"""
    if dist.kind is not WeightKind.EXPONENTIAL or dist.rate != 1.0:
        raise UnsupportedLawError(f"corner rate only known in closed form for exp:1, got {dist}")
    return 2.0 * cramer_rate(dist, 2.0)
