"""
可精确计算的参照值：角方向尾概率与单位正方形的通过值分布
"""
from scipy import integrate, stats
from scipy.special import gammaincc

from core.distributions import WeightDistribution
from core.exceptions import RangeError


def _frozen_law(dist: WeightDistribution):
    return stats.gamma(a=dist.shape, scale=1.0 / dist.rate)


def corner_passage_tail(dist: WeightDistribution, n: int, r: float) -> float:
    """P(G_{0,(n,0)} ≥ rn)：n 个独立权重之和服从 Gamma(nk, θ)，即 Q(nk, θrn)"""
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    if r <= 0:
        return 1.0
    return float(gammaincc(n * dist.shape, dist.rate * r * n))


def unit_square_passage_cdf(dist: WeightDistribution, x: float) -> float:
    """P(G_{0,(1,1)} ≤ x)，G = ω(1,1) + max(ω(1,0), ω(0,1))，对 ω(1,1) 做一维积分"""
    if x <= 0:
        return 0.0
    law = _frozen_law(dist)
    value, _ = integrate.quad(lambda w: law.cdf(x - w) ** 2 * law.pdf(w), 0.0, x,
                              epsabs=1e-13, epsrel=1e-11, limit=200)
    return float(value)
