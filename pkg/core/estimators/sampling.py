"""
重复实验的公共准备：目标点、倾斜区域、速率表与似然比
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.distributions import WeightDistribution, shape_function, solve_tilt
from core.distributions.rng import as_key
from core.exceptions import DegenerateTargetError, RangeError, TiltDomainError, UnsupportedLawError
from core.lpp import Point, floored_target
from .results import SamplingMethod

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TiltPlan:
    """一次实验使用的速率表、倾斜区域与似然比常数"""
    dist: WeightDistribution
    tilt: float
    rates: np.ndarray
    mask: np.ndarray
    method: SamplingMethod

    @property
    def region_size(self) -> int:
        return int(np.count_nonzero(self.mask))

    def log_weights(self, sums: np.ndarray) -> Optional[np.ndarray]:
        """log L = -λ·S + m·cgf(λ)；直接抽样时返回 None"""
        if not self.method.is_tilted:
            return None
        return -self.tilt * sums + self.region_size * self.dist.cgf(self.tilt)


def direct_plan(dist: WeightDistribution, width: int, height: int) -> TiltPlan:
    rates = np.full((width + 1, height + 1), dist.rate, dtype=np.float64)
    mask = np.zeros((width + 1, height + 1), dtype=np.bool_)
    return TiltPlan(dist, 0.0, rates, mask, SamplingMethod.direct())


def tilted_plan(dist: WeightDistribution, tilt: float, mask: np.ndarray,
                halfwidth: Optional[int]) -> TiltPlan:
    """倾斜区内按 Exponential/Gamma{θ-λ} 抽样"""
    if not tilt < dist.cgf_domain_sup:
        raise TiltDomainError(f"tilt lambda={tilt} must be < {dist.cgf_domain_sup}")
    tilted_rate = dist.tilted(tilt).rate
    rates = np.where(mask, tilted_rate, dist.rate).astype(np.float64)
    logger.debug(f"Tilted plan: lambda={tilt:.6g}, region of {int(np.count_nonzero(mask))} sites")
    return TiltPlan(dist, float(tilt), rates, np.ascontiguousarray(mask, dtype=np.bool_),
                    SamplingMethod.tilted(tilt, halfwidth))


def direction_target(n: int, t: float) -> Point:
    """取整目标点，离开格点区域时报错"""
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    if abs(t) > 0.5 + 1e-12:
        raise RangeError(f"direction t must satisfy |t| <= 1/2, got {t}")
    target = floored_target(n, t)
    if target[0] < 0 or target[1] < 0:
        raise DegenerateTargetError(f"floored target {target} leaves the lattice for n={n}, t={t}")
    return target


def check_samples(n_samples: int):
    if int(n_samples) < 1:
        raise RangeError(f"n_samples must be >= 1, got {n_samples}")


def seed_key(seed: int) -> np.uint64:
    return as_key(seed)


def direction_shape(dist: WeightDistribution, t: float) -> float:
    """μ_t：角方向恰为均值；没有闭式形状函数的分布退回均值"""
    if abs(abs(t) - 0.5) <= 1e-12:
        return dist.mean
    try:
        return shape_function(dist, t)
    except UnsupportedLawError:
        return dist.mean


def default_tilt(dist: WeightDistribution, t: float, level: float) -> float:
    """方向 t 上使通过值从 μ_t·n 升到 level·n 的单参数倾斜；不需要上调时返回0

    倾斜把每个权重放大 θ/(θ-λ) 倍，因此目标是单点均值 mean·level/μ_t；
    没有闭式 μ_t 的分布只在角方向（μ_{1/2} = mean）做此换算，其余方向直接取 level。
    """
    target = dist.mean * level / direction_shape(dist, t)
    if target <= dist.mean * (1.0 + 1e-12):
        return 0.0
    return solve_tilt(dist, target)


def geodesic_tilt(dist: WeightDistribution, t: float, n: int, mu0: float, region_size: int,
                  legs: int) -> float:
    """测地线事件的倾斜：走廊整体倾斜时似然比二阶矩约为 exp(-λΔ + λ²·m·σ²)

    Δ = legs·n·(μ0-μ_t) 是经过转折点的路径需要多出的权重，m 为倾斜区格点数；
    取极小点 λ = Δ/(2mσ²)，并以 default_tilt 为上限。
    """
    if region_size < 1:
        return 0.0
    excess = legs * n * (mu0 - direction_shape(dist, t))
    if excess <= 0:
        return 0.0
    lam = excess / (2.0 * region_size * dist.variance)
    return min(lam, default_tilt(dist, t, mu0))
