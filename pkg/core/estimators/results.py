"""
估计结果数据结构与汇总
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .intervals import normal_interval, rule_of_three, wilson_interval


@dataclass(frozen=True)
class SamplingMethod:
    """direct 或 tilted{λ, 走廊半宽}"""
    name: str = "direct"
    tilt: float = 0.0
    halfwidth: Optional[int] = None

    @classmethod
    def direct(cls) -> 'SamplingMethod':
        return cls()

    @classmethod
    def tilted(cls, tilt: float, halfwidth: Optional[int]) -> 'SamplingMethod':
        return cls("tilted", float(tilt), halfwidth)

    @property
    def is_tilted(self) -> bool:
        return self.name == "tilted"

    @property
    def label(self) -> str:
        if not self.is_tilted:
            return "direct"
        width = "all" if self.halfwidth is None else str(self.halfwidth)
        return f"tilted(lambda={self.tilt:.6g};halfwidth={width})"


@dataclass(frozen=True)
class RateEstimate:
    """尾概率估计；hits 在倾斜方法下是命中样本的似然比之和"""
    t: float
    r: Optional[float]
    n: int
    n_samples: int
    hits: float
    p_hat: float
    ci_low: float
    ci_high: float
    std_err: float
    method: SamplingMethod = field(default_factory=SamplingMethod.direct)
    p_point: Optional[float] = None
    p_displacement: Optional[float] = None

    @property
    def zero_hit(self) -> bool:
        return not self.hits > 0

    @property
    def fekete_bound(self) -> float:
        """-log(p̂)/n；零命中时为 +∞"""
        if self.zero_hit or self.p_hat <= 0:
            return math.inf
        return -math.log(self.p_hat) / self.n

    @property
    def fekete_interval(self) -> Tuple[float, float]:
        """由概率区间换算的 [-log(ci_high)/n, -log(ci_low)/n]"""
        low = -math.log(self.ci_high) / self.n if self.ci_high > 0 else math.inf
        high = -math.log(self.ci_low) / self.n if self.ci_low > 0 else math.inf
        return (low, high)

    @property
    def fekete_std_err(self) -> float:
        """delta方法：se(p̂) / (p̂·n)"""
        if self.zero_hit or self.p_hat <= 0:
            return math.inf
        return self.std_err / (self.p_hat * self.n)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "r": self.r,
            "n": self.n,
            "n_samples": self.n_samples,
            "hits": self.hits,
            "p_hat": self.p_hat,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "std_err": self.std_err,
            "fekete_bound": self.fekete_bound,
            "method": self.method.label,
            "p_point": self.p_point,
            "p_displacement": self.p_displacement,
        }


@dataclass(frozen=True)
class ShapeEstimate:
    t: float
    n: int
    n_samples: int
    mean: float
    std_err: float

    def to_dict(self) -> Dict[str, Any]:
        return {"t": self.t, "n": self.n, "n_samples": self.n_samples,
                "mean": self.mean, "std_err": self.std_err}


def weighted_mean(hits: np.ndarray, log_weights: Optional[np.ndarray]) -> Tuple[float, float, float]:
    """返回 (似然比加权命中和, 均值, 标准误)；似然比在对数空间内平移后用 fsum 汇总"""
    n_samples = hits.shape[0]
    if log_weights is None:
        count = int(np.count_nonzero(hits))
        p = count / n_samples
        return count, p, math.sqrt(p * (1.0 - p) / n_samples)

    selected = log_weights[hits]
    if selected.size == 0:
        return 0.0, 0.0, 0.0
    shift = float(selected.max())
    scaled = np.exp(selected - shift)
    total = math.exp(shift) * math.fsum(scaled.tolist())
    second = math.exp(2.0 * shift) * math.fsum((scaled * scaled).tolist())
    p = total / n_samples
    variance = max(second / n_samples - p * p, 0.0)
    if n_samples > 1:
        variance *= n_samples / (n_samples - 1)
    return total, p, math.sqrt(variance / n_samples)


def summarize_events(hits: np.ndarray, log_weights: Optional[np.ndarray], *, t: float, r: Optional[float],
                     n: int, method: SamplingMethod, confidence: float = None,
                     point: Optional[np.ndarray] = None,
                     displacement: Optional[np.ndarray] = None) -> RateEstimate:
    """由逐重复的命中指示（及对数似然比）汇总为 RateEstimate"""
    n_samples = int(hits.shape[0])
    total, p_hat, std_err = weighted_mean(hits, log_weights)
    if total <= 0:
        ci_low, ci_high = rule_of_three(n_samples)
    elif log_weights is None:
        ci_low, ci_high = wilson_interval(int(total), n_samples, confidence)
    else:
        ci_low, ci_high = normal_interval(p_hat, std_err, confidence)

    p_point = weighted_mean(point, log_weights)[1] if point is not None else None
    p_displacement = weighted_mean(displacement, log_weights)[1] if displacement is not None else None
    return RateEstimate(
        t=t, r=r, n=n, n_samples=n_samples, hits=total, p_hat=p_hat,
        ci_low=ci_low, ci_high=ci_high, std_err=std_err, method=method,
        p_point=p_point, p_displacement=p_displacement,
    )
