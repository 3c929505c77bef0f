"""
权重分布：指数分布与Gamma分布

两族都是非负、连续、无界且有指数矩的分布；指数倾斜后仍在同一族内
（速率 θ 变为 θ-λ），这是重要性抽样所依赖的性质。
"""
import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict

import numpy as np

from core.exceptions import DistributionDomainError, TiltDomainError
from . import rng


class WeightKind(Enum):
    EXPONENTIAL = "exponential"
    GAMMA = "gamma"


@dataclass(frozen=True)
class AssumptionReport:
    """权重假设检查结果"""
    has_exponential_moment: bool
    is_continuous: bool
    is_unbounded: bool
    is_nonnegative: bool

    @property
    def satisfied(self) -> bool:
        return (self.has_exponential_moment and self.is_continuous
                and self.is_unbounded and self.is_nonnegative)


@dataclass(frozen=True)
class WeightDistribution:
    """可抽样的权重分布，附带累积量生成函数"""
    kind: WeightKind
    rate: float
    shape: float = 1.0

    def __post_init__(self):
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise DistributionDomainError(f"rate must be positive, got {self.rate}")
        if not (self.shape > 0 and math.isfinite(self.shape)):
            raise DistributionDomainError(f"shape must be positive, got {self.shape}")
        if self.kind is WeightKind.EXPONENTIAL and self.shape != 1.0:
            raise DistributionDomainError("exponential law has no shape parameter")

    @classmethod
    def exponential(cls, rate: float = 1.0) -> 'WeightDistribution':
        return cls(WeightKind.EXPONENTIAL, float(rate))

    @classmethod
    def gamma(cls, shape: float, rate: float = 1.0) -> 'WeightDistribution':
        return cls(WeightKind.GAMMA, float(rate), float(shape))

    @classmethod
    def from_descriptor(cls, text: str) -> 'WeightDistribution':
        """解析简写形式，如 exp:1、gamma:2,1（形状,速率）"""
        match = re.fullmatch(r"\s*(exp|exponential|gamma)\s*:\s*([^,\s]+)\s*(?:,\s*([^,\s]+))?\s*", text or "")
        if not match:
            raise DistributionDomainError(f"Unrecognized distribution descriptor: {text!r}")
        name, first, second = match.groups()
        try:
            if name.startswith("exp"):
                if second is not None:
                    raise DistributionDomainError("exponential descriptor takes a single rate")
                return cls.exponential(float(first))
            return cls.gamma(float(first), float(second) if second is not None else 1.0)
        except ValueError as e:
            raise DistributionDomainError(f"Invalid distribution parameters in {text!r}: {e}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'WeightDistribution':
        kind = WeightKind(str(data.get("kind", "")).lower())
        if kind is WeightKind.EXPONENTIAL:
            return cls.exponential(data.get("rate", 1.0))
        return cls.gamma(data.get("shape", 1.0), data.get("rate", 1.0))

    def to_dict(self) -> Dict[str, Any]:
        if self.kind is WeightKind.EXPONENTIAL:
            return {"kind": self.kind.value, "rate": self.rate}
        return {"kind": self.kind.value, "shape": self.shape, "rate": self.rate}

    @property
    def descriptor(self) -> str:
        if self.kind is WeightKind.EXPONENTIAL:
            return f"exp:{self.rate:g}"
        return f"gamma:{self.shape:g},{self.rate:g}"

    @property
    def code(self) -> int:
        """内核使用的分布编码"""
        return rng.EXPONENTIAL if self.kind is WeightKind.EXPONENTIAL else rng.GAMMA

    @property
    def mean(self) -> float:
        return self.shape / self.rate

    @property
    def variance(self) -> float:
        return self.shape / (self.rate * self.rate)

    @property
    def cgf_domain_sup(self) -> float:
        """E e^{λω} 有限的λ上确界"""
        return self.rate

    def assumptions(self) -> AssumptionReport:
        return AssumptionReport(
            has_exponential_moment=self.cgf_domain_sup > 0,
            is_continuous=True,
            is_unbounded=True,
            is_nonnegative=True,
        )

    def _check_domain(self, lam: float):
        if not lam < self.cgf_domain_sup:
            raise DistributionDomainError(
                f"lambda={lam} outside cgf domain (must be < {self.cgf_domain_sup})"
            )

    def cgf(self, lam: float) -> float:
        """log E e^{λω} = -k·log(1-λ/θ)"""
        self._check_domain(lam)
        return -self.shape * math.log1p(-lam / self.rate)

    def cgf_derivative(self, lam: float) -> float:
        self._check_domain(lam)
        return self.shape / (self.rate - lam)

    def cgf_second_derivative(self, lam: float) -> float:
        self._check_domain(lam)
        return self.shape / (self.rate - lam) ** 2

    def tilted(self, lam: float) -> 'WeightDistribution':
        """指数倾斜 dP_λ/dP = e^{λω - cgf(λ)}，同族速率变为 θ-λ"""
        if not lam < self.cgf_domain_sup:
            raise TiltDomainError(f"tilt lambda={lam} must be < {self.cgf_domain_sup}")
        return WeightDistribution(self.kind, self.rate - lam, self.shape)

    def __str__(self) -> str:
        return self.descriptor


def sample(dist: WeightDistribution, stream: rng.CounterStream) -> float:
    """从流中抽取一个权重"""
    return rng.standard_variate(dist.code, dist.shape, stream.key, stream.advance(), 0) / dist.rate


def sample_many(dist: WeightDistribution, seed: int, size: int, start: int = 0) -> np.ndarray:
    """批量抽样，与逐个调用 sample 的结果逐位一致"""
    out = np.empty(int(size), dtype=np.float64)
    rng.draw_sequence(dist.code, dist.shape, dist.rate, rng.as_key(seed), int(start), out)
    return out
