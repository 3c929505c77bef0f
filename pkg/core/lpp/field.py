"""
权重场：矩形格点 {0..width} × {0..height} 上的一次独立同分布权重实现
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from core.distributions import WeightDistribution
from core.distributions import rng
from core.exceptions import ExtentError, FieldAllocationError

logger = logging.getLogger(__name__)

Point = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class WeightField:
    """不可变的权重场；weights[i, j] 为格点 (i, j) 的权重，按行主序存放"""
    width: int
    height: int
    weights: np.ndarray = field(repr=False)
    seed: Optional[int] = None
    distribution: Optional[WeightDistribution] = None

    def __post_init__(self):
        if self.weights.shape != (self.width + 1, self.height + 1):
            raise ExtentError(
                f"weights shape {self.weights.shape} does not match extents ({self.width}, {self.height})"
            )
        self.weights.setflags(write=False)

    @classmethod
    def from_weights(cls, weights, distribution: Optional[WeightDistribution] = None) -> 'WeightField':
        """由给定数组构造（测试中的人工场、并列构造等）"""
        array = np.array(weights, dtype=np.float64, copy=True)
        if array.ndim != 2 or min(array.shape) < 1:
            raise ExtentError(f"weights must be a non-empty 2-D array, got shape {array.shape}")
        if np.any(array < 0) or not np.all(np.isfinite(array)):
            raise ExtentError("weights must be finite and non-negative")
        return cls(array.shape[0] - 1, array.shape[1] - 1, array, None, distribution)

    def contains(self, point: Point) -> bool:
        x, y = point
        return 0 <= x <= self.width and 0 <= y <= self.height

    def weight(self, point: Point) -> float:
        return float(self.weights[point[0], point[1]])

    def restrict(self, width: int, height: int) -> 'WeightField':
        """左下角子矩形"""
        if not (0 <= width <= self.width and 0 <= height <= self.height):
            raise ExtentError(f"cannot restrict {self.width}x{self.height} field to {width}x{height}")
        sub = np.array(self.weights[: width + 1, : height + 1], copy=True)
        return WeightField(width, height, sub, self.seed, self.distribution)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightField):
            return NotImplemented
        return (self.width == other.width and self.height == other.height
                and self.seed == other.seed and self.distribution == other.distribution
                and np.array_equal(self.weights, other.weights))

    def __hash__(self):
        return hash((self.width, self.height, self.seed, self.distribution))


def allocate(width: int, height: int) -> np.ndarray:
    requested = (width + 1) * (height + 1) * np.dtype(np.float64).itemsize
    try:
        return np.empty((width + 1, height + 1), dtype=np.float64)
    except (MemoryError, ValueError) as e:
        logger.error(f"Weight field allocation failed ({requested} bytes): {e}")
        raise FieldAllocationError(requested)


def sample_field(dist: WeightDistribution, width: int, height: int, seed: int) -> WeightField:
    """格点 (i, j) 的权重只由 (seed, i, j) 决定，子矩形与大场一致"""
    if width < 1 or height < 1:
        raise ExtentError(f"field extents must be >= 1, got {width}x{height}")
    weights = allocate(width, height)
    rng.fill_uniform_rate(dist.code, dist.shape, dist.rate, rng.as_key(seed), weights)
    return WeightField(width, height, weights, int(seed) & 0xFFFFFFFFFFFFFFFF, dist)
