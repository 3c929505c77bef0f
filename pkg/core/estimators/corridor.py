"""
种植走廊：从原点经过偏离对角线的转折点 h_{J0} 到 (n,n) 的两段折线

走廊邻域（ℓ∞ 距离不超过 halfwidth 的格点）就是重要性抽样中做指数倾斜的区域。
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from config import Config
from core.exceptions import CorridorMismatchError, RangeError
from core.lpp import Point, floored_target

logger = logging.getLogger(__name__)


def _leg(start: Point, end: Point, spacing: int) -> Tuple[Point, ...]:
    """沿一段每隔 spacing 个ℓ1步取一个路点，最后一段取余下的 1..spacing 步"""
    dx = end[0] - start[0]
    dy = end[1] - start[1]
    length = dx + dy
    if length == 0:
        return (start,)
    distances = list(range(0, length, spacing)) + [length]
    points = []
    for d in distances:
        x_off = (2 * d * dx + length) // (2 * length)
        points.append((start[0] + x_off, start[1] + d - x_off))
    return tuple(points)


def _linf_segment_distance(px: np.ndarray, py: np.ndarray, a: Point, b: Point) -> np.ndarray:
    """格点到线段的 ℓ∞ 距离；目标函数关于参数 s 分段线性且凸，只需检查断点"""
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    ux = px - a[0]
    uy = py - a[1]
    candidates = [np.zeros_like(ux), np.ones_like(ux)]
    if dx:
        candidates.append(ux / dx)
    if dy:
        candidates.append(uy / dy)
    if dx != dy:
        candidates.append((ux - uy) / (dx - dy))
    if dx + dy:
        candidates.append((ux + uy) / (dx + dy))
    best = np.full(ux.shape, np.inf)
    for s in candidates:
        s = np.clip(s, 0.0, 1.0)
        distance = np.maximum(np.abs(ux - s * dx), np.abs(uy - s * dy))
        best = np.minimum(best, distance)
    return best


@dataclass(frozen=True)
class Corridor:
    t: float
    n: int
    waypoints: Tuple[Point, ...]
    turn_index: int
    halfwidth: int
    spacing: int
    offset: float = 0.0

    @classmethod
    def through(cls, t: float, n: int, halfwidth: Optional[int] = None, spacing: Optional[int] = None,
                offset: float = 0.0, to_corner: bool = True) -> 'Corridor':
        """构造经过 (n/2+(t+offset)n, n/2-(t+offset)n) 的走廊；to_corner 为假时只保留第一段"""
        if n < 1:
            raise RangeError(f"corridor needs n >= 1, got {n}")
        if halfwidth is None:
            halfwidth = math.ceil(n ** (2.0 / 3.0) - 1e-9)
        if spacing is None:
            spacing = max(1, math.ceil(n / Config.DEFAULT_SPACING_DIVISOR))
        if halfwidth < 0 or spacing < 1:
            raise RangeError(f"invalid corridor geometry: halfwidth={halfwidth}, spacing={spacing}")

        x, y = floored_target(n, t + offset)
        turn = (min(max(x, 0), n), min(max(y, 0), n))
        first = _leg((0, 0), turn, spacing)
        waypoints = first
        if to_corner:
            waypoints = first + _leg(turn, (n, n), spacing)[1:]
        return cls(t, n, waypoints, len(first) - 1, int(halfwidth), int(spacing), offset)

    @property
    def turn(self) -> Point:
        return self.waypoints[self.turn_index]

    @property
    def reaches_corner(self) -> bool:
        return self.waypoints[-1] == (self.n, self.n)

    def check(self, t: float, n: int):
        if self.n != n or not math.isclose(self.t, t, abs_tol=1e-12):
            raise CorridorMismatchError(
                f"corridor built for (t={self.t}, n={self.n}) used with (t={t}, n={n})"
            )

    def tilt_mask(self, width: int, height: int, triangle: bool = False) -> np.ndarray:
        """走廊邻域与 {0..width}×{0..height} 的交，不含起点；triangle 时再限制在 x+y ≤ n"""
        px, py = np.meshgrid(np.arange(width + 1, dtype=np.float64),
                             np.arange(height + 1, dtype=np.float64), indexing="ij")
        distance = np.full(px.shape, np.inf)
        if len(self.waypoints) == 1:
            distance = _linf_segment_distance(px, py, self.waypoints[0], self.waypoints[0])
        for a, b in zip(self.waypoints[:-1], self.waypoints[1:]):
            if a != b:
                distance = np.minimum(distance, _linf_segment_distance(px, py, a, b))
        mask = distance <= self.halfwidth + 1e-9
        if triangle:
            mask &= (px + py) <= self.n
        mask[0, 0] = False
        return mask
