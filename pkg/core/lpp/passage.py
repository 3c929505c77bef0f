"""
最后通过值、测地线、中点与点到线问题
"""
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

from core.exceptions import EndpointMismatchError, ExtentError, LatticeOrderError, ParityError
from . import kernels
from .field import Point, WeightField

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PassageResult:
    """G_{source,target} 及其（最右）测地线"""
    source: Point
    target: Point
    value: float
    geodesic: Tuple[Point, ...]
    tie_broken: bool = False

    def level_point(self, level: int) -> Point:
        """测地线与反对角线 {x+y = level} 的唯一交点"""
        offset = level - (self.source[0] + self.source[1])
        if not 0 <= offset < len(self.geodesic):
            raise ExtentError(f"level {level} is not crossed by this geodesic")
        return self.geodesic[offset]


@dataclass(frozen=True)
class GeodesicSummary:
    midpoint: Point
    midpoint_offset: int
    endpoint_ptl: Point
    max_displacement: int


class LineResult(NamedTuple):
    value: float
    endpoint: Point


def _check_point(field: WeightField, point: Point, name: str):
    if not field.contains(point):
        raise ExtentError(f"{name} {point} outside field extents 0..{field.width} x 0..{field.height}")


def _check_order(source: Point, target: Point):
    if source[0] > target[0] or source[1] > target[1]:
        raise LatticeOrderError(f"no up-right path from {source} to {target}")


def last_passage(field: WeightField, source: Point, target: Point) -> PassageResult:
    """矩形上的DP加回溯；不含起点权重"""
    source = (int(source[0]), int(source[1]))
    target = (int(target[0]), int(target[1]))
    _check_point(field, source, "source")
    _check_point(field, target, "target")
    _check_order(source, target)

    table = kernels.passage_table(field.weights, source[0], source[1], target[0], target[1])
    path, tie = kernels.trace_geodesic(table, source[0], source[1])
    geodesic = tuple((int(x), int(y)) for x, y in path)
    return PassageResult(source, target, float(table[-1, -1]), geodesic, bool(tie))


def passage_value(field: WeightField, source: Point, target: Point) -> float:
    """只计算通过值，内存 O(较短边)"""
    _check_point(field, source, "source")
    _check_point(field, target, "target")
    _check_order(source, target)
    return float(kernels.passage_value(field.weights, int(source[0]), int(source[1]),
                                       int(target[0]), int(target[1])))


def max_displacement(geodesic: Tuple[Point, ...]) -> int:
    """测地线偏离对角线的最大距离 ceil(|x-y|/2)"""
    return max((abs(x - y) + 1) // 2 for x, y in geodesic)


def point_to_line(field: WeightField, n: int) -> LineResult:
    """max_k G_{0,(n/2+k, n/2-k)}，并列时取较大的x坐标"""
    n = int(n)
    if n < 0 or field.width < n or field.height < n:
        raise ExtentError(f"field {field.width}x{field.height} does not cover the triangle x+y <= {n}")
    if n == 0:
        return LineResult(0.0, (0, 0))
    line = kernels.line_sweep(field.weights, n)
    best = int(kernels.line_argmax(line))
    return LineResult(float(line[best]), (best, n - best))


def summarize_geodesic(result: PassageResult, n: int, field: WeightField = None) -> GeodesicSummary:
    """提取中点、偏移量与最大位移；给出权重场时一并求点到线端点"""
    if n % 2 != 0:
        raise ParityError(f"midpoint requires even n, got {n}")
    if result.source != (0, 0) or result.target != (n, n):
        raise EndpointMismatchError(
            f"expected passage from (0, 0) to ({n}, {n}), got {result.source} -> {result.target}"
        )
    midpoint = result.level_point(n)
    offset = midpoint[0] - n // 2
    endpoint = point_to_line(field, n).endpoint if field is not None else None
    return GeodesicSummary(
        midpoint=midpoint,
        midpoint_offset=offset,
        endpoint_ptl=endpoint,
        max_displacement=max_displacement(result.geodesic),
    )


def floored_target(n: int, t: float) -> Point:
    """方向 t 的取整目标点 (⌊n/2+tn⌋, ⌊n/2-tn⌋)"""
    # 容差吸收 t·n 的二进制舍入（如 0.1·30）
    return (math.floor(n / 2 + t * n + 1e-9), math.floor(n / 2 - t * n + 1e-9))
