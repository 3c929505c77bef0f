"""
小格点上的暴力路径枚举

路径用 2n 位掩码表示，从最高位开始第 k 位为1表示第 k 步走 e1。
按掩码从大到小遍历即“最早分叉处优先 e1”的顺序，严格大于才替换，
所以并列时保留最右的最大化路径，与DP回溯的规则一致。
"""
import logging
import math
from typing import Iterator, Tuple

import numpy as np
from numba import njit

from config import Config
from core.exceptions import ExtentError, OracleSizeError
from core.lpp import Point, WeightField

logger = logging.getLogger(__name__)


@njit(cache=True, nogil=True)
def _popcount(mask):
    ones = 0
    while mask:
        ones += mask & 1
        mask >>= 1
    return ones


@njit(cache=True, nogil=True)
def _enumerate_best(weights, n):
    steps = 2 * n
    best = -np.inf
    best_mask = -1
    count = 0
    for mask in range((1 << steps) - 1, -1, -1):
        if _popcount(mask) != n:
            continue
        count += 1
        x = 0
        y = 0
        total = 0.0
        for k in range(steps):
            if (mask >> (steps - 1 - k)) & 1:
                x += 1
            else:
                y += 1
            total += weights[x, y]
        if total > best:
            best = total
            best_mask = mask
    return best, best_mask, count


def _check_size(n: int):
    if n < 0:
        raise OracleSizeError(f"n must be non-negative, got {n}")
    if n > Config.ORACLE_MAX_N:
        raise OracleSizeError(f"brute force limited to n <= {Config.ORACLE_MAX_N}, got {n}")


class PathEnumeration:
    """(0,0) 到 (n,n) 的全部上右路径（隐式迭代）"""

    def __init__(self, n: int):
        _check_size(n)
        self.n = n

    def __len__(self) -> int:
        return math.comb(2 * self.n, self.n)

    def __iter__(self) -> Iterator[int]:
        steps = 2 * self.n
        for mask in range((1 << steps) - 1, -1, -1):
            if mask.bit_count() == self.n:
                yield mask

    def path(self, mask: int) -> Tuple[Point, ...]:
        steps = 2 * self.n
        x = y = 0
        points = [(0, 0)]
        for k in range(steps):
            if (mask >> (steps - 1 - k)) & 1:
                x += 1
            else:
                y += 1
            points.append((x, y))
        return tuple(points)


def brute_force_passage(field: WeightField, n: int) -> Tuple[float, Tuple[Point, ...]]:
    """逐条路径求和（不含起点），返回最大值与最右的最大化路径"""
    enumeration = PathEnumeration(n)
    if field.width < n or field.height < n:
        raise ExtentError(f"field {field.width}x{field.height} does not cover (0,0)..({n},{n})")
    value, mask, count = _enumerate_best(field.weights, n)
    if count != len(enumeration):
        logger.error(f"Enumerated {count} paths, expected {len(enumeration)}")
    return float(value), enumeration.path(int(mask))


def count_paths(field: WeightField, n: int) -> int:
    """枚举内核实际访问的路径数"""
    PathEnumeration(n)
    return int(_enumerate_best(field.weights, n)[2])
