"""
计数器随机数流

每个随机数由 (key, i, j, k) 经 splitmix64 混合函数直接得到，不依赖任何
内部状态：key 是场的种子，(i, j) 是格点坐标，k 是该格点内的抽样序号。
因此任意子矩形、任意重复编号都可以独立、并行地重现完全相同的数值。
"""
import math

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_ROW = np.uint64(0xD6E8FEB86659FD93)
_COL = np.uint64(0xCA5A826395121157)
_S11 = np.uint64(11)
_S27 = np.uint64(27)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_INV_2_53 = 1.0 / 9007199254740992.0

EXPONENTIAL = 0
GAMMA = 1


@njit(cache=True, nogil=True)
def mix64(z):
    """splitmix64 终结混合"""
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(cache=True, nogil=True)
def counter_bits(key, i, j, k):
    h = mix64(key ^ (np.uint64(i) * _ROW + _GOLDEN))
    h = mix64(h ^ (np.uint64(j) * _COL + _GOLDEN))
    return mix64(h + np.uint64(k) * _GOLDEN)


@njit(cache=True, nogil=True)
def counter_uniform(key, i, j, k):
    """[0, 1) 上的53位均匀数"""
    return float(counter_bits(key, i, j, k) >> _S11) * _INV_2_53


@njit(cache=True, nogil=True)
def replicate_key(seed, replicate):
    """第 replicate 次重复所用权重场的种子"""
    return mix64(seed ^ mix64(np.uint64(replicate) + _GOLDEN))


@njit(cache=True, nogil=True)
def exponential_variate(key, i, j):
    # 逆CDF: u=0 -> 0
    u = counter_uniform(key, i, j, 0)
    return -math.log1p(-u)


@njit(cache=True, nogil=True)
def gamma_variate(shape, key, i, j):
    """Marsaglia-Tsang 拒绝采样，速率为1；shape<1 时用 U^{1/shape} 提升"""
    boost = 1.0
    a = shape
    if a < 1.0:
        u0 = 1.0 - counter_uniform(key, i, j, 0)
        boost = u0 ** (1.0 / a)
        a = a + 1.0
    d = a - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    k = 1
    while True:
        u1 = 1.0 - counter_uniform(key, i, j, k)
        u2 = counter_uniform(key, i, j, k + 1)
        x = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
        v = 1.0 + c * x
        if v > 0.0:
            v = v * v * v
            u = 1.0 - counter_uniform(key, i, j, k + 2)
            if math.log(u) < 0.5 * x * x + d - d * v + d * math.log(v):
                return d * v * boost
        k += 3


@njit(cache=True, nogil=True)
def standard_variate(kind, shape, key, i, j):
    """速率为1的标准变量；权重 = 标准变量 / rate"""
    if kind == EXPONENTIAL:
        return exponential_variate(key, i, j)
    return gamma_variate(shape, key, i, j)


@njit(cache=True, nogil=True)
def fill_uniform_rate(kind, shape, rate, key, out):
    width, height = out.shape
    for i in range(width):
        for j in range(height):
            out[i, j] = standard_variate(kind, shape, key, i, j) / rate


@njit(cache=True, nogil=True)
def draw_sequence(kind, shape, rate, key, start, out):
    for idx in range(out.shape[0]):
        out[idx] = standard_variate(kind, shape, key, start + idx, 0) / rate


class CounterStream:
    """有种子的随机数流：第 m 次抽样使用格点 (m, 0) 的计数器"""

    def __init__(self, seed: int):
        self.key = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
        self.position = 0

    def advance(self, count: int = 1) -> int:
        start = self.position
        self.position += count
        return start


def as_key(seed: int) -> np.uint64:
    """把Python整数种子转成内核使用的64位无符号键"""
    return np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF)


def field_seed(seed: int, replicate: int) -> int:
    """与 replicate_key 一致的Python整数形式，便于重建单个重复的权重场"""
    return int(replicate_key(as_key(seed), replicate))
