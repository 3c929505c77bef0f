"""
均匀上右随机游走 U_{0,n} 的精确组合量

P(Mid(U)·e1 = n/2+k) = C(n, n/2+k)² / C(2n, n)
"""
import math
from fractions import Fraction

from scipy.special import gammaln

from config import Config
from core.exceptions import ParityError, RangeError


def _check_even(n: int):
    if n < 2 or n % 2 != 0:
        raise ParityError(f"n must be an even integer >= 2, got {n}")


def _log_binomial(n: int, k: int) -> float:
    return float(math.fsum([gammaln(n + 1), -gammaln(k + 1), -gammaln(n - k + 1)]))


def uniform_midpoint_prob(n: int, k: int) -> float:
    """中点偏移为 k 的精确概率；n ≤ 阈值时用有理数，之外用对数Gamma"""
    _check_even(n)
    half = n // 2
    if abs(k) > half:
        raise RangeError(f"|k| must be <= n/2 = {half}, got {k}")
    if n <= Config.EXACT_BINOMIAL_MAX_N:
        return float(Fraction(math.comb(n, half + k) ** 2, math.comb(2 * n, n)))
    log_p = math.fsum([2.0 * _log_binomial(n, half + k), -_log_binomial(2 * n, n)])
    return math.exp(log_p)


def uniform_midpoint_distribution(n: int) -> dict:
    """{k: P(offset = k)}"""
    _check_even(n)
    return {k: uniform_midpoint_prob(n, k) for k in range(-(n // 2), n // 2 + 1)}


def uniform_corner_rate(n: int) -> float:
    """-(1/n)·log P(U 经过 (n,0)) = (1/n)·log C(2n,n)，自下趋于 2·log 2"""
    _check_even(n)
    return math.log(math.comb(2 * n, n)) / n
