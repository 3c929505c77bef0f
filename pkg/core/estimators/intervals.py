"""
二项比例与重要性抽样估计的置信区间
"""
import math
from typing import Tuple

from scipy import stats

from config import Config


def z_value(confidence: float = None) -> float:
    confidence = Config.CONFIDENCE if confidence is None else confidence
    return float(stats.norm.ppf(1.0 - (1.0 - confidence) / 2.0))


def wilson_interval(successes: int, trials: int, confidence: float = None) -> Tuple[float, float]:
    """Wilson得分区间；在零命中和低命中时仍然有效"""
    if trials <= 0:
        return (0.0, 1.0)
    z = z_value(confidence)
    p_hat = successes / trials

    denominator = 1 + z**2 / trials
    center = (p_hat + z**2 / (2 * trials)) / denominator
    margin = (z / denominator) * math.sqrt(
        p_hat * (1 - p_hat) / trials + z**2 / (4 * trials**2)
    )

    lower = max(0.0, min(center - margin, p_hat))
    upper = min(1.0, max(center + margin, p_hat))
    return (lower, upper)


def rule_of_three(trials: int) -> Tuple[float, float]:
    """零命中时的单侧95%上界 3/N"""
    return (0.0, min(1.0, 3.0 / trials))


def normal_interval(estimate: float, std_err: float, confidence: float = None) -> Tuple[float, float]:
    """加权估计量的正态区间，下界截断在0"""
    z = z_value(confidence)
    lower = max(0.0, estimate - z * std_err)
    upper = estimate + z * std_err
    if estimate <= 1.0:
        upper = min(1.0, upper)
    return (lower, upper)
