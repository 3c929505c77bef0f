"""
权重分布、计数器随机数流与Cramér速率函数
"""
from .weights import AssumptionReport, WeightDistribution, WeightKind, sample, sample_many
from .rate import (
    corner_rate_theoretical,
    cramer_rate,
    diagonal_shape,
    gamma_cramer_rate,
    shape_function,
    solve_tilt,
)
from .rng import CounterStream, field_seed

__all__ = [
    'AssumptionReport',
    'WeightDistribution',
    'WeightKind',
    'sample',
    'sample_many',
    'cramer_rate',
    'gamma_cramer_rate',
    'corner_rate_theoretical',
    'shape_function',
    'diagonal_shape',
    'solve_tilt',
    'CounterStream',
    'field_seed',
]
