"""
独立参照：小格点暴力枚举、均匀游走的精确组合量与闭式尾概率
"""
from .enumeration import PathEnumeration, brute_force_passage, count_paths
from .exact import corner_passage_tail, unit_square_passage_cdf
from .uniform_walk import uniform_corner_rate, uniform_midpoint_distribution, uniform_midpoint_prob

__all__ = [
    'PathEnumeration',
    'brute_force_passage',
    'count_paths',
    'corner_passage_tail',
    'unit_square_passage_cdf',
    'uniform_midpoint_prob',
    'uniform_midpoint_distribution',
    'uniform_corner_rate',
]
