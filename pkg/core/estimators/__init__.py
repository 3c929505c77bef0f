"""
蒙特卡洛估计：尾概率、重要性抽样、形状函数与结构性质验证
"""
from .corridor import Corridor
from .geodesic import estimate_endpoint_tail, estimate_midpoint_tail
from .intervals import normal_interval, rule_of_three, wilson_interval
from .pool import ReplicatePool
from .properties import (
    ConvexityReport,
    IdentityReport,
    LeftTailReport,
    MonotonicityReport,
    estimate_left_tail,
    left_tail_scan,
    midpoint_rate_identity,
    verify_convexity,
    verify_monotone_in_t,
)
from .results import RateEstimate, SamplingMethod, ShapeEstimate
from .sampling import default_tilt, geodesic_tilt
from .tail import estimate_shape, estimate_tail, estimate_tail_tilted, fekete_curve

__all__ = [
    'Corridor',
    'ReplicatePool',
    'RateEstimate',
    'SamplingMethod',
    'ShapeEstimate',
    'wilson_interval',
    'normal_interval',
    'rule_of_three',
    'default_tilt',
    'geodesic_tilt',
    'estimate_tail',
    'estimate_tail_tilted',
    'estimate_shape',
    'fekete_curve',
    'estimate_midpoint_tail',
    'estimate_endpoint_tail',
    'verify_monotone_in_t',
    'verify_convexity',
    'estimate_left_tail',
    'left_tail_scan',
    'midpoint_rate_identity',
    'MonotonicityReport',
    'LeftTailReport',
    'IdentityReport',
    'ConvexityReport',
]
