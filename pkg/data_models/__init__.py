"""
实验声明与结果行的数据模型
"""
from .Experiment import EXPERIMENTS, DistributionSpec, ExperimentSpec, parse_int_list
from .Result import ResultRow

__all__ = [
    'EXPERIMENTS',
    'DistributionSpec',
    'ExperimentSpec',
    'ResultRow',
    'parse_int_list',
]
