"""
实验族、结果输出与汇总报告
"""
from .base_experiment import BaseExperiment
from .output import read_rows, write_rows
from .registry import ExperimentRegistry, get_experiment_registry, run_experiment
from .report import ReportSummary, report, summarize_rows
from .result import ExperimentResult

__all__ = [
    'BaseExperiment',
    'ExperimentResult',
    'ExperimentRegistry',
    'get_experiment_registry',
    'run_experiment',
    'read_rows',
    'write_rows',
    'ReportSummary',
    'report',
    'summarize_rows',
]
