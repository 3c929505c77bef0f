"""
统一实验执行结果类
"""
from typing import List, Optional

from data_models import ResultRow


class ExperimentResult:
    """实验执行结果"""

    def __init__(self, success: bool, rows: List[ResultRow] = None, error: str = None,
                 error_code: str = None, experiment_name: str = None):
        self.success = success
        self.rows = rows or []
        self.error = error
        self.error_code = error_code
        self.experiment_name = experiment_name

    @property
    def passed(self) -> bool:
        """验证类实验：没有任何一行标记为 fail"""
        return self.success and all(row.status != "fail" for row in self.rows)

    @classmethod
    def success_result(cls, rows: List[ResultRow], experiment_name: str = None) -> 'ExperimentResult':
        """创建成功结果"""
        return cls(
            success=True,
            rows=rows,
            experiment_name=experiment_name,
        )

    @classmethod
    def error_result(cls, error: str, error_code: Optional[str] = None,
                     experiment_name: str = None) -> 'ExperimentResult':
        """创建错误结果"""
        return cls(
            success=False,
            error=error,
            error_code=error_code,
            experiment_name=experiment_name,
        )

    def __str__(self) -> str:
        if self.success:
            return f"ExperimentResult(success=True, experiment={self.experiment_name}, rows={len(self.rows)})"
        else:
            return f"ExperimentResult(success=False, experiment={self.experiment_name}, error={self.error})"

    def __repr__(self) -> str:
        return self.__str__()

    def __bool__(self) -> bool:
        """实验结果可以直接用于布尔判断"""
        return self.success
