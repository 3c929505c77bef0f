"""
结果行：CSV/JSONL 的统一模式，缺失的度量写成空字段而不是0
"""
import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, field_validator

from config import Config

FLOAT_FIELDS = ("t", "r", "p_hat", "ci_low", "ci_high", "fekete_bound", "mean", "std_err",
                "wall_time_s", "p_point")


class ResultRow(BaseModel):
    """一行实验结果；字段顺序即输出列顺序"""
    model_config = ConfigDict(extra="forbid", ser_json_inf_nan="constants")

    experiment: str
    distribution: str
    t: Optional[float] = None
    r: Optional[float] = None
    n: Optional[int] = None
    n_samples: Optional[int] = None
    method: Optional[str] = None
    p_hat: Optional[float] = None
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None
    fekete_bound: Optional[float] = None
    mean: Optional[float] = None
    std_err: Optional[float] = None
    seed: Optional[int] = None
    wall_time_s: Optional[float] = None
    tool_version: str = Config.TOOL_VERSION
    p_point: Optional[float] = None
    status: Optional[str] = None
    note: Optional[str] = None

    @field_validator("*", mode="before")
    @classmethod
    def _empty_is_missing(cls, value):
        if isinstance(value, str) and value == "":
            return None
        return value

    @field_validator(*FLOAT_FIELDS, mode="before")
    @classmethod
    def _parse_float(cls, value):
        if isinstance(value, str):
            return float(value) if value.strip() else None
        return value

    @classmethod
    def columns(cls) -> List[str]:
        return list(cls.model_fields)

    def to_record(self) -> Dict[str, str]:
        """CSV 记录：浮点数用最短可回读表示，None 为空串"""
        record = {}
        for name in self.columns():
            value = getattr(self, name)
            if value is None:
                record[name] = ""
            elif isinstance(value, float):
                record[name] = repr(value)
            else:
                record[name] = str(value)
        return record

    @property
    def is_zero_hit(self) -> bool:
        return self.status == "zero-hit" or (self.fekete_bound is not None and math.isinf(self.fekete_bound))

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> 'ResultRow':
        return cls.model_validate(record)
