"""
实验声明：扁平键值配置文件加命令行覆盖，所有取值在抽样开始前校验
"""
import logging
import re
from typing import Any, Dict, List, Literal, Optional, Union

import yaml
from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from config import Config
from core.distributions import WeightDistribution, WeightKind
from core.exceptions import LPPError, SpecValidationError

logger = logging.getLogger(__name__)

EXPERIMENTS = (
    "verify", "shape", "tail", "fekete", "midpoint", "endpoint", "corner",
    "identity", "left-tail", "uniform-walk", "monotone", "convexity",
)
GEODESIC_EXPERIMENTS = ("midpoint", "endpoint", "corner", "identity")
SEED_LIMIT = 2 ** 64

RANGE_PATTERN = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*(?::\s*(\d+)\s*)?$")


def parse_int_list(value: Any) -> Optional[List[int]]:
    """解析 a..b:step（含两端）、逗号分隔或列表形式的整数列表"""
    if value is None or isinstance(value, list):
        return value
    if isinstance(value, (tuple, range)):
        return list(value)
    if isinstance(value, int):
        return [value]
    text = str(value).strip()
    match = RANGE_PATTERN.match(text)
    if match:
        start, stop, step = int(match.group(1)), int(match.group(2)), int(match.group(3) or 1)
        if step < 1 or stop < start:
            raise ValueError(f"invalid range {text!r}")
        return list(range(start, stop + 1, step))
    return [int(part) for part in text.split(",") if part.strip()]


def parse_float_list(value: Any) -> Optional[List[float]]:
    if value is None or isinstance(value, list):
        return value
    if isinstance(value, (int, float)):
        return [float(value)]
    return [float(part) for part in str(value).split(",") if part.strip()]


def parse_count(value: Any) -> Any:
    """样本数允许科学计数法，如 1e6"""
    if isinstance(value, str) and value.strip():
        number = float(value)
        if not number.is_integer():
            raise ValueError(f"sample count must be an integer, got {value!r}")
        return int(number)
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


class DistributionSpec(BaseModel):
    """权重分布的声明形式"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["exponential", "gamma"] = "exponential"
    rate: float = Field(1.0, gt=0, description="速率 θ")
    shape: float = Field(1.0, gt=0, description="Gamma 形状 k")

    @classmethod
    def from_descriptor(cls, text: str) -> 'DistributionSpec':
        return cls.model_validate(WeightDistribution.from_descriptor(text).to_dict())

    def to_distribution(self) -> WeightDistribution:
        return WeightDistribution(WeightKind(self.kind), float(self.rate), float(self.shape))


class ExperimentSpec(BaseModel):
    """一次实验运行的完整声明"""
    model_config = ConfigDict(extra="forbid")

    experiment: Literal["verify", "shape", "tail", "fekete", "midpoint", "endpoint", "corner",
                        "identity", "left-tail", "uniform-walk", "monotone", "convexity"]
    distribution: Union[str, DistributionSpec] = Field(
        "exp:1", description="分布简写（exp:1、gamma:2,1）或映射 {kind, rate, shape}，统一规范为简写"
    )
    t: Optional[float] = Field(None, ge=-0.5, le=0.5, description="方向")
    t_list: Optional[List[float]] = None
    r: Optional[float] = Field(None, ge=0, description="水平")
    r_list: Optional[List[float]] = None
    eps: Optional[float] = Field(None, ge=0, description="左尾偏离量")
    n: Optional[int] = Field(None, ge=1)
    n_list: Optional[List[int]] = None
    k: Optional[int] = None
    n_samples: Optional[int] = Field(None, ge=1)
    budget: Optional[int] = Field(None, ge=1)
    method: Literal["direct", "tilted"] = "direct"
    tilt: Optional[float] = None
    halfwidth: Optional[int] = Field(None, ge=0)
    spacing: Optional[int] = Field(None, ge=1)
    offset: float = 0.0
    mu0: Optional[float] = Field(None, gt=0)
    max_n: Optional[int] = Field(None, ge=1)
    fields: Optional[int] = Field(None, ge=1)
    seed: int = Field(default_factory=lambda: Config.DEFAULT_SEED, ge=0, lt=SEED_LIMIT)
    workers: Optional[int] = Field(None, ge=1)
    output: Optional[str] = None
    format: Literal["csv", "jsonl"] = "csv"
    timing: bool = False

    @field_validator("n_list", mode="before")
    @classmethod
    def _parse_n_list(cls, value):
        return parse_int_list(value)

    @field_validator("t_list", "r_list", mode="before")
    @classmethod
    def _parse_float_lists(cls, value):
        return parse_float_list(value)

    @field_validator("n_samples", "budget", mode="before")
    @classmethod
    def _parse_count(cls, value):
        return parse_count(value)

    @field_validator("distribution", mode="before")
    @classmethod
    def _check_distribution(cls, value: Any) -> str:
        try:
            if isinstance(value, DistributionSpec):
                return value.to_distribution().descriptor
            if isinstance(value, dict):
                return DistributionSpec.model_validate(value).to_distribution().descriptor
            return WeightDistribution.from_descriptor(str(value)).descriptor
        except LPPError as e:
            raise ValueError(e.message)
        except ValidationError as e:
            raise ValueError("; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors()))

    @model_validator(mode="after")
    def _check_family(self) -> 'ExperimentSpec':
        name = self.experiment
        if self.n_list is not None:
            if not self.n_list:
                raise ValueError("n_list must not be empty")
            if any(n < 1 for n in self.n_list):
                raise ValueError(f"n_list entries must be >= 1, got {self.n_list}")
            if any(b <= a for a, b in zip(self.n_list[:-1], self.n_list[1:])):
                raise ValueError(f"n_list must be strictly ascending, got {self.n_list}")
        if self.t_list is not None:
            if not self.t_list or any(abs(t) > 0.5 for t in self.t_list):
                raise ValueError(f"t_list entries must satisfy |t| <= 1/2, got {self.t_list}")
        if self.r_list is not None:
            if not self.r_list or any(r < 0 for r in self.r_list):
                raise ValueError(f"r_list entries must be non-negative, got {self.r_list}")
            if any(b <= a for a, b in zip(self.r_list[:-1], self.r_list[1:])):
                raise ValueError(f"r_list must be strictly ascending, got {self.r_list}")
        # left-tail 的倾斜是整块向下倾斜，与 method 无关；tilt=0 即直接抽样
        if self.tilt is not None and self.method != "tilted" and name != "left-tail":
            raise ValueError("tilt requires method=tilted")

        if name == "verify":
            if self.max_n is not None and self.max_n > Config.ORACLE_MAX_N:
                raise ValueError(f"max_n must be <= {Config.ORACLE_MAX_N}, got {self.max_n}")
            return self
        if name == "uniform-walk":
            self._require_scale()
            if any(n % 2 for n in self.scales):
                raise ValueError("uniform-walk needs even n")
            return self

        self._require_scale()
        if name == "identity":
            if self.budget is None and self.n_samples is None:
                raise ValueError("identity needs budget (or n_samples)")
        elif self.n_samples is None:
            raise ValueError(f"{name} needs n_samples")

        if name in ("shape", "tail", "fekete", "midpoint", "endpoint", "identity") and self.t is None:
            raise ValueError(f"{name} needs t")
        if name in ("tail", "fekete", "monotone") and self.r is None:
            raise ValueError(f"{name} needs r")
        if name == "fekete" and self.n_list is None:
            raise ValueError("fekete needs n_list")
        if name == "monotone":
            if not self.t_list:
                raise ValueError("monotone needs t_list")
            if self.t_list[0] < 0 or any(b <= a for a, b in zip(self.t_list[:-1], self.t_list[1:])):
                raise ValueError(f"t_list must be ascending in [0, 1/2], got {self.t_list}")
        if name == "convexity":
            if not self.t_list or not self.r_list:
                raise ValueError("convexity needs t_list and r_list")
            if any(b <= a for a, b in zip(self.t_list[:-1], self.t_list[1:])):
                raise ValueError(f"t_list must be strictly ascending, got {self.t_list}")
        if name == "left-tail" and self.eps is None:
            raise ValueError("left-tail needs eps")
        if name in GEODESIC_EXPERIMENTS:
            if name != "corner" and not self.t > 0:
                raise ValueError(f"{name} needs 0 < t <= 1/2, got t={self.t}")
            if any(n % 2 for n in self.scales):
                raise ValueError(f"{name} needs even n, got {self.scales}")
        return self

    def _require_scale(self):
        if self.n is None and self.n_list is None:
            raise ValueError(f"{self.experiment} needs n or n_list")
        if self.n is not None and self.n_list is not None:
            raise ValueError("give either n or n_list, not both")

    @property
    def scales(self) -> List[int]:
        return list(self.n_list) if self.n_list is not None else [self.n]

    @property
    def samples(self) -> Optional[int]:
        return self.budget if self.budget is not None else self.n_samples

    @property
    def weight_distribution(self) -> WeightDistribution:
        return WeightDistribution.from_descriptor(self.distribution)

    def to_file(self, path: str):
        """写成扁平 YAML；未设置的键不写出"""
        OmegaConf.save(OmegaConf.create(self.model_dump(exclude_none=True)), path)

    @classmethod
    def from_file(cls, path: str, overrides: Optional[Dict[str, Any]] = None) -> 'ExperimentSpec':
        """读取配置文件，命令行给出的值覆盖文件中的值"""
        try:
            data = OmegaConf.to_container(OmegaConf.load(path), resolve=True)
        except (yaml.YAMLError, OmegaConfBaseException) as e:
            raise SpecValidationError(f"cannot parse config file {path}: {e}")
        if not isinstance(data, dict):
            raise SpecValidationError(f"config file {path} must hold a flat mapping")
        return cls.build({**data, **(overrides or {})})

    @classmethod
    def build(cls, data: Dict[str, Any]) -> 'ExperimentSpec':
        """校验失败统一转为 SpecValidationError"""
        try:
            return cls.model_validate({key: value for key, value in data.items() if value is not None})
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc']) or 'spec'}: {err['msg']}" for err in e.errors()
            )
            raise SpecValidationError(f"invalid experiment spec: {problems}")
