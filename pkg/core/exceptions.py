"""
LPP实验室异常定义
"""


class LPPError(Exception):
    """LPP实验室基础异常类"""

    def __init__(self, message: str, error_code: str = None):
        self.message = message
        self.error_code = error_code
        super().__init__(self.message)


class DistributionDomainError(LPPError):
    """参数超出定义域（如λ ≥ cgf定义域上确界、x ≤ 0）"""

    def __init__(self, message: str):
        super().__init__(message, "DOMAIN_ERROR")


class UnsupportedLawError(LPPError):
    """该分布不支持所请求的闭式结果"""

    def __init__(self, message: str):
        super().__init__(message, "UNSUPPORTED_LAW")


class LatticeOrderError(LPPError):
    """起点与终点不满足坐标序（不存在上右路径）"""

    def __init__(self, message: str):
        super().__init__(message, "ORDER_ERROR")


class ExtentError(LPPError):
    """格点超出权重场范围"""

    def __init__(self, message: str):
        super().__init__(message, "EXTENT_ERROR")


class ParityError(LPPError):
    """n必须为偶数"""

    def __init__(self, message: str):
        super().__init__(message, "PARITY_ERROR")


class EndpointMismatchError(LPPError):
    """通过值结果的端点与要求不符"""

    def __init__(self, message: str):
        super().__init__(message, "MISMATCH_ERROR")


class FieldAllocationError(LPPError):
    """权重场内存分配失败"""

    def __init__(self, requested_bytes: int):
        self.requested_bytes = requested_bytes
        super().__init__(f"Failed to allocate {requested_bytes} bytes for weight field", "RESOURCE_ERROR")


class OracleSizeError(LPPError):
    """暴力枚举规模超限"""

    def __init__(self, message: str):
        super().__init__(message, "SIZE_ERROR")


class RangeError(LPPError):
    """参数超出允许范围"""

    def __init__(self, message: str):
        super().__init__(message, "RANGE_ERROR")


class DegenerateTargetError(LPPError):
    """取整后的目标点离开格点区域"""

    def __init__(self, message: str):
        super().__init__(message, "DEGENERATE_TARGET")


class TiltDomainError(LPPError):
    """倾斜参数不在cgf定义域内"""

    def __init__(self, message: str):
        super().__init__(message, "TILT_DOMAIN_ERROR")


class CorridorMismatchError(LPPError):
    """走廊与(t, n)不匹配"""

    def __init__(self, message: str):
        super().__init__(message, "CORRIDOR_MISMATCH")


class FieldFormatError(LPPError):
    """权重场二进制文件格式错误"""

    def __init__(self, message: str):
        super().__init__(message, "FIELD_FORMAT_ERROR")


class SchemaMismatchError(LPPError):
    """结果文件与声明的模式不符"""

    def __init__(self, message: str):
        super().__init__(message, "SCHEMA_MISMATCH")


class SpecValidationError(LPPError):
    """实验配置校验失败"""

    def __init__(self, message: str):
        super().__init__(message, "SPEC_VALIDATION_ERROR")


# 输入或参数不合法（退出码2）；其余错误码视为运行期失败（退出码3）
VALIDATION_ERROR_CODES = frozenset({
    "DOMAIN_ERROR",
    "UNSUPPORTED_LAW",
    "ORDER_ERROR",
    "EXTENT_ERROR",
    "PARITY_ERROR",
    "SIZE_ERROR",
    "RANGE_ERROR",
    "DEGENERATE_TARGET",
    "TILT_DOMAIN_ERROR",
    "CORRIDOR_MISMATCH",
    "SCHEMA_MISMATCH",
    "SPEC_VALIDATION_ERROR",
})
