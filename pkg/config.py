import os
from dotenv import load_dotenv

load_dotenv()

def get_bool_env(key: str, default: bool = False) -> bool:
    """从环境变量获取布尔值"""
    value = os.getenv(key, str(default)).lower()
    return value in ('true', '1', 'yes', 'on')

def get_int_env(key: str, default: int) -> int:
    """从环境变量获取整数，空字符串视为未设置"""
    value = os.getenv(key, "").strip()
    return int(value) if value else default

class Config:
    # 版本信息（写入每一行结果，便于追溯）
    TOOL_VERSION = "0.1.0"

    # 并行配置
    WORKERS = get_int_env("LPP_WORKERS", os.cpu_count() or 1)
    CHUNK_SIZE = get_int_env("LPP_CHUNK_SIZE", 4096)
    PROGRESS = get_bool_env("LPP_PROGRESS", True)

    # 随机数配置
    DEFAULT_SEED = get_int_env("LPP_SEED", 20240601)

    # 统计配置
    CONFIDENCE = float(os.getenv("LPP_CONFIDENCE", "0.95"))

    # 精确枚举配置
    ORACLE_MAX_N = get_int_env("LPP_ORACLE_MAX_N", 10)
    EXACT_BINOMIAL_MAX_N = get_int_env("LPP_EXACT_BINOMIAL_MAX_N", 20)

    # 走廊默认配置：路点间距 = ceil(n / 除数)
    DEFAULT_SPACING_DIVISOR = get_int_env("LPP_DEFAULT_SPACING_DIVISOR", 8)

    # 日志配置
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
    LOG_FILE = os.getenv("LOG_FILE", "")
