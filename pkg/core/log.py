import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

from config import Config

def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None):
    """配置双输出日志系统（控制台输出到stderr，结果数据独占stdout）"""
    logger = logging.getLogger()
    logger.setLevel(getattr(logging, (level or Config.LOG_LEVEL).upper(), logging.INFO))

    # 清除现有handler
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    # 控制台Handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    console_handler.setFormatter(console_formatter)
    logger.addHandler(console_handler)

    # 文件Handler（仅在配置了日志文件时启用）
    log_file = log_file if log_file is not None else Config.LOG_FILE
    if log_file:
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=10*1024*1024,
            backupCount=5,
            encoding='utf-8'
        )
        file_formatter = logging.Formatter(
            '%(asctime)s | %(levelname)s | %(message)s'
        )
        file_handler.setFormatter(file_formatter)
        logger.addHandler(file_handler)

    # numba编译日志过于冗长
    logging.getLogger("numba").setLevel(logging.WARNING)
