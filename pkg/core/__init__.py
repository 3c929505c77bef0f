# core包初始化文件
from config import Config

__version__ = Config.TOOL_VERSION
