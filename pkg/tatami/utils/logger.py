import logging
import os
import sys

import termcolor

__all__ = ['setup_logger', 'set_level']

LEVEL_ENV = 'TATAMI_LOG_LEVEL'

_loggers = {}

LEVEL_COLORS = {
    "DEBUG": "blue",
    "INFO": "white",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "red",
}


class ColoredFormatter(logging.Formatter):
    """只给时间、级别和位置上色；消息本身保持原样，方便复制出现问题的坐标"""

    def __init__(self, use_color=True):
        super().__init__(datefmt="%m/%d %H:%M:%S")
        self.use_color = use_color

    def _paint(self, text, color, bold=False):
        if not self.use_color:
            return text
        return termcolor.colored(text, color=color, attrs=["bold"] if bold else None)

    def format(self, record):
        when = self._paint(self.formatTime(record, self.datefmt), "green")
        level = self._paint(f"{record.levelname:<7}", LEVEL_COLORS.get(record.levelname, "white"), bold=True)
        where = self._paint(f"{record.name}:{record.funcName}:{record.lineno}", "cyan")
        line = f"[{when} {level}] {where} - {record.getMessage()}"
        if record.exc_info:
            line += "\n" + self.formatException(record.exc_info)
        return line


def _env_level():
    name = os.environ.get(LEVEL_ENV, 'INFO').upper()
    return logging.getLevelName(name) if isinstance(logging.getLevelName(name), int) else logging.INFO


def setup_logger(name, output=None):
    """
    获取模块日志器，日志写到标准错误，标准输出留给命令的结果
    :param name: 模块名，一般为 __name__
    :param output: 额外写入的日志文件路径，None则不写文件
    :return: logging.Logger
    """
    if name in _loggers:
        return _loggers[name]
    logger = logging.getLogger(name)
    logger.setLevel(_env_level())
    logger.propagate = False

    ch = logging.StreamHandler(stream=sys.stderr)
    ch.setFormatter(ColoredFormatter(use_color=sys.stderr.isatty() and 'NO_COLOR' not in os.environ))
    logger.addHandler(ch)

    if output is not None:
        os.makedirs(os.path.dirname(output) or '.', exist_ok=True)
        fh = logging.FileHandler(output, mode='a', encoding='utf-8')
        fh.setFormatter(ColoredFormatter(use_color=False))
        logger.addHandler(fh)
    _loggers[name] = logger
    return logger


def set_level(level):
    """统一调整所有已创建日志器的级别，例如命令行的 --log_level"""
    for logger in _loggers.values():
        logger.setLevel(level)
