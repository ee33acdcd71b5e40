class TatamiError(Exception):
    """项目内所有可预期错误的基类"""


class FormatError(TatamiError):
    """文本格式错误，附带行号"""

    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f'第{line_no}行: {message}'
        super().__init__(message)


class PreconditionError(TatamiError):
    """调用方违反了函数的前置条件"""


class ResourceExhausted(TatamiError):
    """搜索节点或传播预算耗尽，无法给出精确结果"""


class NotMonotone(FormatError):
    """子句中同时出现正负文字"""


class NonPlanarLayout(TatamiError):
    """同侧子句跨度相交但不嵌套，无法布局"""


class AssemblyError(TatamiError):
    """拼装阶段内部一致性检查失败"""
