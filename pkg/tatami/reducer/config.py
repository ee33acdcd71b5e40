import json
from dataclasses import asdict, dataclass

from tatami.errors import PreconditionError
from tatami.gadgets.tatami_gadgets import CLAUSE_PITCH, STUB_ROWS, TERMINATED_STUB_ROWS, TERMINATOR_ROWS

# 终结器连同延长的导线桩之外至少还要留一行给子句的接口行
MIN_GADGET_GAP = TERMINATED_STUB_ROWS + len(TERMINATOR_ROWS) + 1


@dataclass(frozen=True)
class ReducerConfig:
    """
    归约的几何参数，默认值与conf/reducer.json一致
    :param pitch: 相邻两个变量的接口列距，不小于子句相邻两腿的最小列距，大于时子句按差值拉宽
    :param gadget_gap: 变量带与第一层子句、以及相邻两层子句之间导线占的行数，必须为奇数
    :param margin: 四周留白的最小宽度
    :param stub_rows: 变量带上下导线桩的行数，由变量小工具固定
    """
    pitch: int = CLAUSE_PITCH
    gadget_gap: int = 9
    margin: int = 2
    stub_rows: int = STUB_ROWS

    def __post_init__(self):
        if self.pitch < CLAUSE_PITCH:
            raise PreconditionError(f'pitch不能小于{CLAUSE_PITCH}：{self.pitch}')
        if self.gadget_gap % 2 == 0 or self.gadget_gap < MIN_GADGET_GAP:
            raise PreconditionError(f'gadget_gap必须为不小于{MIN_GADGET_GAP}的奇数：{self.gadget_gap}')
        if self.margin < 0:
            raise PreconditionError(f'margin不能为负：{self.margin}')
        if self.stub_rows != STUB_ROWS:
            raise PreconditionError(f'变量小工具的导线桩固定为{STUB_ROWS}行：{self.stub_rows}')

    @classmethod
    def default(cls):
        return cls()

    @classmethod
    def from_json(cls, path):
        with open(path, 'r', encoding='utf-8') as f:
            values = json.load(f)
        unknown = set(values) - set(asdict(cls()))
        if unknown:
            raise PreconditionError(f'未知的配置项：{sorted(unknown)}')
        return cls(**values)
