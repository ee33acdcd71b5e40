from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np

from tatami.errors import PreconditionError
from tatami.gadgets.framework import Gadget, ProfileTable
from tatami.gadgets.gadget_file import gadget_from_cells, gadget_from_rows, gadget_rows
from tatami.grid.puzzle import CellSet, ClueKind, Solution

# 导线：奇数行为 `|+.|`，偶数行为空
WIRE_CLUE_ROW = '|+.|'
WIRE_EMPTY_ROW = '....'
WIRE_DEFAULT_HEIGHT = 2

TERMINATOR_ROWS = ('.||..-',
                   '|.....',
                   '-....+')

# 变量带的左右两端：上方五行、中间填充七行、下方五行为上方的镜像
VARIABLE_EDGE = ('.', '.', '|', '.', '.')
VARIABLE_EDGE_BLOCK = '.|'
VARIABLE_FILL_ROWS = 7
VARIABLE_WALL_CUE = '|'
BAND_ROWS = 2 * len(VARIABLE_EDGE) + VARIABLE_FILL_ROWS

# 相邻两根导线之间的两列连接器，逐行列出：一个 `+` 在带的正中，八个 `|` 关于中线对称
COUPLER_COLUMNS = ('....|.|.+.|.|....',
                   '..|.|.......|.|..')
STUB_ROWS = 3
# 没有子句的接口：导线共伸出这么多行后才接终结器
TERMINATED_STUB_ROWS = 5

# 子句：每根导线一个块，块之间和两端是分隔列，分隔列可重复以拉宽子句
CLAUSE_BLOCK = ('-..+...-',
                '-.|....-',
                '-....|.-',
                '-..|....',
                '-.......',
                '-..+.-.+')
CLAUSE_SEPARATOR = '.....|'
CLAUSE_LANE_OFFSET = 3
CLAUSE_ROWS = 3 + len(CLAUSE_BLOCK)
CLAUSE_WIRES = 3

# 同一变量上相邻接口的列距：导线4列加连接器2列
COUPLER_PITCH = 4 + len(COUPLER_COLUMNS)
# 同一子句相邻两条腿的最小列距，即子句块宽加一列分隔列
CLAUSE_PITCH = len(CLAUSE_BLOCK[0]) + 1


class Polarity(Enum):
    POSITIVE = '+'
    NEGATIVE = '-'

    @property
    def label(self):
        return 'pos' if self is Polarity.POSITIVE else 'neg'

    def flipped(self):
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


@dataclass(frozen=True)
class WireSpec:
    """
    :param height: 重复单元个数K，导线占2K+1行
    :param polarity: POSITIVE向上接正子句，NEGATIVE为上下镜像
    """
    height: int = WIRE_DEFAULT_HEIGHT
    polarity: Polarity = Polarity.POSITIVE


@dataclass(frozen=True)
class VariableSpec:
    num_wires: int = 2


@dataclass(frozen=True)
class ClauseSpec:
    """
    :param gaps: 相邻两根导线之间额外重复的分隔列数
    """
    polarity: Polarity = Polarity.POSITIVE
    gaps: Tuple[int, int] = (0, 0)


def mirrored(g: Gadget, name=None) -> Gadget:
    """上下翻转，可选区域编号不变"""
    clue_rows, mask = gadget_rows(g)
    return gadget_from_rows(name or g.name, clue_rows[::-1], mask[::-1])


def wire_rows(height, start_row=0) -> List[str]:
    return [WIRE_CLUE_ROW if (start_row + r) % 2 else WIRE_EMPTY_ROW for r in range(2 * height + 1)]


def make_wire(spec: WireSpec = WireSpec()) -> Gadget:
    """
    内导线加内护套，两端各一个可选区域（`+`列与空列）
    可选区域0在上端，1在下端；负极性时上下翻转
    """
    if spec.height < 1:
        raise PreconditionError(f'导线高度必须不小于1：{spec.height}')
    rows = wire_rows(spec.height)
    last = len(rows) - 1
    mask = ['M00M' if r == 0 else 'M11M' if r == last else 'MMMM' for r in range(len(rows))]
    name = 'wire' if spec.height == WIRE_DEFAULT_HEIGHT else f'wire-{spec.height}'
    g = gadget_from_rows(name, rows, mask)
    return g if spec.polarity is Polarity.POSITIVE else mirrored(g)


def wire_table(g: Gadget) -> ProfileTable:
    return ProfileTable.from_subsets(g, [[0], [1]])


def make_terminator(polarity: Polarity = Polarity.POSITIVE) -> Gadget:
    """接在导线上端的终结器，唯一的可选区域是导线末行的两格"""
    rows = list(TERMINATOR_ROWS) + ['.' * len(TERMINATOR_ROWS[0])]
    mask = ['M' * len(TERMINATOR_ROWS[0])] * len(TERMINATOR_ROWS) + ['..00..']
    g = gadget_from_rows('terminator', rows, mask)
    return g if polarity is Polarity.POSITIVE else mirrored(g)


def terminator_table(g: Gadget) -> ProfileTable:
    return ProfileTable.from_subsets(g, [[], [0]])


def band_rows(num_wires, start_row) -> List[str]:
    """
    变量带的BAND_ROWS行，相邻导线之间是两列连接器
    :param start_row: 变量带首行在宿主网格中的行号，只用到奇偶性
    """
    top = len(VARIABLE_EDGE)
    out = []
    for br in range(BAND_ROWS):
        odd = (start_row + br) % 2 == 1
        wire = WIRE_CLUE_ROW if odd else WIRE_EMPTY_ROW
        if br < top:
            edge = VARIABLE_EDGE[br]
        elif br >= top + VARIABLE_FILL_ROWS:
            edge = VARIABLE_EDGE[BAND_ROWS - 1 - br]
        else:
            edge = VARIABLE_EDGE_BLOCK[(start_row + br) % 2]
        coupler = ''.join(col[br] for col in COUPLER_COLUMNS)
        wall = VARIABLE_WALL_CUE if br == 0 else '.'
        row = '+' + wall + edge
        for i in range(num_wires):
            row += wire + (coupler if i < num_wires - 1 else edge)
        out.append(row + wall + '+')
    return out


def make_variable(spec: VariableSpec = VariableSpec()) -> Gadget:
    """
    变量带加上每个接口上下各STUB_ROWS行导线，相邻接口的导线桩左右紧贴
    上方接口的可选区域编号为0..k-1，下方为k..2k-1
    """
    k = spec.num_wires
    if k < 1:
        raise PreconditionError(f'变量至少需要一个接口：{k}')
    band = band_rows(k, STUB_ROWS)
    width = len(band[0])
    total = 2 * STUB_ROWS + BAND_ROWS
    clue_rows = []
    mandatory = np.zeros((total, width), dtype=bool)
    mandatory[STUB_ROWS:STUB_ROWS + BAND_ROWS, :] = True
    optionals = [np.zeros((total, width), dtype=bool) for _ in range(2 * k)]
    for r in range(total):
        if STUB_ROWS <= r < STUB_ROWS + BAND_ROWS:
            clue_rows.append(band[r - STUB_ROWS])
            continue
        wire = WIRE_CLUE_ROW if r % 2 else WIRE_EMPTY_ROW
        clue_rows.append('..' + ''.join('.' + wire + '.' for _ in range(k)) + '..')
        for i in range(k):
            x = 3 + COUPLER_PITCH * i
            mandatory[r, [x, x + 3]] = True
            if r == 0:
                optionals[i][r, x + 1:x + 3] = True
            elif r == total - 1:
                optionals[k + i][r, x + 1:x + 3] = True
            else:
                mandatory[r, x + 1:x + 3] = True
    return gadget_from_cells(f'variable-{k}', clue_rows, CellSet(mandatory), [CellSet(o) for o in optionals])


def variable_table(g: Gadget) -> ProfileTable:
    k = len(g.optionals) // 2
    return ProfileTable.from_subsets(g, [list(range(k)), list(range(k, 2 * k))])


def clause_rows(gaps: Sequence[int] = (0, 0)) -> Tuple[List[str], List[int]]:
    """
    正子句的9行及三根导线所在列（导线`+`列）
    :return: (提示行, 导线列)
    """
    body = [''] * len(CLAUSE_BLOCK)
    lanes = []
    for i in range(CLAUSE_WIRES):
        body = [row + CLAUSE_SEPARATOR[r] for r, row in enumerate(body)]
        lanes.append(len(body[0]) + CLAUSE_LANE_OFFSET)
        body = [row + CLAUSE_BLOCK[r] for r, row in enumerate(body)]
        if i < CLAUSE_WIRES - 1:
            body = [row + CLAUSE_SEPARATOR[r] * gaps[i] for r, row in enumerate(body)]
    body = [row + CLAUSE_SEPARATOR[r] for r, row in enumerate(body)]
    width = len(body[0])
    bar = '-' + '.' * (width - 1)
    solid = ''.join('-' if c in lanes else '.' if c - 1 in lanes else '+' for c in range(width))
    split = '-' + '.' * (width - 2) + '-'
    return [bar, solid, split] + body, lanes


def clause_width(gaps: Sequence[int]):
    return len(clause_rows(gaps)[0][0])


def make_clause(spec: ClauseSpec = ClauseSpec()) -> Gadget:
    """
    子句加上其下方一行，三根导线的末端两格各为一个可选区域
    被子句覆盖的可选区域表示该文字为假；负子句上下翻转
    """
    g1, g2 = spec.gaps
    if g1 < 0 or g2 < 0:
        raise PreconditionError(f'子句间隔必须非负：{spec.gaps}')
    rows, lanes = clause_rows(spec.gaps)
    width = len(rows[0])
    mask = ['M' * width] * len(rows)
    interface = ['.'] * width
    for i, lane in enumerate(lanes):
        interface[lane] = interface[lane + 1] = str(i)
    rows = rows + ['.' * width]
    mask = mask + [''.join(interface)]
    name = f'clause-{spec.polarity.label}-{g1}-{g2}'
    if spec.polarity is Polarity.NEGATIVE:
        rows, mask = rows[::-1], mask[::-1]
    return gadget_from_rows(name, rows, mask)


def clause_table(g: Gadget) -> ProfileTable:
    """除了全部可选区域都被覆盖（三个文字全假）以外的7个轮廓"""
    full = (1 << CLAUSE_WIRES) - 1
    return ProfileTable.from_subsets(g, [[i for i in range(CLAUSE_WIRES) if mask >> i & 1] for mask in range(full)])


def shipped_gadgets() -> List[Tuple[str, Gadget, ProfileTable]]:
    """仓库gadgets/目录下每个Tatamibari小工具文件对应的生成结果"""
    out = []
    for height in (WIRE_DEFAULT_HEIGHT, 3):
        g = make_wire(WireSpec(height))
        out.append((f'{g.name}.gadget', g, wire_table(g)))
    g = make_terminator()
    out.append(('terminator.gadget', g, terminator_table(g)))
    for k in (1, 2, 3):
        g = make_variable(VariableSpec(k))
        out.append((f'{g.name}.gadget', g, variable_table(g)))
    for polarity, gaps in ((Polarity.POSITIVE, (0, 0)), (Polarity.NEGATIVE, (0, 0)), (Polarity.POSITIVE, (2, 0))):
        g = make_clause(ClauseSpec(polarity, gaps))
        out.append((f'{g.name}.gadget', g, clause_table(g)))
    return out


def _squares(g: Gadget, s: Solution):
    return [rect for i, rect in s.assignments if g.puzzle.clues[i].kind is ClueKind.SQUARE]


def wire_squares_ok(g: Gadget, s: Solution) -> bool:
    """每个 `+` 提示都被一个2x2正方形覆盖"""
    return all(rect.height == 2 and rect.width == 2 for rect in _squares(g, s))


def wire_parity_ok(g: Gadget, s: Solution) -> bool:
    """所有正方形的顶行同奇偶"""
    return len({rect.top % 2 for rect in _squares(g, s)}) <= 1


def sheathing_ok(g: Gadget, s: Solution) -> bool:
    """
    内护套的矩形宽1高2，内部边界与正方形错开一行
    只有贴着被正方形覆盖的末行时才允许高3
    """
    squares = _squares(g, s)
    if not squares:
        return False
    parity = squares[0].top % 2
    covered_rows = {r for rect in squares for r in range(rect.top, rect.bottom + 1)}
    last = g.rows - 1
    for i, rect in s.assignments:
        if g.puzzle.clues[i].kind is not ClueKind.VERTICAL:
            continue
        if rect.width != 1 or rect.height not in (2, 3):
            return False
        for y in (rect.top, rect.top + rect.height):
            if 0 < y < g.rows and y % 2 == parity:
                return False
        if rect.height == 3:
            end = 0 if rect.top == 0 else last if rect.bottom == last else None
            if end is None or end not in covered_rows:
                return False
    return True
