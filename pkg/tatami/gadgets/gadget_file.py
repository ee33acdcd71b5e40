import string
from typing import List, Sequence, Tuple

import numpy as np

from tatami import SUPPORT_RULES
from tatami.errors import FormatError, PreconditionError
from tatami.gadgets.framework import Gadget, ProfileTable, TATAMI_RULES
from tatami.grid.puzzle import CellSet, Puzzle
from tatami.grid.reader import _content_lines, _ints, parse_clue_rows
from tatami.spiral.puzzle import SGPuzzle, read_sg_clues
from tatami.spiral.rules import SPIRAL_RULES

# 掩码中可选区域编号使用的字符，第i个可选区域写作OPTIONAL_IDS[i]
OPTIONAL_IDS = string.digits + string.ascii_lowercase


def _mask_lines(rows, cols, lines) -> Tuple[CellSet, List[CellSet]]:
    mandatory = np.zeros((rows, cols), dtype=bool)
    optionals = {}
    for r, (no, line) in enumerate(lines):
        if len(line) != cols:
            raise FormatError(f'掩码需要{cols}个字符，实际为{len(line)}个', no)
        for c, ch in enumerate(line):
            if ch == 'M':
                mandatory[r, c] = True
            elif ch in OPTIONAL_IDS:
                optionals.setdefault(OPTIONAL_IDS.index(ch), np.zeros((rows, cols), dtype=bool))[r, c] = True
            elif ch != '.':
                raise FormatError(f'掩码中的非法字符：{ch!r}', no)
    if sorted(optionals) != list(range(len(optionals))):
        raise FormatError(f'可选区域编号必须从0开始连续：{sorted(optionals)}')
    return CellSet(mandatory), [CellSet(optionals[i]) for i in range(len(optionals))]


def gadget_from_rows(name, clue_rows: Sequence[str], mask_rows: Sequence[str], rules=TATAMI_RULES) -> Gadget:
    """由提示行和掩码行构造Tatamibari小工具"""
    rows, cols = len(clue_rows), len(clue_rows[0])
    puzzle = Puzzle(rows, cols, tuple(parse_clue_rows(rows, cols, list(enumerate(clue_rows, start=1)))))
    mandatory, optionals = _mask_lines(rows, cols, list(enumerate(mask_rows, start=1)))
    return _assemble(name, puzzle, mandatory, optionals, rules)


def gadget_from_cells(name, clue_rows: Sequence[str], mandatory: CellSet, optionals: Sequence[CellSet],
                      rules=TATAMI_RULES) -> Gadget:
    """可选区域较多、掩码字符不够用时直接给出单元格集合"""
    rows, cols = len(clue_rows), len(clue_rows[0])
    puzzle = Puzzle(rows, cols, tuple(parse_clue_rows(rows, cols, list(enumerate(clue_rows, start=1)))))
    return _assemble(name, puzzle, mandatory, list(optionals), rules)


def mask_rows(g: Gadget) -> List[str]:
    if len(g.optionals) > len(OPTIONAL_IDS):
        raise PreconditionError(f'掩码最多表示{len(OPTIONAL_IDS)}个可选区域：{len(g.optionals)}')
    mask = [['.'] * g.cols for _ in range(g.rows)]
    for r, c in g.mandatory:
        mask[r][c] = 'M'
    for i, opt in enumerate(g.optionals):
        for r, c in opt:
            mask[r][c] = OPTIONAL_IDS[i]
    return [''.join(row) for row in mask]


def gadget_rows(g: Gadget) -> Tuple[List[str], List[str]]:
    """Tatamibari小工具的提示行与掩码行"""
    grid = [['.'] * g.cols for _ in range(g.rows)]
    for clue in g.puzzle.clues:
        grid[clue.row][clue.col] = clue.kind.value
    return [''.join(row) for row in grid], mask_rows(g)


def _assemble(name, puzzle, mandatory, optionals, rules):
    area = mandatory
    for opt in optionals:
        area = area | opt
    return Gadget(name, puzzle, area, mandatory, tuple(optionals), rules)


def read_gadget(text) -> Tuple[Gadget, ProfileTable]:
    """
    解析小工具定义文件，根据第二行自动识别Tatamibari或Spiral Galaxies
    :return: (Gadget, 期望的轮廓表)
    """
    lines = _content_lines(text)
    if len(lines) < 2:
        raise FormatError('小工具文件过短')
    no, header = lines[0]
    tokens = header.split()
    if len(tokens) != 2 or tokens[0] != 'gadget':
        raise FormatError('缺少 gadget <name> 头部', no)
    name = tokens[1]
    no, kind_line = lines[1]
    tokens = kind_line.split()
    if not tokens or tokens[0] not in SUPPORT_RULES:
        raise FormatError('第二行必须是 tatamibari 或 spiralgalaxies', no)
    rows, cols = _ints(tokens[1:], no, 2)
    if rows < 1 or cols < 1:
        raise FormatError(f'网格尺寸必须为正：{rows}x{cols}', no)
    try:
        mask_at = next(i for i, (_, line) in enumerate(lines) if line == 'mask')
    except StopIteration:
        raise FormatError('缺少 mask 段')
    body = lines[2:mask_at]
    if tokens[0] == 'tatamibari':
        if len(body) != rows:
            raise FormatError(f'需要{rows}行网格，实际为{len(body)}行', no)
        puzzle = Puzzle(rows, cols, tuple(parse_clue_rows(rows, cols, body)))
        rules = TATAMI_RULES
    else:
        puzzle = SGPuzzle(rows, cols, tuple(read_sg_clues(body, rows, cols)))
        rules = SPIRAL_RULES
    mask_lines = lines[mask_at + 1:mask_at + 1 + rows]
    if len(mask_lines) != rows:
        raise FormatError(f'掩码需要{rows}行，实际为{len(mask_lines)}行')
    mandatory, optionals = _mask_lines(rows, cols, mask_lines)
    gadget = _assemble(name, puzzle, mandatory, optionals, rules)

    rest = lines[mask_at + 1 + rows:]
    if not rest:
        raise FormatError('缺少 table 段')
    no, table_line = rest[0]
    tokens = table_line.split()
    if not tokens or tokens[0] != 'table':
        raise FormatError('缺少 table <n> 行', no)
    n, = _ints(tokens[1:], no, 1)
    if len(rest) - 1 != n:
        raise FormatError(f'声明了{n}个轮廓，实际为{len(rest) - 1}个', no)
    subsets = []
    for no, line in rest[1:]:
        tokens = line.split()
        if tokens[0] != 'profile':
            raise FormatError(f'无法识别的行：{line}', no)
        ids = _ints(tokens[1:], no, len(tokens) - 1)
        for i in ids:
            if not 0 <= i < len(optionals):
                raise FormatError(f'可选区域编号越界：{i}', no)
        subsets.append(ids)
    return gadget, ProfileTable.from_subsets(gadget, subsets)


def format_gadget(g: Gadget, table: ProfileTable) -> str:
    """与read_gadget互逆；轮廓按给定顺序写出"""
    lines = [f'gadget {g.name}']
    if isinstance(g.puzzle, SGPuzzle):
        lines.append(f'spiralgalaxies {g.rows} {g.cols}')
        lines.extend(f'clue {c.y2} {c.x2}' for c in g.puzzle.clues)
        mask = mask_rows(g)
    else:
        lines.append(f'tatamibari {g.rows} {g.cols}')
        grid, mask = gadget_rows(g)
        lines.extend(grid)
    lines.append('mask')
    lines.extend(mask)
    lines.append(f'table {len(table)}')
    for ids in table.subsets():
        lines.append(' '.join(['profile'] + [str(i) for i in sorted(ids)]))
    return '\n'.join(lines) + '\n'


def load_gadget(path) -> Tuple[Gadget, ProfileTable]:
    with open(path, 'r', encoding='utf-8') as f:
        return read_gadget(f.read())


def save_gadget(path, g: Gadget, table: ProfileTable):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(format_gadget(g, table))
