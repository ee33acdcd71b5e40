from typing import List

from tatami.errors import FormatError
from tatami.grid.puzzle import Clue, ClueKind, Puzzle, Rect, Shade, Solution

CLUE_CHARS = '+-|'


def _content_lines(text):
    """去掉行尾空白，保留行号，跳过空行"""
    out = []
    for no, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip()
        if line:
            out.append((no, line))
    return out


def _ints(tokens, no, count):
    if len(tokens) != count:
        raise FormatError(f'需要{count}个整数，实际得到{len(tokens)}个', no)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f'无法解析整数：{" ".join(tokens)}', no)


def parse_clue_rows(rows, cols, lines, first_no=1):
    """解析rows行提示字符，返回Clue列表"""
    clues = []
    for r, (no, line) in enumerate(lines):
        if len(line) != cols:
            raise FormatError(f'需要{cols}个字符，实际为{len(line)}个', no)
        for c, ch in enumerate(line):
            if ch in CLUE_CHARS:
                clues.append(Clue(r, c, ClueKind.from_char(ch)))
            elif ch != '.':
                raise FormatError(f'非法字符：{ch!r}', no)
    return clues


def read_puzzle(text) -> Puzzle:
    """
    解析谜题文本
    :param text: `tatamibari <rows> <cols>` 开头，后接rows行网格，可选 `dark <row> <col>` 行
    :return: Puzzle
    """
    lines = _content_lines(text)
    if not lines:
        raise FormatError('空输入')
    no, header = lines[0]
    tokens = header.split()
    if not tokens or tokens[0] != 'tatamibari':
        raise FormatError('缺少 tatamibari 头部', no)
    rows, cols = _ints(tokens[1:], no, 2)
    if rows < 1 or cols < 1:
        raise FormatError(f'网格尺寸必须为正：{rows}x{cols}', no)
    grid_lines = lines[1:1 + rows]
    if len(grid_lines) != rows:
        raise FormatError(f'需要{rows}行网格，实际为{len(grid_lines)}行', no)
    clues = {(c.row, c.col): c for c in parse_clue_rows(rows, cols, grid_lines)}
    for no, line in lines[1 + rows:]:
        tokens = line.split()
        if tokens[0] != 'dark':
            raise FormatError(f'无法识别的行：{line}', no)
        r, c = _ints(tokens[1:], no, 2)
        clue = clues.get((r, c))
        if clue is None:
            raise FormatError(f'dark 标记的位置没有提示：{r} {c}', no)
        clues[(r, c)] = Clue(r, c, clue.kind, Shade.DARK)
    return Puzzle(rows, cols, tuple(clues.values()))


def format_puzzle(p: Puzzle) -> str:
    grid = [['.'] * p.cols for _ in range(p.rows)]
    for clue in p.clues:
        grid[clue.row][clue.col] = clue.kind.value
    lines = [f'tatamibari {p.rows} {p.cols}']
    lines.extend(''.join(row) for row in grid)
    lines.extend(f'dark {c.row} {c.col}' for c in p.clues if c.shade is Shade.DARK)
    return '\n'.join(lines) + '\n'


def read_solution(text, p: Puzzle) -> Solution:
    """
    解析解文本，按提示位置映射到谜题的提示编号
    提示数目不符等结构问题留给验证器报告，这里只拒绝格式错误
    """
    lines = _content_lines(text)
    if not lines:
        raise FormatError('空输入')
    return _parse_solution(lines, p)


def read_solutions(text, p: Puzzle) -> List[Solution]:
    """多个解依次排列，每个以 `solution <k>` 行开头"""
    lines = _content_lines(text)
    if not lines:
        raise FormatError('空输入')
    blocks = []
    for no, line in lines:
        if line.startswith('solution') or not blocks:
            blocks.append([])
        blocks[-1].append((no, line))
    return [_parse_solution(block, p) for block in blocks]


def _parse_solution(lines, p: Puzzle) -> Solution:
    no, header = lines[0]
    tokens = header.split()
    if not tokens or tokens[0] != 'solution':
        raise FormatError('缺少 solution 头部', no)
    k, = _ints(tokens[1:], no, 1)
    body = lines[1:]
    if len(body) != k:
        raise FormatError(f'声明了{k}个矩形，实际为{len(body)}个', no)
    assignments = []
    for no, line in body:
        tokens = line.split()
        if len(tokens) != 8 or tokens[0] != 'rect' or tokens[5] != 'clue':
            raise FormatError(f'无法识别的行：{line}', no)
        top, left, height, width = _ints(tokens[1:5], no, 4)
        row, col = _ints(tokens[6:8], no, 2)
        if height < 1 or width < 1:
            raise FormatError(f'矩形尺寸必须为正：{height}x{width}', no)
        index = p.clue_index(row, col)
        if index is None:
            raise FormatError(f'该位置没有提示：{row} {col}', no)
        assignments.append((index, Rect(top, left, height, width)))
    return Solution(tuple(assignments))


def format_solution(p: Puzzle, s: Solution) -> str:
    lines: List[str] = [f'solution {len(s)}']
    for i, rect in s.assignments:
        clue = p.clues[i]
        lines.append(f'rect {rect.top} {rect.left} {rect.height} {rect.width} clue {clue.row} {clue.col}')
    return '\n'.join(lines) + '\n'


def format_solutions(p: Puzzle, solutions) -> str:
    """解之间空一行"""
    return '\n'.join(format_solution(p, s) for s in solutions)


def load_puzzle(path) -> Puzzle:
    with open(path, 'r', encoding='utf-8') as f:
        return read_puzzle(f.read())


def load_solution(path, p: Puzzle) -> Solution:
    with open(path, 'r', encoding='utf-8') as f:
        return read_solution(f.read(), p)
