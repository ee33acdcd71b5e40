from dataclasses import dataclass
from typing import List, Optional, Tuple

from tatami.errors import FormatError
from tatami.grid.puzzle import CellSet
from tatami.validator import Verdict, Violation

# Spiral Galaxies的约束编号
SG_CONSTRAINTS = {
    1: '每个单元格恰好属于一个区域',
    2: '区域连通',
    3: '区域包含与其中心相接的单元格',
    4: '区域关于其中心180度旋转对称',
}


@dataclass(frozen=True, order=True)
class SGClue:
    """中心点，坐标放大两倍：单元格(r, c)的中心为(2r+1, 2c+1)"""
    y2: int
    x2: int

    def touching_cells(self) -> List[Tuple[int, int]]:
        rows = [(self.y2 - 1) // 2] if self.y2 % 2 else [self.y2 // 2 - 1, self.y2 // 2]
        cols = [(self.x2 - 1) // 2] if self.x2 % 2 else [self.x2 // 2 - 1, self.x2 // 2]
        return [(r, c) for r in rows for c in cols]

    def mirror(self, row, col):
        """单元格关于中心的180度旋转像"""
        return self.y2 - row - 1, self.x2 - col - 1

    def translate(self, d_row, d_col):
        return SGClue(self.y2 + 2 * d_row, self.x2 + 2 * d_col)


@dataclass(frozen=True)
class SGPuzzle:
    rows: int
    cols: int
    clues: Tuple[SGClue, ...]

    def __post_init__(self):
        assert self.rows >= 1 and self.cols >= 1, f'网格尺寸必须为正：{self.rows}x{self.cols}'
        clues = tuple(sorted(self.clues))
        assert len(set(clues)) == len(clues), '中心点重复'
        for clue in clues:
            assert 0 <= clue.y2 <= 2 * self.rows and 0 <= clue.x2 <= 2 * self.cols, f'中心点越界：{clue}'
        object.__setattr__(self, 'clues', clues)

    @property
    def num_cells(self):
        return self.rows * self.cols

    def rotated(self):
        """整个谜题旋转180度"""
        clues = tuple(SGClue(2 * self.rows - c.y2, 2 * self.cols - c.x2) for c in self.clues)
        return SGPuzzle(self.rows, self.cols, clues)


@dataclass(frozen=True)
class SGSolution:
    """owner[r][c]为单元格所属中心的编号，局部解中未覆盖的单元格为-1"""
    owner: Tuple[Tuple[int, ...], ...]

    def area_of(self, index) -> List[Tuple[int, int]]:
        return [(r, c) for r, row in enumerate(self.owner) for c, k in enumerate(row) if k == index]

    def covered(self) -> CellSet:
        return CellSet([[k >= 0 for k in row] for row in self.owner])

    def rotated(self, p: SGPuzzle):
        """与SGPuzzle.rotated配套：单元格旋转，中心编号映射到旋转后谜题的顺序"""
        rp = p.rotated()
        index = {c: i for i, c in enumerate(rp.clues)}
        remap = [index[SGClue(2 * p.rows - c.y2, 2 * p.cols - c.x2)] for c in p.clues]
        owner = tuple(tuple(remap[k] if k >= 0 else -1 for k in reversed(row)) for row in reversed(self.owner))
        return SGSolution(owner)


def sg_validate(p: SGPuzzle, s: SGSolution, profile: Optional[CellSet] = None) -> Verdict:
    """
    检查划分：恰好划分、区域连通、包含相接单元格、关于中心对称
    :param profile: 局部解的覆盖目标，默认为整个网格
    """
    found = {1: [], 2: [], 3: [], 4: []}
    if len(s.owner) != p.rows or any(len(row) != p.cols for row in s.owner):
        found[1].append(f'owner grid is not {p.rows}x{p.cols}')
        return Verdict(tuple(Violation(k, m) for k in sorted(found) for m in found[k]))
    target = profile if profile is not None else CellSet.full(p.rows, p.cols)
    for r in range(p.rows):
        for c in range(p.cols):
            k = s.owner[r][c]
            if k >= len(p.clues) or k < -1:
                found[1].append(f'cell ({r}, {c}) belongs to unknown clue {k}')
            elif k == -1 and (r, c) in target:
                found[1].append(f'cell ({r}, {c}) is not covered')
            elif k >= 0 and (r, c) not in target:
                found[1].append(f'cell ({r}, {c}) is covered outside the profile')
    for i, clue in enumerate(p.clues):
        cells = s.area_of(i)
        members = set(cells)
        if not CellSet.from_cells(p.rows, p.cols, cells).is_connected():
            found[2].append(f'area of clue {i} is not connected')
        for cell in clue.touching_cells():
            if cell not in members:
                found[3].append(f'area of clue {i} misses touching cell {cell}')
        for r, c in cells:
            if clue.mirror(r, c) not in members:
                found[4].append(f'cell ({r}, {c}) of clue {i} has no mirror image {clue.mirror(r, c)}')
    return Verdict(tuple(Violation(k, m) for k in sorted(found) for m in found[k]))


def read_sg_clues(lines, rows, cols) -> List[SGClue]:
    clues = []
    for no, line in lines:
        tokens = line.split()
        if len(tokens) != 3 or tokens[0] != 'clue':
            raise FormatError(f'无法识别的行：{line}', no)
        try:
            y2, x2 = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise FormatError(f'无法解析整数：{line}', no)
        if not (0 <= y2 <= 2 * rows and 0 <= x2 <= 2 * cols):
            raise FormatError(f'中心点越界：{y2} {x2}', no)
        clues.append(SGClue(y2, x2))
    if len(set(clues)) != len(clues):
        raise FormatError('中心点重复')
    return clues


def _lines(text):
    return [(no, line.rstrip()) for no, line in enumerate(text.splitlines(), start=1) if line.strip()]


def read_sg_puzzle(text) -> SGPuzzle:
    """`spiralgalaxies <rows> <cols>` 后接 `clue <2y> <2x>` 行"""
    lines = _lines(text)
    if not lines:
        raise FormatError('空输入')
    no, header = lines[0]
    tokens = header.split()
    if len(tokens) != 3 or tokens[0] != 'spiralgalaxies':
        raise FormatError('缺少 spiralgalaxies 头部', no)
    try:
        rows, cols = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise FormatError(f'无法解析整数：{header}', no)
    if rows < 1 or cols < 1:
        raise FormatError(f'网格尺寸必须为正：{rows}x{cols}', no)
    return SGPuzzle(rows, cols, tuple(read_sg_clues(lines[1:], rows, cols)))


def format_sg_puzzle(p: SGPuzzle) -> str:
    lines = [f'spiralgalaxies {p.rows} {p.cols}']
    lines.extend(f'clue {c.y2} {c.x2}' for c in p.clues)
    return '\n'.join(lines) + '\n'


def read_sg_solution(text, p: SGPuzzle) -> SGSolution:
    """`solution <rows> <cols>` 后接rows行、每行cols个整数"""
    lines = _lines(text)
    if not lines:
        raise FormatError('空输入')
    no, header = lines[0]
    tokens = header.split()
    if len(tokens) != 3 or tokens[0] != 'solution':
        raise FormatError('缺少 solution 头部', no)
    if (tokens[1], tokens[2]) != (str(p.rows), str(p.cols)):
        raise FormatError(f'解的尺寸与谜题不符：{tokens[1]}x{tokens[2]}', no)
    body = lines[1:]
    if len(body) != p.rows:
        raise FormatError(f'需要{p.rows}行，实际为{len(body)}行', no)
    owner = []
    for no, line in body:
        try:
            row = tuple(int(t) for t in line.split())
        except ValueError:
            raise FormatError(f'无法解析整数：{line}', no)
        if len(row) != p.cols:
            raise FormatError(f'需要{p.cols}个整数，实际为{len(row)}个', no)
        owner.append(row)
    return SGSolution(tuple(owner))


def format_sg_solution(s: SGSolution) -> str:
    rows = len(s.owner)
    cols = len(s.owner[0]) if rows else 0
    lines = [f'solution {rows} {cols}']
    lines.extend(' '.join(str(k) for k in row) for row in s.owner)
    return '\n'.join(lines) + '\n'
