from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np


class ClueKind(Enum):
    SQUARE = '+'
    HORIZONTAL = '-'
    VERTICAL = '|'

    @classmethod
    def from_char(cls, ch):
        return cls(ch)

    def transposed(self):
        if self is ClueKind.HORIZONTAL:
            return ClueKind.VERTICAL
        if self is ClueKind.VERTICAL:
            return ClueKind.HORIZONTAL
        return self


class Shade(Enum):
    LIGHT = 'light'
    DARK = 'dark'


@dataclass(frozen=True)
class Clue:
    row: int
    col: int
    kind: ClueKind
    shade: Shade = Shade.LIGHT

    @property
    def cell(self):
        return self.row, self.col


@dataclass(frozen=True, order=True)
class Rect:
    top: int
    left: int
    height: int
    width: int

    def __post_init__(self):
        assert self.height >= 1 and self.width >= 1, f'矩形尺寸必须为正：{self}'

    @property
    def bottom(self):
        """最后一行（含）"""
        return self.top + self.height - 1

    @property
    def right(self):
        """最后一列（含）"""
        return self.left + self.width - 1

    @property
    def area(self):
        return self.height * self.width

    def cells(self) -> Iterator[Tuple[int, int]]:
        for r in range(self.top, self.top + self.height):
            for c in range(self.left, self.left + self.width):
                yield r, c

    def corners(self) -> Tuple['LatticePoint', ...]:
        y0, x0 = self.top, self.left
        y1, x1 = self.top + self.height, self.left + self.width
        return LatticePoint(y0, x0), LatticePoint(y0, x1), LatticePoint(y1, x0), LatticePoint(y1, x1)

    def in_bounds(self, rows, cols):
        return self.top >= 0 and self.left >= 0 and self.top + self.height <= rows and self.left + self.width <= cols

    def overlaps(self, other: 'Rect'):
        return not (self.top + self.height <= other.top or other.top + other.height <= self.top or
                    self.left + self.width <= other.left or other.left + other.width <= self.left)

    def translate(self, d_row, d_col):
        return Rect(self.top + d_row, self.left + d_col, self.height, self.width)

    def transposed(self):
        return Rect(self.left, self.top, self.width, self.height)


@dataclass(frozen=True, order=True)
class LatticePoint:
    y: int
    x: int


class CellSet:
    """网格上的单元格集合，底层为只读的numpy布尔矩阵"""

    __slots__ = ('_mask',)

    def __init__(self, mask):
        mask = np.array(mask, dtype=bool, copy=True)
        assert mask.ndim == 2, 'CellSet需要二维掩码'
        mask.flags.writeable = False
        self._mask = mask

    @classmethod
    def empty(cls, rows, cols):
        return cls(np.zeros((rows, cols), dtype=bool))

    @classmethod
    def full(cls, rows, cols):
        return cls(np.ones((rows, cols), dtype=bool))

    @classmethod
    def from_cells(cls, rows, cols, cells: Iterable[Tuple[int, int]]):
        mask = np.zeros((rows, cols), dtype=bool)
        for r, c in cells:
            assert 0 <= r < rows and 0 <= c < cols, f'单元格越界：{(r, c)}'
            mask[r, c] = True
        return cls(mask)

    @classmethod
    def from_rect(cls, rows, cols, rect: Rect):
        mask = np.zeros((rows, cols), dtype=bool)
        mask[rect.top:rect.top + rect.height, rect.left:rect.left + rect.width] = True
        return cls(mask)

    @property
    def mask(self):
        return self._mask

    @property
    def shape(self):
        return self._mask.shape

    def __contains__(self, cell):
        r, c = cell
        rows, cols = self._mask.shape
        return 0 <= r < rows and 0 <= c < cols and bool(self._mask[r, c])

    def __iter__(self):
        for r, c in zip(*np.nonzero(self._mask)):
            yield int(r), int(c)

    def __len__(self):
        return int(self._mask.sum())

    def __bool__(self):
        return bool(self._mask.any())

    def __eq__(self, other):
        return isinstance(other, CellSet) and self.shape == other.shape and bool(np.array_equal(self._mask, other._mask))

    def __hash__(self):
        return hash((self.shape, self._mask.tobytes()))

    def __or__(self, other):
        return CellSet(self._mask | other.mask)

    def __and__(self, other):
        return CellSet(self._mask & other.mask)

    def __sub__(self, other):
        return CellSet(self._mask & ~other.mask)

    def isdisjoint(self, other):
        return not bool((self._mask & other.mask).any())

    def issubset(self, other):
        return not bool((self._mask & ~other.mask).any())

    def contains_rect(self, rect: Rect):
        rows, cols = self.shape
        if not rect.in_bounds(rows, cols):
            return False
        return bool(self._mask[rect.top:rect.top + rect.height, rect.left:rect.left + rect.width].all())

    def is_connected(self):
        """四连通判定，空集视为连通"""
        cells = list(self)
        if not cells:
            return True
        seen = {cells[0]}
        stack = [cells[0]]
        while stack:
            r, c = stack.pop()
            for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                if nb not in seen and nb in self:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(cells)

    def translate(self, d_row, d_col, rows, cols):
        return CellSet.from_cells(rows, cols, ((r + d_row, c + d_col) for r, c in self))

    def transposed(self):
        return CellSet(self._mask.T)

    def flipped_vertically(self):
        return CellSet(self._mask[::-1, :])

    def __repr__(self):
        return f'CellSet({self.shape[0]}x{self.shape[1]}, {len(self)} cells)'


@dataclass(frozen=True)
class Puzzle:
    rows: int
    cols: int
    clues: Tuple[Clue, ...]

    def __post_init__(self):
        assert self.rows >= 1 and self.cols >= 1, f'网格尺寸必须为正：{self.rows}x{self.cols}'
        clues = tuple(sorted(self.clues, key=lambda c: (c.row, c.col)))
        seen = set()
        for clue in clues:
            assert 0 <= clue.row < self.rows and 0 <= clue.col < self.cols, f'提示越界：{clue}'
            assert clue.cell not in seen, f'同一单元格有多个提示：{clue.cell}'
            seen.add(clue.cell)
        object.__setattr__(self, 'clues', clues)
        object.__setattr__(self, '_index', {clue.cell: i for i, clue in enumerate(clues)})

    def clue_index(self, row, col) -> Optional[int]:
        return self._index.get((row, col))

    def clue_grid(self):
        """返回(rows, cols)的整数矩阵，单元格上的提示编号，无提示为-1"""
        grid = np.full((self.rows, self.cols), -1, dtype=np.int64)
        for i, clue in enumerate(self.clues):
            grid[clue.row, clue.col] = i
        return grid

    @property
    def num_cells(self):
        return self.rows * self.cols


@dataclass(frozen=True)
class Fragment:
    """子谜题：谜题的一部分提示加上它所占据的整体区域"""
    puzzle: Puzzle
    area: CellSet

    def __post_init__(self):
        assert self.area.shape == (self.puzzle.rows, self.puzzle.cols), '区域与网格尺寸不一致'
        for clue in self.puzzle.clues:
            assert clue.cell in self.area, f'提示不在区域内：{clue}'

    @classmethod
    def whole(cls, puzzle: Puzzle):
        return cls(puzzle, CellSet.full(puzzle.rows, puzzle.cols))

    @property
    def clues(self):
        return self.puzzle.clues


@dataclass(frozen=True)
class Solution:
    """每个提示对应一个矩形，assignments按提示编号排序"""
    assignments: Tuple[Tuple[int, Rect], ...]

    def __post_init__(self):
        object.__setattr__(self, 'assignments', tuple(sorted(self.assignments)))

    @classmethod
    def from_rects(cls, rects: Sequence[Rect]):
        return cls(tuple(enumerate(rects)))

    @property
    def rects(self) -> List[Rect]:
        return [rect for _, rect in self.assignments]

    def __len__(self):
        return len(self.assignments)

    def covered(self, rows, cols) -> CellSet:
        mask = np.zeros((rows, cols), dtype=bool)
        for rect in self.rects:
            mask[max(rect.top, 0):rect.top + rect.height, max(rect.left, 0):rect.left + rect.width] = True
        return CellSet(mask)

    def translate(self, d_row, d_col):
        return Solution(tuple((i, rect.translate(d_row, d_col)) for i, rect in self.assignments))


def rect_contains_cell(r: Rect, row, col):
    return r.top <= row < r.top + r.height and r.left <= col < r.left + r.width


def shape_ok(kind: ClueKind, r: Rect):
    if kind is ClueKind.SQUARE:
        return r.width == r.height
    if kind is ClueKind.HORIZONTAL:
        return r.width > r.height
    return r.height > r.width


def corner_multiplicity(rects: Sequence[Rect], p: LatticePoint):
    """以p为角点的不同矩形个数，边上经过不计"""
    return sum(1 for rect in set(rects) if p in rect.corners())


def transpose(p: Puzzle) -> Puzzle:
    clues = tuple(Clue(c.col, c.row, c.kind.transposed(), c.shade) for c in p.clues)
    return Puzzle(p.cols, p.rows, clues)


def transpose_solution(p: Puzzle, s: Solution) -> Solution:
    """转置解，并按转置后谜题的提示顺序重新编号"""
    tp = transpose(p)
    assignments = []
    for i, rect in s.assignments:
        clue = p.clues[i]
        assignments.append((tp.clue_index(clue.col, clue.row), rect.transposed()))
    return Solution(tuple(assignments))
