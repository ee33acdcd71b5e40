from collections import Counter
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from tatami.grid.puzzle import CellSet, ClueKind, Fragment, Puzzle, Solution, shape_ok

# 约束编号与名称
CONSTRAINTS = {
    1: '矩形互不相交',
    2: '矩形覆盖全部单元格',
    3: '每个矩形恰含一个提示',
    4: '+ 提示的矩形是正方形',
    5: '- 提示的矩形宽大于高',
    6: '| 提示的矩形高大于宽',
    7: '不能有四个矩形共用一个角点',
}

SHAPE_CONSTRAINT = {ClueKind.SQUARE: 4, ClueKind.HORIZONTAL: 5, ClueKind.VERTICAL: 6}


@dataclass(frozen=True)
class Violation:
    constraint: int
    locus: str

    def __str__(self):
        return f'constraint {self.constraint}: {self.locus}'


@dataclass(frozen=True)
class Verdict:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self):
        return not self.violations

    def constraints(self):
        return sorted({v.constraint for v in self.violations})

    def report(self):
        if self.ok:
            return 'valid\n'
        return ''.join(f'{v}\n' for v in self.violations)


def validate(p: Puzzle, s: Solution) -> Verdict:
    """按约束1到7的顺序检查整个谜题的解，收集全部违规"""
    return validate_local(Fragment.whole(p), s)


def validate_local(fragment: Fragment, s: Solution, profile: Optional[CellSet] = None) -> Verdict:
    """
    子谜题上的局部检查，子谜题边界处不施加角点约束
    :param fragment: 子谜题，矩形必须落在其整体区域内
    :param s: 局部解
    :param profile: 覆盖目标，默认为整个区域；给定时矩形并集必须恰好等于它
    """
    return _check(fragment.puzzle, fragment.area, profile, s)


def _check(p: Puzzle, area: CellSet, target: Optional[CellSet], s: Solution) -> Verdict:
    rows, cols = p.rows, p.cols
    target = area if target is None else target
    found = {1: [], 2: [], 3: [], 4: [], 5: [], 6: [], 7: []}

    # 结构检查：每个提示恰好分配一个矩形
    per_clue = Counter(i for i, _ in s.assignments)
    for i in range(len(p.clues)):
        if per_clue[i] == 0:
            found[3].append(f'clue {i} at {p.clues[i].cell} has no rectangle')
        elif per_clue[i] > 1:
            found[3].append(f'clue {i} at {p.clues[i].cell} has {per_clue[i]} rectangles')
    for i in sorted(per_clue):
        if not 0 <= i < len(p.clues):
            found[3].append(f'rectangle assigned to unknown clue {i}')

    placed = []
    for n, (i, rect) in enumerate(s.assignments):
        if not rect.in_bounds(rows, cols):
            found[2].append(f'rect {n} {rect} lies outside the grid')
        elif not area.contains_rect(rect):
            found[2].append(f'rect {n} {rect} leaves the area')
        else:
            placed.append((n, i, rect))

    # 约束1：相交
    count = np.zeros((rows, cols), dtype=np.int64)
    for _, _, rect in placed:
        count[rect.top:rect.top + rect.height, rect.left:rect.left + rect.width] += 1
    if (count > 1).any():
        for a in range(len(placed)):
            for b in range(a + 1, len(placed)):
                if placed[a][2].overlaps(placed[b][2]):
                    found[1].append(f'rects {placed[a][0]} and {placed[b][0]} overlap')

    # 约束2：覆盖
    covered = count > 0
    for r, c in zip(*np.nonzero(target.mask & ~covered)):
        found[2].append(f'cell ({r}, {c}) is not covered')
    for r, c in zip(*np.nonzero(covered & ~target.mask)):
        found[2].append(f'cell ({r}, {c}) is covered outside the profile')

    # 约束3：提示归属，前缀和统计矩形内的提示数
    clue_mask = np.zeros((rows + 1, cols + 1), dtype=np.int64)
    for clue in p.clues:
        clue_mask[clue.row + 1, clue.col + 1] = 1
    prefix = clue_mask.cumsum(axis=0).cumsum(axis=1)
    for n, i, rect in placed:
        if not 0 <= i < len(p.clues):
            continue
        clue = p.clues[i]
        if not rect.top <= clue.row <= rect.bottom or not rect.left <= clue.col <= rect.right:
            found[3].append(f'rect {n} {rect} misses its clue at {clue.cell}')
        inside = (prefix[rect.top + rect.height, rect.left + rect.width] - prefix[rect.top, rect.left + rect.width]
                  - prefix[rect.top + rect.height, rect.left] + prefix[rect.top, rect.left])
        if inside > 1:
            found[3].append(f'rect {n} {rect} contains {inside} clues')

    # 约束4-6：形状
    for n, i, rect in placed:
        if not 0 <= i < len(p.clues):
            continue
        kind = p.clues[i].kind
        if not shape_ok(kind, rect):
            found[SHAPE_CONSTRAINT[kind]].append(f'rect {n} {rect} has the wrong shape for {kind.value!r}')

    # 约束7：四角
    corners = Counter()
    for rect in {rect for _, _, rect in placed}:
        corners.update(rect.corners())
    for point in sorted(pt for pt, k in corners.items() if k >= 4):
        found[7].append(f'lattice point ({point.y}, {point.x}) is a corner of {corners[point]} rectangles')

    violations = tuple(Violation(k, locus) for k in sorted(found) for locus in found[k])
    return Verdict(violations)
