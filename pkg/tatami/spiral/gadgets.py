from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np

from tatami.errors import ResourceExhausted
from tatami.gadgets.framework import DEFAULT_CONFIG, Gadget, ProfileTable, build_profile_table
from tatami.grid.puzzle import CellSet
from tatami.solver.searcher import SearchConfig
from tatami.spiral.puzzle import SGClue, SGPuzzle
from tatami.spiral.rules import SPIRAL_RULES
from tatami.spiral.solver import SymmetricRegionSearch
from tatami.utils.logger import setup_logger

logger = setup_logger(__name__)

# 名称 -> (掩码, 中心点[2y, 2x], 期望轮廓表)
SG_DESIGNS = {
    'wire': (['0MMMMM1',
              '0MMMMM1'],
             [(2, 5), (2, 11)],
             [[0], [1]]),
    'terminated-wire': (['0MMMMMM',
                         '0MMMMMM'],
                        [(2, 5), (2, 11)],
                        [[]]),
    'long-wire': (['0MMMMMMMMMMM1',
                   '0MMMMMMMMMMM1'],
                  [(2, 5), (2, 11), (2, 17), (2, 23)],
                  [[0], [1]]),
    'variable': (['MMMM0',
                  'MMMM0',
                  'MMMM.',
                  'MMMM.'],
                 [(1, 5), (4, 3), (5, 7), (7, 2)],
                 [[], [0]]),
    'not': (['0M1',
             '0M1'],
            [(2, 3)],
            [[], [0, 1]]),
    'and': (['.MMM.',
             '0MMM.',
             '0MMM.',
             '.MMM2',
             '.MMM2',
             '1MMM.',
             '1MMM.',
             '.MMM.'],
            [(2, 4), (3, 7), (5, 5), (6, 3), (8, 7), (10, 3), (13, 6), (14, 3)],
            [[0], [1], [0, 1], [2]]),
    'fanout': (['0MMM1',
                '0MMM1',
                '.MMM.',
                '.MMM.',
                '.MMM2',
                '.MMM2'],
               [(1, 7), (2, 3), (7, 7), (8, 3), (8, 5)],
               [[0], [1, 2]]),
    'shift-up': (['.MMM1',
                  '0MMM1',
                  '0MMM.'],
                 [(2, 7), (3, 3), (5, 6)],
                 [[0], [1]]),
}


def sg_gadget(name, mask: Sequence[str], clues) -> Gadget:
    """由掩码字符串和中心点构造Spiral Galaxies小工具"""
    rows, cols = len(mask), len(mask[0])
    mandatory = np.array([[ch == 'M' for ch in line] for line in mask])
    ids = sorted({ch for line in mask for ch in line if ch.isdigit()})
    optionals = [CellSet([[ch == i for ch in line] for line in mask]) for i in ids]
    area = CellSet([[ch != '.' for ch in line] for line in mask])
    puzzle = SGPuzzle(rows, cols, tuple(SGClue(y2, x2) for y2, x2 in clues))
    return Gadget(name, puzzle, area, CellSet(mandatory), tuple(optionals), SPIRAL_RULES)


def reflect_vertically(g: Gadget, name) -> Gadget:
    """上下翻转，可选区域编号不变"""
    clues = tuple(SGClue(2 * g.rows - c.y2, c.x2) for c in g.puzzle.clues)
    return Gadget(name, SGPuzzle(g.rows, g.cols, clues), g.area.flipped_vertically(),
                  g.mandatory.flipped_vertically(), tuple(o.flipped_vertically() for o in g.optionals), SPIRAL_RULES)


def sg_gadgets() -> List[Tuple[Gadget, ProfileTable]]:
    """全部Spiral Galaxies小工具及其期望轮廓表，下移小工具是上移小工具的翻转"""
    out = []
    for name, (mask, clues, table) in SG_DESIGNS.items():
        g = sg_gadget(name, mask, clues)
        out.append((g, ProfileTable.from_subsets(g, table)))
        if name == 'shift-up':
            down = reflect_vertically(g, 'shift-down')
            out.append((down, ProfileTable.from_subsets(down, table)))
    return out


@dataclass
class FillReport:
    gadget: str
    moat: int
    base: List[FrozenSet[int]]
    proper: Set[FrozenSet[int]] = field(default_factory=set)
    improper: int = 0
    leaks: int = 0
    solutions: int = 0

    @property
    def new_profiles(self):
        return sorted(self.proper - set(self.base), key=sorted)

    @property
    def lost_profiles(self):
        return sorted(set(self.base) - self.proper, key=sorted)

    @property
    def passed(self):
        return not self.leaks and not self.new_profiles and not self.lost_profiles

    def lines(self):
        def fmt(ids):
            return '{' + ','.join(str(i) for i in sorted(ids)) + '}'

        out = [f'fill {self.gadget} moat {self.moat}: {"pass" if self.passed else "fail"}',
               f'  solutions {self.solutions}, improper {self.improper}, leaks {self.leaks}']
        for ids in self.new_profiles:
            out.append(f'  new profile {fmt(ids)}')
        for ids in self.lost_profiles:
            out.append(f'  lost profile {fmt(ids)}')
        return out


def sg_fill_check(g: Gadget, moat=2, cfg: SearchConfig = DEFAULT_CONFIG,
                  base: Optional[ProfileTable] = None) -> FillReport:
    """
    四周加moat圈空白后在每个非小工具单元格中心放填充中心点，枚举全部解
    填充区域吃进小工具单元格记为泄漏；可选区域只被部分覆盖记为非正规
    :param base: 小工具自身可局部求解的轮廓表，默认现场计算
    """
    if base is None:
        base = build_profile_table(g, cfg)
    rows, cols = g.rows + 2 * moat, g.cols + 2 * moat
    placed = g.translate(moat, moat, rows, cols)
    own_clues = set(placed.puzzle.clues)
    filler = [SGClue(2 * r + 1, 2 * c + 1) for r in range(rows) for c in range(cols) if (r, c) not in placed.area]
    puzzle = SGPuzzle(rows, cols, tuple(placed.puzzle.clues) + tuple(filler))
    is_own = [clue in own_clues for clue in puzzle.clues]

    full = CellSet.full(rows, cols)
    optional = placed.area - placed.mandatory
    report = FillReport(g.name, moat, base.subsets())
    cells = list(full)
    inside = [cell in placed.area for cell in cells]
    position = {cell: i for i, cell in enumerate(cells)}
    groups = [[position[cell] for cell in opt] for opt in placed.optionals]

    def visit(own):
        if any(inside[i] and own[i] >= 0 and not is_own[own[i]] for i in range(len(own))):
            report.leaks += 1
            return
        ids = set()
        for k, members in enumerate(groups):
            hit = sum(1 for i in members if own[i] >= 0)
            if hit == len(members):
                ids.add(k)
            elif hit:
                report.improper += 1
                return
        report.proper.add(frozenset(ids))

    search = SymmetricRegionSearch(puzzle, full, full - optional, node_limit=cfg.node_limit, keep=0,
                                   visit=visit).run()
    if search.status == 'resource':
        raise ResourceExhausted(f'{g.name}：填充检查的搜索预算耗尽')
    report.solutions = search.count
    logger.info(f'{g.name}：填充检查moat={moat}，{search.count}个解，泄漏{report.leaks}个，'
                f'{"通过" if report.passed else "失败"}')
    return report
