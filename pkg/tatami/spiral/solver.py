import sys
from itertools import product
from typing import Optional

from tatami.errors import PreconditionError
from tatami.grid.puzzle import CellSet
from tatami.solver.searcher import SearchStatus, SolveOutcome
from tatami.spiral.puzzle import SGPuzzle, SGSolution, sg_validate

SG_MAX_CELLS = 36
SG_ORACLE_MAX_CELLS = 6
SG_ORACLE_MAX_CLUES = 2

FREE = -1
SKIPPED = -2

_STATUS = {'exhausted': SearchStatus.EXHAUSTED,
           'capped': SearchStatus.CAPPED,
           'resource': SearchStatus.RESOURCE_EXHAUSTED}


class SymmetricRegionSearch:
    """
    按行优先取第一个未分配单元格，把它与它关于某个中心的像成对分给该中心
    相接单元格预先分配；连通性在叶子处检查
    """

    def __init__(self, p: SGPuzzle, area: CellSet, required: CellSet, max_solutions=None, node_limit=None,
                 keep=None, visit=None):
        self.p = p
        self.visit = visit
        self.max_solutions = max_solutions
        self.node_limit = node_limit
        self.keep = keep
        self.cells = list(area)
        self.index = {cell: i for i, cell in enumerate(self.cells)}
        self.required = [cell in required for cell in self.cells]
        self.own = [FREE] * len(self.cells)
        self.count = 0
        self.nodes = 0
        self.status = 'exhausted'
        self.solutions = []
        self.feasible = True
        for k, clue in enumerate(p.clues):
            for cell in clue.touching_cells():
                i = self.index.get(cell)
                if i is None or self.own[i] not in (FREE, k):
                    self.feasible = False
                    break
                self.own[i] = k

    def run(self):
        if self.feasible:
            sys.setrecursionlimit(max(sys.getrecursionlimit(), len(self.cells) + 1000))
            self._rec(0)
        return self

    def _connected(self):
        for k in range(len(self.p.clues)):
            members = [self.cells[i] for i, o in enumerate(self.own) if o == k]
            if not CellSet.from_cells(self.p.rows, self.p.cols, members).is_connected():
                return False
        return True

    def _emit(self):
        owner = [[-1] * self.p.cols for _ in range(self.p.rows)]
        for (r, c), k in zip(self.cells, self.own):
            owner[r][c] = k if k >= 0 else -1
        return SGSolution(tuple(tuple(row) for row in owner))

    def _rec(self, i):
        if self.status != 'exhausted':
            return
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            self.status = 'resource'
            return
        own = self.own
        n = len(own)
        while i < n and own[i] != FREE:
            i += 1
        if i == n:
            if self._connected():
                self.count += 1
                if self.visit is not None:
                    self.visit(self.own)
                if self.keep is None or len(self.solutions) < self.keep:
                    self.solutions.append(self._emit())
                if self.max_solutions is not None and self.count >= self.max_solutions:
                    self.status = 'capped'
            return
        r, c = self.cells[i]
        for k, clue in enumerate(self.p.clues):
            j = self.index.get(clue.mirror(r, c))
            if j is None:
                continue
            if j == i:
                own[i] = k
                self._rec(i + 1)
                own[i] = FREE
            elif own[j] == FREE:
                own[i] = own[j] = k
                self._rec(i + 1)
                own[i] = own[j] = FREE
            if self.status != 'exhausted':
                return
        if not self.required[i]:
            own[i] = SKIPPED
            self._rec(i + 1)
            own[i] = FREE


def sg_search_region(p: SGPuzzle, area: CellSet, required: CellSet, optional: CellSet, cfg) -> SolveOutcome:
    """区域上的局部解；区域内既非必选也非可选的单元格从搜索中去掉"""
    usable = area & (required | optional)
    search = SymmetricRegionSearch(p, usable, required & usable, max_solutions=cfg.max_solutions,
                                   node_limit=cfg.node_limit, keep=cfg.keep).run()
    return SolveOutcome(_STATUS[search.status], tuple(search.solutions), search.count, search.nodes)


def sg_solve(p: SGPuzzle, cap: Optional[int] = None, node_limit: Optional[int] = None) -> SolveOutcome:
    if p.num_cells > SG_MAX_CELLS:
        raise PreconditionError(f'sg_solve只支持不超过{SG_MAX_CELLS}个单元格：{p.rows}x{p.cols}')
    full = CellSet.full(p.rows, p.cols)
    search = SymmetricRegionSearch(p, full, full, max_solutions=cap, node_limit=node_limit).run()
    return SolveOutcome(_STATUS[search.status], tuple(search.solutions), search.count, search.nodes)


def sg_oracle(p: SGPuzzle) -> SolveOutcome:
    """把每个单元格分给任一中心，逐一交给sg_validate，仅用于测试"""
    if p.num_cells > SG_ORACLE_MAX_CELLS or len(p.clues) > SG_ORACLE_MAX_CLUES:
        raise PreconditionError(f'参照求解器只支持不超过{SG_ORACLE_MAX_CELLS}个单元格、{SG_ORACLE_MAX_CLUES}个中心')
    solutions = []
    if p.clues:
        for flat in product(range(len(p.clues)), repeat=p.num_cells):
            owner = tuple(tuple(flat[r * p.cols:(r + 1) * p.cols]) for r in range(p.rows))
            s = SGSolution(owner)
            if sg_validate(p, s).ok:
                solutions.append(s)
    return SolveOutcome(SearchStatus.EXHAUSTED, tuple(solutions), len(solutions))
