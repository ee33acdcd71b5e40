from itertools import combinations
from typing import List

import pycosat

from tatami.grid.puzzle import Puzzle
from tatami.solver.candidates import CandidateTable
from tatami.utils.logger import setup_logger

logger = setup_logger(__name__)

# 覆盖同一单元格的矩形数不超过该值时使用两两互斥编码，否则使用顺序计数器编码
PAIRWISE_LIMIT = 5


class CnfEncoding:
    """
    区域上的CNF编码：每个候选矩形一个变量
    - 每个提示至少选一个矩形
    - 必须覆盖的单元格至少被一个矩形覆盖
    - 每个单元格至多被一个矩形覆盖
    - 每个格点四个象限变量，四个象限不能同时被占据
    """

    def __init__(self, p: Puzzle, region):
        self.p = p
        self.num_vars = 0
        self.clauses: List[List[int]] = []
        self.rect_vars = []
        rows, cols = p.rows, p.cols
        usable = region.required.mask | region.optional.mask
        usable &= region.area.mask
        table = CandidateTable(p, region.area)
        cover = {}
        quadrant = {}
        for ci in range(len(p.clues)):
            mine = []
            for rect in table.rects(ci):
                if not usable[rect.top:rect.top + rect.height, rect.left:rect.left + rect.width].all():
                    continue
                v = self._new_var()
                self.rect_vars.append((v, ci, rect))
                mine.append(v)
                for cell in rect.cells():
                    cover.setdefault(cell, []).append(v)
                y0, x0 = rect.top, rect.left
                y1, x1 = rect.top + rect.height, rect.left + rect.width
                # 矩形位于角点的哪个象限：0左上 1右上 2左下 3右下
                for point, q in (((y0, x0), 3), ((y0, x1), 2), ((y1, x0), 1), ((y1, x1), 0)):
                    key = (point, q)
                    if key not in quadrant:
                        quadrant[key] = self._new_var()
                    self.clauses.append([-v, quadrant[key]])
            self.clauses.append(mine)
        required = region.required.mask & region.area.mask
        for r in range(rows):
            for c in range(cols):
                vs = cover.get((r, c), [])
                if required[r, c]:
                    self.clauses.append(list(vs))
                self._at_most_one(vs)
        points = sorted({point for point, _ in quadrant})
        for point in points:
            qs = [quadrant.get((point, q)) for q in range(4)]
            if all(qs):
                self.clauses.append([-x for x in qs])

    def _new_var(self):
        self.num_vars += 1
        return self.num_vars

    def _at_most_one(self, vs):
        if len(vs) <= 1:
            return
        if len(vs) <= PAIRWISE_LIMIT:
            self.clauses.extend([-a, -b] for a, b in combinations(vs, 2))
            return
        prev = None
        for i, v in enumerate(vs):
            if prev is not None:
                self.clauses.append([-prev, -v])
            if i < len(vs) - 1:
                s = self._new_var()
                self.clauses.append([-v, s])
                if prev is not None:
                    self.clauses.append([-prev, s])
                prev = s


def encode(p: Puzzle, region) -> CnfEncoding:
    return CnfEncoding(p, region)


class SatSearch:
    """
    用pycosat逐个求模型，每得到一个解就加入一条阻塞子句
    辅助变量会产生重复模型，因此不用itersolve，只阻塞矩形变量
    """

    def __init__(self, p: Puzzle, region, max_solutions=None, prop_limit=None, keep=None):
        self.encoding = encode(p, region)
        self.max_solutions = max_solutions
        self.prop_limit = prop_limit
        self.keep = keep
        self.count = 0
        self.nodes = 0
        self.status = 'exhausted'
        self.solutions = []

    def run(self):
        enc = self.encoding
        clauses = [list(c) for c in enc.clauses]
        logger.debug(f'CNF：{enc.num_vars}个变量，{len(clauses)}条子句，{len(enc.rect_vars)}个矩形')
        if any(len(c) == 0 for c in clauses):
            return self
        while True:
            kwargs = {'vars': enc.num_vars}
            if self.prop_limit is not None:
                kwargs['prop_limit'] = self.prop_limit
            result = pycosat.solve(clauses, **kwargs)
            self.nodes += 1
            if result == 'UNKNOWN':
                self.status = 'resource'
                return self
            if result == 'UNSAT':
                return self
            true = set(x for x in result if x > 0)
            on = [(v, ci, rect) for v, ci, rect in enc.rect_vars if v in true]
            self.count += 1
            if self.keep is None or len(self.solutions) < self.keep:
                self.solutions.append(sorted((ci, rect) for _, ci, rect in on))
            if self.max_solutions is not None and self.count >= self.max_solutions:
                self.status = 'capped'
                return self
            if not on:
                # 没有矩形的解只有一个
                return self
            clauses.append([-v for v, _, _ in on])
