import sys
from typing import List, Optional

from tatami.grid.puzzle import Puzzle, Rect
from tatami.solver.candidates import CandidateTable

# 单元格状态
UNDECIDED = -2
EMPTY = -1


class BacktrackSearch:
    """
    按行优先的第一个未决单元格做锚点的深度优先搜索
    锚点要么被某个左上角恰在此处的候选矩形覆盖，要么（可选单元格）留空
    同一锚点上的候选按提示编号（行优先的规范顺序）、高、宽依次尝试，
    所以枚举出的解集与按提示顺序逐个分配矩形得到的解集相同，解的输出顺序在多次运行间固定
    每个解按提示编号排列
    剪枝：单元格冲突、覆盖可达性、增量四角计数
    """

    def __init__(self, p: Puzzle, region, max_solutions=None, node_limit=None, keep=None):
        self.p = p
        self.rows, self.cols = p.rows, p.cols
        self.max_solutions = max_solutions
        self.node_limit = node_limit
        self.keep = keep
        n = self.rows * self.cols
        area = region.area.mask.ravel()
        self.required = region.required.mask.ravel().tolist()
        optional = region.optional.mask.ravel().tolist()
        table = CandidateTable(p, region.area)
        self.cands = [table.rects(i) for i in range(len(p.clues))]
        self.state = [UNDECIDED if area[k] and (self.required[k] or optional[k]) else EMPTY for k in range(n)]
        self.optional = optional
        # 每个锚点单元格上的(提示, 矩形)，按提示编号、高、宽排序
        self.anchor = [[] for _ in range(n)]
        for ci, rects in enumerate(self.cands):
            for rect in rects:
                self.anchor[rect.top * self.cols + rect.left].append((ci, rect, self._cells(rect), self._corners(rect)))
        for lst in self.anchor:
            lst.sort(key=lambda x: (x[0], x[1].height, x[1].width))
        # 可达计数：每个单元格被多少个未分配提示的候选并集覆盖
        self.union = []
        self.reach = [0] * n
        for rects in self.cands:
            cells = set()
            for rect in rects:
                cells.update(self._cells(rect))
            self.union.append(sorted(cells))
            for k in cells:
                self.reach[k] += 1
        self.corner = [0] * ((self.rows + 1) * (self.cols + 1))
        self.assigned: List[Optional[Rect]] = [None] * len(p.clues)
        self.count = 0
        self.nodes = 0
        self.status = 'exhausted'
        self.solutions = []

    def _cells(self, rect):
        return [r * self.cols + c for r, c in rect.cells()]

    def _corners(self, rect):
        w = self.cols + 1
        t, l, b, r = rect.top, rect.left, rect.top + rect.height, rect.left + rect.width
        return t * w + l, t * w + r, b * w + l, b * w + r

    def run(self):
        n = self.rows * self.cols
        for k in range(n):
            if self.required[k] and self.state[k] == UNDECIDED and self.reach[k] == 0:
                return self
            if self.required[k] and self.state[k] == EMPTY:
                # 必须覆盖的单元格不在可用区域内
                return self
        # 递归深度不超过单元格数
        sys.setrecursionlimit(max(sys.getrecursionlimit(), n + 1000))
        self._rec(0)
        return self

    def _rec(self, start):
        if self.status != 'exhausted':
            return
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            self.status = 'resource'
            return
        state = self.state
        n = len(state)
        k = start
        while k < n and state[k] != UNDECIDED:
            k += 1
        if k == n:
            if any(rect is None for rect in self.assigned):
                return
            self.count += 1
            if self.keep is None or len(self.solutions) < self.keep:
                self.solutions.append([(i, rect) for i, rect in enumerate(self.assigned) if rect is not None])
            if self.max_solutions is not None and self.count >= self.max_solutions:
                self.status = 'capped'
            return
        for j in range(k, n):
            if state[j] == UNDECIDED and self.required[j] and self.reach[j] == 0:
                return
        corner = self.corner
        for ci, rect, cells, corners in self.anchor[k]:
            if self.assigned[ci] is not None:
                continue
            if any(state[j] != UNDECIDED for j in cells):
                continue
            if any(corner[q] >= 3 for q in corners):
                continue
            for q in corners:
                corner[q] += 1
            for j in cells:
                state[j] = ci
            self.assigned[ci] = rect
            for j in self.union[ci]:
                self.reach[j] -= 1
            self._rec(k + 1)
            for j in self.union[ci]:
                self.reach[j] += 1
            self.assigned[ci] = None
            for j in cells:
                state[j] = UNDECIDED
            for q in corners:
                corner[q] -= 1
            if self.status != 'exhausted':
                return
        if self.optional[k]:
            state[k] = EMPTY
            self._rec(k + 1)
            state[k] = UNDECIDED
