from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from tatami.errors import NonPlanarLayout
from tatami.gadgets.tatami_gadgets import COUPLER_PITCH, Polarity
from tatami.reducer.config import ReducerConfig
from tatami.reducer.sat_instance import Clause, SatInstance
from tatami.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class Tap:
    """
    变量带上的一个接口列
    :param var: 变量编号
    :param x0: 导线占用的6列中最左一列
    :param up: 向上连接的正子句编号，None表示用终结器封住
    :param down: 向下连接的负子句编号
    :param spacer: 夹在同一变量两个接口之间、上下都封住的隔离接口
    """
    var: int
    x0: int
    up: Optional[int] = None
    down: Optional[int] = None
    spacer: bool = False

    def clause_on(self, polarity: Polarity):
        return self.up if polarity is Polarity.POSITIVE else self.down


@dataclass(frozen=True)
class Drawing:
    """
    直线画法：变量是轴上的水平线段，子句是上方（正）或下方（负）的水平线段，腿是竖直的
    :param taps: 从左到右的全部接口，含隔离接口
    :param legs: 每个子句三条腿所在的接口编号，从左到右
    :param levels: 每个子句的高度层，最内层为1
    :param var_taps: 每个变量的接口编号，下标为变量编号减1
    """
    taps: Tuple[Tap, ...]
    legs: Tuple[Tuple[int, int, int], ...]
    levels: Tuple[int, ...]
    var_taps: Tuple[Tuple[int, ...], ...]

    def variable_segment(self, v) -> Tuple[int, int]:
        ids = self.var_taps[v - 1]
        return self.taps[ids[0]].x0, self.taps[ids[-1]].x0

    def clause_segment(self, i) -> Tuple[int, int]:
        legs = self.legs[i]
        return self.taps[legs[0]].x0, self.taps[legs[-1]].x0

    def max_level(self, inst: SatInstance, polarity: Polarity):
        return max([lv for c, lv in zip(inst.clauses, self.levels) if c.polarity is polarity], default=0)


def _slots(c: Clause):
    distinct = sorted(set(c.literals))
    return list(zip(distinct, distinct[1:]))


def _relation(a: Clause, b: Clause, ia, ib):
    """两个同侧子句在共享变量处的相对位置：left/right/inside/outside，无法嵌套时为None"""
    alo, ahi = a.span
    blo, bhi = b.span
    if ahi < blo or (ahi == blo and (alo < ahi or blo < bhi or ia < ib)):
        return 'left', None
    if bhi < alo or (bhi == alo and (blo < bhi or alo < ahi or ib < ia)):
        return 'right', None
    for u, w in _slots(b):
        if u <= alo and ahi <= w:
            return 'inside', u
    for u, w in _slots(a):
        if u <= blo and bhi <= w:
            return 'outside', u
    return None


def _tap_order(inst: SatInstance, ids: List[int], v) -> List[int]:
    """变量v上同侧子句的接口顺序（按出现次数展开），拓扑排序，平局取编号小者"""
    touch = [i for i in ids if v in inst.clauses[i].literals]
    before: Dict[int, set] = {i: set() for i in touch}
    for a in touch:
        for b in touch:
            if a >= b:
                continue
            rel = _relation(inst.clauses[a], inst.clauses[b], a, b)
            if rel is None:
                raise NonPlanarLayout(f'子句{a}与子句{b}的跨度相交但不嵌套')
            kind, u = rel
            if kind == 'left':
                first = a
            elif kind == 'right':
                first = b
            elif kind == 'inside':
                first = b if v == u else a
            else:
                first = a if v == u else b
            before[first].add(b if first == a else a)
    indeg = {i: 0 for i in touch}
    for succ in before.values():
        for j in succ:
            indeg[j] += 1
    order = []
    ready = [i for i in touch if indeg[i] == 0]
    while ready:
        ready.sort()
        i = ready.pop(0)
        order.append(i)
        for j in before[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    if len(order) != len(touch):
        raise NonPlanarLayout(f'变量{v}上的子句顺序存在环')
    return [i for i in order for x in inst.clauses[i].literals if x == v]


def _check_nesting(legs, ids):
    for a in ids:
        for b in ids:
            if a == b:
                continue
            A, B = legs[a], legs[b]
            disjoint = A[2] < B[0] or B[2] < A[0]
            inside = (B[0] < A[0] and A[2] < B[2] and not any(A[0] < x < A[2] for x in B)
                      and any(x < A[0] for x in B) and any(x > A[2] for x in B))
            outside = A[0] < B[0] and B[2] < A[2]
            if not (disjoint or inside or outside):
                raise NonPlanarLayout(f'子句{a}与子句{b}的腿交叉')


def layout(inst: SatInstance, cfg: ReducerConfig = None) -> Drawing:
    """
    变量从左到右排列，每个文字出现占用一个接口列；同侧子句按包含关系分层
    同一变量相邻两个接口之间插入一个隔离接口，列距COUPLER_PITCH；相邻变量之间的列距为cfg.pitch
    """
    cfg = cfg or ReducerConfig.default()
    sides = {p: [i for i, c in enumerate(inst.clauses) if c.polarity is p] for p in Polarity}
    orders = {p: {v: _tap_order(inst, sides[p], v) for v in range(1, inst.num_vars + 1)} for p in Polarity}

    taps, var_taps = [], []
    left = cfg.margin + 2
    for v in range(1, inst.num_vars + 1):
        up, down = orders[Polarity.POSITIVE][v], orders[Polarity.NEGATIVE][v]
        ids = []
        for j in range(max(len(up), len(down), 1)):
            if j > 0:
                ids.append(len(taps))
                taps.append(Tap(v, left + COUPLER_PITCH * (2 * j - 1), spacer=True))
            ids.append(len(taps))
            taps.append(Tap(v, left + COUPLER_PITCH * 2 * j, up[j] if j < len(up) else None,
                            down[j] if j < len(down) else None))
        var_taps.append(tuple(ids))
        left = taps[-1].x0 + cfg.pitch

    legs = [[] for _ in inst.clauses]
    for t, tap in enumerate(taps):
        if tap.up is not None:
            legs[tap.up].append(t)
        if tap.down is not None:
            legs[tap.down].append(t)

    levels = [1] * len(inst.clauses)
    for p in Polarity:
        ids = sorted(sides[p], key=lambda i: (legs[i][2] - legs[i][0], i))
        _check_nesting(legs, ids)
        for a in ids:
            for b in ids:
                if legs[b][0] < legs[a][0] and legs[a][2] < legs[b][2]:
                    levels[b] = max(levels[b], levels[a] + 1)
    drawing = Drawing(tuple(taps), tuple(tuple(leg) for leg in legs), tuple(levels), tuple(var_taps))
    logger.debug(f'布局：{len(taps)}个接口，子句层数{list(levels)}')
    return drawing
