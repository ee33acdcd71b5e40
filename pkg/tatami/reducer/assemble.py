from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from tatami.errors import AssemblyError
from tatami.gadgets.framework import Gadget, GadgetInstance
from tatami.gadgets.tatami_gadgets import (BAND_ROWS, CLAUSE_PITCH, CLAUSE_ROWS, TERMINATED_STUB_ROWS,
                                           TERMINATOR_ROWS, ClauseSpec, Polarity, VariableSpec, WireSpec,
                                           make_clause, make_terminator, make_variable, make_wire)
from tatami.grid.puzzle import CellSet, Clue, Puzzle
from tatami.reducer.config import ReducerConfig
from tatami.reducer.layout import Drawing
from tatami.reducer.sat_instance import SatInstance
from tatami.utils.logger import setup_logger

logger = setup_logger(__name__)

# 导线占用的列数：外护套、内护套、`+`列、空列、内护套、外护套
WIRE_FOOTPRINT = 6


class Role(Enum):
    VARIABLE = 'variable'
    CLAUSE = 'clause'
    WIRE = 'wire'
    TERMINATOR = 'terminator'


@dataclass(frozen=True)
class PlacedGadget:
    """
    放到宿主谜题中的小工具实例
    :param label: 便于报告的名字，如 x1、c0、wire t3+
    :param sheathing: 属于该实例的外护套单元格，它们不在任何小工具区域内，也不放填充
    :param tap: 导线与终结器所在的接口编号
    :param polarity: 导线、终结器和子句在变量带的哪一侧，POSITIVE为上方
    """
    instance: GadgetInstance
    role: Role
    label: str
    sheathing: Tuple[Tuple[int, int], ...] = ()
    tap: int = -1
    polarity: Optional[Polarity] = None

    @property
    def gadget(self) -> Gadget:
        return self.instance.gadget

    @property
    def offset(self):
        return self.instance.offset


@dataclass(frozen=True)
class Geometry:
    """宿主谜题的行列尺寸与变量带首行"""
    rows: int
    cols: int
    axis: int


@lru_cache(maxsize=None)
def _variable(k):
    return make_variable(VariableSpec(k))


@lru_cache(maxsize=None)
def _wire(height, polarity):
    return make_wire(WireSpec(height, polarity))


@lru_cache(maxsize=None)
def _terminator(polarity):
    return make_terminator(polarity)


@lru_cache(maxsize=None)
def _clause(polarity, gaps):
    return make_clause(ClauseSpec(polarity, gaps))


def level_span(cfg: ReducerConfig, level):
    """变量带边缘到第level层子句可选行的距离"""
    return cfg.gadget_gap + (level - 1) * (CLAUSE_ROWS + cfg.gadget_gap)


def geometry(inst: SatInstance, d: Drawing, cfg: ReducerConfig) -> Geometry:
    """
    上下两侧的高度取最高一层子句，四周留白按奇偶补齐，使变量带首行为奇数行
    上下补齐规则相同，极性互换的实例恰好上下镜像
    """
    above = max(d.max_level(inst, Polarity.POSITIVE) * (CLAUSE_ROWS + cfg.gadget_gap), cfg.gadget_gap)
    below = max(d.max_level(inst, Polarity.NEGATIVE) * (CLAUSE_ROWS + cfg.gadget_gap), cfg.gadget_gap)
    top = cfg.margin + (1 if (cfg.margin + above) % 2 == 0 else 0)
    bottom = cfg.margin + (1 if (cfg.margin + below) % 2 == 0 else 0)
    axis = top + above
    cols = d.taps[-1].x0 + WIRE_FOOTPRINT + 2 + cfg.margin if d.taps else 10
    return Geometry(axis + BAND_ROWS + below + bottom, cols, axis)


def _side_columns(x0, rows):
    return tuple((r, c) for r in rows for c in (x0, x0 + WIRE_FOOTPRINT - 1))


def _wire_rows(axis, polarity: Polarity, near, far):
    """
    导线在宿主网格中的首末行
    :param near: 导线靠近变量带的一端到变量带边缘的距离
    :param far: 导线远端到变量带边缘的距离
    """
    if polarity is Polarity.POSITIVE:
        return axis - far, axis - near
    return axis + BAND_ROWS + near - 1, axis + BAND_ROWS + far - 1


def place_gadgets(inst: SatInstance, d: Drawing, cfg: ReducerConfig) -> Tuple[Geometry, List[PlacedGadget]]:
    """
    没有子句的一侧先接一段导线把导线桩延长到TERMINATED_STUB_ROWS行，再接终结器
    """
    geo = geometry(inst, d, cfg)
    axis, stub = geo.axis, cfg.stub_rows
    placed = []
    for v, ids in enumerate(d.var_taps, start=1):
        g = _variable(len(ids))
        x_first = d.taps[ids[0]].x0
        stub_rows = list(range(axis - stub, axis)) + list(range(axis + BAND_ROWS, axis + BAND_ROWS + stub))
        sheath = tuple(cell for t in ids for cell in _side_columns(d.taps[t].x0, stub_rows))
        placed.append(PlacedGadget(GadgetInstance(g, (axis - stub, x_first - 2)), Role.VARIABLE, f'x{v}', sheath))

    for t, tap in enumerate(d.taps):
        for polarity in Polarity:
            ci = tap.clause_on(polarity)
            mark = polarity.value
            span = TERMINATED_STUB_ROWS if ci is None else level_span(cfg, d.levels[ci])
            height = (span - stub) // 2
            first, last = _wire_rows(axis, polarity, stub, span)
            if ci is None:
                row = first - len(TERMINATOR_ROWS) if polarity is Polarity.POSITIVE else last
                placed.append(PlacedGadget(GadgetInstance(_terminator(polarity), (row, tap.x0)), Role.TERMINATOR,
                                           f'terminator t{t}{mark}', (), t, polarity))
            g = _wire(height, polarity)
            assert g.rows == last - first + 1, f'导线高度不一致：{g.rows} != {last - first + 1}'
            sheath = _side_columns(tap.x0, range(first, last + 1))
            placed.append(PlacedGadget(GadgetInstance(g, (first, tap.x0 + 1)), Role.WIRE, f'wire t{t}{mark}',
                                       sheath, t, polarity))

    for i, clause in enumerate(inst.clauses):
        xs = [d.taps[t].x0 for t in d.legs[i]]
        gaps = (xs[1] - xs[0] - CLAUSE_PITCH, xs[2] - xs[1] - CLAUSE_PITCH)
        g = _clause(clause.polarity, gaps)
        span = level_span(cfg, d.levels[i])
        row = axis - span - CLAUSE_ROWS if clause.polarity is Polarity.POSITIVE else axis + BAND_ROWS + span - 1
        placed.append(PlacedGadget(GadgetInstance(g, (row, xs[0] - 2)), Role.CLAUSE, f'c{i}',
                                   polarity=clause.polarity))
    return geo, placed


def paint(geo: Geometry, placed: List[PlacedGadget]) -> Puzzle:
    """把全部实例的提示画到宿主网格上，重叠处必须一致"""
    clues: Dict[Tuple[int, int], Clue] = {}
    for pg in placed:
        d_row, d_col = pg.offset
        for clue in pg.gadget.puzzle.clues:
            cell = (clue.row + d_row, clue.col + d_col)
            if not (0 <= cell[0] < geo.rows and 0 <= cell[1] < geo.cols):
                raise AssemblyError(f'{pg.label}的提示越界：{cell}')
            old = clues.get(cell)
            if old is not None and old.kind is not clue.kind:
                raise AssemblyError(f'{pg.label}与其它实例在{cell}处的提示冲突')
            clues[cell] = Clue(cell[0], cell[1], clue.kind)
    return Puzzle(geo.rows, geo.cols, tuple(clues.values()))


def gadget_cells(placed: List[PlacedGadget], rows, cols) -> CellSet:
    """全部实例的整体区域与外护套之并，填充之外的部分"""
    cells = CellSet.empty(rows, cols)
    for pg in placed:
        cells = cells | pg.instance.cells(pg.gadget.area, rows, cols)
        if pg.sheathing:
            cells = cells | CellSet.from_cells(rows, cols, pg.sheathing)
    return cells


def variable_end_row(pg: PlacedGadget):
    """导线靠近变量带的末行：向上的导线是最后一行，向下的是第一行"""
    return pg.offset[0] + (pg.gadget.rows - 1 if pg.polarity is Polarity.POSITIVE else 0)


def seam_cells(placed: List[PlacedGadget], rows, cols) -> CellSet:
    """
    允许两个实例的必选区域重叠的接缝：
    左右相接的两个变量（或同一层的两个同侧子句）共用的边界列，
    以及导线在变量一端末行的两个内护套单元格
    """
    cells = CellSet.empty(rows, cols)
    blocks = [pg for pg in placed if pg.role in (Role.VARIABLE, Role.CLAUSE)]
    right_edges = {}
    for pg in blocks:
        right_edges[(pg.role, pg.polarity, pg.offset[0], pg.offset[1] + pg.gadget.cols - 1)] = pg
    for pg in blocks:
        left = right_edges.get((pg.role, pg.polarity, pg.offset[0], pg.offset[1]))
        if left is not None:
            cells = cells | (pg.instance.cells(pg.gadget.mandatory, rows, cols) &
                             left.instance.cells(left.gadget.mandatory, rows, cols))
    ends = []
    for pg in placed:
        if pg.role is Role.WIRE:
            end = variable_end_row(pg)
            ends.extend((end, pg.offset[1] + dc) for dc in (0, pg.gadget.cols - 1))
    return cells | CellSet.from_cells(rows, cols, ends)


def assemble(d: Drawing, inst: SatInstance, cfg: ReducerConfig = None) -> Tuple[Puzzle, List[PlacedGadget]]:
    """
    按画法放置变量、导线、终结器和子句，返回只含小工具提示的谜题
    负子句及连向它们的导线是正的上下镜像
    """
    cfg = cfg or ReducerConfig.default()
    geo, placed = place_gadgets(inst, d, cfg)
    p = paint(geo, placed)
    seams = seam_cells(placed, geo.rows, geo.cols)
    for pg in placed:
        if [cell for cell in pg.instance.mismatches(p) if cell not in seams]:
            raise AssemblyError(f'{pg.label}与宿主谜题不一致')
    logger.debug(f'拼装：{geo.rows}x{geo.cols}，{len(placed)}个实例，变量带首行{geo.axis}')
    return p, placed
