from collections import defaultdict
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from tatami.gadgets.tatami_gadgets import Polarity
from tatami.grid.puzzle import CellSet, Puzzle
from tatami.reducer.assemble import WIRE_FOOTPRINT, PlacedGadget, Role, seam_cells
from tatami.reducer.filler import FillerPlan
from tatami.utils.logger import setup_logger

logger = setup_logger(__name__)

# 两根导线外轮廓之间不超过这么多列时记一条相邻导线说明
ADJACENT_WIRE_COLUMNS = 3


@dataclass
class AuditReport:
    errors: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return not self.errors

    def merge(self, other: 'AuditReport'):
        self.errors.extend(other.errors)
        self.notes.extend(other.notes)
        return self

    def lines(self):
        out = [f'audit {"pass" if self.passed else "fail"}']
        out.extend(f'error {e}' for e in self.errors)
        out.extend(f'note {n}' for n in self.notes)
        return out


def _shape(p: Puzzle):
    return p.rows, p.cols


def structural_audit(p: Puzzle, placed: List[PlacedGadget], plan: Optional[FillerPlan] = None) -> AuditReport:
    """
    必选区域两两不交（记录在案的接缝除外）；每个可选区域恰好属于两个实例；
    实例与宿主谜题一致；给出填充时检查单元格计数恒等式
    """
    report = AuditReport()
    rows, cols = _shape(p)
    count = np.zeros((rows, cols), dtype=np.int64)
    area = np.zeros((rows, cols), dtype=bool)
    sheath = np.zeros((rows, cols), dtype=bool)
    optionals = defaultdict(list)
    seams = seam_cells(placed, rows, cols)
    for pg in placed:
        count += pg.instance.cells(pg.gadget.mandatory, rows, cols).mask
        area |= pg.instance.cells(pg.gadget.area, rows, cols).mask
        for r, c in pg.sheathing:
            sheath[r, c] = True
        for i, opt in enumerate(pg.gadget.optionals):
            optionals[pg.instance.cells(opt, rows, cols)].append(f'{pg.label}#{i}')
        bad = [cell for cell in pg.instance.mismatches(p) if cell not in seams]
        if bad:
            report.errors.append(f'{pg.label}与宿主谜题不一致：{bad[:3]}')

    overlap = CellSet(count > 1) - seams
    if overlap:
        report.errors.append(f'必选区域重叠：{sorted(overlap)[:5]}')
    for cells, owners in optionals.items():
        if len(owners) != 2:
            report.errors.append(f'可选区域{sorted(cells)[:2]}属于{len(owners)}个实例：{owners}')
    if (area & sheath).any():
        report.errors.append('外护套与小工具区域重叠')
    if plan is not None:
        total = int(area.sum()) + int(sheath.sum()) + plan.area
        if total != rows * cols:
            report.errors.append(f'单元格计数不符：{total} != {rows * cols}')
    return report


def safe_placement_audit(p: Puzzle, placed: List[PlacedGadget]) -> AuditReport:
    """
    每根导线的6列内只有导线自己的提示；
    导线`+`列从两端向外遇到的第一个提示属于变量、子句或终结器
    """
    report = AuditReport()
    owned = {}
    for pg in placed:
        for clue in pg.gadget.puzzle.clues:
            owned[(clue.row + pg.offset[0], clue.col + pg.offset[1])] = pg.label
    wires = [pg for pg in placed if pg.role is Role.WIRE]
    for pg in wires:
        top, x0 = pg.offset[0], pg.offset[1] - 1
        bottom = top + pg.gadget.rows - 1
        for r in range(top, bottom + 1):
            for c in range(x0, x0 + WIRE_FOOTPRINT):
                if p.clue_index(r, c) is not None and not _own_clue(pg, r, c):
                    report.errors.append(f'{pg.label}：第{c}列第{r}行有外来提示')
        lane = x0 + 2
        for start, step in ((top - 1, -1), (bottom + 1, 1)):
            r = start
            while 0 <= r < p.rows and p.clue_index(r, lane) is None:
                r += step
            if 0 <= r < p.rows and (r, lane) not in owned:
                report.errors.append(f'{pg.label}：第{lane}列外侧第一个提示({r}, {lane})不属于任何小工具')

    for side in Polarity:
        same = sorted((pg for pg in wires if pg.polarity is side), key=lambda pg: pg.offset[1])
        for a, b in zip(same, same[1:]):
            gap = (b.offset[1] - 1) - (a.offset[1] - 1 + WIRE_FOOTPRINT)
            rows_a = range(a.offset[0], a.offset[0] + a.gadget.rows)
            rows_b = range(b.offset[0], b.offset[0] + b.gadget.rows)
            if gap <= ADJACENT_WIRE_COLUMNS and set(rows_a) & set(rows_b):
                report.notes.append(f'adjacent-wire {a.label} {b.label} 间隔{gap}列')
    return report


def _own_clue(pg: PlacedGadget, r, c):
    r, c = r - pg.offset[0], c - pg.offset[1]
    return 0 <= c < pg.gadget.cols and pg.gadget.puzzle.clue_index(r, c) is not None
