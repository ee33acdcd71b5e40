from dataclasses import dataclass
from typing import List

from tatami.grid.puzzle import Puzzle
from tatami.reducer.assemble import PlacedGadget, assemble
from tatami.reducer.audit import AuditReport, safe_placement_audit, structural_audit
from tatami.reducer.config import ReducerConfig
from tatami.reducer.filler import FillerPlan, apply_filler, place_filler
from tatami.reducer.layout import Drawing, layout
from tatami.reducer.sat_instance import SatInstance, parse_sat
from tatami.utils.logger import setup_logger

logger = setup_logger(__name__)

# 回归用的尺寸上界：rows*cols <= SIZE_CONSTANT*(n+m)^2
SIZE_CONSTANT = 500


@dataclass(frozen=True)
class ReductionResult:
    puzzle: Puzzle
    placed: List[PlacedGadget]
    filler: FillerPlan
    drawing: Drawing
    audit: AuditReport

    @property
    def gadget_puzzle(self) -> Puzzle:
        """不含填充提示的谜题"""
        ids = {f.clue_cell for f in self.filler.rects}
        return Puzzle(self.puzzle.rows, self.puzzle.cols, tuple(c for c in self.puzzle.clues if c.cell not in ids))


def size_ratio(inst: SatInstance, p: Puzzle) -> float:
    return p.rows * p.cols / (inst.num_vars + len(inst.clauses)) ** 2


def reduce_instance(inst: SatInstance, cfg: ReducerConfig = None) -> ReductionResult:
    """
    画法、放置小工具、填充，最后做结构与安全放置审计
    审计失败说明实现有误，结果仍然返回，由调用方决定如何处理
    """
    cfg = cfg or ReducerConfig.default()
    d = layout(inst, cfg)
    p, placed = assemble(d, inst, cfg)
    plan = place_filler(p, placed)
    puzzle = apply_filler(p, plan)
    report = structural_audit(puzzle, placed, plan).merge(safe_placement_audit(puzzle, placed))
    if not report.passed:
        logger.warning(f'归约审计失败：{report.errors[:3]}')
    logger.info(f'归约完成：{inst.num_vars}个变量，{len(inst.clauses)}个子句 -> '
                f'{puzzle.rows}x{puzzle.cols}，{len(puzzle.clues)}个提示')
    return ReductionResult(puzzle, placed, plan, d, report)


def reduce(inst: SatInstance, cfg: ReducerConfig = None) -> Puzzle:
    return reduce_instance(inst, cfg).puzzle


def reduce_text(text, cfg: ReducerConfig = None) -> Puzzle:
    return reduce(parse_sat(text), cfg)
