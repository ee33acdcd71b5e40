from itertools import product

from tatami.errors import PreconditionError
from tatami.grid.puzzle import Puzzle, Solution
from tatami.solver.candidates import candidate_rects
from tatami.solver.searcher import SearchStatus, SolveOutcome
from tatami.validator import validate

# 无剪枝参照求解器的规模上限
ORACLE_MAX_CELLS = 16
ORACLE_MAX_CLUES = 4


def oracle_solve(p: Puzzle) -> SolveOutcome:
    """候选矩形的全笛卡尔积逐一交给validate，仅用于测试"""
    if p.num_cells > ORACLE_MAX_CELLS or len(p.clues) > ORACLE_MAX_CLUES:
        raise PreconditionError(f'参照求解器只支持不超过{ORACLE_MAX_CELLS}个单元格、{ORACLE_MAX_CLUES}个提示：'
                                f'{p.rows}x{p.cols}，{len(p.clues)}个提示')
    if not p.clues:
        return SolveOutcome(SearchStatus.EXHAUSTED)
    pools = [candidate_rects(p, i) for i in range(len(p.clues))]
    solutions = []
    for rects in product(*pools):
        s = Solution.from_rects(rects)
        if validate(p, s).ok:
            solutions.append(s)
    return SolveOutcome(SearchStatus.EXHAUSTED, tuple(solutions), len(solutions))
