import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from tatami import SUPPORT_ENGINE
from tatami.errors import PreconditionError, ResourceExhausted
from tatami.grid.puzzle import CellSet, Puzzle, Solution
from tatami.solver.backtrack import BacktrackSearch
from tatami.solver.sat_encoder import SatSearch
from tatami.utils.logger import setup_logger

logger = setup_logger(__name__)


class SearchStatus(Enum):
    EXHAUSTED = 'exhausted'
    CAPPED = 'capped'
    RESOURCE_EXHAUSTED = 'resource-exhausted'


_STATUS = {'exhausted': SearchStatus.EXHAUSTED,
           'capped': SearchStatus.CAPPED,
           'resource': SearchStatus.RESOURCE_EXHAUSTED}


@dataclass(frozen=True)
class SearchConfig:
    """
    搜索参数
    :param max_solutions: 找到这么多解后停止，None表示不限
    :param node_limit: 搜索节点预算（回溯为递归节点数，SAT为每次求解的传播预算），None表示不限
    :param engine: 求解引擎，backtrack或sat
    :param keep: 最多保留多少个解，None表示保留全部
    """
    max_solutions: Optional[int] = None
    node_limit: Optional[int] = None
    engine: str = 'backtrack'
    keep: Optional[int] = None

    def __post_init__(self):
        assert self.engine in SUPPORT_ENGINE, f'没有该引擎：{self.engine}'
        if self.max_solutions is not None and self.max_solutions < 1:
            raise PreconditionError(f'max_solutions必须不小于1：{self.max_solutions}')


@dataclass(frozen=True)
class Region:
    """
    搜索区域
    :param area: 矩形允许落入的单元格
    :param required: 必须被覆盖的单元格
    :param optional: 可以留空的单元格，其余区域内单元格必须留空
    """
    area: CellSet
    required: CellSet
    optional: CellSet

    @classmethod
    def whole(cls, p: Puzzle):
        full = CellSet.full(p.rows, p.cols)
        return cls(full, full, CellSet.empty(p.rows, p.cols))


@dataclass(frozen=True)
class SolveOutcome:
    status: SearchStatus
    solutions: Tuple[Solution, ...] = ()
    count: int = 0
    nodes: int = field(default=0, compare=False)

    @property
    def exact(self):
        return self.status is SearchStatus.EXHAUSTED


def search_region(p: Puzzle, region: Region, cfg: SearchConfig = SearchConfig()) -> SolveOutcome:
    """在给定区域上搜索局部解，整个谜题的求解是其特例"""
    start = time.time()
    if cfg.engine == 'sat':
        search = SatSearch(p, region, max_solutions=cfg.max_solutions, prop_limit=cfg.node_limit, keep=cfg.keep)
    else:
        search = BacktrackSearch(p, region, max_solutions=cfg.max_solutions, node_limit=cfg.node_limit, keep=cfg.keep)
    search.run()
    solutions = tuple(Solution(tuple(assignments)) for assignments in search.solutions)
    outcome = SolveOutcome(_STATUS[search.status], solutions, search.count, search.nodes)
    logger.debug(f'{cfg.engine}搜索{p.rows}x{p.cols}：{outcome.count}个解，状态{outcome.status.value}，'
                 f'{outcome.nodes}个节点，耗时{time.time() - start:.2f}秒')
    return outcome


def solve(p: Puzzle, cfg: SearchConfig = SearchConfig()) -> SolveOutcome:
    return search_region(p, Region.whole(p), cfg)


def count_solutions(p: Puzzle, cap, engine='backtrack', node_limit=None):
    """
    统计解的个数，最多数到cap
    :return: (count, exact)，exact表示搜索穷尽；达到上限或预算耗尽时为False
    """
    if cap < 1:
        raise PreconditionError(f'cap必须不小于1：{cap}')
    outcome = solve(p, SearchConfig(max_solutions=cap, node_limit=node_limit, engine=engine, keep=0))
    if outcome.status is SearchStatus.RESOURCE_EXHAUSTED:
        raise ResourceExhausted(f'搜索预算耗尽，已找到{outcome.count}个解')
    return outcome.count, outcome.exact


def is_solvable(p: Puzzle, engine='sat', node_limit=None):
    count, _ = count_solutions(p, 1, engine=engine, node_limit=node_limit)
    return count > 0
