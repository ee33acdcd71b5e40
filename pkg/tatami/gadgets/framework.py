from collections import Counter
from dataclasses import dataclass, field
from typing import Any, FrozenSet, List, Optional, Sequence, Tuple

from tatami.errors import PreconditionError, ResourceExhausted
from tatami.grid.puzzle import CellSet, Clue, Fragment, Puzzle, Solution
from tatami.solver.searcher import Region, SearchConfig, SearchStatus, search_region
from tatami.utils.logger import setup_logger
from tatami.validator import validate_local

logger = setup_logger(__name__)

# 小工具默认用SAT引擎，节点预算对应每次求解的传播次数
DEFAULT_CONFIG = SearchConfig(engine='sat', node_limit=10 ** 8)


class LocalRules:
    """谜题规则在小工具层面的接口：搜索局部解、求解覆盖的单元格、检查见证解"""
    name = 'abstract'

    def clue_cells(self, puzzle) -> List[Tuple[int, int]]:
        raise NotImplementedError

    def search(self, puzzle, area: CellSet, required: CellSet, optional: CellSet, cfg: SearchConfig):
        raise NotImplementedError

    def covered(self, puzzle, solution) -> CellSet:
        raise NotImplementedError

    def witness_ok(self, puzzle, area: CellSet, solution, profile: CellSet) -> bool:
        raise NotImplementedError

    def translate(self, puzzle, d_row, d_col, rows, cols):
        raise NotImplementedError


class TatamiRules(LocalRules):
    name = 'tatamibari'

    def clue_cells(self, puzzle: Puzzle):
        return [clue.cell for clue in puzzle.clues]

    def search(self, puzzle, area, required, optional, cfg):
        return search_region(puzzle, Region(area, required, optional), cfg)

    def covered(self, puzzle, solution: Solution):
        return solution.covered(puzzle.rows, puzzle.cols)

    def witness_ok(self, puzzle, area, solution, profile):
        return validate_local(Fragment(puzzle, area), solution, profile).ok

    def translate(self, puzzle: Puzzle, d_row, d_col, rows, cols):
        clues = tuple(Clue(c.row + d_row, c.col + d_col, c.kind, c.shade) for c in puzzle.clues)
        return Puzzle(rows, cols, clues)


TATAMI_RULES = TatamiRules()


@dataclass(frozen=True)
class Profile:
    """小工具整体区域的一个子集；optional_ids为其覆盖的可选区域编号，非正规轮廓为None"""
    cells: CellSet
    optional_ids: Optional[FrozenSet[int]] = None

    @property
    def proper(self):
        return self.optional_ids is not None


@dataclass(frozen=True)
class TableEntry:
    profile: Profile
    witness: Any = None


@dataclass(frozen=True)
class ProfileTable:
    entries: Tuple[TableEntry, ...] = ()

    @classmethod
    def from_subsets(cls, g: 'Gadget', subsets: Sequence[Sequence[int]]):
        return cls(tuple(TableEntry(g.profile_of(s)) for s in subsets))

    def subsets(self) -> List[FrozenSet[int]]:
        return [e.profile.optional_ids for e in self.entries]

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class Gadget:
    """
    小工具：子谜题加上把整体区域划分为一个必选区域和若干可选区域
    :param name: 名称
    :param puzzle: 子谜题的网格与提示（Tatamibari的Puzzle或Spiral Galaxies的SGPuzzle）
    :param area: 整体区域
    :param mandatory: 必选区域
    :param optionals: 可选区域，至少一个
    :param rules: 局部解的规则
    """
    name: str
    puzzle: Any
    area: CellSet
    mandatory: CellSet
    optionals: Tuple[CellSet, ...]
    rules: LocalRules = field(default=TATAMI_RULES, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'optionals', tuple(self.optionals))
        if not self.optionals:
            raise PreconditionError(f'{self.name}：小工具至少需要一个可选区域')
        union = self.mandatory
        for i, opt in enumerate(self.optionals):
            if not opt:
                raise PreconditionError(f'{self.name}：可选区域{i}为空')
            if not union.isdisjoint(opt):
                raise PreconditionError(f'{self.name}：可选区域{i}与其它区域相交')
            union = union | opt
        if union != self.area:
            raise PreconditionError(f'{self.name}：必选区域与可选区域的并集不等于整体区域')
        for cell in self.rules.clue_cells(self.puzzle):
            if cell not in self.mandatory:
                raise PreconditionError(f'{self.name}：提示{cell}不在必选区域内')

    @property
    def fragment(self):
        return Fragment(self.puzzle, self.area)

    @property
    def rows(self):
        return self.area.shape[0]

    @property
    def cols(self):
        return self.area.shape[1]

    def profile_of(self, ids) -> Profile:
        ids = frozenset(ids)
        cells = self.mandatory
        for i in ids:
            cells = cells | self.optionals[i]
        return Profile(cells, ids)

    def classify(self, cells: CellSet) -> Profile:
        """把覆盖的单元格集合归类为轮廓"""
        ids = set()
        proper = self.mandatory.issubset(cells)
        for i, opt in enumerate(self.optionals):
            inside = len(opt & cells)
            if inside == len(opt):
                ids.add(i)
            elif inside:
                proper = False
        return Profile(cells, frozenset(ids) if proper else None)

    def translate(self, d_row, d_col, rows, cols) -> 'Gadget':
        def move(cs):
            return cs.translate(d_row, d_col, rows, cols)

        return Gadget(self.name, self.rules.translate(self.puzzle, d_row, d_col, rows, cols), move(self.area),
                      move(self.mandatory), tuple(move(o) for o in self.optionals), self.rules)


@dataclass(frozen=True)
class GadgetInstance:
    gadget: Gadget
    offset: Tuple[int, int]

    def cells(self, cs: CellSet, rows, cols):
        return cs.translate(self.offset[0], self.offset[1], rows, cols)

    def placed(self, rows, cols) -> Gadget:
        return self.gadget.translate(self.offset[0], self.offset[1], rows, cols)

    def mismatches(self, host: Puzzle) -> List[Tuple[int, int]]:
        """平移后的子谜题与宿主谜题在整体区域内不一致的单元格"""
        d_row, d_col = self.offset
        own = {(c.row + d_row, c.col + d_col): c.kind for c in self.gadget.puzzle.clues}
        out = []
        for r, c in self.gadget.area:
            cell = (r + d_row, c + d_col)
            index = host.clue_index(*cell)
            host_kind = host.clues[index].kind if index is not None else None
            if own.get(cell) != host_kind:
                out.append(cell)
        return out


def proper_profiles(g: Gadget) -> List[Profile]:
    """全部2^k个正规轮廓，按可选区域子集的位掩码排序"""
    k = len(g.optionals)
    return [g.profile_of(i for i in range(k) if mask >> i & 1) for mask in range(1 << k)]


def _search(g: Gadget, area, required, optional, cfg):
    outcome = g.rules.search(g.puzzle, area, required, optional, cfg)
    if outcome.status is SearchStatus.RESOURCE_EXHAUSTED:
        raise ResourceExhausted(f'{g.name}：搜索预算耗尽')
    return outcome


def local_solutions(g: Gadget, pr: Profile, cfg: SearchConfig = DEFAULT_CONFIG) -> list:
    """矩形落在整体区域内、并集恰为该轮廓、满足局部规则的全部分配"""
    if not pr.proper:
        raise PreconditionError(f'{g.name}：只能对正规轮廓求局部解')
    empty = CellSet.empty(g.rows, g.cols)
    return list(_search(g, g.area, pr.cells, empty, cfg).solutions)


def build_profile_table(g: Gadget, cfg: SearchConfig = DEFAULT_CONFIG) -> ProfileTable:
    """每个有局部解的正规轮廓及一个见证解"""
    first_only = SearchConfig(max_solutions=1, node_limit=cfg.node_limit, engine=cfg.engine, keep=1)
    empty = CellSet.empty(g.rows, g.cols)
    entries = []
    for pr in proper_profiles(g):
        outcome = _search(g, g.area, pr.cells, empty, first_only)
        if outcome.count:
            entries.append(TableEntry(pr, outcome.solutions[0]))
    logger.info(f'{g.name}：{len(entries)}/{1 << len(g.optionals)}个正规轮廓可局部求解')
    return ProfileTable(tuple(entries))


def improper_witnesses(g: Gadget, cfg: SearchConfig = DEFAULT_CONFIG):
    """
    对每个可选区域中的有序单元格对(u, v)，寻找覆盖u但不覆盖v的局部解
    存在即说明某个非正规轮廓可局部求解
    """
    first_only = SearchConfig(max_solutions=1, node_limit=cfg.node_limit, engine=cfg.engine, keep=1)
    out = []
    for i, opt in enumerate(g.optionals):
        cells = list(opt)
        for u in cells:
            for v in cells:
                if u == v:
                    continue
                area = g.area - CellSet.from_cells(g.rows, g.cols, [v])
                required = g.mandatory | CellSet.from_cells(g.rows, g.cols, [u])
                optional = (g.area - g.mandatory) - CellSet.from_cells(g.rows, g.cols, [u, v])
                outcome = _search(g, area, required, optional, first_only)
                if outcome.count:
                    out.append((i, u, v, outcome.solutions[0]))
    return out


def classify_local_solutions(g: Gadget, cfg: SearchConfig = DEFAULT_CONFIG):
    """
    不受轮廓约束地枚举全部局部解，按诱导轮廓分类
    :return: (Counter: optional_ids或None -> 个数, 解列表)
    """
    optional = g.area - g.mandatory
    outcome = _search(g, g.area, g.mandatory, optional, cfg)
    counts = Counter()
    for s in outcome.solutions:
        counts[g.classify(g.rules.covered(g.puzzle, s)).optional_ids] += 1
    return counts, list(outcome.solutions)


@dataclass
class TableReport:
    gadget: str
    expected: List[FrozenSet[int]]
    found: List[FrozenSet[int]]
    missing: List[FrozenSet[int]] = field(default_factory=list)
    unexpected: List[Tuple[FrozenSet[int], Any]] = field(default_factory=list)
    bad_witnesses: List[FrozenSet[int]] = field(default_factory=list)
    improper: list = field(default_factory=list)
    strict_improper: bool = True
    census: Optional[Counter] = None

    @property
    def census_improper(self):
        return self.census[None] if self.census is not None else 0

    @property
    def passed(self):
        if self.strict_improper and (self.improper or self.census_improper):
            return False
        return not self.missing and not self.unexpected and not self.bad_witnesses

    def lines(self):
        def fmt(ids):
            return '{' + ','.join(str(i) for i in sorted(ids)) + '}'

        out = [f'gadget {self.gadget}: {"pass" if self.passed else "fail"}',
               f'  expected {len(self.expected)}: {" ".join(fmt(s) for s in self.expected)}',
               f'  solvable {len(self.found)}: {" ".join(fmt(s) for s in self.found)}']
        for ids in self.missing:
            out.append(f'  missing {fmt(ids)}: expected profile has no local solution')
        for ids, witness in self.unexpected:
            out.append(f'  unexpected {fmt(ids)}: locally solvable, witness {witness}')
        for ids in self.bad_witnesses:
            out.append(f'  witness {fmt(ids)} does not induce its profile')
        label = 'improper' if self.strict_improper else 'improper (reported)'
        out.append(f'  {label}: {len(self.improper)}')
        for i, u, v, _ in self.improper[:5]:
            out.append(f'    optional {i}: covers {u} but not {v}')
        if self.census is not None:
            parts = [f'{fmt(ids) if ids is not None else "improper"}:{n}'
                     for ids, n in sorted(self.census.items(), key=lambda kv: (kv[0] is None, sorted(kv[0] or ())))]
            out.append(f'  census {sum(self.census.values())}: {" ".join(parts)}')
        return out


def check_table(g: Gadget, expected: ProfileTable, cfg: SearchConfig = DEFAULT_CONFIG,
                strict_improper=True, census=False) -> TableReport:
    """
    检查期望的轮廓表
    (a) 期望的轮廓都可局部求解，自带的见证解恰好诱导该轮廓
    (b) 期望之外的正规轮廓都不可局部求解
    (c) 非正规轮廓没有局部解
    :param census: 另外不受轮廓约束地枚举全部局部解并按诱导轮廓计数，只适合局部解不多的小工具
    """
    built = build_profile_table(g, cfg)
    found = built.subsets()
    want = expected.subsets()
    report = TableReport(g.name, want, found, strict_improper=strict_improper)
    for entry in expected.entries:
        ids = entry.profile.optional_ids
        if ids not in found:
            report.missing.append(ids)
        elif entry.witness is not None and not g.rules.witness_ok(g.puzzle, g.area, entry.witness,
                                                                  g.profile_of(ids).cells):
            report.bad_witnesses.append(ids)
    for entry in built.entries:
        if entry.profile.optional_ids not in want:
            report.unexpected.append((entry.profile.optional_ids, entry.witness))
    report.improper = improper_witnesses(g, cfg)
    if census:
        report.census, _ = classify_local_solutions(g, cfg)
    logger.info(f'{g.name}：检查{"通过" if report.passed else "失败"}，非正规局部解{len(report.improper)}个')
    return report


def compose(name, instances: Sequence[GadgetInstance], rows, cols) -> Gadget:
    """
    把多个小工具实例拼成一个联合小工具
    两个实例共享的可选区域成为内部区域（必须被覆盖），其余可选区域保留
    """
    assert instances, '至少需要一个实例'
    placed = [inst.placed(rows, cols) for inst in instances]
    rules = placed[0].rules
    area = CellSet.empty(rows, cols)
    mandatory = CellSet.empty(rows, cols)
    optionals = []
    for g in placed:
        area = area | g.area
        mandatory = mandatory | g.mandatory
        optionals.extend(g.optionals)
    shared = Counter(optionals)
    kept = []
    for opt in optionals:
        if shared[opt] > 1:
            mandatory = mandatory | opt
        elif opt not in kept:
            kept.append(opt)
    clues = {}
    for g in placed:
        for clue in g.puzzle.clues:
            clues[clue.cell] = clue
    puzzle = Puzzle(rows, cols, tuple(clues.values()))
    # 内部区域不再可选
    kept = [opt for opt in kept if opt.isdisjoint(mandatory)]
    return Gadget(name, puzzle, area, mandatory, tuple(kept), rules)


def compose_check(name, instances: Sequence[GadgetInstance], rows, cols,
                  cfg: SearchConfig = DEFAULT_CONFIG) -> Tuple[Gadget, ProfileTable]:
    """拼接后重新建表；表为空说明这些实例无法同时局部求解"""
    g = compose(name, instances, rows, cols)
    table = build_profile_table(g, cfg)
    logger.info(f'{name}：拼接后可局部求解的轮廓{len(table)}个')
    return g, table
