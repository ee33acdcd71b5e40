from dataclasses import dataclass
from typing import Tuple

from tatami.errors import FormatError, NotMonotone, PreconditionError
from tatami.gadgets.tatami_gadgets import Polarity

# 暴力判定可满足性的变量数上限
BRUTE_FORCE_MAX_VARS = 20


@dataclass(frozen=True)
class Clause:
    """单调子句：三个（可重复的）变量编号，全部为正文字或全部为负文字"""
    polarity: Polarity
    literals: Tuple[int, int, int]

    def __post_init__(self):
        assert len(self.literals) == 3, f'子句需要三个文字：{self.literals}'
        object.__setattr__(self, 'literals', tuple(sorted(self.literals)))

    @property
    def span(self):
        return self.literals[0], self.literals[2]

    def satisfied_by(self, assignment) -> bool:
        want = self.polarity is Polarity.POSITIVE
        return any(assignment[v - 1] == want for v in self.literals)

    def flipped(self):
        return Clause(self.polarity.flipped(), self.literals)


@dataclass(frozen=True)
class SatInstance:
    num_vars: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self):
        assert self.num_vars >= 1, f'变量数必须不小于1：{self.num_vars}'
        for clause in self.clauses:
            for v in clause.literals:
                assert 1 <= v <= self.num_vars, f'变量编号越界：{v}'
        object.__setattr__(self, 'clauses', tuple(self.clauses))

    def flipped(self):
        """全部子句取反极性"""
        return SatInstance(self.num_vars, tuple(c.flipped() for c in self.clauses))


def parse_sat(text) -> SatInstance:
    """
    解析单调3SAT实例
    :param text: `monotone-sat <n>` 开头，每行 `clause <+|-> v1 v2 [v3]`，`#` 开头为注释
    :return: SatInstance，两个文字的子句重复最后一个文字补齐到三个
    """
    lines = [(no, line.strip()) for no, line in enumerate(text.splitlines(), start=1)]
    lines = [(no, line) for no, line in lines if line and not line.startswith('#')]
    if not lines:
        raise FormatError('空输入')
    no, header = lines[0]
    tokens = header.split()
    if len(tokens) != 2 or tokens[0] != 'monotone-sat':
        raise FormatError('缺少 monotone-sat <n> 头部', no)
    try:
        n = int(tokens[1])
    except ValueError:
        raise FormatError(f'无法解析整数：{tokens[1]}', no)
    if n < 1:
        raise FormatError(f'变量数必须不小于1：{n}', no)
    clauses = []
    for no, line in lines[1:]:
        tokens = line.split()
        if len(tokens) < 2 or tokens[0] != 'clause' or tokens[1] not in ('+', '-'):
            raise FormatError(f'无法识别的行：{line}', no)
        literals = []
        for t in tokens[2:]:
            try:
                v = int(t)
            except ValueError:
                raise FormatError(f'无法解析整数：{t}', no)
            if v < 0:
                raise NotMonotone(f'单调子句中出现了负号文字：{line}', no)
            if not 1 <= v <= n:
                raise FormatError(f'变量编号越界：{v}', no)
            literals.append(v)
        if not 2 <= len(literals) <= 3:
            raise FormatError(f'子句需要2或3个文字，实际为{len(literals)}个', no)
        while len(literals) < 3:
            literals.append(literals[-1])
        clauses.append(Clause(Polarity(tokens[1]), tuple(literals)))
    return SatInstance(n, tuple(clauses))


def format_sat(inst: SatInstance) -> str:
    lines = [f'monotone-sat {inst.num_vars}']
    lines.extend(f'clause {c.polarity.value} ' + ' '.join(str(v) for v in c.literals) for c in inst.clauses)
    return '\n'.join(lines) + '\n'


def load_sat(path) -> SatInstance:
    with open(path, 'r', encoding='utf-8') as f:
        return parse_sat(f.read())


def brute_force_sat(inst: SatInstance) -> bool:
    """枚举全部2^n个赋值"""
    if inst.num_vars > BRUTE_FORCE_MAX_VARS:
        raise PreconditionError(f'暴力判定只支持不超过{BRUTE_FORCE_MAX_VARS}个变量：{inst.num_vars}')
    for bits in range(1 << inst.num_vars):
        assignment = [bool(bits >> i & 1) for i in range(inst.num_vars)]
        if all(c.satisfied_by(assignment) for c in inst.clauses):
            return True
    return False
