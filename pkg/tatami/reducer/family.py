from itertools import combinations_with_replacement
from typing import List

from tatami.gadgets.tatami_gadgets import Polarity
from tatami.reducer.sat_instance import Clause, SatInstance


def monotone_family(max_vars=3, max_clauses=2) -> List[SatInstance]:
    """
    n从1到max_vars，每个n上一个或多个（至多max_clauses个）单调子句的全部多重集
    子句的文字已排序；顺序为：先n，再按子句列表的字典序
    """
    assert 1 <= max_clauses <= 2, f'只支持一个或两个子句：{max_clauses}'
    out = []
    for n in range(1, max_vars + 1):
        options = [Clause(polarity, lits) for polarity in Polarity
                   for lits in combinations_with_replacement(range(1, n + 1), 3)]
        for i, a in enumerate(options):
            out.append(SatInstance(n, (a,)))
            if max_clauses == 2:
                for b in options[i:]:
                    out.append(SatInstance(n, (a, b)))
    return out
