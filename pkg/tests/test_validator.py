import random

import pytest

from tatami.gadgets.tatami_gadgets import make_wire
from tatami.grid.puzzle import CellSet, Clue, ClueKind, Fragment, Puzzle, Rect, Solution, transpose, transpose_solution
from tatami.grid.reader import read_puzzle
from tatami.validator import validate, validate_local


def sol(*rects):
    return Solution.from_rects([Rect(*r) for r in rects])


def test_valid_single_square():
    verdict = validate(read_puzzle('tatamibari 1 1\n+\n'), sol((0, 0, 1, 1)))
    assert verdict.ok
    assert verdict.report() == 'valid\n'


@pytest.mark.parametrize('text, rects, constraints', [
    # 两个矩形相交
    ('tatamibari 1 3\n-.+\n', [(0, 0, 1, 2), (0, 1, 1, 1)], [1, 2, 3]),
    # 漏掉单元格
    ('tatamibari 1 3\n-.+\n', [(0, 0, 1, 2), (0, 2, 1, 1)], []),
    ('tatamibari 1 3\n+..\n', [(0, 0, 1, 1)], [2]),
    # 一个矩形含两个提示
    ('tatamibari 1 2\n++\n', [(0, 0, 1, 2), (0, 1, 1, 1)], [1, 3, 4]),
    ('tatamibari 1 2\n+.\n', [(0, 0, 1, 2)], [4]),
    ('tatamibari 2 1\n-\n.\n', [(0, 0, 2, 1)], [5]),
    ('tatamibari 1 2\n|.\n', [(0, 0, 1, 2)], [6]),
])
def test_violations_by_constraint(text, rects, constraints):
    verdict = validate(read_puzzle(text), sol(*rects))
    assert verdict.constraints() == constraints


def test_four_corner_violation():
    p = read_puzzle('tatamibari 2 2\n++\n++\n')
    verdict = validate(p, sol((0, 0, 1, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 1, 1)))
    assert verdict.constraints() == [7]
    assert 'lattice point (1, 1)' in verdict.report()


def test_rect_outside_grid_and_missing_clue():
    p = read_puzzle('tatamibari 1 2\n+|\n')
    verdict = validate(p, Solution(((0, Rect(0, 0, 1, 1)), (0, Rect(0, -1, 1, 1)))))
    assert 2 in verdict.constraints()
    assert 3 in verdict.constraints()
    assert 'has no rectangle' in verdict.report()


def test_rect_missing_its_own_clue():
    p = read_puzzle('tatamibari 1 3\n+.-\n')
    verdict = validate(p, Solution(((0, Rect(0, 1, 1, 2)), (1, Rect(0, 0, 1, 1)))))
    assert 3 in verdict.constraints()


def test_local_check_skips_corners_outside_and_uses_profile():
    p = read_puzzle('tatamibari 2 3\n-.+\n...\n')
    area = CellSet.from_rect(2, 3, Rect(0, 0, 1, 3))
    fragment = Fragment(p, area)
    assert validate_local(fragment, sol((0, 0, 1, 2), (0, 2, 1, 1))).ok
    profile = CellSet.from_rect(2, 3, Rect(0, 0, 1, 2))
    verdict = validate_local(fragment, sol((0, 0, 1, 2), (0, 2, 1, 1)), profile)
    assert verdict.constraints() == [2]
    verdict = validate_local(fragment, sol((0, 0, 2, 3), (0, 2, 1, 1)))
    assert 2 in verdict.constraints()


def test_violation_order_is_stable():
    p = read_puzzle('tatamibari 1 3\n+..\n')
    a = validate(p, sol((0, 0, 1, 1))).report()
    b = validate(p, sol((0, 0, 1, 1))).report()
    assert a == b == 'constraint 2: cell (0, 1) is not covered\nconstraint 2: cell (0, 2) is not covered\n'


def _random_case(rng: random.Random):
    """随机网格、随机提示和随机分配；一半的分配来自对网格的随机切分"""
    rows, cols = rng.randint(1, 4), rng.randint(1, 4)
    kinds = list(ClueKind)
    if rng.random() < 0.5:
        pieces = [Rect(0, 0, rows, cols)]
        for _ in range(rng.randint(0, 4)):
            rect = pieces.pop(rng.randrange(len(pieces)))
            if rect.height > 1 and rng.random() < 0.5:
                cut = rng.randint(1, rect.height - 1)
                pieces += [Rect(rect.top, rect.left, cut, rect.width),
                           Rect(rect.top + cut, rect.left, rect.height - cut, rect.width)]
            elif rect.width > 1:
                cut = rng.randint(1, rect.width - 1)
                pieces += [Rect(rect.top, rect.left, rect.height, cut),
                           Rect(rect.top, rect.left + cut, rect.height, rect.width - cut)]
            else:
                pieces.append(rect)
        clues = [Clue(*rng.choice(list(rect.cells())), rng.choice(kinds)) for rect in pieces]
        p = Puzzle(rows, cols, tuple(clues))
        assignments = [(p.clue_index(c.row, c.col), rect) for c, rect in zip(clues, pieces)]
        return p, Solution(tuple(assignments))
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    chosen = rng.sample(cells, rng.randint(1, len(cells)))
    p = Puzzle(rows, cols, tuple(Clue(r, c, rng.choice(kinds)) for r, c in chosen))
    assignments = []
    for i in range(len(p.clues)):
        for _ in range(rng.choice([0, 1, 1, 1, 2])):
            top, left = rng.randint(-1, rows - 1), rng.randint(-1, cols - 1)
            assignments.append((i, Rect(top, left, rng.randint(1, rows), rng.randint(1, cols))))
    return p, Solution(tuple(assignments))


def _naive_constraints(p: Puzzle, s: Solution):
    """逐条规则直接数格子，不共用验证器的任何代码"""
    bad = set()
    per_clue = [0] * len(p.clues)
    placed = []
    for i, rect in s.assignments:
        per_clue[i] += 1
        inside = 0 <= rect.top and 0 <= rect.left and rect.top + rect.height <= p.rows and \
            rect.left + rect.width <= p.cols
        if inside:
            placed.append((i, rect))
        else:
            bad.add(2)
    if any(n != 1 for n in per_clue):
        bad.add(3)
    owners = {}
    for n, (i, rect) in enumerate(placed):
        for r in range(rect.top, rect.top + rect.height):
            for c in range(rect.left, rect.left + rect.width):
                owners.setdefault((r, c), []).append(n)
    if any(len(v) > 1 for v in owners.values()):
        bad.add(1)
    if len(owners) < p.rows * p.cols:
        bad.add(2)
    for i, rect in placed:
        clue = p.clues[i]
        inside = [c for c in p.clues if rect.top <= c.row < rect.top + rect.height and
                  rect.left <= c.col < rect.left + rect.width]
        if clue not in inside or len(inside) > 1:
            bad.add(3)
        h, w = rect.height, rect.width
        if clue.kind is ClueKind.SQUARE and h != w:
            bad.add(4)
        if clue.kind is ClueKind.HORIZONTAL and not w > h:
            bad.add(5)
        if clue.kind is ClueKind.VERTICAL and not h > w:
            bad.add(6)
    distinct = {rect for _, rect in placed}
    for y in range(p.rows + 1):
        for x in range(p.cols + 1):
            n = sum(1 for rect in distinct
                    if y in (rect.top, rect.top + rect.height) and x in (rect.left, rect.left + rect.width))
            if n >= 4:
                bad.add(7)
    return sorted(bad)


@pytest.mark.parametrize('seed', range(40))
def test_random_solutions_against_naive_checker(seed):
    rng = random.Random(seed)
    for _ in range(25):
        p, s = _random_case(rng)
        assert validate(p, s).constraints() == _naive_constraints(p, s), (p, s)


@pytest.mark.parametrize('seed', range(10))
def test_transpose_equivariance(seed):
    swap = {5: 6, 6: 5}
    rng = random.Random(1000 + seed)
    for _ in range(25):
        p, s = _random_case(rng)
        tp, ts = transpose(p), transpose_solution(p, s)
        want = sorted(swap.get(k, k) for k in validate(p, s).constraints())
        assert validate(tp, ts).constraints() == want


@pytest.mark.parametrize('seed', range(5))
def test_local_check_on_whole_grid_matches_global(seed):
    rng = random.Random(2000 + seed)
    for _ in range(25):
        p, s = _random_case(rng)
        full = CellSet.full(p.rows, p.cols)
        assert validate_local(Fragment(p, full), s) == validate(p, s)
        assert validate_local(Fragment.whole(p), s, full) == validate(p, s)


def _wire_solution(g, rects_by_cell):
    return Solution(tuple((g.puzzle.clue_index(*cell), rect) for cell, rect in rects_by_cell.items()))


def test_local_check_on_wire_fragment():
    g = make_wire()
    fragment = Fragment(g.puzzle, g.area)
    top = g.profile_of([0]).cells
    # 方块贴着上端，下端两格留给宿主
    witness = {(1, 0): Rect(0, 0, 3, 1), (3, 0): Rect(3, 0, 2, 1),
               (1, 1): Rect(0, 1, 2, 2), (3, 1): Rect(2, 1, 2, 2),
               (1, 3): Rect(0, 3, 3, 1), (3, 3): Rect(3, 3, 2, 1)}
    assert validate_local(fragment, _wire_solution(g, witness), top).ok
    # 同一个解对整块区域来说漏了下端
    verdict = validate_local(fragment, _wire_solution(g, witness))
    assert verdict.constraints() == [2]
    assert 'cell (4, 1) is not covered' in verdict.report()

    shifted = dict(witness)
    shifted[(3, 1)] = Rect(3, 1, 2, 2)
    verdict = validate_local(fragment, _wire_solution(g, shifted), top)
    assert verdict.constraints() == [2]
    assert 'cell (2, 1) is not covered' in verdict.report()
    assert 'cell (4, 1) is covered outside the profile' in verdict.report()
