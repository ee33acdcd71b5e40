import os
import random
from itertools import combinations

import pytest

from tatami.errors import FormatError, PreconditionError
from tatami.gadgets.framework import check_table, local_solutions
from tatami.gadgets.gadget_file import format_gadget, load_gadget
from tatami.solver.searcher import SearchStatus
from tatami.spiral.gadgets import sg_fill_check, sg_gadget, sg_gadgets
from tatami.spiral.puzzle import (SGClue, SGPuzzle, SGSolution, format_sg_puzzle, format_sg_solution,
                                  read_sg_puzzle, read_sg_solution, sg_validate)
from tatami.spiral.solver import sg_oracle, sg_solve
from tests.conftest import GADGET_DIR

SG_GADGET_DIR = os.path.join(GADGET_DIR, 'spiral')


def sg(rows, cols, *clues):
    return SGPuzzle(rows, cols, tuple(SGClue(y2, x2) for y2, x2 in clues))


def owners(outcome):
    return sorted(s.owner for s in outcome.solutions)


def test_touching_cells():
    assert SGClue(1, 1).touching_cells() == [(0, 0)]
    assert SGClue(1, 2).touching_cells() == [(0, 0), (0, 1)]
    assert SGClue(2, 2).touching_cells() == [(0, 0), (0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize('p, owner, constraints', [
    (sg(1, 1, (1, 1)), ((0,),), []),
    (sg(1, 2, (1, 2)), ((0, 0),), []),
    (sg(1, 2, (1, 1)), ((0, 0),), [4]),
    (sg(1, 2, (1, 1)), ((0, -1),), [1]),
    (sg(1, 3, (1, 1), (1, 5)), ((0, 0, 1),), [4]),
    (sg(1, 3, (1, 3)), ((0, 0, 0),), []),
    (sg(1, 3, (1, 1), (1, 5)), ((0, 1, 1),), [4]),
    (sg(2, 2, (2, 2)), ((0, 0), (0, 0)), []),
    (sg(1, 4, (1, 4)), ((0, -1, -1, 0),), [1, 2, 3]),
])
def test_sg_validate(p, owner, constraints):
    assert sg_validate(p, SGSolution(owner)).constraints() == constraints


def test_sg_validate_wrong_shape():
    verdict = sg_validate(sg(2, 2, (2, 2)), SGSolution(((0, 0),)))
    assert verdict.constraints() == [1]


@pytest.mark.parametrize('p, count', [
    (sg(1, 1, (1, 1)), 1),
    (sg(1, 2, (1, 2)), 1),
    (sg(2, 2, (2, 2)), 1),
    (sg(2, 2, (1, 2), (3, 2)), 1),
    (sg(2, 2, (2, 1), (2, 3)), 1),
    (sg(1, 2, (1, 1)), 0),
    (sg(3, 3, (3, 2)), 0),
    (sg(3, 3, (3, 3)), 1),
    (sg(3, 3, (1, 3), (3, 3), (5, 3)), 2),
])
def test_sg_solve_examples(p, count):
    outcome = sg_solve(p)
    assert outcome.status is SearchStatus.EXHAUSTED
    assert outcome.count == count
    for s in outcome.solutions:
        assert sg_validate(p, s).ok


def test_sg_solve_cap_and_budget():
    p = sg(3, 3, (1, 3), (3, 3), (5, 3))
    assert sg_solve(p).count == 2
    capped = sg_solve(p, cap=1)
    assert capped.count == 1
    assert capped.status is SearchStatus.CAPPED
    assert sg_solve(p, node_limit=1).status is SearchStatus.RESOURCE_EXHAUSTED


def test_sg_solve_rejects_large_grid():
    with pytest.raises(PreconditionError):
        sg_solve(sg(6, 7, (1, 1)))


def test_sg_oracle_rejects_large_input():
    with pytest.raises(PreconditionError):
        sg_oracle(sg(2, 4, (1, 1)))
    with pytest.raises(PreconditionError):
        sg_oracle(sg(1, 3, (1, 1), (1, 3), (1, 5)))


def small_sg_puzzles():
    for rows in range(1, 7):
        for cols in range(1, 7):
            if rows * cols > 6:
                continue
            points = [(y2, x2) for y2 in range(2 * rows + 1) for x2 in range(2 * cols + 1)]
            for n in (1, 2):
                for clues in combinations(points, n):
                    yield sg(rows, cols, *clues)


def test_sg_solve_agrees_with_oracle():
    puzzles = list(small_sg_puzzles())
    random.Random(7).shuffle(puzzles)
    for p in puzzles[:400]:
        assert owners(sg_solve(p)) == owners(sg_oracle(p)), format_sg_puzzle(p)


@pytest.mark.slow
def test_sg_solve_agrees_with_oracle_exhaustive():
    for p in small_sg_puzzles():
        assert owners(sg_solve(p)) == owners(sg_oracle(p)), format_sg_puzzle(p)


def test_rotation_is_an_involution():
    p = sg(2, 3, (1, 2), (3, 5), (2, 0))
    assert p.rotated().rotated() == p
    q = sg(2, 2, (1, 2), (3, 2))
    for s in sg_solve(q).solutions:
        rotated = s.rotated(q)
        assert sg_validate(q.rotated(), rotated).ok
        assert rotated.rotated(q.rotated()) == s


def test_sg_puzzle_format():
    p = sg(3, 4, (5, 1), (1, 2), (3, 3))
    text = format_sg_puzzle(p)
    assert text == 'spiralgalaxies 3 4\nclue 1 2\nclue 3 3\nclue 5 1\n'
    assert read_sg_puzzle(text) == p


def test_sg_solution_format():
    p = sg(2, 2, (1, 2), (3, 2))
    s = sg_solve(p).solutions[0]
    text = format_sg_solution(s)
    assert text == 'solution 2 2\n0 0\n1 1\n'
    assert read_sg_solution(text, p) == s


@pytest.mark.parametrize('text, line_no', [
    ('', None),
    ('tatamibari 2 2\n', 1),
    ('spiralgalaxies 2 x\n', 1),
    ('spiralgalaxies 0 2\n', 1),
    ('spiralgalaxies 2 2\nclue 5 1\n', 2),
    ('spiralgalaxies 2 2\npoint 1 1\n', 2),
    ('spiralgalaxies 2 2\nclue 1 1\nclue 1 1\n', None),
])
def test_sg_puzzle_errors(text, line_no):
    with pytest.raises(FormatError) as e:
        read_sg_puzzle(text)
    assert e.value.line_no == line_no


@pytest.mark.parametrize('text', [
    'solution 2 3\n0 0\n1 1\n',
    'solution 2 2\n0 0\n',
    'solution 2 2\n0 0\n1\n',
    'solution 2 2\n0 0\n1 a\n',
    'owner 2 2\n0 0\n1 1\n',
])
def test_sg_solution_errors(text):
    with pytest.raises(FormatError):
        read_sg_solution(text, sg(2, 2, (1, 2), (3, 2)))


EXPECTED_SIZES = {
    'wire': 2, 'terminated-wire': 1, 'long-wire': 2, 'variable': 2, 'not': 2,
    'and': 4, 'fanout': 2, 'shift-up': 2, 'shift-down': 2,
}


def test_every_gadget_is_shipped():
    names = [g.name for g, _ in sg_gadgets()]
    assert sorted(names) == sorted(EXPECTED_SIZES)
    for g, table in sg_gadgets():
        with open(os.path.join(SG_GADGET_DIR, f'{g.name}.gadget'), encoding='utf-8') as f:
            assert format_gadget(g, table) == f.read()
        assert len(table) == EXPECTED_SIZES[g.name]


@pytest.mark.parametrize('g, table', sg_gadgets(), ids=lambda x: getattr(x, 'name', None))
def test_sg_gadget_tables_hold(g, table):
    report = check_table(g, table, strict_improper=False)
    assert report.passed, '\n'.join(report.lines())


def test_sg_gadget_file_round_trip():
    g, table = load_gadget(os.path.join(SG_GADGET_DIR, 'and.gadget'))
    assert isinstance(g.puzzle, SGPuzzle)
    assert sorted(map(sorted, table.subsets())) == [[0], [0, 1], [1], [2]]
    assert format_gadget(g, table).startswith('gadget and\nspiralgalaxies 8 5\n')


def test_shift_down_mirrors_shift_up():
    by_name = {g.name: g for g, _ in sg_gadgets()}
    up, down = by_name['shift-up'], by_name['shift-down']
    assert down.area == up.area.flipped_vertically()
    assert {(2 * up.rows - c.y2, c.x2) for c in up.puzzle.clues} == {(c.y2, c.x2) for c in down.puzzle.clues}


def _shapes(g, ids):
    """每个局部解中各中心区域的(高, 宽, 单元格数)"""
    out = []
    for s in local_solutions(g, g.profile_of(ids)):
        shape = []
        for k in range(len(g.puzzle.clues)):
            cells = s.area_of(k)
            rows = {r for r, _ in cells}
            cols = {c for _, c in cells}
            shape.append((len(rows), len(cols), len(cells)))
        out.append(shape)
    return out


def test_wire_solutions_are_three_wide_or_alternating_one_and_five():
    g = {g.name: g for g, _ in sg_gadgets()}['wire']
    # 真：右侧可选区域被覆盖，两块3x2；假：左侧可选区域被覆盖，5x2与1x2交替
    assert _shapes(g, [1]) == [[(2, 3, 6), (2, 3, 6)]]
    assert _shapes(g, [0]) == [[(2, 5, 10), (2, 1, 2)]]


def test_not_clue_covers_one_column_or_both_sides():
    g = {g.name: g for g, _ in sg_gadgets()}['not']
    assert _shapes(g, []) == [[(2, 1, 2)]]
    assert _shapes(g, [0, 1]) == [[(2, 3, 6)]]


def test_shift_up_forces_right_clue_to_one_by_two_when_input_is_false():
    g = {g.name: g for g, _ in sg_gadgets()}['shift-up']
    # 中心按(y2, x2)排序：右侧中心、左侧中心、底部中心
    assert _shapes(g, [0]) == [[(2, 1, 2), (3, 3, 7), (1, 2, 2)]]
    assert _shapes(g, [1]) == [[(2, 3, 6), (3, 1, 3), (1, 2, 2)]]


@pytest.mark.parametrize('g, table', sg_gadgets(), ids=lambda x: getattr(x, 'name', None))
def test_filled_moat_keeps_profiles(g, table):
    report = sg_fill_check(g, moat=2, base=table)
    assert report.passed, '\n'.join(report.lines())
    assert report.leaks == 0


def test_fill_check_reports_leak():
    # 两个可选单元格被中间的空格隔开，填充中心可以把它们一起吃进去
    g = sg_gadget('leaky', ['M0.1M'], [(1, 1), (1, 9)])
    report = sg_fill_check(g, moat=2)
    assert report.leaks == 1
    assert not report.passed
    assert report.lines()[0] == 'fill leaky moat 2: fail'
