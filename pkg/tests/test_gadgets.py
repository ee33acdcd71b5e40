import os
from collections import Counter

import pytest

from tatami.errors import FormatError, PreconditionError
from tatami.gadgets.framework import (GadgetInstance, ProfileTable, build_profile_table, check_table,
                                      compose_check, local_solutions, proper_profiles)
from tatami.gadgets.gadget_file import (format_gadget, gadget_from_rows, gadget_rows, load_gadget, mask_rows,
                                        read_gadget, save_gadget)
from tatami.gadgets.tatami_gadgets import (BAND_ROWS, COUPLER_COLUMNS, COUPLER_PITCH, STUB_ROWS, ClauseSpec,
                                           Polarity, VariableSpec, WireSpec, clause_rows, clause_table, make_clause,
                                           make_terminator, make_variable, make_wire, mirrored, sheathing_ok,
                                           shipped_gadgets, wire_parity_ok, wire_squares_ok, wire_table)
from tatami.grid.puzzle import Rect
from tatami.solver.candidates import candidate_rects
from tatami.solver.searcher import SearchConfig, solve
from tests.conftest import GADGET_DIR

FAST_FILES = ['wire.gadget', 'wire-3.gadget', 'terminator.gadget']
SLOW_FILES = ['variable-1.gadget', 'variable-2.gadget', 'variable-3.gadget',
              'clause-pos-0-0.gadget', 'clause-neg-0-0.gadget', 'clause-pos-2-0.gadget']


@pytest.mark.parametrize('name, g, table', shipped_gadgets(), ids=lambda x: x if isinstance(x, str) else None)
def test_generators_reproduce_shipped_files(name, g, table):
    with open(os.path.join(GADGET_DIR, name), encoding='utf-8') as f:
        assert format_gadget(g, table) == f.read()


@pytest.mark.parametrize('name, entries', [
    ('wire.gadget', 2),
    ('wire-3.gadget', 2),
    ('terminator.gadget', 2),
    ('variable-2.gadget', 2),
    ('variable-3.gadget', 2),
    ('clause-pos-0-0.gadget', 7),
])
def test_expected_table_sizes(name, entries):
    g, table = load_gadget(os.path.join(GADGET_DIR, name))
    assert len(table) == entries


def test_clause_table_lacks_only_all_false():
    g = make_clause()
    subsets = clause_table(g).subsets()
    assert len(subsets) == 7
    assert frozenset({0, 1, 2}) not in subsets
    assert len(proper_profiles(g)) == 8


@pytest.mark.parametrize('gaps', [(0, 0), (3, 0)])
def test_false_wire_end_is_covered_only_by_a_square(gaps):
    # 文字为假时子句盖住导线末端两格，唯一的方式是正上方`+`的2x2正方形
    g = make_clause(ClauseSpec(gaps=gaps))
    _, lanes = clause_rows(gaps)
    end = g.rows - 1
    for i, lane in enumerate(lanes):
        area = g.profile_of([i]).cells
        square = Rect(end - 1, lane, 2, 2)
        assert g.puzzle.clue_index(end - 1, lane) is not None
        for cell in g.optionals[i]:
            covering = {rect for k in range(len(g.puzzle.clues)) for rect in candidate_rects(g.puzzle, k, area)
                        if cell in set(rect.cells())}
            assert covering == {square}


@pytest.mark.parametrize('name', FAST_FILES)
def test_gadget_tables_hold(name):
    g, table = load_gadget(os.path.join(GADGET_DIR, name))
    report = check_table(g, table)
    assert report.passed, '\n'.join(report.lines())
    assert not report.improper


@pytest.mark.slow
@pytest.mark.parametrize('name', SLOW_FILES)
def test_gadget_tables_hold_slow(name):
    g, table = load_gadget(os.path.join(GADGET_DIR, name))
    report = check_table(g, table)
    assert report.passed, '\n'.join(report.lines())


def test_wrong_table_is_reported():
    g = make_wire()
    table = build_profile_table(g)
    assert sorted(map(sorted, table.subsets())) == [[0], [1]]
    report = check_table(g, ProfileTable.from_subsets(g, [[0], [0, 1]]))
    assert not report.passed
    assert report.missing == [frozenset({0, 1})]
    assert [ids for ids, _ in report.unexpected] == [frozenset({1})]
    assert report.lines()[0] == 'gadget wire: fail'


@pytest.mark.parametrize('height', [2, 3])
def test_wire_census_has_one_solution_per_parity(height):
    g = make_wire(WireSpec(height))
    report = check_table(g, wire_table(g), census=True)
    assert report.passed, '\n'.join(report.lines())
    assert report.census == Counter({frozenset({0}): 1, frozenset({1}): 1})
    assert '  census 2: {0}:1 {1}:1' in report.lines()
    # 两端的可选区域都必须覆盖时，`+`列的2K+1格无法被K个方块铺满
    assert solve(g.puzzle, SearchConfig(engine='sat')).count == 0
    assert solve(g.puzzle).count == 0


def test_save_gadget_writes_shipped_format(tmp_path):
    name, g, table = shipped_gadgets()[0]
    path = tmp_path / name
    save_gadget(str(path), g, table)
    with open(os.path.join(GADGET_DIR, name), encoding='utf-8') as f:
        assert path.read_text(encoding='utf-8') == f.read()
    again, again_table = load_gadget(str(path))
    assert again == g and again_table.subsets() == table.subsets()


@pytest.mark.parametrize('height', [2, 3])
def test_wire_witness_lemmas(height):
    g = make_wire(WireSpec(height))
    for entry in wire_table(g).entries:
        solutions = local_solutions(g, entry.profile)
        assert solutions
        for s in solutions:
            assert wire_squares_ok(g, s)
            assert wire_parity_ok(g, s)
            assert sheathing_ok(g, s)


def test_wire_shape_and_mirror():
    g = make_wire(WireSpec(3))
    assert (g.rows, g.cols) == (7, 4)
    assert mask_rows(g)[0] == 'M00M' and mask_rows(g)[-1] == 'M11M'
    down = make_wire(WireSpec(3, Polarity.NEGATIVE))
    assert down == mirrored(g)
    assert mirrored(down) == g
    with pytest.raises(PreconditionError):
        make_wire(WireSpec(0))


def test_variable_layout():
    g = make_variable(VariableSpec(3))
    assert g.rows == BAND_ROWS + 2 * STUB_ROWS
    assert len(g.optionals) == 6
    assert all(len(opt) == 2 for opt in g.optionals)
    assert all(r == 0 for opt in g.optionals[:3] for r, _ in opt)
    assert all(r == g.rows - 1 for opt in g.optionals[3:] for r, _ in opt)
    with pytest.raises(PreconditionError):
        make_variable(VariableSpec(0))


def test_variable_coupler_columns():
    g = make_variable(VariableSpec(2))
    assert g.cols == 4 + 2 * COUPLER_PITCH
    band = gadget_rows(g)[0][STUB_ROWS:STUB_ROWS + BAND_ROWS]
    # 两根导线的4列之间
    coupler = [row[7:9] for row in band]
    assert tuple(''.join(col) for col in zip(*coupler)) == COUPLER_COLUMNS
    cues = ''.join(coupler)
    assert cues.count('+') == 1 and cues.count('|') == 8 and cues.count('-') == 0
    assert coupler == coupler[::-1]
    assert coupler[BAND_ROWS // 2][0] == '+'


def test_variable_with_many_taps_builds_without_mask_alphabet():
    g = make_variable(VariableSpec(12))
    assert len(g.optionals) == 24
    assert len(mask_rows(g)) == g.rows


def test_clause_mirror_and_width():
    pos = make_clause(ClauseSpec(Polarity.POSITIVE, (2, 0)))
    neg = make_clause(ClauseSpec(Polarity.NEGATIVE, (2, 0)))
    assert pos.cols == make_clause().cols + 2
    assert mask_rows(neg) == mask_rows(pos)[::-1]
    assert gadget_rows(neg)[0] == gadget_rows(pos)[0][::-1]
    with pytest.raises(PreconditionError):
        make_clause(ClauseSpec(gaps=(-1, 0)))


def test_terminated_wire_is_locally_solvable():
    wire = make_wire()
    term = make_terminator()
    rows = term.rows - 1 + wire.rows
    g, table = compose_check('terminated-wire', [GadgetInstance(term, (0, 0)),
                                                 GadgetInstance(wire, (term.rows - 1, 1))], rows, term.cols)
    assert len(g.optionals) == 1
    assert len(table) >= 1


def test_gadget_file_round_trip_and_errors():
    term = make_terminator()
    g, table = read_gadget(format_gadget(term, ProfileTable.from_subsets(term, [[], [0]])))
    assert g.name == 'terminator' and table.subsets() == [frozenset(), frozenset({0})]
    with pytest.raises(FormatError):
        read_gadget('gadget x\ntatamibari 1 2\n+.\nmask\nM0\ntable 1\nprofile 1\n')
    with pytest.raises(FormatError):
        read_gadget('gadget x\ntatamibari 1 2\n+.\nmask\nM2\ntable 0\n')
    with pytest.raises(FormatError):
        read_gadget('gadget x\ntatamibari 1 2\n+.\nmask\nM0\ntable 2\nprofile\n')
    with pytest.raises(PreconditionError):
        gadget_from_rows('x', ['.+'], ['M0'])
