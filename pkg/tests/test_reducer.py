import dataclasses
import json
import os

import pytest

from tatami.errors import FormatError, NonPlanarLayout, NotMonotone, PreconditionError
from tatami.gadgets.framework import GadgetInstance
from tatami.gadgets.tatami_gadgets import (BAND_ROWS, CLAUSE_PITCH, COUPLER_PITCH, STUB_ROWS, TERMINATED_STUB_ROWS,
                                           Polarity)
from tatami.grid.puzzle import CellSet, Clue, ClueKind, Puzzle, Rect
from tatami.reducer.assemble import Role, gadget_cells, variable_end_row
from tatami.reducer.audit import safe_placement_audit, structural_audit
from tatami.reducer.config import ReducerConfig
from tatami.reducer.family import monotone_family
from tatami.reducer.filler import aspect_kind, plan_filler
from tatami.reducer.layout import layout
from tatami.reducer.reduce import SIZE_CONSTANT, reduce_instance, reduce_text, size_ratio
from tatami.reducer.sat_instance import Clause, SatInstance, brute_force_sat, format_sat, load_sat, parse_sat
from tatami.solver.searcher import is_solvable
from tests.conftest import PUZZLE_DIR

SAT_DIR = os.path.join(PUZZLE_DIR, 'sat')
NON_PLANAR = [128, 253]


def sat(n, *clauses):
    return SatInstance(n, tuple(Clause(Polarity(s), tuple(lits)) for s, lits in clauses))


def test_parse_sat():
    inst = parse_sat('# 注释\nmonotone-sat 3\nclause + 3 1 2\n\nclause - 2 3\n')
    assert inst == sat(3, ('+', (1, 2, 3)), ('-', (2, 3, 3)))
    assert format_sat(inst) == 'monotone-sat 3\nclause + 1 2 3\nclause - 2 3 3\n'


@pytest.mark.parametrize('text, error, line_no', [
    ('', FormatError, None),
    ('sat 2\n', FormatError, 1),
    ('monotone-sat 0\n', FormatError, 1),
    ('monotone-sat 2\nclause + 1 -2 2\n', NotMonotone, 2),
    ('monotone-sat 2\nclause * 1 2 2\n', FormatError, 2),
    ('monotone-sat 2\nclause + 1 3 2\n', FormatError, 2),
    ('monotone-sat 2\nclause + 1\n', FormatError, 2),
    ('monotone-sat 2\nclause + 1 2 2 1\n', FormatError, 2),
    ('monotone-sat 2\nclause - 1 x 2\n', FormatError, 2),
])
def test_parse_sat_errors(text, error, line_no):
    with pytest.raises(error) as e:
        parse_sat(text)
    assert e.value.line_no == line_no


@pytest.mark.parametrize('name, satisfiable', [
    ('single-positive.sat', True),
    ('contradiction.sat', False),
    ('two-vars.sat', True),
])
def test_brute_force_sat(name, satisfiable):
    assert brute_force_sat(load_sat(os.path.join(SAT_DIR, name))) is satisfiable


def test_brute_force_sat_limit():
    with pytest.raises(PreconditionError):
        brute_force_sat(sat(21, ('+', (1, 2, 3))))


def test_family():
    family = monotone_family()
    assert len(family) == 279
    assert family[0] == sat(1, ('+', (1, 1, 1)))
    assert family[1] == sat(1, ('+', (1, 1, 1)), ('+', (1, 1, 1)))
    assert len(set(family)) == len(family)


def test_config_defaults_and_json(tmp_path):
    cfg = ReducerConfig.default()
    assert (cfg.pitch, cfg.gadget_gap, cfg.margin, cfg.stub_rows) == (9, 9, 2, STUB_ROWS)
    path = tmp_path / 'reducer.json'
    path.write_text(json.dumps({'pitch': 11, 'margin': 3}), encoding='utf-8')
    assert ReducerConfig.from_json(str(path)) == ReducerConfig(pitch=11, margin=3)
    path.write_text(json.dumps({'spacing': 3}), encoding='utf-8')
    with pytest.raises(PreconditionError):
        ReducerConfig.from_json(str(path))


@pytest.mark.parametrize('kwargs', [{'pitch': 8}, {'gadget_gap': 10}, {'gadget_gap': 5}, {'gadget_gap': 7},
                                    {'margin': -1}, {'stub_rows': 4}])
def test_config_rejects(kwargs):
    with pytest.raises(PreconditionError):
        ReducerConfig(**kwargs)


def test_layout_taps_and_levels():
    # 正子句(1,2,3)包住(2,2,2)：外层在第2层
    inst = sat(3, ('+', (1, 2, 3)), ('+', (2, 2, 2)), ('-', (1, 1, 3)))
    d = layout(inst)
    assert [t.var for t in d.taps] == [1] * 3 + [2] * 7 + [3]
    assert d.levels == (2, 1, 1)
    assert [len(ids) for ids in d.var_taps] == [3, 7, 1]
    # 同一变量的两个接口之间是隔离接口
    assert [t.spacer for t in d.taps] == [False, True, False, False, True, False, True, False, True, False, False]
    assert all(t.up is None and t.down is None for t in d.taps if t.spacer)
    xs = [t.x0 for t in d.taps]
    assert [b - a for a, b in zip(xs, xs[1:])] == [6, 6, 9, 6, 6, 6, 6, 6, 6, 9]
    assert COUPLER_PITCH == 6
    for legs in d.legs:
        assert list(legs) == sorted(legs)
        assert len(legs) == 3
        assert not any(d.taps[t].spacer for t in legs)
        assert all(d.taps[b].x0 - d.taps[a].x0 >= CLAUSE_PITCH for a, b in zip(legs, legs[1:]))
    lo, hi = d.clause_segment(0)
    assert lo <= d.clause_segment(1)[0] and d.clause_segment(1)[1] <= hi


@pytest.mark.parametrize('index', NON_PLANAR)
def test_non_planar_instances(index):
    inst = monotone_family()[index]
    with pytest.raises(NonPlanarLayout):
        layout(inst)


def test_aspect_kind_and_filler_plan():
    assert aspect_kind(Rect(0, 0, 2, 2)) is ClueKind.SQUARE
    assert aspect_kind(Rect(0, 0, 1, 3)) is ClueKind.HORIZONTAL
    assert aspect_kind(Rect(0, 0, 3, 1)) is ClueKind.VERTICAL
    free = CellSet.from_cells(4, 4, [(0, 0), (0, 1), (1, 0), (1, 1), (3, 0), (3, 1), (3, 2), (0, 3), (1, 3)])
    plan = plan_filler(free)
    assert plan.cells(4, 4) == free
    assert plan.area == len(free)
    assert sorted(f.rect for f in plan.rects) == [Rect(0, 0, 2, 2), Rect(0, 3, 2, 1), Rect(3, 0, 1, 3)]
    assert sorted(f.clue_cell for f in plan.rects) == [(0, 1), (0, 3), (3, 2)]


def _two_vars():
    return load_sat(os.path.join(SAT_DIR, 'two-vars.sat'))


def test_assembled_puzzle_is_tiled():
    result = reduce_instance(_two_vars())
    p = result.puzzle
    assert result.audit.passed, '\n'.join(result.audit.lines())
    owned = gadget_cells(result.placed, p.rows, p.cols)
    filler = result.filler.cells(p.rows, p.cols)
    assert owned.isdisjoint(filler)
    assert len(owned) + len(filler) == p.rows * p.cols
    roles = [pg.role for pg in result.placed]
    assert roles.count(Role.VARIABLE) == 2
    assert roles.count(Role.CLAUSE) == 2
    # 两个变量各三个接口（中间一个是隔离接口），每个接口上下各一根导线，没有子句的一侧再接终结器
    assert roles.count(Role.WIRE) == 12
    assert roles.count(Role.TERMINATOR) == 6
    assert len(result.gadget_puzzle.clues) + len(result.filler) == len(p.clues)


def test_single_clause_structure():
    result = reduce_instance(sat(1, ('+', (1, 1, 1))))
    d = result.drawing
    assert len(d.taps) == 5
    assert [t.up for t in d.taps if not t.spacer] == [0, 0, 0]
    roles = [pg.role for pg in result.placed]
    assert roles.count(Role.VARIABLE) == 1 and roles.count(Role.CLAUSE) == 1
    to_clause = [pg for pg in result.placed
                 if pg.role is Role.WIRE and d.taps[pg.tap].clause_on(pg.polarity) is not None]
    assert len(to_clause) == 3
    assert {pg.polarity for pg in to_clause} == {Polarity.POSITIVE}


def test_terminated_stub_length():
    result = reduce_instance(_two_vars())
    axis = next(pg.offset[0] + STUB_ROWS for pg in result.placed if pg.role is Role.VARIABLE)
    terminated = {(pg.tap, pg.polarity) for pg in result.placed if pg.role is Role.TERMINATOR}
    for pg in result.placed:
        if pg.role is Role.WIRE and (pg.tap, pg.polarity) in terminated:
            if pg.polarity is Polarity.POSITIVE:
                assert pg.offset[0] == axis - TERMINATED_STUB_ROWS
            else:
                assert pg.offset[0] + pg.gadget.rows - 1 == axis + BAND_ROWS + TERMINATED_STUB_ROWS - 1
    assert len(terminated) == 6


def test_variable_band_parity():
    result = reduce_instance(_two_vars())
    for pg in result.placed:
        if pg.role is Role.VARIABLE:
            assert (pg.offset[0] + STUB_ROWS) % 2 == 1


def test_foreign_clue_in_wire_is_caught():
    result = reduce_instance(_two_vars())
    p = result.puzzle
    wire = next(pg for pg in result.placed if pg.role is Role.WIRE)
    lane = wire.offset[1] + 1
    cell = (variable_end_row(wire), lane + 1)
    assert p.clue_index(*cell) is None
    bad = Puzzle(p.rows, p.cols, p.clues + (Clue(cell[0], cell[1], ClueKind.VERTICAL),))
    report = safe_placement_audit(bad, result.placed)
    assert not report.passed
    assert any(wire.label in e for e in report.errors)
    assert not structural_audit(bad, result.placed).passed


def test_overlapping_gadgets_are_caught():
    result = reduce_instance(_two_vars())
    p = result.puzzle
    clause = next(pg for pg in result.placed if pg.role is Role.CLAUSE)
    others = [pg for pg in result.placed if pg is not clause]
    row, col = clause.offset
    moved = dataclasses.replace(clause, instance=GadgetInstance(clause.gadget, (row + 1, col)))
    report = structural_audit(p, others + [moved], result.filler)
    assert not report.passed


def _mirror(cells, rows):
    return {(rows - 1 - r, c) for r, c in cells}


def test_flipped_formula_mirrors_puzzle():
    inst = _two_vars()
    a, b = reduce_instance(inst), reduce_instance(inst.flipped())
    pa, pb = a.puzzle, b.puzzle
    assert (pa.rows, pa.cols) == (pb.rows, pb.cols)
    assert set(gadget_cells(b.placed, pb.rows, pb.cols)) == _mirror(gadget_cells(a.placed, pa.rows, pa.cols), pa.rows)
    assert {f.rect for f in b.filler.rects} == {
        Rect(pa.rows - 1 - f.rect.bottom, f.rect.left, f.rect.height, f.rect.width) for f in a.filler.rects}

    # 变量带首行与末行的墙提示只出现在首行
    kinds_a = {(pa.rows - 1 - c.row, c.col): c.kind for c in a.gadget_puzzle.clues}
    kinds_b = {c.cell: c.kind for c in b.gadget_puzzle.clues}
    axis_b = next(pg.offset[0] + STUB_ROWS for pg in b.placed if pg.role is Role.VARIABLE)
    differ = {cell for cell in set(kinds_a) | set(kinds_b) if kinds_a.get(cell) != kinds_b.get(cell)}
    assert differ
    assert {r for r, _ in differ} <= {axis_b, axis_b + BAND_ROWS - 1}


@pytest.mark.parametrize('index', [i for i in range(0, 279, 9) if i not in NON_PLANAR])
def test_family_sample_audits(index):
    inst = monotone_family()[index]
    result = reduce_instance(inst)
    assert result.audit.passed, '\n'.join(result.audit.lines())
    assert size_ratio(inst, result.puzzle) <= SIZE_CONSTANT


@pytest.mark.slow
def test_family_audits():
    for index, inst in enumerate(monotone_family()):
        if index in NON_PLANAR:
            continue
        result = reduce_instance(inst)
        assert result.audit.passed, f'{index}: ' + '\n'.join(result.audit.lines())
        assert size_ratio(inst, result.puzzle) <= SIZE_CONSTANT


def test_single_positive_reduces_to_solvable_puzzle():
    with open(os.path.join(SAT_DIR, 'single-positive.sat'), encoding='utf-8') as f:
        p = reduce_text(f.read())
    assert is_solvable(p, engine='sat')


def test_contradiction_reduces_to_unsolvable_puzzle():
    inst = load_sat(os.path.join(SAT_DIR, 'contradiction.sat'))
    assert not brute_force_sat(inst)
    assert not is_solvable(reduce_instance(inst).puzzle, engine='sat')


@pytest.mark.slow
def test_two_vars_round_trip_through_reduction():
    inst = _two_vars()
    assert is_solvable(reduce_instance(inst).puzzle, engine='sat') is brute_force_sat(inst)


@pytest.mark.slow
def test_family_solvability_matches_oracle():
    for index, inst in enumerate(monotone_family()):
        if index in NON_PLANAR:
            continue
        got = is_solvable(reduce_instance(inst).puzzle, engine='sat')
        assert got is brute_force_sat(inst), f'{index}: {format_sat(inst)}'
