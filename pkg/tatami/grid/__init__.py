from tatami.grid.puzzle import CellSet, Clue, ClueKind, Fragment, LatticePoint, Puzzle, Rect, Shade, Solution
from tatami.grid.puzzle import corner_multiplicity, rect_contains_cell, shape_ok, transpose, transpose_solution
