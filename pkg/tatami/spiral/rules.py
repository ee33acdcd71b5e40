from tatami.gadgets.framework import LocalRules
from tatami.spiral.puzzle import SGPuzzle, SGSolution, sg_validate
from tatami.spiral.solver import sg_search_region


class SpiralRules(LocalRules):
    """局部解为轮廓内关于各自中心对称的连通区域划分"""
    name = 'spiralgalaxies'

    def clue_cells(self, puzzle: SGPuzzle):
        return [cell for clue in puzzle.clues for cell in clue.touching_cells()]

    def search(self, puzzle, area, required, optional, cfg):
        return sg_search_region(puzzle, area, required, optional, cfg)

    def covered(self, puzzle, solution: SGSolution):
        return solution.covered()

    def witness_ok(self, puzzle, area, solution, profile):
        return profile.issubset(area) and sg_validate(puzzle, solution, profile).ok

    def translate(self, puzzle: SGPuzzle, d_row, d_col, rows, cols):
        return SGPuzzle(rows, cols, tuple(c.translate(d_row, d_col) for c in puzzle.clues))


SPIRAL_RULES = SpiralRules()
