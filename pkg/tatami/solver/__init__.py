from tatami.solver.candidates import candidate_rects
from tatami.solver.oracle import oracle_solve
from tatami.solver.searcher import Region, SearchConfig, SearchStatus, SolveOutcome
from tatami.solver.searcher import count_solutions, is_solvable, search_region, solve
