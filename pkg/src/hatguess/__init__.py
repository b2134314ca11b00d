"""Hat guessing on graphs: exact verification, synthesis, adversaries and constructions."""
from .errors import BudgetExceeded, InternalConsistencyError, StrategyFormatError
from .graphs import (BookSpec, Graph, LayeredTreeSpec, Ordering, book, clique, cycle, degeneracy,
                     edgeless, layered, left_degree, ordering_depth, path, tree)
from .engine import (RuleStrategy, Strategy, TableStrategy, evaluate, random_strategy,
                     verify_winning)
from .adversary import bound_report, budgets, fool, sylvester
from .synthesis import exists_winning_strategy, hat_guessing_number
from .constructive import clique_strategy, gdn_strategy
from .covering import (Cover, PointSet, book_adversary, cover_recursive, h_bounds,
                       is_coverable, is_valid_cover, noncoverable_witness, search_h)

__version__ = "0.1.0"
