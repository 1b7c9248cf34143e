from .algebra import EvolutionAlgebra, make_example
from .budget import Budget
from .census import PROBES, run_census
from .errors import BudgetExceededError, EvolabError, UnsupportedEnumerationError
from .excel import CensusExcelWriter
from .exactalg import FieldSpec, Matrix, Subspace
from .parsers import AlgebraFileParser, dump_algebra, parse_algebra_file

__all__ = [
    'EvolutionAlgebra',
    'make_example',
    'Budget',
    'PROBES',
    'run_census',
    'BudgetExceededError',
    'EvolabError',
    'UnsupportedEnumerationError',
    'CensusExcelWriter',
    'FieldSpec',
    'Matrix',
    'Subspace',
    'AlgebraFileParser',
    'dump_algebra',
    'parse_algebra_file',
]
