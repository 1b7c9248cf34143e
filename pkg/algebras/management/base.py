"""
Shared plumbing for the algebra management commands.

Exit codes: 0 on success, 1 when an analysis is refused (budget exceeded,
enumeration unavailable over the field, undecided over Q), 2 on input errors.
"""
import logging
from typing import Any, Optional

from django.core.management.base import BaseCommand, CommandError

from ..services.algebra import FAMILIES, TRIANGULAR_VARIANTS, EvolutionAlgebra, make_example
from ..services.budget import Budget
from ..services.errors import (
    AlgebraParseError,
    BudgetExceededError,
    CharacteristicError,
    DimensionMismatchError,
    HypothesisError,
    InvalidFieldError,
    UndecidedError,
    UnsupportedEnumerationError,
)
from ..services.exactalg import FieldSpec
from ..services.parsers import parse_algebra_file
from ..services.reports import canonical_json, render_text

logger = logging.getLogger(__name__)

EXIT_REFUSED = 1
EXIT_INPUT = 2

REFUSALS = (BudgetExceededError, UnsupportedEnumerationError, UndecidedError)
INPUT_ERRORS = (
    AlgebraParseError,
    InvalidFieldError,
    CharacteristicError,
    DimensionMismatchError,
    HypothesisError,
    FileNotFoundError,
    IsADirectoryError,
    ValueError,
)


class EvolabCommand(BaseCommand):
    """Budget flags, ``--json`` output and error-to-exit-code translation."""

    def add_arguments(self, parser):
        parser.add_argument('--json', action='store_true', help='Emit the canonical JSON report')
        parser.add_argument('--max-vectors', type=int, help='Refuse vector enumerations larger than this')
        parser.add_argument('--max-subspaces', type=int, help='Refuse subspace enumerations larger than this')
        parser.add_argument('--max-scan-matrices', type=int, help='Refuse structure-matrix scans larger than this')

    def get_budget(self, options) -> Budget:
        overrides = {
            'max_vectors': options.get('max_vectors'),
            'max_subspaces': options.get('max_subspaces'),
            'max_scan_matrices': options.get('max_scan_matrices'),
        }
        for name, value in overrides.items():
            if value is not None and value < 1:
                raise CommandError(f"--{name.replace('_', '-')} must be positive", returncode=EXIT_INPUT)
        return Budget.from_settings(**overrides)

    def run(self, options, budget: Budget) -> Any:
        """Compute the report payload (a dict) or raw text."""
        raise NotImplementedError

    def emit(self, payload: Any, options) -> None:
        if isinstance(payload, str):
            self.stdout.write(payload, ending='' if payload.endswith('\n') else '\n')
        elif options.get('json'):
            self.stdout.write(canonical_json(payload), ending='')
        else:
            self.stdout.write(render_text(payload), ending='')

    def handle(self, *args, **options):
        budget = self.get_budget(options)
        try:
            payload = self.run(options, budget)
        except REFUSALS as e:
            logger.warning(f"{self.__module__.rsplit('.', 1)[-1]} refused: {e}")
            raise CommandError(f"Analysis refused: {e}", returncode=EXIT_REFUSED)
        except INPUT_ERRORS as e:
            raise CommandError(f"Invalid input: {e}", returncode=EXIT_INPUT)
        self.emit(payload, options)


class AlgebraCommand(EvolabCommand):
    """A command taking one algebra, from a definition file or a named family."""

    def add_arguments(self, parser):
        parser.add_argument('path', nargs='?', help='Algebra definition file')
        parser.add_argument('--family', choices=FAMILIES, help='Use a built-in example family instead of a file')
        parser.add_argument('--field', help="GF(p) or Q (default depends on the family)")
        parser.add_argument('--dim', type=int, help='Dimension for the diag, zero and triangular families')
        parser.add_argument('--variant', choices=TRIANGULAR_VARIANTS, help='Triangular variant')
        super().add_arguments(parser)

    def load_algebra(self, options) -> EvolutionAlgebra:
        path, family = options.get('path'), options.get('family')
        if path and family:
            raise CommandError("Give either an algebra file or --family, not both", returncode=EXIT_INPUT)
        if not path and not family:
            raise CommandError("Give an algebra file or --family", returncode=EXIT_INPUT)
        try:
            if path:
                return parse_algebra_file(path)
            field: Optional[FieldSpec] = FieldSpec.parse(options['field']) if options.get('field') else None
            return make_example(family, field=field, n=options.get('dim'), variant=options.get('variant'))
        except INPUT_ERRORS as e:
            raise CommandError(f"Invalid input: {e}", returncode=EXIT_INPUT)

    def run(self, options, budget: Budget) -> Any:
        return self.analyze(self.load_algebra(options), options, budget)

    def analyze(self, A: EvolutionAlgebra, options, budget: Budget) -> Any:
        raise NotImplementedError
