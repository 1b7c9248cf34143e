import logging
from dataclasses import dataclass, fields, replace
from typing import Optional

from django.conf import settings

from .errors import BudgetExceededError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Budget:
    """Upper bounds for every exhaustive search in the services.

    Values come from ``settings.EVOLAB_BUDGETS`` and may be overridden per
    call, e.g. from the ``--max-vectors`` command flag.
    """

    max_vectors: int = 10 ** 6
    max_subspaces: int = 10 ** 5
    natural_basis_max_dim: int = 4
    natural_basis_max_prime: int = 7
    definable_lattice_limit: int = 12
    max_subsets: int = 10 ** 5
    max_scan_matrices: int = 10 ** 5

    @classmethod
    def from_settings(cls, **overrides) -> 'Budget':
        values = {}
        if settings.configured:
            configured = getattr(settings, 'EVOLAB_BUDGETS', {}) or {}
            names = {f.name for f in fields(cls)}
            for key, value in configured.items():
                if key.lower() in names:
                    values[key.lower()] = int(value)
        values.update({k: int(v) for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_overrides(self, **overrides) -> 'Budget':
        return replace(self, **{k: int(v) for k, v in overrides.items() if v is not None})

    def _check(self, what: str, count: int, limit: int):
        if count > limit:
            logger.warning(f"Refusing {what}: {count} > {limit}")
            raise BudgetExceededError(what, count, limit)

    def check_vectors(self, count: int, what: str = 'vector enumeration'):
        self._check(what, count, self.max_vectors)

    def check_subspaces(self, count: int, what: str = 'subspace enumeration'):
        self._check(what, count, self.max_subspaces)

    def check_subsets(self, count: int, what: str = 'subset search'):
        self._check(what, count, self.max_subsets)

    def check_scan(self, count: int, what: str = 'structure-matrix scan'):
        self._check(what, count, self.max_scan_matrices)

    def check_definable(self, count: int, what: str = 'definable-lattice candidates'):
        self._check(what, count, self.definable_lattice_limit)

    def check_natural_basis_scope(self, dim: int, prime: int):
        self._check('natural-basis enumeration dimension', dim, self.natural_basis_max_dim)
        self._check('natural-basis enumeration prime', prime, self.natural_basis_max_prime)


def resolve(budget: Optional[Budget]) -> Budget:
    return budget if budget is not None else Budget.from_settings()
