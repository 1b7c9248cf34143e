"""
Idempotents of evolution algebras.

An element x = sum x_k e_k is idempotent iff x_j = sum_k a_kj x_k^2 for every
j, where a_kj is entry (k, j) of the row-convention structure matrix. Over a
prime field the solutions are found by scanning every vector; over the
rationals only supplied candidates are verified.
"""
import itertools
import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .algebra import EvolutionAlgebra, iter_algebras, structure_matrix_index
from .budget import Budget, resolve
from .errors import HypothesisError, InvariantViolation, UnsupportedEnumerationError
from .exactalg import (
    FieldSpec,
    Matrix,
    Scalar,
    Subspace,
    Vector,
    enumerate_vectors,
    is_zero_vector,
    nonzero_representatives,
    nth_root_in_field,
    proportionality,
)
from .ideals import autoann, ideal_closure, is_simple, minimal_ideals

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdempotentSystem:
    """x_j = sum_k coeffs[k][j] x_k^2 for every j."""

    field: FieldSpec
    coeffs: Matrix

    @property
    def n(self) -> int:
        return self.coeffs.nrows

    def rhs(self, x: Sequence[Scalar]) -> Vector:
        f = self.field
        squares = [f.mul(a, a) for a in x]
        return f.linear_combination(squares, self.coeffs.rows, self.n)

    def evaluate(self, x: Sequence[Scalar]) -> bool:
        return self.rhs(x) == tuple(x)

    def equations(self) -> List[str]:
        lines = []
        for j in range(self.n):
            terms = []
            for k in range(self.n):
                c = self.coeffs.rows[k][j]
                if c == 0:
                    continue
                scalar = self.field.format_scalar(c)
                terms.append(f"x{k + 1}^2" if c == 1 else f"{scalar}*x{k + 1}^2")
            lines.append(f"x{j + 1} = {' + '.join(terms) if terms else '0'}")
        return lines


def idempotent_system(A: EvolutionAlgebra) -> IdempotentSystem:
    return IdempotentSystem(A.field, A.sq)


def is_idempotent(A: EvolutionAlgebra, x: Sequence) -> bool:
    x = A.element(x)
    return A.square(x) == x


@lru_cache(maxsize=512)
def _idempotents(A: EvolutionAlgebra, budget: Budget) -> FrozenSet[Vector]:
    return frozenset(x for x in enumerate_vectors(A.full_space(), budget=budget) if A.square(x) == x)


def idempotents(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> List[Vector]:
    """Every idempotent of A, zero included, in lexicographic order."""
    if not A.field.is_prime_field:
        raise UnsupportedEnumerationError(f"Cannot enumerate idempotents over {A.field}; verify candidates instead")
    return sorted(_idempotents(A, resolve(budget)))


def nonzero_idempotents(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> List[Vector]:
    return [e for e in idempotents(A, budget) if not is_zero_vector(e)]


def has_nonzero_idempotent(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> bool:
    return bool(nonzero_idempotents(A, budget))


def simple_implies_full_rank_check(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> bool:
    return not is_simple(A, budget) or A.sq.rank() == A.n


def has_trivializing_pattern(A: EvolutionAlgebra) -> bool:
    """A zero or a repeated column of sq; full rank rules both out."""
    columns = [A.sq.column(j) for j in range(A.n)]
    return any(is_zero_vector(c) for c in columns) or len(set(columns)) < len(columns)


def is_nnidempassevalg(field: FieldSpec, sq) -> bool:
    """Whether the algebra with squares ``sq`` has a non-zero idempotent."""
    rows = sq.rows if isinstance(sq, Matrix) else sq
    return has_nonzero_idempotent(EvolutionAlgebra.from_rows(field, rows))


@dataclass(frozen=True)
class FseaniVerdict:
    field: FieldSpec
    n: int
    is_fseani: bool
    counterexample: Optional[Matrix] = None
    simple_count: int = 0
    with_idempotent_count: int = 0
    scanned: int = 0
    budget: Optional[Budget] = dataclass_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.is_fseani != (self.counterexample is None):
            raise InvariantViolation("Verdict and counterexample disagree")
        if self.counterexample is not None:
            A = EvolutionAlgebra(self.field, self.counterexample)
            if not is_simple(A, self.budget) or has_nonzero_idempotent(A, self.budget):
                raise InvariantViolation(f"{self.counterexample.rows} is not a simple algebra without idempotents")

    @property
    def summary(self) -> str:
        status = '' if self.is_fseani else 'NOT '
        return f"{self.field} is {status}{self.n}-FSEANI"


def fseani_scan(field: FieldSpec, n: int, budget: Optional[Budget] = None, reverse: bool = False,
                start: int = 0, stop: Optional[int] = None) -> FseaniVerdict:
    """
    Scan structure matrices with indices in [start, stop) and look for a
    simple algebra whose only idempotent is zero. The lexicographically least
    counterexample is kept, whatever the scan order.
    """
    if not field.is_prime_field:
        raise UnsupportedEnumerationError(f"Cannot scan structure matrices over {field}")
    budget = resolve(budget)
    total = field.p ** (n * n)
    stop = total if stop is None else min(stop, total)
    budget.check_scan(max(stop - start, 0))
    logger.info(f"FSEANI scan of {field}, n={n}, matrices {start}..{stop - 1}")

    simple_count = with_idempotent = scanned = 0
    counterexample, best_index = None, None
    for A in iter_algebras(field, n, start, stop, reverse):
        scanned += 1
        if not is_simple(A, budget):
            continue
        simple_count += 1
        if has_nonzero_idempotent(A, budget):
            with_idempotent += 1
            continue
        index = structure_matrix_index(A.sq)
        if best_index is None or index < best_index:
            counterexample, best_index = A.sq, index
    verdict = FseaniVerdict(field, n, counterexample is None, counterexample, simple_count, with_idempotent, scanned,
                            budget=budget)
    logger.info(f"{verdict.summary} ({simple_count} simple of {scanned})")
    return verdict


def merge_fseani_verdicts(verdicts: Iterable[FseaniVerdict]) -> FseaniVerdict:
    verdicts = list(verdicts)
    if not verdicts:
        raise ValueError("Nothing to merge")
    field, n = verdicts[0].field, verdicts[0].n
    found = [v.counterexample for v in verdicts if v.counterexample is not None]
    counterexample = min(found, key=structure_matrix_index) if found else None
    return FseaniVerdict(
        field, n, counterexample is None, counterexample,
        sum(v.simple_count for v in verdicts),
        sum(v.with_idempotent_count for v in verdicts),
        sum(v.scanned for v in verdicts),
        budget=verdicts[0].budget,
    )


def rational_pair_solution(a, b) -> Optional[Tuple[Fraction, Fraction]]:
    """
    Non-zero rational solution of x = a y^2, y = b x^2. Substituting gives
    x^3 = 1/(a b^2), so a solution exists iff that number is a rational cube.
    """
    Q = FieldSpec.rationals()
    a, b = Q.coerce(a), Q.coerce(b)
    if a == 0 or b == 0:
        raise HypothesisError("Both coefficients must be non-zero")
    x = nth_root_in_field(Q, 1 / (a * b * b), 3)
    if x is None:
        return None
    y = b * x * x
    if x != a * y * y:
        raise InvariantViolation(f"({x}, {y}) does not solve the system")
    return x, y


def minimal_idempotents(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> List[Vector]:
    """Non-zero idempotents generating a minimal ideal."""
    minimal = set(minimal_ideals(A, budget))
    return [e for e in nonzero_idempotents(A, budget) if ideal_closure(A, [e]) in minimal]


def is_minimal_element(A: EvolutionAlgebra, a: Sequence, budget: Optional[Budget] = None) -> bool:
    a = A.element(a)
    return not is_zero_vector(a) and ideal_closure(A, [a]) in set(minimal_ideals(A, budget))


def dim_of_element(A: EvolutionAlgebra, a: Sequence) -> int:
    return ideal_closure(A, [a]).dim


def _follows_gf_pattern(A: EvolutionAlgebra, E: Sequence[Vector], f: Scalar) -> bool:
    """Every pair product is zero or f*e_k with e_k in E, and each e_k is reached by exactly one pair."""
    hits = {e: 0 for e in E}
    targets = {A.field.scale_vector(f, e): e for e in E}
    for u, v in itertools.combinations(E, 2):
        w = A.product(u, v)
        if is_zero_vector(w):
            continue
        if w not in targets:
            return False
        hits[targets[w]] += 1
    return all(count == 1 for count in hits.values())


def gf_idemelement_patterns(A: EvolutionAlgebra, g, f, budget: Optional[Budget] = None) -> List[Tuple[Vector, FrozenSet[Vector]]]:
    """Every (a, E) with a = g * sum(E) and E following the g;f pattern."""
    field = A.field
    g, f = field.coerce(g), field.coerce(f)
    if g == 0 or f == 0:
        raise HypothesisError("g and f must be non-zero")
    idems = nonzero_idempotents(A, budget)
    resolve(budget).check_subsets(2 ** len(idems), 'g;f-idemelement subset search')
    found = []
    for m in range(3, len(idems) + 1):
        for E in itertools.combinations(idems, m):
            if _follows_gf_pattern(A, E, f):
                a = field.scale_vector(g, field.sum_vectors(E, A.n))
                found.append((a, frozenset(E)))
    return found


def is_gf_idemelement(A: EvolutionAlgebra, a: Sequence, g, f, budget: Optional[Budget] = None) -> Optional[FrozenSet[Vector]]:
    """
    A set E of idempotents with a = g * sum(E) whose pair products follow the
    g;f pattern, or None. Pairs are unordered; fewer than three idempotents
    can never follow the pattern.
    """
    a = A.element(a)
    for candidate, E in gf_idemelement_patterns(A, g, f, budget):
        if candidate == a:
            return E
    return None


def gf_scaling_factor(field: FieldSpec, g, f) -> Optional[Scalar]:
    """
    The scalar turning a g;f-idemelement into an idempotent. Its square is
    g^2 (1 + 2f) sum(E), so the factor is 1 / (g (1 + 2f)).

    This is not g / (g^2 f + g^2) = 1 / (g (1 + f)): that form counts the
    cross term of the pair hitting e_k once, while the commutative product
    gives uv + vu = 2 f g^2 e_k for the unordered pair {u, v}.
    """
    g, f = field.coerce(g), field.coerce(f)
    denominator = field.mul(g, field.add(field.one, field.mul(field.coerce(2), f)))
    return None if denominator == 0 else field.inv(denominator)


@dataclass(frozen=True)
class ScaledIdempotent:
    scalar: Scalar
    idempotent: Vector


def idempotent_scaling(A: EvolutionAlgebra, a: Sequence) -> Optional[ScaledIdempotent]:
    """If a^2 = r a with r != 0, return 1/r and the idempotent a/r."""
    a = A.element(a)
    if is_zero_vector(a):
        raise HypothesisError("Cannot rescale the zero element")
    r = proportionality(A.field, A.square(a), a)
    if r is None or r == 0:
        return None
    scalar = A.field.inv(r)
    e = A.field.scale_vector(scalar, a)
    if A.square(e) != e:
        raise InvariantViolation(f"{A.field.format_vector(e)} is not idempotent")
    return ScaledIdempotent(scalar, e)


def scale_invariant_idempotents(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> List[Vector]:
    """Representatives a with A a = K a and a^2 = r a, r != 0."""
    found = []
    for a in nonzero_representatives(A.full_space(), budget):
        line = A.span([a])
        if all(line.contains(w) for w in A.left_multiplication_images(a)) and idempotent_scaling(A, a) is not None:
            found.append(a)
    return found


def sumspan(field: FieldSpec, E: Iterable[Sequence], n: int) -> FrozenSet[Vector]:
    """Sums of exactly n members of E, repetitions allowed."""
    E = sorted({field.vector(e) for e in E})
    if not E:
        return frozenset()
    dim = len(E[0])
    return frozenset(field.sum_vectors(terms, dim) for terms in itertools.combinations_with_replacement(E, n))


def sumspan_family(field: FieldSpec, family: Iterable[Iterable[Sequence]], E: Iterable[Sequence],
                   n: int) -> FrozenSet[Vector]:
    """Like :func:`sumspan`, with at most one term drawn from each member set of ``family``."""
    family = [frozenset(field.vector(e) for e in F) for F in family]
    E = sorted({field.vector(e) for e in E})
    if not E:
        return frozenset()
    dim = len(E[0])
    sums = set()
    for terms in itertools.combinations_with_replacement(E, n):
        if all(sum(1 for t in terms if t in F) <= 1 for F in family):
            sums.add(field.sum_vectors(terms, dim))
    return frozenset(sums)


def _check_family(A: EvolutionAlgebra, family, within=None) -> List[FrozenSet[Vector]]:
    family = [frozenset(A.element(e) for e in F) for F in family]
    if not family or any(not F for F in family):
        raise HypothesisError("The family must consist of non-empty sets")
    if within is not None and not all(F <= within for F in family):
        raise HypothesisError("Every member of the family must lie in B")
    return family


def snzsc(A: EvolutionAlgebra, I: Subspace, B: Iterable[Sequence], family, max_terms: Optional[int] = None,
          budget: Optional[Budget] = None) -> FrozenSet[Vector]:
    """
    Non-zero elements of I that are sums of elements of autoann(family).
    Over GF(p) repeated sums reach the whole span; over Q sums of up to
    ``max_terms`` terms are considered.
    """
    family = _check_family(A, family, frozenset(A.element(b) for b in B))
    X = autoann(A, family)
    if not X:
        return frozenset()
    if A.field.is_prime_field:
        inside = A.span(X).intersect(I)
        return frozenset(v for v in enumerate_vectors(inside, budget=budget) if not is_zero_vector(v))
    if max_terms is None:
        raise UnsupportedEnumerationError("Sums over Q need a bound on the number of terms")
    sums = set()
    for n in range(1, max_terms + 1):
        sums |= sumspan(A.field, X, n)
    return frozenset(v for v in sums if not is_zero_vector(v) and I.contains(v))


def theorem75_set(A: EvolutionAlgebra, I: Subspace, family, budget: Optional[Budget] = None) -> FrozenSet[Vector]:
    """Non-zero sums in I of distinct autoannihilator elements, at most one per member set."""
    family = _check_family(A, family)
    X = sorted(autoann(A, family))
    resolve(budget).check_subsets(2 ** len(X), 'autoannihilator subset sums')
    found = set()
    for m in range(1, len(X) + 1):
        for S in itertools.combinations(X, m):
            if any(sum(1 for s in S if s in F) > 1 for F in family):
                continue
            v = A.field.sum_vectors(S, A.n)
            if not is_zero_vector(v) and I.contains(v):
                found.add(v)
    return frozenset(found)


@dataclass(frozen=True)
class Theorem75Result:
    admits: bool
    holds: bool
    elements: Tuple[Vector, ...]


def theorem75_check(A: EvolutionAlgebra, I: Subspace, family, budget: Optional[Budget] = None) -> Theorem75Result:
    """
    For a minimal ideal I and a family of non-empty sets of non-zero
    idempotents, check that every element of the associated sum set is an
    idempotent generating I. ``admits`` is False when that set is empty.
    """
    if I not in set(minimal_ideals(A, budget)):
        raise HypothesisError("I is not a minimal ideal")
    family = _check_family(A, family)
    for F in family:
        if any(is_zero_vector(e) or not is_idempotent(A, e) for e in F):
            raise HypothesisError("Family members must be sets of non-zero idempotents")
    elements = tuple(sorted(theorem75_set(A, I, family, budget)))
    holds = all(is_idempotent(A, e) and ideal_closure(A, [e]) == I for e in elements)
    if not holds:
        logger.warning(f"{A}: sum set of the family contains elements that are not idempotent generators")
    return Theorem75Result(admits=bool(elements), holds=holds, elements=elements)
