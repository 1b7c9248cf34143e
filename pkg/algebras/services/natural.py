"""
Natural bases: detection inside subspaces, extension to the whole algebra,
enumeration up to permutation and rescaling, natural elements, separation,
orthogonal complements, ramification and the naturality classification.

Over prime fields the searches are complete: candidates are the
scalar-class representatives of the space (first non-zero coordinate 1) in
lexicographic order and a set is built with strictly increasing candidate
indices, so every natural basis class is visited exactly once. Over the
rationals only sufficient checks are available and an inconclusive search
raises :class:`UndecidedError`.
"""
import enum
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .algebra import EvolutionAlgebra
from .budget import Budget, resolve
from .errors import HypothesisError, InvariantViolation, UndecidedError, UnsupportedEnumerationError
from .exactalg import (
    Subspace,
    Vector,
    coordinates_in_basis,
    is_independent,
    is_zero_vector,
    nonzero_representatives,
    nullspace,
    proportionality,
    sorted_subspaces,
)
from .idempotents import nonzero_idempotents
from .ideals import enumerate_ideals, ideal_closure, is_ideal, is_subalgebra

logger = logging.getLogger(__name__)


class Verdict(enum.Enum):
    YES = 'yes'
    NO = 'no'
    UNDECIDED = 'undecided'


@dataclass(frozen=True)
class NaturalBasisWitness:
    """A basis of ``space`` whose distinct members multiply to zero."""

    algebra: EvolutionAlgebra
    vectors: Tuple[Vector, ...]
    space: Subspace

    def __post_init__(self):
        A = self.algebra
        if len(self.vectors) != self.space.dim:
            raise InvariantViolation(f"{len(self.vectors)} vectors for a space of dimension {self.space.dim}")
        if A.span(self.vectors) != self.space:
            raise InvariantViolation("Witness vectors do not span the space")
        for u, v in itertools.combinations(self.vectors, 2):
            if not is_zero_vector(A.product(u, v)):
                raise InvariantViolation(f"Witness vectors {u} and {v} are not orthogonal")

    @property
    def of_algebra(self) -> bool:
        return self.space.is_full

    def basis_class(self) -> 'BasisClass':
        return BasisClass.of(self.algebra, self.vectors)


@dataclass(frozen=True)
class BasisClass:
    """A natural basis up to permutation and non-zero rescaling of its members."""

    vectors: Tuple[Vector, ...]

    @classmethod
    def of(cls, A: EvolutionAlgebra, vectors: Iterable[Sequence]) -> 'BasisClass':
        return cls(tuple(sorted(A.field.normalize(v) for v in vectors)))

    def __contains__(self, v) -> bool:
        return v in self.vectors


def _orthogonality(A: EvolutionAlgebra, pool: Sequence[Vector]) -> Dict[int, FrozenSet[int]]:
    adjacency = {i: set() for i in range(len(pool))}
    for i, j in itertools.combinations(range(len(pool)), 2):
        if is_zero_vector(A.product(pool[i], pool[j])):
            adjacency[i].add(j)
            adjacency[j].add(i)
    return {i: frozenset(s) for i, s in adjacency.items()}


def _natural_sets(A: EvolutionAlgebra, pool: Sequence[Vector], seed: Sequence[Vector],
                  target_dim: int) -> Iterator[Tuple[Vector, ...]]:
    """
    Backtracking over ``pool``: yield every index-increasing tuple of pool
    vectors that extends ``seed`` to ``target_dim`` independent, pairwise
    orthogonal vectors.
    """
    needed = target_dim - len(seed)
    if needed < 0:
        return
    candidates = [
        i for i, v in enumerate(pool)
        if all(is_zero_vector(A.product(v, s)) for s in seed)
    ]
    adjacency = _orthogonality(A, pool)
    start_space = A.span(seed)

    def extend(chosen: List[int], allowed: List[int], space: Subspace):
        if len(chosen) == needed:
            yield tuple(pool[i] for i in chosen)
            return
        for pos, i in enumerate(allowed):
            if len(allowed) - pos < needed - len(chosen):
                return
            if space.contains(pool[i]):
                continue
            rest = [j for j in allowed[pos + 1:] if j in adjacency[i]]
            yield from extend(chosen + [i], rest, space.extended([pool[i]]))

    yield from extend([], candidates, start_space)


def _greedy_orthogonal(A: EvolutionAlgebra, U: Subspace, candidates: Iterable[Vector]) -> Optional[Tuple[Vector, ...]]:
    chosen: List[Vector] = []
    for v in candidates:
        if is_zero_vector(v) or not U.contains(v):
            continue
        if any(not is_zero_vector(A.product(v, w)) for w in chosen):
            continue
        if is_independent(A.field, chosen + [v]):
            chosen.append(v)
        if len(chosen) == U.dim:
            return tuple(chosen)
    return None


def find_natural_basis(A: EvolutionAlgebra, U: Subspace, generators: Optional[Iterable[Sequence]] = None,
                       budget: Optional[Budget] = None) -> Optional[NaturalBasisWitness]:
    """
    A natural basis of U, or None when none exists. Over the rationals a
    failed sufficient check raises :class:`UndecidedError` instead of None.
    """
    if U.is_zero:
        return NaturalBasisWitness(A, (), U)
    if A.field.is_prime_field:
        pool = nonzero_representatives(U, budget)
        found = next(_natural_sets(A, pool, (), U.dim), None)
        return NaturalBasisWitness(A, found, U) if found is not None else None

    rows = U.basis
    if all(is_zero_vector(A.product(u, v)) for u, v in itertools.combinations(rows, 2)):
        return NaturalBasisWitness(A, rows, U)
    candidates = [A.element(g) for g in generators or ()] + list(rows) + A.basis()
    found = _greedy_orthogonal(A, U, candidates)
    if found is not None:
        return NaturalBasisWitness(A, found, U)
    logger.warning(f"{A}: natural basis of a {U.dim}-dimensional subspace over Q left undecided")
    raise UndecidedError(f"Could not decide whether the subspace {U.format_basis()} has a natural basis over Q")


def decide_evolution_ideal(A: EvolutionAlgebra, U: Subspace, budget: Optional[Budget] = None) -> Verdict:
    if not is_ideal(A, U):
        return Verdict.NO
    try:
        return Verdict.YES if find_natural_basis(A, U, budget=budget) is not None else Verdict.NO
    except UndecidedError:
        return Verdict.UNDECIDED


def is_evolution_ideal(A: EvolutionAlgebra, U: Subspace, budget: Optional[Budget] = None) -> bool:
    return is_ideal(A, U) and find_natural_basis(A, U, budget=budget) is not None


def is_evolution_subalgebra(A: EvolutionAlgebra, U: Subspace, budget: Optional[Budget] = None) -> bool:
    return is_subalgebra(A, U) and find_natural_basis(A, U, budget=budget) is not None


@lru_cache(maxsize=256)
def _evolution_ideals(A: EvolutionAlgebra, budget: Budget) -> FrozenSet[Subspace]:
    ideals = enumerate_ideals(A, 'all', budget)
    return frozenset(U for U in ideals if find_natural_basis(A, U, budget=budget) is not None)


def enumerate_evolution_ideals(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> List[Subspace]:
    if not A.field.is_prime_field:
        raise UnsupportedEnumerationError(f"Cannot enumerate evolution ideals over {A.field}")
    return sorted_subspaces(_evolution_ideals(A, resolve(budget)))


def minimal_evolution_ideals(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> List[Subspace]:
    nonzero = [U for U in enumerate_evolution_ideals(A, budget) if not U.is_zero]
    return [U for U in nonzero if not any(V != U and V.issubspace(U) for V in nonzero)]


def extension_witness(A: EvolutionAlgebra, U: Subspace, budget: Optional[Budget] = None) -> Optional[NaturalBasisWitness]:
    """A natural basis of A extending some natural basis of U."""
    if not A.field.is_prime_field:
        raise UnsupportedEnumerationError(f"Cannot search extensions over {A.field}")
    full_pool = nonzero_representatives(A.full_space(), budget)
    for inner in _natural_sets(A, nonzero_representatives(U, budget), (), U.dim):
        outer = next(_natural_sets(A, full_pool, inner, A.n), None)
        if outer is not None:
            return NaturalBasisWitness(A, inner + outer, A.full_space())
    return None


def extension_condition(A: EvolutionAlgebra, U: Subspace, budget: Optional[Budget] = None) -> bool:
    return extension_witness(A, U, budget) is not None


@lru_cache(maxsize=128)
def _natural_bases(A: EvolutionAlgebra, budget: Budget) -> Tuple[BasisClass, ...]:
    pool = nonzero_representatives(A.full_space(), budget)
    classes = {BasisClass.of(A, vectors) for vectors in _natural_sets(A, pool, (), A.n)}
    return tuple(sorted(classes, key=lambda c: c.vectors))


def enumerate_natural_bases(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> List[BasisClass]:
    """Every natural basis of A up to permutation and rescaling."""
    if not A.field.is_prime_field:
        raise UnsupportedEnumerationError(f"Cannot enumerate natural bases over {A.field}")
    budget = resolve(budget)
    budget.check_natural_basis_scope(A.n, A.field.p)
    return list(_natural_bases(A, budget))


def property_2LI(A: EvolutionAlgebra) -> bool:
    """Every pair of squares of the defining basis is linearly independent."""
    squares = A.sq.rows
    return all(is_independent(A.field, [squares[i], squares[j]]) for i, j in itertools.combinations(range(A.n), 2))


def property_mLI(A: EvolutionAlgebra) -> int:
    return A.sq.rank()


def has_unique_natural_basis(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> bool:
    """
    Decided without enumeration whenever a closed criterion applies: a zero
    square lets e_j be replaced by e_j + e_i; with all squares non-zero, the
    basis is unique iff the squares are pairwise independent, where the
    converse needs a scalar t with t^2 != -1/c, available over Q and GF(p), p >= 5.
    """
    if A.n == 1:
        return True
    if any(is_zero_vector(row) for row in A.sq.rows):
        return False
    if property_2LI(A):
        return True
    if not A.field.is_prime_field or A.field.p >= 5:
        return False
    return len(enumerate_natural_bases(A, budget)) == 1


def has_natural_basis_with_nonzero_squares(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> bool:
    """Existential non-degeneracy: some natural basis of A has no zero square."""
    if not any(is_zero_vector(row) for row in A.sq.rows):
        return True
    return any(
        not any(is_zero_vector(A.square(v)) for v in cls.vectors)
        for cls in enumerate_natural_bases(A, budget)
    )


def is_natural_element(A: EvolutionAlgebra, x: Sequence, budget: Optional[Budget] = None) -> bool:
    """Whether x belongs to some natural basis of A."""
    x = A.element(x)
    if is_zero_vector(x):
        return False
    if not A.field.is_prime_field:
        if any(proportionality(A.field, x, e) is not None for e in A.basis()):
            return True
        raise UndecidedError(f"Naturality of {A.field.format_vector(x)} over Q is undecided")
    seed = A.field.normalize(x)
    pool = nonzero_representatives(A.full_space(), budget)
    return next(_natural_sets(A, pool, (seed,), A.n), None) is not None


def natural_idempotents(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> List[Vector]:
    return [e for e in nonzero_idempotents(A, budget) if is_natural_element(A, e, budget)]


def separates(A: EvolutionAlgebra, basis: Sequence[Sequence], c: Sequence, d: Sequence) -> bool:
    """Whether the basis splits as C u D with c in span(C) and d in span(D)."""
    basis = [A.element(b) for b in basis]
    if len(basis) != A.n or not is_independent(A.field, basis):
        raise HypothesisError("Not a basis of the algebra")
    cc = coordinates_in_basis(A.field, basis, A.element(c))
    dc = coordinates_in_basis(A.field, basis, A.element(d))
    return not any(a != 0 and b != 0 for a, b in zip(cc, dc))


def is_orthogonal_bipartite(A: EvolutionAlgebra, C1: Sequence[Sequence], C2: Sequence[Sequence]) -> bool:
    C1 = [A.element(c) for c in C1]
    C2 = [A.element(c) for c in C2]
    if not C1 or not C2 or len(C1) + len(C2) != A.n or not is_independent(A.field, C1 + C2):
        return False
    return all(is_zero_vector(A.product(u, v)) for u in C1 for v in C2)


def annihilator_of(A: EvolutionAlgebra, E: Subspace) -> Subspace:
    """{x : e x = 0 for every e in E}; linear in x, so a kernel."""
    rows = [
        tuple(A.field.mul(b[k], A.sq.rows[k][m]) for k in range(A.n))
        for b in E.basis
        for m in range(A.n)
    ]
    return nullspace(A.field, rows, A.n) if rows else A.full_space()


def orthogonal_complement(A: EvolutionAlgebra, E: Subspace) -> Optional[Subspace]:
    """Some U with E U = 0 and E + U = A direct, or None."""
    O = annihilator_of(A, E)
    if E.sum(O) != A.full_space():
        return None
    current, chosen = E, []
    for v in O.basis:
        if not current.contains(v):
            chosen.append(v)
            current = current.extended([v])
    return A.span(chosen)


def is_n_natural(A: EvolutionAlgebra, c: Sequence, n: int) -> bool:
    """c lies in the first half C of an orthogonal bipartite basis with |C| = n and id(c) = span(C)."""
    c = A.element(c)
    if is_zero_vector(c):
        return False
    generated = ideal_closure(A, [c])
    if generated.dim != n or n >= A.n:
        return False
    complement = orthogonal_complement(A, generated)
    return complement is not None and not complement.is_zero


def natural_bases_of(A: EvolutionAlgebra, U: Subspace, budget: Optional[Budget] = None) -> List[Tuple[Vector, ...]]:
    """Every natural basis of the subspace U up to permutation and rescaling."""
    if not A.field.is_prime_field:
        raise UnsupportedEnumerationError(f"Cannot enumerate natural bases over {A.field}")
    return list(_natural_sets(A, nonzero_representatives(U, budget), (), U.dim))


@dataclass(frozen=True)
class BipartiteCertificate:
    """An orthogonal bipartite basis C u C' with e in C and span(C) = id(e)."""

    element: Vector
    inner: Tuple[Vector, ...]
    outer: Tuple[Vector, ...]
    natural: bool


def n_natural_certificate(A: EvolutionAlgebra, e: Sequence,
                          budget: Optional[Budget] = None) -> Optional[BipartiteCertificate]:
    """
    When id(e) is a proper evolution ideal with a natural basis B holding a
    single c with c e != 0 and an orthogonal complement exists, swap c for
    e in B and append a basis of the complement. The result is natural when
    the complement has a natural basis. None when the hypotheses fail for
    every natural basis of id(e).
    """
    e = A.element(e)
    if is_zero_vector(e):
        return None
    generated = ideal_closure(A, [e])
    complement = orthogonal_complement(A, generated)
    if complement is None or complement.is_zero:
        return None
    for B in natural_bases_of(A, generated, budget):
        hits = [c for c in B if not is_zero_vector(A.product(c, e))]
        if len(hits) != 1:
            continue
        inner = tuple(b for b in B if b != hits[0]) + (e,)
        outer_basis = find_natural_basis(A, complement, budget=budget)
        outer = outer_basis.vectors if outer_basis is not None else complement.basis
        if not is_orthogonal_bipartite(A, inner, outer) or A.span(inner) != generated:
            raise InvariantViolation(f"Swapping {A.field.format_vector(e)} into a natural basis of id(e) broke the split")
        return BipartiteCertificate(e, inner, tuple(outer), outer_basis is not None)
    return None


def separation_projections(A: EvolutionAlgebra, e: Sequence, u: Sequence,
                           budget: Optional[Budget] = None) -> List[Tuple[BasisClass, object]]:
    """
    For every natural basis class holding e, the coordinate of u along e.
    Orthogonal minimal idempotents give zero in each.
    """
    e = A.field.normalize(A.element(e))
    u = A.element(u)
    out = []
    for cls in enumerate_natural_bases(A, budget):
        if e not in cls:
            continue
        coords = coordinates_in_basis(A.field, cls.vectors, u)
        out.append((cls, coords[cls.vectors.index(e)]))
    return out


def _ramification_levels(A: EvolutionAlgebra, B: Sequence[Vector], inside: bool, budget: Optional[Budget]):
    """Yield, per iteration, a predicate telling whether an element is reachable."""
    if inside:
        reached = set(B)
        while True:
            reached = {A.product(d, r) for d in B for r in reached}
            frozen = frozenset(reached)
            yield lambda c, frozen=frozen: c in frozen
    spaces = {A.span(A.left_multiplication_images(b)) for b in B}
    while True:
        frozen = frozenset(spaces)
        yield lambda c, frozen=frozen: any(S.contains(c) for S in frozen)
        if not A.field.is_prime_field:
            raise UnsupportedEnumerationError(f"Iterated ramification over {A.field} needs enumeration")
        spaces = {
            A.span(A.left_multiplication_images(r))
            for S in frozen
            for r in nonzero_representatives(S, budget)
        }
        spaces.add(A.zero_space())


def ramifies(A: EvolutionAlgebra, B: Iterable[Sequence], C: Iterable[Sequence], iterations: int = 1,
             inside: bool = False, homogeneous: bool = False, budget: Optional[Budget] = None) -> bool:
    """
    B ramifies towards C in ``iterations`` steps: every c in C equals
    d_k(...(d_1 b)) for some b in B and multipliers d_t drawn from A (or from
    B when ``inside``).

    ``homogeneous`` draws every d_t from one set D instead of a set per
    step. The d_t may still differ, and D may be the whole pool, so the
    answer is the per-step one.
    """
    B = [A.element(b) for b in B]
    C = [A.element(c) for c in C]
    if iterations < 1:
        raise ValueError("Ramification needs at least one iteration")
    if homogeneous:
        logger.debug(f"Homogeneous ramification over {'B' if inside else 'A'} in {iterations} iterations")
    levels = _ramification_levels(A, B, inside, budget)
    check = next(levels)
    for _ in range(iterations - 1):
        check = next(levels)
    return all(check(c) for c in C)


def ramification_depth(A: EvolutionAlgebra, B: Iterable[Sequence], C: Iterable[Sequence], limit: int,
                       inside: bool = False, budget: Optional[Budget] = None) -> Optional[int]:
    """Least k <= limit such that B ramifies towards C in k iterations."""
    B = [A.element(b) for b in B]
    C = [A.element(c) for c in C]
    levels = _ramification_levels(A, B, inside, budget)
    for k in range(1, limit + 1):
        check = next(levels)
        if all(check(c) for c in C):
            return k
    return None


@dataclass(frozen=True)
class NaturalityReport:
    classes: Tuple[BasisClass, ...]
    idempotents: Tuple[Vector, ...]
    incidence: Tuple[Tuple[bool, ...], ...]
    surnatural: Optional[int]
    innatural: Optional[int]
    natural_counts: Dict[int, int] = field(default_factory=dict)
    conatural_counts: Dict[int, int] = field(default_factory=dict)

    @property
    def binatural(self) -> Optional[Tuple[int, int]]:
        if self.surnatural is None or self.innatural is None:
            return None
        return self.surnatural, self.innatural


def naturality_classification(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> NaturalityReport:
    """
    Incidence between natural basis classes and non-zero idempotents. A row
    count is constant when every class holds the same number of idempotents
    (surnatural); a column count when every idempotent lies in the same
    number of classes (innatural, undefined without idempotents).
    """
    classes = tuple(enumerate_natural_bases(A, budget))
    idems = tuple(nonzero_idempotents(A, budget))
    incidence = tuple(
        tuple(A.field.normalize(e) in cls for e in idems)
        for cls in classes
    )
    rows = [sum(row) for row in incidence]
    columns = [sum(incidence[r][c] for r in range(len(classes))) for c in range(len(idems))]
    surnatural = rows[0] if rows and len(set(rows)) == 1 else None
    innatural = columns[0] if columns and len(set(columns)) == 1 else None
    logger.debug(f"{A}: {len(classes)} natural basis classes, {len(idems)} non-zero idempotents")
    return NaturalityReport(
        classes=classes,
        idempotents=idems,
        incidence=incidence,
        surnatural=surnatural,
        innatural=innatural,
        natural_counts=dict(Counter(rows)),
        conatural_counts=dict(Counter(columns)),
    )
