"""
Ideal and subalgebra generation, ideal enumeration over prime fields and the
structural predicates built on them.

Evolution algebras are commutative, so left, right and two-sided ideals
coincide and only one kind is implemented.
"""
import logging
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional, Sequence, Union

from .algebra import EvolutionAlgebra
from .budget import Budget, resolve
from .errors import DimensionMismatchError, UnsupportedEnumerationError
from .exactalg import (
    Subspace,
    Vector,
    enumerate_subspaces,
    enumerate_vectors,
    is_zero_vector,
    minimal_subspaces,
    nonzero_representatives,
    sorted_subspaces,
)

logger = logging.getLogger(__name__)

ElementSet = FrozenSet[Vector]


def _fixpoint(A: EvolutionAlgebra, start: Subspace, images) -> Subspace:
    current = start
    while True:
        new = [w for v in current.basis for w in images(current, v)]
        grown = current.extended(new)
        if grown == current:
            return current
        current = grown


def ideal_closure(A: EvolutionAlgebra, S: Iterable[Sequence]) -> Subspace:
    """Least ideal containing S: close span(S) under multiplication by each e_i."""
    start = A.span(A.element(s) for s in S)
    return _fixpoint(A, start, lambda _, v: A.left_multiplication_images(v))


def relative_ideal_closure(A: EvolutionAlgebra, ambient: Subspace, S: Iterable[Sequence]) -> Subspace:
    """Least ideal of the subalgebra ``ambient`` containing S."""
    start = A.span(A.element(s) for s in S)
    return _fixpoint(A, start, lambda _, v: [A.product(u, v) for u in ambient.basis])


def subalgebra_closure(A: EvolutionAlgebra, S: Iterable[Sequence]) -> Subspace:
    start = A.span(A.element(s) for s in S)
    return _fixpoint(A, start, lambda current, v: [A.product(u, v) for u in current.basis])


def _check_space(A: EvolutionAlgebra, U: Subspace) -> None:
    if U.ambient_dim != A.n:
        raise DimensionMismatchError(f"Subspace of {U.field}^{U.ambient_dim} in an algebra of dimension {A.n}")


def is_ideal(A: EvolutionAlgebra, U: Subspace) -> bool:
    _check_space(A, U)
    return all(U.contains(w) for v in U.basis for w in A.left_multiplication_images(v))


def is_subalgebra(A: EvolutionAlgebra, U: Subspace) -> bool:
    _check_space(A, U)
    return all(U.contains(A.product(u, v)) for u in U.basis for v in U.basis)


def is_ideal_of(A: EvolutionAlgebra, ambient: Subspace, U: Subspace) -> bool:
    """Whether U is an ideal of the subalgebra ``ambient`` with the restricted product."""
    return U.issubspace(ambient) and all(U.contains(A.product(u, v)) for u in ambient.basis for v in U.basis)


def ideal_product(A: EvolutionAlgebra, U: Subspace, V: Subspace) -> Subspace:
    _check_space(A, U)
    _check_space(A, V)
    return A.span(A.product(u, v) for u in U.basis for v in V.basis)


@lru_cache(maxsize=256)
def _principal_ideals(A: EvolutionAlgebra, budget: Budget) -> FrozenSet[Subspace]:
    ideals = {A.zero_space()}
    for v in nonzero_representatives(A.full_space(), budget):
        ideals.add(ideal_closure(A, [v]))
    return frozenset(ideals)


@lru_cache(maxsize=256)
def _all_ideals(A: EvolutionAlgebra, budget: Budget) -> FrozenSet[Subspace]:
    return frozenset(U for U in enumerate_subspaces(A.field, A.n, budget) if is_ideal(A, U))


def enumerate_ideals(A: EvolutionAlgebra, mode: str = 'principal', budget: Optional[Budget] = None) -> List[Subspace]:
    """
    Principal ideals (plus {0}) or, with ``mode='all'``, every ideal found by
    scanning all subspaces. Sorted by dimension, then by canonical basis.
    """
    if not A.field.is_prime_field:
        raise UnsupportedEnumerationError(f"Cannot enumerate ideals over {A.field}")
    budget = resolve(budget)
    if mode == 'principal':
        ideals = _principal_ideals(A, budget)
    elif mode == 'all':
        ideals = _all_ideals(A, budget)
    else:
        raise ValueError(f"Unknown enumeration mode '{mode}'")
    logger.debug(f"{A}: {len(ideals)} ideals in mode {mode}")
    return sorted_subspaces(ideals)


def minimal_ideals(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> List[Subspace]:
    """Inclusion-minimal non-zero ideals; every one of them is principal."""
    nonzero = [I for I in enumerate_ideals(A, 'principal', budget) if not I.is_zero]
    return minimal_subspaces(nonzero)


def is_minimal_ideal(A: EvolutionAlgebra, U: Subspace, budget: Optional[Budget] = None) -> bool:
    return U in minimal_ideals(A, budget)


def is_simple(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> bool:
    if ideal_product(A, A.full_space(), A.full_space()).is_zero:
        return False
    full = A.full_space()
    return all(ideal_closure(A, [v]) == full for v in nonzero_representatives(full, budget))


def is_simple_subalgebra(A: EvolutionAlgebra, U: Subspace, budget: Optional[Budget] = None) -> bool:
    """Simplicity of the subalgebra U taken as an algebra with the restricted product."""
    if U.is_zero or ideal_product(A, U, U).is_zero:
        return False
    return all(relative_ideal_closure(A, U, [v]) == U for v in nonzero_representatives(U, budget))


def is_semiprime(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> bool:
    """No non-zero ideal squares to zero; principal ideals suffice."""
    for J in enumerate_ideals(A, 'principal', budget):
        if not J.is_zero and ideal_product(A, J, J).is_zero:
            logger.debug(f"{A}: ideal {J.basis} squares to zero")
            return False
    return True


def is_degeneracy_witness(A: EvolutionAlgebra, a: Sequence) -> bool:
    """a != 0 and a(Aa) = 0. Exact over any field."""
    a = A.element(a)
    if is_zero_vector(a):
        return False
    return all(is_zero_vector(A.product(a, A.mul_basis(j, a))) for j in range(A.n))


def is_nondegenerate_left(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> bool:
    full = A.full_space()
    return not any(is_degeneracy_witness(A, a) for a in nonzero_representatives(full, budget))


def is_nondegenerate_basis(A: EvolutionAlgebra) -> bool:
    """Every square of the defining basis is non-zero."""
    return not any(is_zero_vector(row) for row in A.sq.rows)


def is_perfect(A: EvolutionAlgebra) -> bool:
    return A.sq.rank() == A.n


def _members(A: EvolutionAlgebra, U: Union[Subspace, Iterable[Sequence]], budget: Optional[Budget]):
    if isinstance(U, Subspace):
        return enumerate_vectors(U, budget=budget)
    return (A.element(u) for u in U)


def lann(A: EvolutionAlgebra, U: Union[Subspace, Iterable[Sequence]], family: Iterable[Iterable[Sequence]],
         budget: Optional[Budget] = None) -> ElementSet:
    """Elements of U annihilating every member of every set in ``family``."""
    targets = [A.element(f) for F in family for f in F]
    return frozenset(
        u for u in _members(A, U, budget)
        if all(is_zero_vector(A.product(u, f)) for f in targets)
    )


def autoann(A: EvolutionAlgebra, family: Iterable[Iterable[Sequence]]) -> ElementSet:
    """Union over E in ``family`` of the elements of E killing every other member set."""
    family = {frozenset(A.element(e) for e in E) for E in family}
    result = set()
    for E in family:
        others = [F for F in family if F != E]
        result |= lann(A, E, others)
    return frozenset(result)
