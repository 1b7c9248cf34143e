"""
Evolution algebras presented in their defining natural basis.

``sq`` stores the squares in row convention: row i holds the coordinates of
e_i². The column-convention structure matrix M_B(A) is its transpose and is
only exposed through :meth:`EvolutionAlgebra.structure_matrix`.
"""
import itertools
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence

from .errors import CharacteristicError, DimensionMismatchError, FieldMismatchError, HypothesisError
from .exactalg import (
    FieldSpec,
    Matrix,
    Subspace,
    Vector,
    coordinates_in_basis,
    is_independent,
    is_zero_vector,
)

logger = logging.getLogger(__name__)

FAMILIES = ('diag', 'zero', 'z3_counterexample', 'four_dim_nonsimple_minimal', 'triangular')
TRIANGULAR_VARIANTS = ('cyclic', 'weighted', 'unit-diag')


@dataclass(frozen=True)
class EvolutionAlgebra:
    field: FieldSpec
    sq: Matrix
    label: str = dataclass_field(default='', compare=False)

    def __post_init__(self):
        if self.sq.field != self.field:
            raise FieldMismatchError(f"Structure matrix over {self.sq.field}, algebra over {self.field}")
        if self.sq.nrows != self.sq.ncols:
            raise DimensionMismatchError(f"Structure matrix must be square, got {self.sq.nrows}x{self.sq.ncols}")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable], label: str = '') -> 'EvolutionAlgebra':
        rows = list(rows)
        return cls(field, Matrix.from_rows(field, rows, ncols=len(rows)), label)

    @property
    def n(self) -> int:
        return self.sq.nrows

    def __str__(self):
        return self.label or f"evolution algebra of dimension {self.n} over {self.field}"

    def element(self, coords: Iterable) -> Vector:
        v = self.field.vector(coords)
        if len(v) != self.n:
            raise DimensionMismatchError(f"Element of length {len(v)} in an algebra of dimension {self.n}")
        return v

    def basis_vector(self, i: int) -> Vector:
        if not 0 <= i < self.n:
            raise IndexError(f"Basis index {i} out of range for dimension {self.n}")
        return self.field.unit_vector(self.n, i)

    def basis(self) -> List[Vector]:
        return [self.basis_vector(i) for i in range(self.n)]

    def _check_element(self, x: Sequence) -> None:
        if len(x) != self.n:
            raise DimensionMismatchError(f"Element of length {len(x)} in an algebra of dimension {self.n}")

    def product(self, x: Sequence, y: Sequence) -> Vector:
        """x*y = sum_i x_i y_i e_i^2 (distinct basis vectors multiply to zero)."""
        self._check_element(x)
        self._check_element(y)
        f = self.field
        coeffs = [f.mul(a, b) for a, b in zip(x, y)]
        return f.linear_combination(coeffs, self.sq.rows, self.n)

    def square(self, x: Sequence) -> Vector:
        return self.product(x, x)

    def mul_basis(self, i: int, v: Sequence) -> Vector:
        """e_i * v = v_i e_i^2."""
        return self.field.scale_vector(v[i], self.sq.rows[i])

    def left_multiplication_images(self, v: Sequence) -> List[Vector]:
        return [self.mul_basis(i, v) for i in range(self.n)]

    def structure_matrix(self) -> Matrix:
        return self.sq.transpose()

    def full_space(self) -> Subspace:
        return Subspace.full(self.field, self.n)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.field, self.n)

    def span(self, vectors: Iterable[Sequence]) -> Subspace:
        return Subspace.span(self.field, self.n, vectors)

    def squares_space(self) -> Subspace:
        """A^2, which for an evolution algebra is the span of the e_i^2."""
        return self.span(self.sq.rows)


def support(x: Sequence) -> FrozenSet[int]:
    return frozenset(i for i, a in enumerate(x) if a != 0)


def projection(x: Sequence, j: int):
    if not 0 <= j < len(x):
        raise IndexError(f"Projection index {j} out of range for length {len(x)}")
    return x[j]


def cesrb(A: EvolutionAlgebra, i: int) -> int:
    """Cardinal of the support of e_i^2."""
    return len(support(A.square(A.basis_vector(i))))


def is_associative(A: EvolutionAlgebra) -> bool:
    basis = A.basis()
    for x, y, z in itertools.product(basis, repeat=3):
        if A.product(A.product(x, y), z) != A.product(x, A.product(y, z)):
            return False
    return True


def is_power_associative_probe(A: EvolutionAlgebra, a: Sequence, depth: int) -> bool:
    """Check that every bracketing of a^m agrees for m <= depth."""
    a = A.element(a)
    powers = {1: {a}}
    for m in range(2, depth + 1):
        values = set()
        for k in range(1, m):
            for left in powers[k]:
                for right in powers[m - k]:
                    values.add(A.product(left, right))
        if len(values) > 1:
            logger.debug(f"Power {m} has {len(values)} distinct bracketings")
            return False
        powers[m] = values
    return True


def triangular_index(i: int, j: int) -> int:
    """0-based flat index of e_ij (1 <= j <= i) in the triangular family."""
    if not 1 <= j <= i:
        raise IndexError(f"e_{i}{j} is not a triangular basis element")
    return (i - 1) * i // 2 + j - 1


def _triangular_rows(field: FieldSpec, n: int, variant: str) -> List[List]:
    p = field.characteristic
    if variant == 'weighted' and p and p <= n + 2:
        raise CharacteristicError(f"The weighted triangular algebra needs characteristic > {n + 2}, got {p}")
    if variant == 'unit-diag' and p and p <= 2:
        raise CharacteristicError(f"The unit-diag triangular algebra needs characteristic > 2, got {p}")
    dim = n * (n + 1) // 2
    rows = [[0] * dim for _ in range(dim)]
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            here = triangular_index(i, j)
            after = triangular_index(i, j + 1 if j < i else 1)
            if variant == 'cyclic':
                rows[here][after] = 1
            elif variant == 'weighted':
                rows[here][here] += j
                rows[here][after] += j + 1
            elif variant == 'unit-diag':
                rows[here][here] += 1
                rows[here][after] += 1
            else:
                raise ValueError(f"Unknown triangular variant '{variant}'")
    return rows


def make_example(family: str, field: Optional[FieldSpec] = None, n: Optional[int] = None,
                 variant: Optional[str] = None) -> EvolutionAlgebra:
    """Build one of the named example families."""
    if family == 'z3_counterexample':
        field = field or FieldSpec.prime(3)
        return EvolutionAlgebra.from_rows(field, [[1, 2], [1, 1]], label='A_Z3')
    field = field or FieldSpec.rationals()
    if family == 'four_dim_nonsimple_minimal':
        rows = [[0, 0, -1, -1], [-1, -1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1]]
        return EvolutionAlgebra.from_rows(field, rows, label='A_4')
    if n is None or n < 1:
        raise ValueError(f"Family '{family}' needs a positive dimension")
    if family == 'diag':
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return EvolutionAlgebra.from_rows(field, rows, label=f"diag({n})")
    if family == 'zero':
        return EvolutionAlgebra.from_rows(field, [[0] * n for _ in range(n)], label=f"zero({n})")
    if family == 'triangular':
        variant = variant or 'cyclic'
        if variant not in TRIANGULAR_VARIANTS:
            raise ValueError(f"Unknown triangular variant '{variant}'")
        rows = _triangular_rows(field, n, variant)
        return EvolutionAlgebra.from_rows(field, rows, label=f"triangular({n}, {variant})")
    raise ValueError(f"Unknown example family '{family}' (expected one of {', '.join(FAMILIES)})")


def direct_sum(A: EvolutionAlgebra, B: EvolutionAlgebra) -> EvolutionAlgebra:
    if A.field != B.field:
        raise FieldMismatchError(f"{A.field} vs {B.field}")
    f = A.field
    rows = [list(r) + [f.zero] * B.n for r in A.sq.rows]
    rows += [[f.zero] * A.n + list(r) for r in B.sq.rows]
    label = f"{A.label or 'A'} + {B.label or 'B'}"
    return EvolutionAlgebra.from_rows(f, rows, label=label)


def subalgebra_in_basis(A: EvolutionAlgebra, vectors: Sequence[Vector], label: str = '') -> EvolutionAlgebra:
    """
    Present span(vectors) as a standalone evolution algebra, the vectors
    becoming its defining natural basis. They must be independent, pairwise
    orthogonal, and their squares must stay inside their span.
    """
    vectors = [A.element(v) for v in vectors]
    if not is_independent(A.field, vectors):
        raise HypothesisError("Vectors are not linearly independent")
    for (i, u), (j, w) in itertools.combinations(enumerate(vectors), 2):
        if not is_zero_vector(A.product(u, w)):
            raise HypothesisError(f"Vectors {i + 1} and {j + 1} are not orthogonal")
    rows = []
    for i, v in enumerate(vectors):
        coords = coordinates_in_basis(A.field, vectors, A.square(v))
        if coords is None:
            raise HypothesisError(f"The square of vector {i + 1} leaves the span")
        rows.append(coords)
    return EvolutionAlgebra.from_rows(A.field, rows, label=label)


def structure_matrix_from_index(field: FieldSpec, n: int, index: int) -> Matrix:
    """Decode the ``index``-th structure matrix in base p, entry (0,0) most significant."""
    p = field.p
    digits = []
    for _ in range(n * n):
        index, digit = divmod(index, p)
        digits.append(digit)
    digits.reverse()
    return Matrix(field, tuple(tuple(digits[i * n:(i + 1) * n]) for i in range(n)), n)


def structure_matrix_index(sq: Matrix) -> int:
    index = 0
    for row in sq.rows:
        for a in row:
            index = index * sq.field.p + int(a)
    return index


def iter_structure_matrices(field: FieldSpec, n: int, start: int = 0, stop: Optional[int] = None,
                            reverse: bool = False) -> Iterator[Matrix]:
    total = field.p ** (n * n)
    stop = total if stop is None else min(stop, total)
    indices = range(stop - 1, start - 1, -1) if reverse else range(start, stop)
    for index in indices:
        yield structure_matrix_from_index(field, n, index)


def iter_algebras(field: FieldSpec, n: int, start: int = 0, stop: Optional[int] = None,
                  reverse: bool = False) -> Iterator[EvolutionAlgebra]:
    for sq in iter_structure_matrices(field, n, start, stop, reverse):
        yield EvolutionAlgebra(field, sq)
