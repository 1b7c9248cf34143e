"""
Exact scalars over GF(p) and the rationals, and the linear algebra the
other services compute on.

GF(p) scalars are canonical residues ``0..p-1`` (plain ints); rational
scalars are reduced ``fractions.Fraction`` values. Vectors are tuples of
scalars. A :class:`Subspace` always stores its canonical reduced row echelon
basis, so two subspaces compare equal exactly when they are the same space.
"""
import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import integer_nthroot

from .budget import Budget, resolve
from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    InvalidFieldError,
    UnsupportedEnumerationError,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Vector = Tuple[Scalar, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p) when ``p`` is a prime, the rationals when ``p == 0``."""

    p: int = 0

    _SPEC_RE = re.compile(r"^\s*(?:GF\(\s*(?P<p>\d+)\s*\)|(?P<q>Q|QQ))\s*$", re.IGNORECASE)

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise InvalidFieldError(f"GF({self.p}) is not a prime field")

    @classmethod
    def prime(cls, p: int) -> 'FieldSpec':
        return cls(int(p))

    @classmethod
    def rationals(cls) -> 'FieldSpec':
        return cls(0)

    @classmethod
    def parse(cls, text: str) -> 'FieldSpec':
        match = cls._SPEC_RE.match(text or '')
        if not match:
            raise InvalidFieldError(f"Unrecognised field '{text}' (expected GF(p) or Q)")
        if match.group('q'):
            return cls.rationals()
        return cls.prime(int(match.group('p')))

    @property
    def is_prime_field(self) -> bool:
        return self.p != 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"GF({self.p})" if self.p else "Q"

    def __str__(self):
        return self.name

    # Scalars

    def coerce(self, value) -> Scalar:
        if not self.p:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in {self.name}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    @property
    def zero(self) -> Scalar:
        return self.coerce(0)

    @property
    def one(self) -> Scalar:
        return self.coerce(1)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.p else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.p else -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self.name}")
        return pow(a, -1, self.p) if self.p else 1 / Fraction(a)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def power(self, a: Scalar, k: int) -> Scalar:
        return pow(a, k, self.p) if self.p else a ** k

    def parse_scalar(self, text: str) -> Scalar:
        try:
            return self.coerce(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"'{text}' is not a scalar of {self.name}: {e}") from e

    def format_scalar(self, value: Scalar) -> str:
        if self.p:
            return str(int(value))
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def elements(self) -> List[Scalar]:
        if not self.p:
            raise UnsupportedEnumerationError("The rationals cannot be enumerated")
        return list(range(self.p))

    def nonzero_elements(self) -> List[Scalar]:
        return [x for x in self.elements() if x != 0]

    # Vectors

    def vector(self, values: Iterable) -> Vector:
        return tuple(self.coerce(v) for v in values)

    def zero_vector(self, n: int) -> Vector:
        return (self.zero,) * n

    def unit_vector(self, n: int, i: int) -> Vector:
        return tuple(self.one if k == i else self.zero for k in range(n))

    def add_vectors(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
        if self.p:
            return tuple((a + b) % self.p for a, b in zip(u, v))
        return tuple(a + b for a, b in zip(u, v))

    def sub_vectors(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
        if self.p:
            return tuple((a - b) % self.p for a, b in zip(u, v))
        return tuple(a - b for a, b in zip(u, v))

    def scale_vector(self, c: Scalar, v: Sequence[Scalar]) -> Vector:
        if self.p:
            return tuple((c * a) % self.p for a in v)
        return tuple(c * a for a in v)

    def linear_combination(self, coeffs: Sequence[Scalar], vectors: Sequence[Vector], n: int) -> Vector:
        acc = [self.zero] * n
        for c, v in zip(coeffs, vectors):
            if c == 0:
                continue
            for k, a in enumerate(v):
                if a != 0:
                    acc[k] = self.add(acc[k], self.mul(c, a))
        return tuple(acc)

    def sum_vectors(self, vectors: Iterable[Vector], n: int) -> Vector:
        acc = self.zero_vector(n)
        for v in vectors:
            acc = self.add_vectors(acc, v)
        return acc

    def normalize(self, v: Sequence[Scalar]) -> Vector:
        """Scale ``v`` so that its first non-zero coordinate is 1."""
        lead = next((a for a in v if a != 0), None)
        if lead is None:
            return tuple(v)
        return self.scale_vector(self.inv(lead), v)

    def format_vector(self, v: Sequence[Scalar]) -> List[str]:
        return [self.format_scalar(a) for a in v]


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return all(a == 0 for a in v)


def proportionality(field: FieldSpec, v: Vector, w: Vector) -> Optional[Scalar]:
    """Return r with v = r*w, or None. ``w`` must be non-zero."""
    k = next(i for i, a in enumerate(w) if a != 0)
    r = field.div(v[k], w[k])
    return r if field.scale_vector(r, w) == tuple(v) else None


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: Tuple[Vector, ...]
    ncols: int

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable], ncols: Optional[int] = None) -> 'Matrix':
        coerced = tuple(field.vector(r) for r in rows)
        if ncols is None:
            ncols = len(coerced[0]) if coerced else 0
        for i, r in enumerate(coerced):
            if len(r) != ncols:
                raise DimensionMismatchError(f"Row {i + 1} has {len(r)} entries, expected {ncols}")
        return cls(field, coerced, ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> 'Matrix':
        return cls(field, tuple(field.unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> 'Matrix':
        return cls(field, tuple(field.zero_vector(ncols) for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, i: int) -> Vector:
        return self.rows[i]

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> 'Matrix':
        return Matrix(self.field, tuple(self.column(j) for j in range(self.ncols)), self.nrows)

    def rank(self) -> int:
        reduced, _ = _row_reduce(self.field, self.rows, self.ncols)
        return len(reduced)

    def is_zero(self) -> bool:
        return all(is_zero_vector(r) for r in self.rows)

    def format_rows(self) -> List[List[str]]:
        return [self.field.format_vector(r) for r in self.rows]


def _row_reduce(field: FieldSpec, rows: Sequence[Sequence[Scalar]], ncols: int) -> Tuple[List[Vector], List[int]]:
    """Gauss-Jordan elimination; returns the non-zero RREF rows and their pivot columns."""
    work = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        pivot = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        lead_inv = field.inv(work[r][c])
        work[r] = [field.mul(lead_inv, a) for a in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [field.sub(a, field.mul(factor, b)) for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in work[:r]], pivots


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form of ``m``; the shape is kept, zero rows last."""
    reduced, _ = _row_reduce(m.field, m.rows, m.ncols)
    padding = tuple(m.field.zero_vector(m.ncols) for _ in range(m.nrows - len(reduced)))
    return Matrix(m.field, tuple(reduced) + padding, m.ncols)


@dataclass(frozen=True)
class Subspace:
    field: FieldSpec
    ambient_dim: int
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, field: FieldSpec, n: int, vectors: Iterable[Sequence]) -> 'Subspace':
        rows = [field.vector(v) for v in vectors]
        for v in rows:
            if len(v) != n:
                raise DimensionMismatchError(f"Vector of length {len(v)} in ambient dimension {n}")
        reduced, _ = _row_reduce(field, rows, n)
        return cls(field, n, tuple(reduced))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> 'Subspace':
        return cls(field, n, ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> 'Subspace':
        return cls(field, n, tuple(field.unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(i for i, a in enumerate(row) if a != 0) for row in self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def sort_key(self):
        return self.dim, self.basis

    def _check_compatible(self, other: 'Subspace'):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError(f"Ambient dimension {self.ambient_dim} vs {other.ambient_dim}")

    def contains(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(f"Vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        coeffs = [v[p] for p in self.pivots]
        return self.field.linear_combination(coeffs, self.basis, self.ambient_dim) == tuple(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: 'Subspace') -> bool:
        self._check_compatible(other)
        return self.dim <= other.dim and all(other.contains(b) for b in self.basis)

    def __le__(self, other: 'Subspace') -> bool:
        return self.issubspace(other)

    def coordinates(self, v: Sequence[Scalar]) -> Vector:
        """Coordinates of ``v`` in the canonical basis."""
        if not self.contains(v):
            raise ValueError("Vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def sum(self, other: 'Subspace') -> 'Subspace':
        self._check_compatible(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def extended(self, vectors: Iterable[Sequence]) -> 'Subspace':
        return Subspace.span(self.field, self.ambient_dim, list(self.basis) + list(vectors))

    def intersect(self, other: 'Subspace') -> 'Subspace':
        """Zassenhaus: reduce [[U, U], [W, 0]]; rows with zero left half span U ∩ W."""
        self._check_compatible(other)
        n = self.ambient_dim
        zero = self.field.zero_vector(n)
        block = [u + u for u in self.basis] + [w + zero for w in other.basis]
        reduced, pivots = _row_reduce(self.field, block, 2 * n)
        meet = [row[n:] for row, c in zip(reduced, pivots) if c >= n]
        return Subspace.span(self.field, n, meet)

    def vectors(self, up_to_scalar: bool = False, budget: Optional[Budget] = None) -> Iterator[Vector]:
        return enumerate_vectors(self, up_to_scalar=up_to_scalar, budget=budget)

    def format_basis(self) -> List[List[str]]:
        return [self.field.format_vector(b) for b in self.basis]


def sorted_subspaces(spaces: Iterable[Subspace]) -> List[Subspace]:
    return sorted(spaces, key=lambda s: s.sort_key)


def minimal_subspaces(spaces: Iterable[Subspace]) -> List[Subspace]:
    spaces = sorted_subspaces(set(spaces))
    return [s for s in spaces if not any(t != s and t.issubspace(s) for t in spaces)]


def maximal_subspaces(spaces: Iterable[Subspace]) -> List[Subspace]:
    spaces = sorted_subspaces(set(spaces))
    return [s for s in spaces if not any(t != s and s.issubspace(t) for t in spaces)]


def sum_of_subspaces(field: FieldSpec, n: int, spaces: Iterable[Subspace]) -> Subspace:
    vectors = [b for s in spaces for b in s.basis]
    return Subspace.span(field, n, vectors)


def nullspace(field: FieldSpec, rows: Sequence[Sequence[Scalar]], ncols: int) -> Subspace:
    """Right kernel {x : M x = 0} of the matrix with the given rows."""
    reduced, pivots = _row_reduce(field, rows, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        x = [field.zero] * ncols
        x[free] = field.one
        for row, pc in zip(reduced, pivots):
            x[pc] = field.neg(row[free])
        basis.append(tuple(x))
    return Subspace.span(field, ncols, basis)


def coordinates_in_basis(field: FieldSpec, vectors: Sequence[Vector], target: Sequence[Scalar]) -> Optional[Vector]:
    """Solve sum c_i v_i = target; None when target is outside the span."""
    k = len(vectors)
    n = len(target)
    augmented = [tuple(v[j] for v in vectors) + (target[j],) for j in range(n)]
    reduced, pivots = _row_reduce(field, augmented, k + 1)
    if k in pivots:
        return None
    coords = [field.zero] * k
    for row, pc in zip(reduced, pivots):
        coords[pc] = row[k]
    return tuple(coords)


def is_independent(field: FieldSpec, vectors: Sequence[Vector]) -> bool:
    if not vectors:
        return True
    reduced, _ = _row_reduce(field, vectors, len(vectors[0]))
    return len(reduced) == len(vectors)


def enumerate_vectors(U: Subspace, up_to_scalar: bool = False, budget: Optional[Budget] = None) -> Iterator[Vector]:
    """
    All vectors of ``U`` (zero first), or zero plus one representative per
    line when ``up_to_scalar``. Representatives have first non-zero
    coordinate 1 in the canonical basis and come in lexicographic order.
    """
    field = U.field
    if not field.is_prime_field:
        raise UnsupportedEnumerationError(f"Cannot enumerate vectors over {field}")
    p, d = field.p, U.dim
    count = 1 + (p ** d - 1) // (p - 1) if up_to_scalar else p ** d
    resolve(budget).check_vectors(count)
    return _iter_vectors(U, up_to_scalar)


def _iter_vectors(U: Subspace, up_to_scalar: bool) -> Iterator[Vector]:
    field, n, d, p = U.field, U.ambient_dim, U.dim, U.field.p
    yield field.zero_vector(n)
    if up_to_scalar:
        for lead in reversed(range(d)):
            for tail in itertools.product(range(p), repeat=d - lead - 1):
                coeffs = (0,) * lead + (1,) + tail
                yield field.linear_combination(coeffs, U.basis, n)
    else:
        for coeffs in itertools.product(range(p), repeat=d):
            if any(coeffs):
                yield field.linear_combination(coeffs, U.basis, n)


def nonzero_representatives(U: Subspace, budget: Optional[Budget] = None) -> List[Vector]:
    return [v for v in enumerate_vectors(U, up_to_scalar=True, budget=budget) if not is_zero_vector(v)]


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(field: FieldSpec, n: int, budget: Optional[Budget] = None) -> List[Subspace]:
    """Every subspace of GF(p)^n, built directly as canonical RREF bases."""
    if not field.is_prime_field:
        raise UnsupportedEnumerationError(f"Cannot enumerate subspaces over {field}")
    p = field.p
    resolve(budget).check_subspaces(sum(gaussian_binomial(n, k, p) for k in range(n + 1)))
    spaces = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
            for values in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), value in zip(free, values):
                    rows[r][c] = value
                spaces.append(Subspace(field, n, tuple(tuple(row) for row in rows)))
    logger.debug(f"Enumerated {len(spaces)} subspaces of {field}^{n}")
    return spaces


def nth_root_in_field(field: FieldSpec, s: Scalar, k: int) -> Optional[Scalar]:
    """Some r with r**k == s, or None when the field has no such root."""
    s = field.coerce(s)
    if field.is_prime_field:
        return next((r for r in range(field.p) if pow(r, k, field.p) == s), None)
    if s < 0 and k % 2 == 0:
        return None
    sign = -1 if s < 0 else 1
    num, num_exact = integer_nthroot(abs(s.numerator), k)
    den, den_exact = integer_nthroot(s.denominator, k)
    if not (num_exact and den_exact):
        return None
    return Fraction(sign * int(num), int(den))


def sqrt_in_field(field: FieldSpec, s: Scalar) -> Optional[Scalar]:
    return nth_root_in_field(field, s, 2)
