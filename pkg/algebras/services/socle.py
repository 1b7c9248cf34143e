"""
Socles: the sum of the minimal ideals, the sum of the minimal evolution
ideals, and the decompositions of the socle by natural idempotents.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import EvolutionAlgebra, subalgebra_in_basis
from .budget import Budget, resolve
from .errors import HypothesisError, InvariantViolation, UnsupportedEnumerationError
from .evlattice import min_evid
from .exactalg import Subspace, Vector, enumerate_vectors, is_zero_vector, nonzero_representatives, sorted_subspaces, sum_of_subspaces
from .ideals import ideal_closure, minimal_ideals, relative_ideal_closure
from .idempotents import FseaniVerdict, fseani_scan, idempotent_scaling, minimal_idempotents, nonzero_idempotents
from .natural import (
    enumerate_evolution_ideals,
    extension_condition,
    find_natural_basis,
    is_natural_element,
    minimal_evolution_ideals,
    natural_idempotents,
    property_2LI,
)

logger = logging.getLogger(__name__)


def _sum(A: EvolutionAlgebra, spaces) -> Subspace:
    return sum_of_subspaces(A.field, A.n, spaces)


def socle(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> Subspace:
    return _sum(A, minimal_ideals(A, budget))


def ev_socle(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> Subspace:
    return _sum(A, minimal_evolution_ideals(A, budget))


def a_socle(A: EvolutionAlgebra, E: Subspace, budget: Optional[Budget] = None) -> Subspace:
    """Sum of the minimal ideals of A inside the minimal evolution ideal E."""
    if E not in minimal_evolution_ideals(A, budget):
        raise HypothesisError("E is not a minimal evolution ideal")
    result = _sum(A, [I for I in minimal_ideals(A, budget) if I.issubspace(E)])
    if not result.issubspace(socle(A, budget)):
        raise InvariantViolation("A-socle escapes the socle")
    return result


def a_ev_socle(A: EvolutionAlgebra, I: Subspace, budget: Optional[Budget] = None) -> Subspace:
    """Sum of the minimal evolution ideals lying inside some member of MinEvid(I)."""
    if I not in minimal_ideals(A, budget):
        raise HypothesisError("I is not a minimal ideal")
    fronts = min_evid(A, I, budget)
    return _sum(A, [E for E in minimal_evolution_ideals(A, budget) if any(E.issubspace(F) for F in fronts)])


@dataclass(frozen=True)
class SocEvsocProbe:
    soc_in_evsoc: bool
    witness: Optional[Subspace] = None


def soc_evsoc_probe(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> SocEvsocProbe:
    evsoc = ev_socle(A, budget)
    for I in minimal_ideals(A, budget):
        if not I.issubspace(evsoc):
            logger.info(f"{A}: minimal ideal {I.format_basis()} is outside the evolution socle")
            return SocEvsocProbe(False, I)
    return SocEvsocProbe(True)


@dataclass(frozen=True)
class SocleReport:
    soc: Subspace
    evsoc: Subspace
    minimal_ideals: Tuple[Subspace, ...]
    minimal_evolution_ideals: Tuple[Subspace, ...]
    nat_min: Tuple[Subspace, ...]
    non_nat_min: Tuple[Subspace, ...]
    ex_min: Tuple[Subspace, ...]
    in_min: Tuple[Subspace, ...]
    soc_nid: Subspace
    sdni: int
    msdnonni: int
    natural_idempotents: Tuple[Vector, ...] = ()
    generators: Dict[Subspace, Optional[Vector]] = field(default_factory=dict)

    def __post_init__(self):
        minimal = set(self.minimal_ideals)
        if sum_of_subspaces(self.soc.field, self.soc.ambient_dim, self.minimal_ideals) != self.soc:
            raise InvariantViolation("soc is not the sum of the minimal ideals")
        for first, second, name in ((self.nat_min, self.non_nat_min, 'natural'), (self.ex_min, self.in_min, 'extension')):
            if set(first) & set(second) or set(first) | set(second) != minimal:
                raise InvariantViolation(f"The {name} partition does not split the minimal ideals")
        if any(N.dim != 1 for N in self.nat_min):
            raise InvariantViolation("A natural idempotent generates an ideal of dimension above 1")
        if not self.soc_nid.issubspace(self.soc):
            raise InvariantViolation("The socle of natural idempotency escapes the socle")

    @property
    def faithful(self) -> bool:
        return self.sdni == self.soc_nid.dim


def generating_idempotent(A: EvolutionAlgebra, I: Subspace, budget: Optional[Budget] = None) -> Optional[Vector]:
    """Some idempotent e with id(e) = I (zero for the zero ideal)."""
    if I.is_zero:
        return A.field.zero_vector(A.n)
    for e in nonzero_idempotents(A, budget):
        if I.contains(e) and ideal_closure(A, [e]) == I:
            return e
    return None


def partitions(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> SocleReport:
    if not A.field.is_prime_field:
        raise UnsupportedEnumerationError(f"Socle partitions need enumeration, unavailable over {A.field}")
    budget = resolve(budget)
    minimal = minimal_ideals(A, budget)
    nat_idems = natural_idempotents(A, budget)
    nat_min = sorted_subspaces({A.span([e]) for e in nat_idems})
    non_nat_min = [I for I in minimal if I not in nat_min]
    ex_min = [I for I in minimal if extension_condition(A, I, budget)]
    in_min = [I for I in minimal if I not in ex_min]
    natural = set(nat_idems)
    non_natural_minimal = [e for e in minimal_idempotents(A, budget) if e not in natural]
    report = SocleReport(
        soc=_sum(A, minimal),
        evsoc=ev_socle(A, budget),
        minimal_ideals=tuple(minimal),
        minimal_evolution_ideals=tuple(minimal_evolution_ideals(A, budget)),
        nat_min=tuple(nat_min),
        non_nat_min=tuple(non_nat_min),
        ex_min=tuple(ex_min),
        in_min=tuple(in_min),
        soc_nid=A.span(nat_idems),
        sdni=len(nat_min),
        msdnonni=len(non_natural_minimal),
        natural_idempotents=tuple(nat_idems),
        generators={I: generating_idempotent(A, I, budget) for I in minimal},
    )
    logger.debug(f"{A}: sdni={report.sdni}, msdnonni={report.msdnonni}, faithful={report.faithful}")
    return report


def unique_generator(A: EvolutionAlgebra, N: Subspace, budget: Optional[Budget] = None) -> Vector:
    """The only idempotent spanning the one-dimensional natural ideal N."""
    if N.dim != 1:
        raise HypothesisError("N must be one-dimensional")
    scaled = idempotent_scaling(A, N.basis[0])
    if scaled is None or not is_natural_element(A, scaled.idempotent, budget):
        raise HypothesisError("N is not generated by a natural idempotent")
    if A.field.is_prime_field:
        found = [v for v in enumerate_vectors(N, budget=budget) if not is_zero_vector(v) and A.square(v) == v]
        if found != [scaled.idempotent]:
            raise InvariantViolation(f"{len(found)} non-zero idempotents span N")
    return scaled.idempotent


@dataclass(frozen=True)
class CoherentChoice:
    valid: bool
    unstable_count: int
    bound: int

    @property
    def prop82_bound_holds(self) -> bool:
        return self.unstable_count <= self.bound


def coherent_choice_check(A: EvolutionAlgebra, choice: Mapping[Subspace, Sequence],
                          budget: Optional[Budget] = None) -> CoherentChoice:
    """
    ``choice`` picks an element of every minimal ideal. It is valid when each
    pick generates its ideal; the picks e with A e outside span(e) number at
    most dim(soc) - dim(span of the picks).
    """
    minimal = minimal_ideals(A, budget)
    missing = [I for I in minimal if I not in choice]
    if missing:
        raise HypothesisError(f"The choice misses {len(missing)} minimal ideals")
    picks = {I: A.element(choice[I]) for I in minimal}
    valid = all(ideal_closure(A, [e]) == I for I, e in picks.items())
    unstable = 0
    for e in picks.values():
        line = A.span([e])
        if not all(line.contains(w) for w in A.left_multiplication_images(e)):
            unstable += 1
    bound = _sum(A, minimal).dim - A.span(picks.values()).dim
    return CoherentChoice(valid, unstable, bound)


def _ideally_simple(B: EvolutionAlgebra, budget: Optional[Budget]) -> bool:
    full = B.full_space()
    return all(ideal_closure(B, [v]) == full for v in nonzero_representatives(full, budget))


@dataclass(frozen=True)
class IdeallySimpleReport:
    minimal_ideally_simple: bool
    evolution_minimal_ideally_simple: bool
    with_nonzero_product: bool


def ideally_simple_predicates(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> IdeallySimpleReport:
    """
    Every minimal ideal has no proper non-zero ideal of its own; in addition
    it has a natural basis; in addition its product is non-zero.
    """
    first = second = third = True
    for I in minimal_ideals(A, budget):
        simple = all(relative_ideal_closure(A, I, [v]) == I for v in nonzero_representatives(I, budget))
        first = first and simple
        witness = find_natural_basis(A, I, budget=budget)
        if witness is None:
            second = third = False
            continue
        B = subalgebra_in_basis(A, witness.vectors)
        evolution_simple = _ideally_simple(B, budget)
        second = second and evolution_simple
        third = third and evolution_simple and not B.sq.is_zero()
    return IdeallySimpleReport(first, second, third)


@dataclass(frozen=True)
class IdempotentGeneration:
    minimal_evolution: bool
    evolution: bool
    minimal_and_evolution: bool
    minimal: bool


def idempotent_generation_predicates(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> IdempotentGeneration:
    def generated(ideals):
        return all(generating_idempotent(A, I, budget) is not None for I in ideals)

    minimal = minimal_ideals(A, budget)
    evolution = enumerate_evolution_ideals(A, budget)
    return IdempotentGeneration(
        minimal_evolution=generated(minimal_evolution_ideals(A, budget)),
        evolution=generated(evolution),
        minimal_and_evolution=generated([I for I in minimal if I in set(evolution)]),
        minimal=generated(minimal),
    )


@dataclass(frozen=True)
class Theorem108Report:
    evolution_minimal_ideally_simple: bool
    two_li: bool
    s: int
    natural_sum_dim: int
    witnesses: Dict[Subspace, Vector]
    unwitnessed: Tuple[Subspace, ...]
    fseani_by_dim: Dict[int, Optional[FseaniVerdict]]
    soc: Subspace
    decomposition_holds: bool

    @property
    def hypotheses_hold(self) -> bool:
        return self.evolution_minimal_ideally_simple and self.two_li

    @property
    def natural_sum_matches(self) -> bool:
        return self.natural_sum_dim == self.s


def theorem108_report(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> Theorem108Report:
    """
    Decompose the socle into the natural part and idempotent-generated
    non-natural minimal ideals; minimal ideals with no idempotent generator
    are reported as unwitnessed, alongside FSEANI scans of the field in every
    dimension up to n - s that fits the scan budget.
    """
    budget = resolve(budget)
    report = partitions(A, budget)
    hypotheses = ideally_simple_predicates(A, budget)
    witnesses, unwitnessed = {}, []
    for I in report.non_nat_min:
        a = report.generators.get(I)
        if a is None:
            unwitnessed.append(I)
        else:
            witnesses[I] = a
    fseani_by_dim: Dict[int, Optional[FseaniVerdict]] = {}
    for m in range(1, A.n - report.sdni + 1):
        if A.field.p ** (m * m) <= budget.max_scan_matrices:
            fseani_by_dim[m] = fseani_scan(A.field, m, budget)
        else:
            fseani_by_dim[m] = None
    natural_sum = _sum(A, report.nat_min)
    decomposed = _sum(A, list(report.nat_min) + [ideal_closure(A, [a]) for a in witnesses.values()])
    if unwitnessed:
        logger.warning(f"{A}: {len(unwitnessed)} non-natural minimal ideals have no idempotent generator")
    return Theorem108Report(
        evolution_minimal_ideally_simple=hypotheses.evolution_minimal_ideally_simple,
        two_li=property_2LI(A),
        s=report.sdni,
        natural_sum_dim=natural_sum.dim,
        witnesses=witnesses,
        unwitnessed=tuple(unwitnessed),
        fseani_by_dim=fseani_by_dim,
        soc=report.soc,
        decomposition_holds=not unwitnessed and decomposed == report.soc,
    )


def to_json(report: SocleReport) -> dict:
    """JSON-ready view of a socle report with stable keys and scalars as strings."""
    field_ = report.soc.field

    def basis(U: Subspace) -> List[List[str]]:
        return U.format_basis()

    return {
        'soc_basis': basis(report.soc),
        'evsoc_basis': basis(report.evsoc),
        'nat_min': [basis(N) for N in report.nat_min],
        'non_nat_min': [basis(I) for I in report.non_nat_min],
        'sdni': report.sdni,
        'msdnonni': report.msdnonni,
        'faithful': report.faithful,
        'witnesses': [
            {
                'ideal': basis(I),
                'idempotent': field_.format_vector(report.generators[I]) if report.generators.get(I) is not None else None,
            }
            for I in report.minimal_ideals
        ],
    }
