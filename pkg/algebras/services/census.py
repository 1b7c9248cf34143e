"""
Exhaustive censuses: run a named probe over every structure matrix of a
given size and field, collecting violations of expected implications and
witnesses of interesting behaviour.

Index ranges can be split across workers; :func:`merge` recombines the
partial results deterministically.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .algebra import EvolutionAlgebra, iter_algebras, structure_matrix_index
from .budget import Budget, resolve
from .errors import InvariantViolation, UnsupportedEnumerationError
from .evlattice import (
    lattice_breakdowns,
    lattice_breakups,
    semilatticed_predicates,
    theorem33_replay,
    theorem35_replay,
    verify_evlattice,
)
from .exactalg import FieldSpec, is_zero_vector, minimal_subspaces, nonzero_representatives, proportionality
from .ideals import enumerate_ideals, ideal_closure, ideal_product, is_nondegenerate_basis, is_nondegenerate_left, is_perfect, is_semiprime, is_simple, minimal_ideals
from .idempotents import (
    gf_idemelement_patterns,
    gf_scaling_factor,
    has_nonzero_idempotent,
    has_trivializing_pattern,
    idempotent_scaling,
    minimal_idempotents,
)
from .natural import (
    enumerate_evolution_ideals,
    enumerate_natural_bases,
    has_natural_basis_with_nonzero_squares,
    has_unique_natural_basis,
    is_n_natural,
    is_natural_element,
    n_natural_certificate,
    natural_idempotents,
    property_2LI,
    separation_projections,
)
from .socle import partitions, soc_evsoc_probe

logger = logging.getLogger(__name__)

VIOLATION = 'violation'
WITNESS = 'witness'


@dataclass(frozen=True)
class Finding:
    index: int
    matrix: Tuple[Tuple[str, ...], ...]
    kind: str
    check: str
    detail: str = ''


@dataclass(frozen=True)
class CensusResult:
    field: FieldSpec
    n: int
    probe: str
    scanned: int
    findings: Tuple[Finding, ...] = ()

    @property
    def violations(self) -> List[Finding]:
        return [f for f in self.findings if f.kind == VIOLATION]

    @property
    def witnesses(self) -> List[Finding]:
        return [f for f in self.findings if f.kind == WITNESS]

    def witnessed(self, check: str) -> bool:
        return any(f.check == check for f in self.witnesses)


Outcome = Tuple[str, str, str]
Probe = Callable[[EvolutionAlgebra, Budget], List[Outcome]]


def probe_prop41(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    """nondegenerate-left => semiprime <=> no square-zero evolution ideal => some natural basis has non-zero squares."""
    if A.squares_space().is_zero:
        return []
    out = []
    ndl = is_nondegenerate_left(A, budget)
    semiprime = is_semiprime(A, budget)
    square_zero = [J for J in enumerate_evolution_ideals(A, budget) if not J.is_zero and ideal_product(A, J, J).is_zero]
    nondegenerate_somewhere = has_natural_basis_with_nonzero_squares(A, budget)
    if ndl and not semiprime:
        out.append((VIOLATION, 'nondegenerate-left-implies-semiprime', ''))
    if semiprime == bool(square_zero):
        out.append((VIOLATION, 'semiprime-iff-no-square-zero-evolution-ideal', f"semiprime={semiprime}"))
    if semiprime and not nondegenerate_somewhere:
        out.append((VIOLATION, 'semiprime-implies-nondegenerate', ''))
    if ndl and any(A.sq.entry(i, i) == 0 for i in range(A.n)):
        out.append((VIOLATION, 'nondegenerate-left-implies-nonzero-diagonal', ''))
    if semiprime and not ndl:
        out.append((WITNESS, 'semiprime-not-nondegenerate-left', ''))
    if nondegenerate_somewhere and not semiprime:
        out.append((WITNESS, 'nondegenerate-not-semiprime', ''))
    return out


def probe_thm_the(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    """Simple algebras are perfect, so their structure matrix has full rank and no trivializing column pattern."""
    if not is_simple(A, budget):
        return []
    out = []
    if not is_perfect(A):
        out.append((VIOLATION, 'simple-implies-full-rank', f"rank={A.sq.rank()}"))
    if has_trivializing_pattern(A):
        out.append((VIOLATION, 'simple-implies-no-trivializing-pattern', ''))
    return out


def probe_evlattice(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    if not verify_evlattice(A, budget):
        return [(VIOLATION, 'evlattice-laws', '')]
    return []


def probe_minimal_oracle(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    principal = minimal_ideals(A, budget)
    oracle = minimal_subspaces(I for I in enumerate_ideals(A, 'all', budget) if not I.is_zero)
    if set(principal) != set(oracle):
        return [(VIOLATION, 'principal-minimal-ideals-match-scan', f"{len(principal)} vs {len(oracle)}")]
    return []


def probe_prop107(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    """Each natural idempotent e spans id(e), and that line holds no other non-zero idempotent."""
    out = []
    for e in natural_idempotents(A, budget):
        line = A.span([e])
        if ideal_closure(A, [e]) != line:
            out.append((VIOLATION, 'natural-idempotent-generates-its-line', str(e)))
        multiples = [A.field.scale_vector(c, e) for c in A.field.nonzero_elements()]
        if sum(1 for v in multiples if A.square(v) == v) != 1:
            out.append((VIOLATION, 'unique-idempotent-in-natural-line', str(e)))
    return out


def probe_prop70(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    """Rescaling by 1/r turns a with a^2 = r a, r != 0, into an idempotent; g;f-patterns rescale by the derived factor."""
    out = []
    for a in nonzero_representatives(A.full_space(), budget):
        r = proportionality(A.field, A.square(a), a)
        if r is None or r == 0:
            continue
        try:
            idempotent_scaling(A, a)
        except InvariantViolation as e:
            out.append((VIOLATION, 'rescaled-element-is-idempotent', str(e)))
    for f in A.field.nonzero_elements():
        for a, E in gf_idemelement_patterns(A, 1, f, budget):
            if is_zero_vector(a):
                continue
            scaled = idempotent_scaling(A, a)
            if (scaled.scalar if scaled else None) != gf_scaling_factor(A.field, 1, f):
                out.append((VIOLATION, 'gf-idemelement-scaling', f"f={f}"))
            else:
                out.append((WITNESS, 'gf-idemelement', f"f={f}, |E|={len(E)}"))
    return out


def probe_soc_evsoc(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    probe = soc_evsoc_probe(A, budget)
    if not probe.soc_in_evsoc:
        return [(WITNESS, 'soc-not-in-evsoc', str(probe.witness.format_basis()))]
    return []


def probe_breakup(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    out = []
    if lattice_breakups(A, budget):
        out.append((WITNESS, 'lattice-breakup', ''))
    if lattice_breakdowns(A, budget):
        out.append((WITNESS, 'lattice-breakdown', ''))
    return out


def probe_semilatticed(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    report = semilatticed_predicates(A, budget)
    out = []
    if not report.inf_semilatticed:
        out.append((WITNESS, 'not-inf-semilatticed', ''))
    if not report.sup_semilatticed:
        out.append((WITNESS, 'not-sup-semilatticed', ''))
    return out


def probe_thm_c(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    """
    With non-zero squares, 2LI forces a unique natural basis. The converse
    needs GF(p) with p >= 5 or Q; over GF(2) and GF(3) its failures are witnesses.
    """
    out = []
    count = len(enumerate_natural_bases(A, budget))
    if has_unique_natural_basis(A, budget) != (count == 1):
        out.append((VIOLATION, 'uniqueness-shortcut-matches-enumeration', f"classes={count}"))
    if is_perfect(A) and count != 1:
        out.append((VIOLATION, 'perfect-implies-unique-natural-basis', f"classes={count}"))
    if not is_nondegenerate_basis(A):
        return out
    two_li = property_2LI(A)
    if two_li and count != 1:
        out.append((VIOLATION, '2LI-implies-unique-natural-basis', f"classes={count}"))
    if not two_li and count == 1:
        kind = WITNESS if A.field.p < 5 else VIOLATION
        out.append((kind, 'unique-natural-basis-without-2LI', ''))
    return out


def probe_fseani(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    if is_simple(A, budget) and not has_nonzero_idempotent(A, budget):
        return [(WITNESS, 'simple-without-idempotent', '')]
    return []


def probe_socle(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    """Socle partitions build without tripping their invariants; faithfulness under a unique natural basis."""
    try:
        report = partitions(A, budget)
    except InvariantViolation as e:
        return [(VIOLATION, 'socle-partition-invariants', str(e))]
    if len(enumerate_natural_bases(A, budget)) == 1 and not report.faithful:
        return [(VIOLATION, 'unique-basis-implies-faithful', '')]
    return []


def probe_thm88(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    """Minimal idempotents meeting the basis-and-complement hypotheses are dim(e)-natural, and natural with a natural complement."""
    out = []
    for e in minimal_idempotents(A, budget):
        label = ' '.join(A.field.format_vector(e))
        try:
            certificate = n_natural_certificate(A, e, budget)
        except InvariantViolation as exc:
            out.append((VIOLATION, 'bipartite-basis-invariants', f"{label}: {exc}"))
            continue
        if certificate is None:
            continue
        if not is_n_natural(A, e, len(certificate.inner)):
            out.append((VIOLATION, 'minimal-idempotent-is-dim-natural', label))
        elif certificate.natural and not is_natural_element(A, e, budget):
            out.append((VIOLATION, 'natural-complement-makes-idempotent-natural', label))
        else:
            out.append((WITNESS, 'minimal-idempotent-meets-hypotheses', label))
    return out


def probe_separation(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    """A natural idempotent has zero coordinate in every minimal idempotent of another minimal ideal."""
    out = []
    minimal = [(u, ideal_closure(A, [u])) for u in minimal_idempotents(A, budget)]
    for e in natural_idempotents(A, budget):
        line = ideal_closure(A, [e])
        for u, generated in minimal:
            if generated == line:
                continue
            label = f"e={' '.join(A.field.format_vector(e))}, u={' '.join(A.field.format_vector(u))}"
            if any(c != 0 for _, c in separation_projections(A, e, u, budget)):
                out.append((VIOLATION, 'natural-idempotent-separates-minimal-idempotents', label))
            else:
                out.append((WITNESS, 'separated-idempotent-pair', label))
    return out


def probe_unicity(A: EvolutionAlgebra, budget: Budget) -> List[Outcome]:
    """Replays the unicity conclusions over and below every evolution ideal that is a cut of unicity."""
    out = []
    for S in enumerate_evolution_ideals(A, budget):
        for direction in ('over', 'below'):
            label = f"{direction} {S.format_basis()}"
            for name, replay in (('bridge', theorem33_replay), ('tightest-bridge', theorem35_replay)):
                result = replay(A, S, direction, budget)
                if not result.cut_of_unicity:
                    break
                if result.violations:
                    checks = ', '.join(sorted({check for _, _, check in result.violations}))
                    out.append((VIOLATION, f"unicity-{name}", f"{label}: {checks}"))
                if result.skipped_pairs:
                    out.append((VIOLATION, f"cut-admits-{name}-for-every-pair", label))
            else:
                out.append((WITNESS, 'cut-of-unicity', label))
    return out


PROBES: Dict[str, Probe] = {
    'prop41': probe_prop41,
    'thm-the': probe_thm_the,
    'evlattice': probe_evlattice,
    'minimal-oracle': probe_minimal_oracle,
    'prop107': probe_prop107,
    'prop70': probe_prop70,
    'soc-evsoc': probe_soc_evsoc,
    'breakup': probe_breakup,
    'semilatticed': probe_semilatticed,
    'thm-c': probe_thm_c,
    'fseani': probe_fseani,
    'socle': probe_socle,
    'thm88': probe_thm88,
    'separation': probe_separation,
    'unicity': probe_unicity,
}


def run_census(field: FieldSpec, n: int, probe: str, budget: Optional[Budget] = None,
               start: int = 0, stop: Optional[int] = None,
               progress: Optional[Callable[[int], None]] = None) -> CensusResult:
    if probe not in PROBES:
        raise ValueError(f"Unknown probe '{probe}' (expected one of {', '.join(sorted(PROBES))})")
    if not field.is_prime_field:
        raise UnsupportedEnumerationError(f"Cannot run a census over {field}")
    budget = resolve(budget)
    total = field.p ** (n * n)
    stop = total if stop is None else min(stop, total)
    budget.check_scan(max(stop - start, 0))
    logger.info(f"Census {probe} over {field}, n={n}, matrices {start}..{stop - 1}")

    check = PROBES[probe]
    findings, scanned = [], 0
    for A in iter_algebras(field, n, start, stop):
        scanned += 1
        index = structure_matrix_index(A.sq)
        matrix = tuple(tuple(row) for row in A.sq.format_rows())
        for kind, name, detail in check(A, budget):
            findings.append(Finding(index, matrix, kind, name, detail))
            if kind == VIOLATION:
                logger.warning(f"Census {probe}: {name} fails for matrix #{index} {matrix}")
        if progress is not None:
            progress(scanned)
    result = CensusResult(field, n, probe, scanned, tuple(findings))
    logger.info(f"Census {probe} done: {scanned} algebras, {len(result.violations)} violations, "
                f"{len(result.witnesses)} witnesses")
    return result


def merge(results: Iterable[CensusResult]) -> CensusResult:
    results = list(results)
    if not results:
        raise ValueError("Nothing to merge")
    first = results[0]
    findings = sorted((f for r in results for f in r.findings), key=lambda f: (f.index, f.kind, f.check))
    return CensusResult(first.field, first.n, first.probe, sum(r.scanned for r in results), tuple(findings))
