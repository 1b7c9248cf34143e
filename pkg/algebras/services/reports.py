"""
Report builders behind the management commands.

Every builder returns plain JSON-ready data: dict keys are hyphenated,
scalars are strings in their canonical form, vectors are lists of scalar
strings and subspaces are lists of their canonical basis vectors. The same
payload feeds :func:`canonical_json` and :func:`render_text`, so the text and
``--json`` outputs never disagree.
"""
import json
import logging
from typing import Any, Callable, List, Optional

from .algebra import EvolutionAlgebra, is_associative
from .budget import Budget, resolve
from .census import CensusResult
from .errors import UndecidedError, UnsupportedEnumerationError
from .evlattice import (
    covering_pairs,
    evlattice_structure,
    evolution_ideal_poset,
    ideal_lattice,
    lattice_breakdowns,
    lattice_breakups,
    semilatticed_predicates,
    subspace_label,
    to_dot,
)
from .exactalg import Subspace, Vector
from .idempotents import FseaniVerdict, idempotent_system, idempotents, minimal_idempotents
from .ideals import (
    enumerate_ideals,
    is_nondegenerate_basis,
    is_nondegenerate_left,
    is_perfect,
    is_semiprime,
    is_simple,
    minimal_ideals,
)
from .natural import (
    decide_evolution_ideal,
    enumerate_natural_bases,
    extension_condition,
    find_natural_basis,
    has_unique_natural_basis,
    naturality_classification,
    natural_idempotents,
    property_2LI,
    property_mLI,
)
from .socle import ev_socle, partitions, socle, theorem108_report, to_json

logger = logging.getLogger(__name__)


def canonical_json(payload: Any) -> str:
    """Sorted keys, two-space indent and a trailing newline; loads/dumps is the identity on this output."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _is_vector(value) -> bool:
    return isinstance(value, list) and bool(value) and all(isinstance(x, str) for x in value)


def _inline(value) -> Optional[str]:
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if value is None:
        return 'n/a'
    if isinstance(value, (int, str)):
        return str(value)
    if isinstance(value, list):
        if not value:
            return 'none'
        if _is_vector(value):
            return '(' + ', '.join(value) + ')'
        if all(_is_vector(v) for v in value):
            return '[' + ', '.join('(' + ', '.join(v) + ')' for v in value) + ']'
    return None


def _render(value, lines: List[str], depth: int) -> None:
    pad = '  ' * depth
    if isinstance(value, dict):
        for key in sorted(value):
            label = key.replace('_', '-')
            text = _inline(value[key])
            if text is not None:
                lines.append(f"{pad}{label}: {text}")
            else:
                lines.append(f"{pad}{label}:")
                _render(value[key], lines, depth + 1)
    elif isinstance(value, list):
        for item in value:
            text = _inline(item)
            if text is not None:
                lines.append(f"{pad}- {text}")
            else:
                lines.append(f"{pad}-")
                _render(item, lines, depth + 1)
    else:
        lines.append(f"{pad}{_inline(value)}")


def render_text(payload: Any) -> str:
    """Human-readable rendering: one ``key: value`` per line, booleans as yes/no."""
    lines: List[str] = []
    _render(payload, lines, 0)
    return "\n".join(lines) + "\n"


def _attempt(compute: Callable, *args, **kwargs):
    """The value, or None where the field admits no exact answer."""
    try:
        return compute(*args, **kwargs)
    except (UnsupportedEnumerationError, UndecidedError) as e:
        logger.warning(f"{getattr(compute, '__name__', compute)}: {e}")
        return None


def _vec(A: EvolutionAlgebra, v: Vector) -> List[str]:
    return A.field.format_vector(v)


def _space(U: Subspace) -> List[List[str]]:
    return U.format_basis()


def algebra_payload(A: EvolutionAlgebra) -> dict:
    return {
        'field': A.field.name,
        'dim': A.n,
        'rows': A.sq.format_rows(),
        'label': A.label,
    }


def analyze_report(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> dict:
    """Predicates and a socle summary; entries needing enumeration are null over Q."""
    budget = resolve(budget)
    idems = _attempt(idempotents, A, budget)
    socle_report = _attempt(partitions, A, budget)
    return {
        'algebra': algebra_payload(A),
        'simple': _attempt(is_simple, A, budget),
        'semiprime': _attempt(is_semiprime, A, budget),
        'nondegenerate-left': _attempt(is_nondegenerate_left, A, budget),
        'nondegenerate-basis': is_nondegenerate_basis(A),
        'perfect': is_perfect(A),
        'associative': is_associative(A),
        '2LI': property_2LI(A),
        'mLI': property_mLI(A),
        'unique-natural-basis': _attempt(has_unique_natural_basis, A, budget),
        'idempotents': [_vec(A, e) for e in idems] if idems is not None else None,
        'socle': to_json(socle_report) if socle_report is not None else None,
    }


def idempotents_report(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> dict:
    budget = resolve(budget)
    found = idempotents(A, budget)
    return {
        'algebra': algebra_payload(A),
        'system': idempotent_system(A).equations(),
        'idempotents': [_vec(A, e) for e in found],
        'count': len(found),
        'minimal': [_vec(A, e) for e in minimal_idempotents(A, budget)],
        'natural': [_vec(A, e) for e in _attempt(natural_idempotents, A, budget) or []],
    }


def ideals_report(A: EvolutionAlgebra, mode: str = 'principal', budget: Optional[Budget] = None) -> dict:
    budget = resolve(budget)
    minimal = set(minimal_ideals(A, budget))
    entries = []
    for I in enumerate_ideals(A, mode, budget):
        witness = _attempt(find_natural_basis, A, I, budget=budget)
        entries.append({
            'basis': _space(I),
            'dim': I.dim,
            'minimal': I in minimal,
            'evolution': decide_evolution_ideal(A, I, budget).value,
            'natural-basis': [_vec(A, v) for v in witness.vectors] if witness is not None else None,
            'extension': extension_condition(A, I, budget) if witness is not None else False,
        })
    return {
        'algebra': algebra_payload(A),
        'mode': mode,
        'ideals': entries,
        'minimal-count': len(minimal),
    }


def socle_report(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> dict:
    budget = resolve(budget)
    report = theorem108_report(A, budget)
    return {
        'algebra': algebra_payload(A),
        'soc': _space(socle(A, budget)),
        'evsoc': _space(ev_socle(A, budget)),
        'partitions': to_json(partitions(A, budget)),
        'decomposition': {
            'hypotheses-hold': report.hypotheses_hold,
            's': report.s,
            'natural-sum-matches': report.natural_sum_matches,
            'unwitnessed': [_space(I) for I in report.unwitnessed],
            'holds': report.decomposition_holds,
            'fseani': {
                str(m): (v.summary if v is not None else None)
                for m, v in sorted(report.fseani_by_dim.items())
            },
        },
    }


def _pair_key(X: Subspace, Y: Subspace) -> str:
    return f"{subspace_label(X)} | {subspace_label(Y)}"


def lattice_report(A: EvolutionAlgebra, evolution: bool = False, budget: Optional[Budget] = None) -> dict:
    """The ideal lattice, or the evolution-ideal poset with its evinf/evsup tables."""
    budget = resolve(budget)
    poset = evolution_ideal_poset(A, budget) if evolution else ideal_lattice(A, budget).brset
    payload = {
        'algebra': algebra_payload(A),
        'kind': 'evolution-ideals' if evolution else 'ideals',
        'elements': [{'index': i, 'basis': _space(U), 'dim': U.dim} for i, U in enumerate(poset.elements)],
        'covers': [[i, j] for i, j in covering_pairs(poset)],
    }
    if evolution:
        structure = evlattice_structure(A, budget)
        payload['evinf'] = {_pair_key(X, Y): [_space(Z) for Z in Zs] for (X, Y), Zs in structure.evinf.items()}
        payload['evsup'] = {_pair_key(X, Y): [_space(Z) for Z in Zs] for (X, Y), Zs in structure.evsup.items()}
        payload['breakups'] = [[_space(X), _space(Y)] for X, Y in lattice_breakups(A, budget)]
        payload['breakdowns'] = [[_space(X), _space(Y)] for X, Y in lattice_breakdowns(A, budget)]
        semilatticed = _attempt(semilatticed_predicates, A, budget)
        payload['inf-semilatticed'] = semilatticed.inf_semilatticed if semilatticed else None
        payload['sup-semilatticed'] = semilatticed.sup_semilatticed if semilatticed else None
    return payload


def lattice_dot(A: EvolutionAlgebra, evolution: bool = False, budget: Optional[Budget] = None) -> str:
    poset = evolution_ideal_poset(A, budget) if evolution else ideal_lattice(A, budget).brset
    name = 'evolution_ideals' if evolution else 'ideals'
    return to_dot(poset, [subspace_label(U) for U in poset.elements], name=name)


def natural_bases_report(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> dict:
    budget = resolve(budget)
    classes = enumerate_natural_bases(A, budget)
    naturality = naturality_classification(A, budget)
    return {
        'algebra': algebra_payload(A),
        'classes': [[_vec(A, v) for v in cls.vectors] for cls in classes],
        'count': len(classes),
        'unique': len(classes) == 1,
        '2LI': property_2LI(A),
        'surnatural': naturality.surnatural,
        'innatural': naturality.innatural,
        'binatural': list(naturality.binatural) if naturality.binatural is not None else None,
        'incidence': {
            'idempotents': [_vec(A, e) for e in naturality.idempotents],
            'rows': [list(row) for row in naturality.incidence],
        },
        'natural-counts': {str(k): v for k, v in sorted(naturality.natural_counts.items())},
        'conatural-counts': {str(k): v for k, v in sorted(naturality.conatural_counts.items())},
    }


def fseani_report(verdict: FseaniVerdict) -> dict:
    counterexample = verdict.counterexample
    return {
        'field': verdict.field.name,
        'dim': verdict.n,
        'is-fseani': verdict.is_fseani,
        'summary': verdict.summary,
        'counterexample': counterexample.format_rows() if counterexample is not None else None,
        'scanned': verdict.scanned,
        'simple': verdict.simple_count,
        'simple-with-idempotent': verdict.with_idempotent_count,
    }


def census_report(result: CensusResult) -> dict:
    return {
        'field': result.field.name,
        'dim': result.n,
        'probe': result.probe,
        'scanned': result.scanned,
        'violations': len(result.violations),
        'witnesses': len(result.witnesses),
        'findings': [
            {
                'index': f.index,
                'matrix': [list(row) for row in f.matrix],
                'kind': f.kind,
                'check': f.check,
                'detail': f.detail,
            }
            for f in result.findings
        ],
    }
