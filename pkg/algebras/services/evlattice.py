"""
Finite binary related sets (brsets), the ideal lattice and the
evolution-ideal poset of an algebra, the evolution bounds MinEvid/MaxEvid
and the lattices definable inside them.

A brset is just a finite set with an arbitrary relation: no order axioms are
assumed, so infima and suprema are sets.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .algebra import EvolutionAlgebra
from .budget import Budget, resolve
from .errors import HypothesisError, InvariantViolation
from .exactalg import Subspace, enumerate_subspaces, enumerate_vectors, maximal_subspaces, minimal_subspaces
from .ideals import enumerate_ideals
from .natural import enumerate_evolution_ideals

logger = logging.getLogger(__name__)

SubsetSpec = Union[Subspace, Iterable[Sequence]]


@dataclass(frozen=True)
class FiniteBrset:
    elements: Tuple
    relation: Tuple[Tuple[bool, ...], ...]

    @classmethod
    def from_relation(cls, elements: Iterable, related: Callable) -> 'FiniteBrset':
        elements = tuple(elements)
        relation = tuple(tuple(bool(related(a, b)) for b in elements) for a in elements)
        return cls(elements, relation)

    def index(self, x) -> int:
        try:
            return self.elements.index(x)
        except ValueError:
            raise HypothesisError(f"{x} is not an element of the brset") from None

    def related(self, a, b) -> bool:
        return self.relation[self.index(a)][self.index(b)]

    def restrict(self, subset: Iterable) -> 'FiniteBrset':
        keep = [self.index(x) for x in subset]
        return FiniteBrset(
            tuple(self.elements[i] for i in keep),
            tuple(tuple(self.relation[i][j] for j in keep) for i in keep),
        )

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class Bounds:
    lower: FrozenSet
    upper: FrozenSet
    infima: FrozenSet
    suprema: FrozenSet


def bounds(S: Iterable, B: FiniteBrset) -> Bounds:
    """Lower and upper bounds of S, and the greatest lower / least upper ones, under B's relation."""
    S = list(S)
    R = B.related
    lower = frozenset(a for a in B.elements if all(R(a, x) for x in S))
    upper = frozenset(a for a in B.elements if all(R(x, a) for x in S))
    infima = frozenset(a for a in lower if all(R(b, a) for b in lower))
    suprema = frozenset(a for a in upper if all(R(a, b) for b in upper))
    return Bounds(lower, upper, infima, suprema)


def inclusion_brset(spaces: Iterable[Subspace]) -> FiniteBrset:
    return FiniteBrset.from_relation(spaces, lambda a, b: a.issubspace(b))


@dataclass(frozen=True)
class IdealLattice:
    algebra: EvolutionAlgebra
    brset: FiniteBrset

    @property
    def elements(self) -> Tuple[Subspace, ...]:
        return self.brset.elements

    def inf(self, X: Subspace, Y: Subspace) -> Subspace:
        return X.intersect(Y)

    def sup(self, X: Subspace, Y: Subspace) -> Subspace:
        """The sum of two ideals is an ideal, the one they generate."""
        return X.sum(Y)


def ideal_lattice(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> IdealLattice:
    return IdealLattice(A, inclusion_brset(enumerate_ideals(A, 'all', budget)))


def evolution_ideal_poset(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> FiniteBrset:
    return inclusion_brset(enumerate_evolution_ideals(A, budget))


def _as_space(A: EvolutionAlgebra, S: SubsetSpec) -> Subspace:
    return S if isinstance(S, Subspace) else A.span(A.element(s) for s in S)


def evido(A: EvolutionAlgebra, S: SubsetSpec, budget: Optional[Budget] = None) -> List[Subspace]:
    """Evolution ideals containing S."""
    U = _as_space(A, S)
    return [E for E in enumerate_evolution_ideals(A, budget) if U.issubspace(E)]


def evidb(A: EvolutionAlgebra, S: SubsetSpec, budget: Optional[Budget] = None) -> List[Subspace]:
    """Evolution ideals contained in S, a subspace or a finite set of elements."""
    ideals = enumerate_evolution_ideals(A, budget)
    if isinstance(S, Subspace):
        return [E for E in ideals if E.issubspace(S)]
    members = {A.element(s) for s in S}
    return [E for E in ideals if all(v in members for v in enumerate_vectors(E, budget=budget))]


def min_evid(A: EvolutionAlgebra, S: SubsetSpec, budget: Optional[Budget] = None) -> List[Subspace]:
    return minimal_subspaces(evido(A, S, budget))


def max_evid(A: EvolutionAlgebra, S: SubsetSpec, budget: Optional[Budget] = None) -> List[Subspace]:
    return maximal_subspaces(evidb(A, S, budget))


def minevid(A: EvolutionAlgebra, S: SubsetSpec, budget: Optional[Budget] = None) -> Optional[Subspace]:
    found = min_evid(A, S, budget)
    return found[0] if len(found) == 1 else None


def maxevid(A: EvolutionAlgebra, S: SubsetSpec, budget: Optional[Budget] = None) -> Optional[Subspace]:
    found = max_evid(A, S, budget)
    return found[0] if len(found) == 1 else None


Pair = Tuple[Subspace, Subspace]


@dataclass(frozen=True)
class EvLatticeStructure:
    base: IdealLattice
    sub: Tuple[Subspace, ...]
    evinf: Dict[Pair, Tuple[Subspace, ...]]
    evsup: Dict[Pair, Tuple[Subspace, ...]]


def _pairs(spaces: Sequence[Subspace]) -> Iterable[Pair]:
    return itertools.combinations(sorted(spaces, key=lambda s: s.sort_key), 2)


def _is_antichain(spaces: Sequence[Subspace]) -> bool:
    return not any(X != Y and X.issubspace(Y) for X in spaces for Y in spaces)


def evlattice_structure(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> EvLatticeStructure:
    """
    Evolution ideals over the ideal lattice, with evinf{X,Y} = MaxEvid(X n Y)
    and evsup{X,Y} = MinEvid(X u Y).
    """
    sub = tuple(enumerate_evolution_ideals(A, budget))
    evinf, evsup = {}, {}
    for X, Y in _pairs(sub):
        evinf[(X, Y)] = tuple(max_evid(A, X.intersect(Y), budget))
        evsup[(X, Y)] = tuple(min_evid(A, X.sum(Y), budget))
        if not (_is_antichain(evinf[(X, Y)]) and _is_antichain(evsup[(X, Y)])):
            raise InvariantViolation("Evolution bounds are not antichains")
    return EvLatticeStructure(ideal_lattice(A, budget), sub, evinf, evsup)


def verify_evlattice(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> bool:
    """Every evinf lies below the intersection and every evsup above the sum."""
    structure = evlattice_structure(A, budget)
    for (X, Y), infs in structure.evinf.items():
        meet, join = X.intersect(Y), X.sum(Y)
        if not all(Z.issubspace(meet) for Z in infs) or not all(join.issubspace(Z) for Z in structure.evsup[(X, Y)]):
            logger.warning(f"{A}: evlattice laws fail for {X.basis} and {Y.basis}")
            return False
    return True


def lattice_breakups(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> List[Pair]:
    """Pairs of evolution ideals whose sum is not an evolution ideal."""
    evolution = set(enumerate_evolution_ideals(A, budget))
    return [(X, Y) for X, Y in _pairs(evolution) if X.sum(Y) not in evolution]


def lattice_breakdowns(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> List[Pair]:
    """Pairs of evolution ideals whose intersection is not an evolution ideal."""
    evolution = set(enumerate_evolution_ideals(A, budget))
    return [(X, Y) for X, Y in _pairs(evolution) if X.intersect(Y) not in evolution]


@dataclass(frozen=True)
class SemilatticedReport:
    inf_semilatticed: bool
    sup_semilatticed: bool

    @property
    def latticed(self) -> bool:
        return self.inf_semilatticed and self.sup_semilatticed


def semilatticed_predicates(A: EvolutionAlgebra, budget: Optional[Budget] = None) -> SemilatticedReport:
    """Whether MinEvid(S) and MaxEvid(S) are singletons for every subspace S."""
    inf_ok = sup_ok = True
    for S in enumerate_subspaces(A.field, A.n, budget):
        if inf_ok and len(min_evid(A, S, budget)) != 1:
            inf_ok = False
        if sup_ok and len(max_evid(A, S, budget)) != 1:
            sup_ok = False
        if not (inf_ok or sup_ok):
            break
    return SemilatticedReport(inf_ok, sup_ok)


@dataclass(frozen=True)
class DefinableLattice:
    elements: FrozenSet[Subspace]

    def _extremum(self, candidates: Iterable[Subspace], pick_greatest: bool) -> Optional[Subspace]:
        candidates = list(candidates)
        for c in candidates:
            if all((d.issubspace(c) if pick_greatest else c.issubspace(d)) for d in candidates):
                return c
        return None

    def meet(self, a: Subspace, b: Subspace) -> Optional[Subspace]:
        lower = [x for x in self.elements if x.issubspace(a) and x.issubspace(b)]
        return self._extremum(lower, pick_greatest=True)

    def join(self, a: Subspace, b: Subspace) -> Optional[Subspace]:
        upper = [x for x in self.elements if a.issubspace(x) and b.issubspace(x)]
        return self._extremum(upper, pick_greatest=False)

    def sorted_elements(self) -> List[Subspace]:
        return sorted(self.elements, key=lambda s: s.sort_key)


def _candidates(A: EvolutionAlgebra, S: SubsetSpec, direction: str, budget: Optional[Budget]) -> List[Subspace]:
    if direction == 'over':
        return evido(A, S, budget)
    if direction == 'below':
        return evidb(A, S, budget)
    raise ValueError(f"Unknown direction '{direction}' (expected 'over' or 'below')")


def _is_definable(A: EvolutionAlgebra, H: DefinableLattice, fronts) -> bool:
    for a, b in itertools.combinations(H.elements, 2):
        m, j = H.meet(a, b), H.join(a, b)
        if m is None or j is None:
            return False
        inf_front, sup_front = fronts(a, b)
        if m not in inf_front or j not in sup_front:
            return False
    return True


def definable_lattices(A: EvolutionAlgebra, S: SubsetSpec, direction: str = 'over',
                       size_limit: Optional[int] = None, budget: Optional[Budget] = None) -> List[DefinableLattice]:
    """
    Non-empty subsets H of Evido(S) (or Evidb(S)) that are lattices under
    inclusion whose meets lie in MaxEvid(a n b) and joins in MinEvid(a + b).
    """
    budget = resolve(budget)
    if size_limit is not None:
        budget = budget.with_overrides(definable_lattice_limit=size_limit)
    poset = _candidates(A, S, direction, budget)
    budget.check_definable(len(poset))
    cache: Dict[Pair, tuple] = {}

    def fronts(a, b):
        key = (a, b) if a.sort_key <= b.sort_key else (b, a)
        if key not in cache:
            cache[key] = (set(max_evid(A, a.intersect(b), budget)), set(min_evid(A, a.sum(b), budget)))
        return cache[key]

    found = []
    for mask in range(1, 2 ** len(poset)):
        H = DefinableLattice(frozenset(x for i, x in enumerate(poset) if mask >> i & 1))
        if _is_definable(A, H, fronts):
            found.append(H)
    logger.debug(f"{A}: {len(found)} definable lattices {direction} a set with {len(poset)} candidates")
    return found


def le_latt(L1: DefinableLattice, L2: DefinableLattice) -> bool:
    """L1 sits inside L2 and L2 keeps L1's meets and joins."""
    if not L1.elements <= L2.elements:
        return False
    return all(
        L1.meet(a, b) == L2.meet(a, b) and L1.join(a, b) == L2.join(a, b)
        for a, b in itertools.combinations(L1.elements, 2)
    )


def maximal_definable(A: EvolutionAlgebra, S: SubsetSpec, direction: str = 'over',
                      size_limit: Optional[int] = None, budget: Optional[Budget] = None) -> List[DefinableLattice]:
    lattices = definable_lattices(A, S, direction, size_limit, budget)
    return [
        L for L in lattices
        if not any(M != L and L.elements < M.elements and le_latt(L, M) for M in lattices)
    ]


def is_cut_of_unicity(A: EvolutionAlgebra, S: SubsetSpec, direction: str = 'over',
                      size_limit: Optional[int] = None, budget: Optional[Budget] = None) -> bool:
    return len(maximal_definable(A, S, direction, size_limit, budget)) == 1


@dataclass(frozen=True)
class UnicityReplay:
    cut_of_unicity: bool
    checked_pairs: int
    skipped_pairs: int
    violations: Tuple[Tuple[Subspace, Subspace, str], ...]


def _replay(A: EvolutionAlgebra, S: SubsetSpec, direction: str, budget: Optional[Budget],
            bridges_of: Callable[[Subspace, Subspace, FrozenSet[Subspace]], List[Subspace]]) -> UnicityReplay:
    cut = is_cut_of_unicity(A, S, direction, budget=budget)
    poset = _candidates(A, S, direction, resolve(budget))
    members = frozenset(poset)
    checked, skipped, violations = 0, 0, []
    for I, J in _pairs(poset):
        bridges = bridges_of(I, J, members)
        if not bridges:
            skipped += 1
            continue
        checked += 1
        if not cut:
            continue
        front = min_evid(A, I.sum(J), budget) if direction == 'over' else max_evid(A, I.intersect(J), budget)
        if len(front) != 1:
            violations.append((I, J, 'unique-front'))
        if len(bridges) != 1:
            violations.append((I, J, 'unique-bridge'))
    if violations:
        logger.warning(f"{A}: {len(violations)} unicity failures {direction} a cut of unicity")
    return UnicityReplay(cut, checked, skipped, tuple(violations))


def theorem33_replay(A: EvolutionAlgebra, S: SubsetSpec, direction: str = 'over',
                     budget: Optional[Budget] = None) -> UnicityReplay:
    """
    Over a cut of unicity, a pair I, J of evolution ideals containing S for
    which some R with S <= R lies in MaxEvid(I n J) has a unique
    MinEvid(I + J), and that R is the only one. Below, dually, R lies in
    MinEvid(I + J) inside S and MaxEvid(I n J) is unique.

    Pairs without such an R are skipped. Counts are reported off a cut too;
    violations only on one.
    """
    def bridges_of(I, J, members):
        front = max_evid(A, I.intersect(J), budget) if direction == 'over' else min_evid(A, I.sum(J), budget)
        return [R for R in front if R in members]

    return _replay(A, S, direction, budget, bridges_of)


def theorem35_replay(A: EvolutionAlgebra, S: SubsetSpec, direction: str = 'over',
                     budget: Optional[Budget] = None) -> UnicityReplay:
    """
    The finite-dimensional form: the hypothesis only asks for an evolution
    ideal R with S <= R <= I n J (below: I + J <= R <= S), and the tightest
    such R (largest over, smallest below) must be unique.
    """
    def bridges_of(I, J, members):
        if direction == 'over':
            meet = I.intersect(J)
            return maximal_subspaces(R for R in members if R.issubspace(meet))
        join = I.sum(J)
        return minimal_subspaces(R for R in members if join.issubspace(R))

    return _replay(A, S, direction, budget, bridges_of)


def tight_chain_check(B: FiniteBrset, chain: Sequence) -> bool:
    """
    Whether the chain a <= b_1, ..., b_n <= c admits no tightening: no l, m
    with l != a or m != c, a <= l <= every b_i and every b_i <= m <= c.
    Without middle elements a tightening is any l other than a and c with
    a <= l <= c.
    """
    if not chain:
        raise HypothesisError("A chain needs at least one element")
    R = B.related
    a, c, middle = chain[0], chain[-1], list(chain[1:-1])
    if not all(R(a, b) and R(b, c) for b in middle) or not R(a, c):
        raise HypothesisError("The elements do not form a chain")
    if not middle:
        return not any(l not in (a, c) and R(a, l) and R(l, c) for l in B.elements)
    lows = [l for l in B.elements if R(a, l) and all(R(l, b) for b in middle)]
    highs = [m for m in B.elements if R(m, c) and all(R(b, m) for b in middle)]
    return not any(l != a or m != c for l in lows for m in highs)


def _relation_graph(B: FiniteBrset) -> nx.DiGraph:
    G = nx.DiGraph()
    G.add_nodes_from(range(len(B)))
    for i, j in itertools.product(range(len(B)), repeat=2):
        if i != j and B.relation[i][j]:
            G.add_edge(i, j)
    return G


def covering_pairs(B: FiniteBrset) -> List[Tuple[int, int]]:
    """Index pairs of the Hasse diagram when B is acyclic, otherwise every related pair."""
    G = _relation_graph(B)
    if nx.is_directed_acyclic_graph(G):
        G = nx.transitive_reduction(G)
    return sorted(G.edges())


def to_dot(B: FiniteBrset, labels: Optional[Sequence[str]] = None, name: str = 'brset') -> str:
    """DOT digraph of B; for acyclic relations the edges are the covering pairs."""
    labels = list(labels) if labels is not None else [str(x) for x in B.elements]
    G = nx.DiGraph(name=name)
    for i, label in enumerate(labels):
        G.add_node(i, label=f'"{label}"')
    G.add_edges_from(covering_pairs(B))
    return nx.nx_pydot.to_pydot(G).to_string()


def subspace_label(U: Subspace) -> str:
    if U.is_zero:
        return '0'
    return 'span{' + ', '.join('(' + ','.join(U.field.format_vector(b)) + ')' for b in U.basis) + '}'
