from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from algebras.services.algebra import make_example
from algebras.services.budget import Budget
from algebras.services.errors import BudgetExceededError, DimensionMismatchError, UnsupportedEnumerationError
from algebras.services.exactalg import FieldSpec, Subspace
from algebras.services.ideals import (
    autoann,
    enumerate_ideals,
    ideal_closure,
    ideal_product,
    is_degeneracy_witness,
    is_ideal,
    is_ideal_of,
    is_minimal_ideal,
    is_nondegenerate_basis,
    is_nondegenerate_left,
    is_perfect,
    is_semiprime,
    is_simple,
    is_simple_subalgebra,
    is_subalgebra,
    lann,
    minimal_ideals,
    relative_ideal_closure,
    subalgebra_closure,
)

GF2 = FieldSpec.prime(2)
GF3 = FieldSpec.prime(3)
GF5 = FieldSpec.prime(5)
Q = FieldSpec.rationals()


class TestClosures(SimpleTestCase):
    """Test ideal and subalgebra generation"""

    def setUp(self):
        self.A4 = make_example('four_dim_nonsimple_minimal', GF5)
        self.u = (1, 1, 0, 0)
        self.w = (0, 0, 1, 1)

    def test_ideal_closure_of_basis_vector(self):
        """Test the ideal generated by e1 in A_4"""
        I = ideal_closure(self.A4, [(1, 0, 0, 0)])
        self.assertEqual(I, self.A4.span([(1, 0, 0, 0), self.u, self.w]))
        self.assertTrue(is_ideal(self.A4, I))

    def test_ideal_closure_over_rationals(self):
        """Test closures are exact over Q"""
        A = make_example('four_dim_nonsimple_minimal', Q)
        I = ideal_closure(A, [(1, 1, 0, 0)])
        self.assertEqual(I, A.span([(1, 1, 0, 0), (0, 0, 1, 1)]))

    def test_subalgebra_closure(self):
        """Test an idempotent spans a subalgebra that is not an ideal"""
        D = make_example('diag', GF3, 2)
        S = subalgebra_closure(D, [(1, 1)])
        self.assertEqual(S.dim, 1)
        self.assertTrue(is_subalgebra(D, S))
        self.assertFalse(is_ideal(D, S))

    def test_relative_ideal_closure(self):
        """Test the ideal generated inside the minimal ideal of A_4"""
        I = self.A4.span([self.u, self.w])
        J = relative_ideal_closure(self.A4, I, [(1, 1, 1, 1)])
        self.assertEqual(J.dim, 1)
        self.assertTrue(is_ideal_of(self.A4, I, J))
        self.assertFalse(is_ideal(self.A4, J))

    def test_wrong_ambient_dimension(self):
        """Test that subspaces of the wrong ambient space are refused"""
        D = make_example('diag', GF3, 2)
        with self.assertRaises(DimensionMismatchError):
            is_ideal(D, Subspace.full(GF3, 3))

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(0, 2), min_size=3, max_size=3))
    def test_closure_is_least_ideal(self, coords):
        """The generated ideal contains the generator and is an ideal"""
        A = make_example('triangular', GF3, 2, 'cyclic')
        I = ideal_closure(A, [coords])
        self.assertTrue(is_ideal(A, I))
        self.assertIn(A.element(coords), I)
        self.assertTrue(ideal_product(A, A.full_space(), I).issubspace(I))


class TestEnumerateIdeals(SimpleTestCase):
    """Test ideal enumeration and minimal ideals"""

    def test_diag_ideals(self):
        """Test the four ideals of diag(2)"""
        D = make_example('diag', GF3, 2)
        ideals = enumerate_ideals(D, 'all')
        self.assertEqual(len(ideals), 4)
        self.assertTrue(ideals[0].is_zero)
        self.assertTrue(ideals[-1].is_full)
        self.assertEqual(minimal_ideals(D), [D.span([(0, 1)]), D.span([(1, 0)])])

    def test_zero_algebra_minimal_ideals(self):
        """Test every line of the zero algebra is a minimal ideal"""
        Z = make_example('zero', GF2, 2)
        self.assertEqual(len(minimal_ideals(Z)), 3)
        self.assertEqual(len(enumerate_ideals(Z, 'all')), 5)

    def test_unique_minimal_ideal_of_a4(self):
        """Test span{e1+e2, e3+e4} is the only minimal ideal of A_4"""
        A = make_example('four_dim_nonsimple_minimal', GF5)
        I = A.span([(1, 1, 0, 0), (0, 0, 1, 1)])
        self.assertEqual(minimal_ideals(A), [I])
        self.assertTrue(is_minimal_ideal(A, I))

    def test_triangular_blocks_are_minimal(self):
        """Test each cyclic block of the triangular algebra is a minimal ideal"""
        T = make_example('triangular', GF5, 3, 'cyclic')
        minimal = minimal_ideals(T)
        for block in ([(1, 0, 0, 0, 0, 0)],
                      [(0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)],
                      [(0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)]):
            self.assertIn(T.span(block), minimal)

    def test_unknown_mode(self):
        """Test an unknown mode raises ValueError"""
        with self.assertRaises(ValueError):
            enumerate_ideals(make_example('diag', GF3, 2), 'some')

    def test_refusals(self):
        """Test enumeration refuses over Q and beyond the budget"""
        with self.assertRaises(UnsupportedEnumerationError):
            enumerate_ideals(make_example('diag', Q, 2))
        with self.assertRaises(BudgetExceededError):
            enumerate_ideals(make_example('diag', GF3, 3), 'all', Budget(max_subspaces=10))


class TestStructuralPredicates(SimpleTestCase):
    """Test simplicity, semiprimality, degeneracy and perfection"""

    def test_z3_counterexample(self):
        """Test A_Z3 is simple, semiprime and non-degenerate"""
        A = make_example('z3_counterexample')
        self.assertTrue(is_simple(A))
        self.assertTrue(is_semiprime(A))
        self.assertTrue(is_nondegenerate_left(A))
        self.assertTrue(is_nondegenerate_basis(A))
        self.assertTrue(is_perfect(A))

    def test_zero_algebra(self):
        """Test the zero algebra fails every predicate"""
        Z = make_example('zero', GF2, 2)
        self.assertFalse(is_simple(Z))
        self.assertFalse(is_semiprime(Z))
        self.assertFalse(is_nondegenerate_left(Z))
        self.assertFalse(is_nondegenerate_basis(Z))
        self.assertFalse(is_perfect(Z))
        self.assertTrue(is_degeneracy_witness(Z, (1, 0)))
        self.assertFalse(is_degeneracy_witness(Z, (0, 0)))

    def test_diag_not_simple(self):
        """Test diag(2) is semiprime but not simple"""
        D = make_example('diag', GF3, 2)
        self.assertFalse(is_simple(D))
        self.assertTrue(is_semiprime(D))
        self.assertTrue(is_simple_subalgebra(D, D.span([(1, 0)])))

    def test_minimal_ideal_of_a4_not_simple(self):
        """Test the minimal ideal of A_4 has a proper ideal of its own"""
        A = make_example('four_dim_nonsimple_minimal', GF5)
        I = A.span([(1, 1, 0, 0), (0, 0, 1, 1)])
        self.assertFalse(is_simple_subalgebra(A, I))

    def test_simplicity_needs_enumeration_over_q(self):
        """Test simplicity over Q refuses instead of guessing"""
        with self.assertRaises(UnsupportedEnumerationError):
            is_simple(make_example('z3_counterexample', Q))


class TestAnnihilators(SimpleTestCase):
    """Test left annihilators of families of sets"""

    def setUp(self):
        self.D = make_example('diag', GF3, 2)

    def test_lann(self):
        """Test the elements of A killing e1"""
        result = lann(self.D, self.D.full_space(), [[(1, 0)]])
        self.assertEqual(result, frozenset({(0, 0), (0, 1), (0, 2)}))

    def test_lann_of_explicit_set(self):
        """Test lann over an explicit element set"""
        result = lann(self.D, [(1, 0), (1, 1)], [[(0, 1)]])
        self.assertEqual(result, frozenset({(1, 0)}))

    def test_autoann(self):
        """Test orthogonal singletons annihilate each other"""
        self.assertEqual(autoann(self.D, [[(1, 0)], [(0, 1)]]), frozenset({(1, 0), (0, 1)}))
        self.assertEqual(autoann(self.D, [[(1, 1)], [(0, 1)]]), frozenset())

    def test_autoann_of_single_member(self):
        """Test a lone member set has nothing else to kill"""
        self.assertEqual(autoann(self.D, [[(1, 0)]]), frozenset({(1, 0)}))

    @settings(max_examples=40, deadline=None)
    @given(st.lists(
        st.frozensets(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=3),
        min_size=1, max_size=4, unique=True,
    ))
    def test_autoann_is_union_of_lann(self, family):
        """autoann is the union over U of lann_U of the remaining member sets"""
        A = make_example('triangular', GF3, 2, 'cyclic')
        expected = frozenset().union(*(lann(A, U, [F for F in family if F != U]) for U in family))
        self.assertEqual(autoann(A, family), expected)
        direct = {
            e for E in family for e in E
            if all(A.product(e, f) == (0, 0, 0) for F in family if F != E for f in F)
        }
        self.assertEqual(autoann(A, family), direct)
