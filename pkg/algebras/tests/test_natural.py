from django.test import SimpleTestCase

from algebras.services.algebra import EvolutionAlgebra, make_example, triangular_index
from algebras.services.budget import Budget
from algebras.services.errors import BudgetExceededError, InvariantViolation, UndecidedError, UnsupportedEnumerationError
from algebras.services.exactalg import FieldSpec
from algebras.services.natural import (
    BasisClass,
    NaturalBasisWitness,
    Verdict,
    annihilator_of,
    decide_evolution_ideal,
    enumerate_evolution_ideals,
    enumerate_natural_bases,
    extension_condition,
    extension_witness,
    find_natural_basis,
    has_natural_basis_with_nonzero_squares,
    has_unique_natural_basis,
    is_evolution_ideal,
    is_evolution_subalgebra,
    is_n_natural,
    is_natural_element,
    is_orthogonal_bipartite,
    minimal_evolution_ideals,
    n_natural_certificate,
    natural_bases_of,
    natural_idempotents,
    naturality_classification,
    orthogonal_complement,
    property_2LI,
    property_mLI,
    ramification_depth,
    ramifies,
    separates,
    separation_projections,
)

GF2 = FieldSpec.prime(2)
GF3 = FieldSpec.prime(3)
GF5 = FieldSpec.prime(5)
Q = FieldSpec.rationals()


class TestFindNaturalBasis(SimpleTestCase):
    """Test natural-basis detection inside subspaces"""

    def setUp(self):
        self.A4 = make_example('four_dim_nonsimple_minimal', GF5)
        self.u = self.A4.element((1, 1, 0, 0))
        self.w = self.A4.element((0, 0, 1, 1))
        self.I = self.A4.span([self.u, self.w])

    def test_minimal_ideal_has_natural_basis(self):
        """Test the minimal ideal of A_4 is an evolution ideal"""
        witness = find_natural_basis(self.A4, self.I)
        self.assertIsNotNone(witness)
        self.assertEqual(len(witness.vectors), 2)
        self.assertFalse(witness.of_algebra)
        self.assertEqual(decide_evolution_ideal(self.A4, self.I), Verdict.YES)
        self.assertTrue(is_evolution_ideal(self.A4, self.I))

    def test_other_natural_bases_of_the_ideal(self):
        """Test u + 2w and 2u + w also form a natural basis of the ideal"""
        f = self.A4.field
        a = f.add_vectors(self.u, f.scale_vector(2, self.w))
        b = f.add_vectors(f.scale_vector(2, self.u), self.w)
        NaturalBasisWitness(self.A4, (a, b), self.I)
        NaturalBasisWitness(self.A4, (self.u, self.w), self.I)

    def test_witness_checks_orthogonality(self):
        """Test a witness refuses non-orthogonal vectors"""
        D = make_example('diag', GF3, 2)
        with self.assertRaises(InvariantViolation):
            NaturalBasisWitness(D, ((1, 1), (1, 0)), D.full_space())

    def test_subspace_without_natural_basis(self):
        """Test a plane of diag(3) with no orthogonal basis"""
        D = make_example('diag', GF3, 3)
        U = D.span([(1, 1, 0), (0, 1, 1)])
        self.assertIsNone(find_natural_basis(D, U))
        self.assertEqual(decide_evolution_ideal(D, U), Verdict.NO)

    def test_rationals_undecided(self):
        """Test an inconclusive search over Q raises UndecidedError"""
        D = make_example('diag', Q, 3)
        U = D.span([(1, 1, 0), (0, 1, 1)])
        with self.assertRaises(UndecidedError):
            find_natural_basis(D, U)

    def test_rationals_sufficient_check(self):
        """Test an orthogonal canonical basis settles the question over Q"""
        A = make_example('four_dim_nonsimple_minimal', Q)
        I = A.span([(1, 1, 0, 0), (0, 0, 1, 1)])
        self.assertEqual(decide_evolution_ideal(A, I), Verdict.YES)

    def test_evolution_subalgebra(self):
        """Test a line spanned by an idempotent is an evolution subalgebra"""
        D = make_example('diag', GF3, 2)
        self.assertTrue(is_evolution_subalgebra(D, D.span([(1, 1)])))


class TestEvolutionIdeals(SimpleTestCase):
    """Test evolution-ideal enumeration and extension"""

    def test_diag_evolution_ideals(self):
        """Test every ideal of diag(2) is an evolution ideal"""
        D = make_example('diag', GF3, 2)
        self.assertEqual(len(enumerate_evolution_ideals(D)), 4)
        self.assertEqual(minimal_evolution_ideals(D), [D.span([(0, 1)]), D.span([(1, 0)])])

    def test_refused_over_rationals(self):
        """Test enumeration refuses over Q"""
        with self.assertRaises(UnsupportedEnumerationError):
            enumerate_evolution_ideals(make_example('diag', Q, 2))

    def test_extension_condition(self):
        """Test a coordinate line of diag(2) extends to a natural basis"""
        D = make_example('diag', GF3, 2)
        self.assertTrue(extension_condition(D, D.span([(1, 0)])))
        witness = extension_witness(D, D.span([(1, 0)]))
        self.assertEqual(witness.vectors, ((1, 0), (0, 1)))
        self.assertTrue(witness.of_algebra)


class TestNaturalBases(SimpleTestCase):
    """Test enumeration and uniqueness of natural bases"""

    def test_zero_algebra_classes(self):
        """Test the three natural basis classes of zero(2) over GF(2)"""
        Z = make_example('zero', GF2, 2)
        classes = enumerate_natural_bases(Z)
        self.assertEqual(len(classes), 3)
        self.assertFalse(has_unique_natural_basis(Z))
        self.assertFalse(has_natural_basis_with_nonzero_squares(Z))

    def test_diag_unique(self):
        """Test diag(2) has only its defining basis"""
        D = make_example('diag', GF3, 2)
        self.assertEqual(enumerate_natural_bases(D), [BasisClass(((0, 1), (1, 0)))])
        self.assertTrue(has_unique_natural_basis(D))
        self.assertTrue(property_2LI(D))
        self.assertEqual(property_mLI(D), 2)

    def test_unique_without_pairwise_independence(self):
        """Test e1^2 = e2^2 = e1 has a unique natural basis over GF(2) only"""
        A = EvolutionAlgebra.from_rows(GF2, [[1, 0], [1, 0]])
        self.assertFalse(property_2LI(A))
        self.assertEqual(property_mLI(A), 1)
        self.assertTrue(has_unique_natural_basis(A))
        B = EvolutionAlgebra.from_rows(GF5, [[1, 0], [1, 0]])
        self.assertFalse(has_unique_natural_basis(B))
        NaturalBasisWitness(B, ((1, 1), (4, 1)), B.full_space())

    def test_degenerate_square(self):
        """Test an algebra whose every natural basis has a zero square"""
        A = EvolutionAlgebra.from_rows(GF3, [[1, 0], [0, 0]])
        self.assertFalse(has_natural_basis_with_nonzero_squares(A))
        self.assertTrue(has_natural_basis_with_nonzero_squares(make_example('diag', GF3, 2)))

    def test_basis_class_normalizes(self):
        """Test classes ignore order and scaling"""
        D = make_example('diag', GF5, 2)
        self.assertEqual(BasisClass.of(D, [(0, 3), (2, 0)]).vectors, ((0, 1), (1, 0)))

    def test_scope_budget(self):
        """Test enumeration refuses beyond the configured dimension"""
        with self.assertRaises(BudgetExceededError):
            enumerate_natural_bases(make_example('diag', GF3, 5), Budget())


class TestNaturalElements(SimpleTestCase):
    """Test natural elements and idempotents"""

    def setUp(self):
        self.D = make_example('diag', GF3, 2)

    def test_natural_elements(self):
        """Test which elements of diag(2) belong to a natural basis"""
        self.assertTrue(is_natural_element(self.D, (2, 0)))
        self.assertFalse(is_natural_element(self.D, (1, 1)))
        self.assertFalse(is_natural_element(self.D, (0, 0)))

    def test_natural_elements_over_rationals(self):
        """Test multiples of basis vectors are natural over Q, others undecided"""
        D = make_example('diag', Q, 2)
        self.assertTrue(is_natural_element(D, (3, 0)))
        with self.assertRaises(UndecidedError):
            is_natural_element(D, (1, 1))

    def test_natural_idempotents(self):
        """Test (1,1) is idempotent but not natural"""
        self.assertEqual(natural_idempotents(self.D), [(0, 1), (1, 0)])

    def test_naturality_classification(self):
        """Test the incidence counts of diag(2)"""
        report = naturality_classification(self.D)
        self.assertEqual(report.surnatural, 2)
        self.assertIsNone(report.innatural)
        self.assertIsNone(report.binatural)
        self.assertEqual(report.natural_counts, {2: 1})
        self.assertEqual(report.conatural_counts, {1: 2, 0: 1})

    def test_classification_without_idempotents(self):
        """Test A_Z3 has no idempotents in any natural basis"""
        report = naturality_classification(make_example('z3_counterexample'))
        self.assertEqual(report.surnatural, 0)
        self.assertIsNone(report.innatural)


class TestSeparationAndComplements(SimpleTestCase):
    """Test separation, orthogonal bipartitions and complements"""

    def setUp(self):
        self.D = make_example('diag', GF3, 2)

    def test_separates(self):
        """Test coordinate splits of the defining basis"""
        basis = self.D.basis()
        self.assertTrue(separates(self.D, basis, (1, 0), (0, 2)))
        self.assertFalse(separates(self.D, basis, (1, 1), (1, 0)))

    def test_orthogonal_bipartite(self):
        """Test orthogonal bipartitions of a basis"""
        self.assertTrue(is_orthogonal_bipartite(self.D, [(1, 0)], [(0, 1)]))
        self.assertFalse(is_orthogonal_bipartite(self.D, [(1, 1)], [(0, 1)]))
        self.assertFalse(is_orthogonal_bipartite(self.D, [], [(1, 0), (0, 1)]))

    def test_annihilator_and_complement(self):
        """Test the complement of a coordinate line"""
        D = make_example('diag', Q, 2)
        E = D.span([(1, 0)])
        self.assertEqual(annihilator_of(D, E), D.span([(0, 1)]))
        self.assertEqual(orthogonal_complement(D, E), D.span([(0, 1)]))

    def test_no_complement(self):
        """Test an idempotent line of diag(2) with a zero annihilator"""
        E = self.D.span([(1, 1)])
        self.assertTrue(annihilator_of(self.D, E).is_zero)
        self.assertIsNone(orthogonal_complement(self.D, E))

    def test_n_natural(self):
        """Test e1 is 1-natural in diag(2) and A_Z3 has no n-natural element"""
        self.assertTrue(is_n_natural(self.D, (1, 0), 1))
        self.assertFalse(is_n_natural(self.D, (1, 0), 2))
        self.assertFalse(is_n_natural(make_example('z3_counterexample'), (1, 0), 1))

    def test_n_natural_certificate(self):
        """Test e1 swaps into the basis of its line and the complement has a natural basis"""
        certificate = n_natural_certificate(self.D, (1, 0))
        self.assertEqual(certificate.inner, ((1, 0),))
        self.assertEqual(certificate.outer, ((0, 1),))
        self.assertTrue(certificate.natural)
        self.assertTrue(is_n_natural(self.D, (1, 0), len(certificate.inner)))
        self.assertIsNone(n_natural_certificate(make_example('z3_counterexample'), (1, 0)))
        self.assertIsNone(n_natural_certificate(self.D, (0, 0)))
        self.assertEqual(natural_bases_of(self.D, self.D.full_space()), [((0, 1), (1, 0))])

    def test_separation_projections(self):
        """Test e2 has no coordinate along e1 in the natural basis of diag(2)"""
        projections = separation_projections(self.D, (1, 0), (0, 1))
        self.assertEqual([c for _, c in projections], [0])
        self.assertEqual([c for _, c in separation_projections(self.D, (2, 0), (1, 1))], [1])
        self.assertEqual(separation_projections(self.D, (1, 1), (0, 1)), [])


class TestRamification(SimpleTestCase):
    """Test ramification through a cycle of squares"""

    def setUp(self):
        self.T = make_example('triangular', GF3, 2, 'cyclic')
        self.e21 = self.T.basis_vector(triangular_index(2, 1))
        self.e22 = self.T.basis_vector(triangular_index(2, 2))

    def test_ramifies(self):
        """Test e21 reaches e22 in one step and itself in two"""
        self.assertTrue(ramifies(self.T, [self.e21], [self.e22]))
        self.assertFalse(ramifies(self.T, [self.e21], [self.e21]))
        self.assertTrue(ramifies(self.T, [self.e21], [self.e21], iterations=2))
        self.assertEqual(ramification_depth(self.T, [self.e21], [self.e21], 3), 2)

    def test_inside_ramification(self):
        """Test multipliers drawn from B only"""
        self.assertTrue(ramifies(self.T, [self.e21], [self.e22], inside=True))
        self.assertIsNone(ramification_depth(self.T, [self.e21], [self.e21], 3, inside=True))

    def test_homogeneous_ramification(self):
        """Test one multiplier set D = {e1, e2} with different d_t reaches e2(e1 e1)"""
        A = make_example('z3_counterexample')
        B = [(1, 0), (0, 1)]
        self.assertEqual(A.product((0, 1), A.product((1, 0), (1, 0))), (2, 2))
        for inside in (False, True):
            self.assertTrue(ramifies(A, B, [(2, 2)], iterations=2, inside=inside), inside)
            self.assertTrue(ramifies(A, B, [(2, 2)], iterations=2, inside=inside, homogeneous=True), inside)

    def test_iterations_must_be_positive(self):
        """Test zero iterations are refused"""
        with self.assertRaises(ValueError):
            ramifies(self.T, [self.e21], [self.e22], iterations=0)
