from django.test import SimpleTestCase

from algebras.services.algebra import direct_sum, make_example
from algebras.services.errors import HypothesisError, UnsupportedEnumerationError
from algebras.services.exactalg import FieldSpec
from algebras.services.socle import (
    a_ev_socle,
    a_socle,
    coherent_choice_check,
    ev_socle,
    generating_idempotent,
    ideally_simple_predicates,
    idempotent_generation_predicates,
    partitions,
    soc_evsoc_probe,
    socle,
    theorem108_report,
    to_json,
    unique_generator,
)

GF2 = FieldSpec.prime(2)
GF3 = FieldSpec.prime(3)
GF5 = FieldSpec.prime(5)
Q = FieldSpec.rationals()


class TestSocles(SimpleTestCase):
    """Test socle and evolution socle"""

    def setUp(self):
        self.D = make_example('diag', GF3, 2)
        self.e1 = self.D.span([(1, 0)])

    def test_diag_socles(self):
        """Test both socles of diag(2) are the whole algebra"""
        self.assertTrue(socle(self.D).is_full)
        self.assertTrue(ev_socle(self.D).is_full)
        self.assertTrue(soc_evsoc_probe(self.D).soc_in_evsoc)

    def test_simple_algebra_socle(self):
        """Test a simple algebra is its own socle"""
        A = make_example('z3_counterexample')
        self.assertTrue(socle(A).is_full)

    def test_relative_socles(self):
        """Test A-socle and A-evsocle of a coordinate line"""
        self.assertEqual(a_socle(self.D, self.e1), self.e1)
        self.assertEqual(a_ev_socle(self.D, self.e1), self.e1)
        with self.assertRaises(HypothesisError):
            a_socle(self.D, self.D.full_space())
        with self.assertRaises(HypothesisError):
            a_ev_socle(self.D, self.D.full_space())


class TestPartitions(SimpleTestCase):
    """Test the splits of the minimal ideals"""

    def test_diag_partitions(self):
        """Test every minimal ideal of diag(2) is natural"""
        D = make_example('diag', GF3, 2)
        report = partitions(D)
        self.assertEqual(report.sdni, 2)
        self.assertEqual(report.msdnonni, 0)
        self.assertEqual(report.non_nat_min, ())
        self.assertEqual(report.in_min, ())
        self.assertTrue(report.faithful)
        self.assertEqual(report.natural_idempotents, ((0, 1), (1, 0)))

    def test_counterexample_partitions(self):
        """Test A_Z3 is one non-natural minimal ideal without a generator"""
        A = make_example('z3_counterexample')
        report = partitions(A)
        self.assertEqual(report.sdni, 0)
        self.assertEqual(report.non_nat_min, (A.full_space(),))
        self.assertEqual(report.ex_min, (A.full_space(),))
        self.assertIsNone(report.generators[A.full_space()])
        self.assertTrue(report.faithful)

    def test_refused_over_rationals(self):
        """Test partitions need enumeration"""
        with self.assertRaises(UnsupportedEnumerationError):
            partitions(make_example('diag', Q, 2))

    def test_to_json(self):
        """Test the JSON view of a socle report"""
        data = to_json(partitions(make_example('diag', GF3, 2)))
        self.assertEqual(data['soc_basis'], [['1', '0'], ['0', '1']])
        self.assertEqual(data['sdni'], 2)
        self.assertTrue(data['faithful'])
        self.assertEqual(data['witnesses'][0], {'ideal': [['0', '1']], 'idempotent': ['0', '1']})


class TestGenerators(SimpleTestCase):
    """Test idempotent generators and coherent choices"""

    def setUp(self):
        self.D = make_example('diag', GF3, 2)

    def test_generating_idempotent(self):
        """Test generators of ideals of diag(2)"""
        self.assertEqual(generating_idempotent(self.D, self.D.span([(1, 0)])), (1, 0))
        self.assertEqual(generating_idempotent(self.D, self.D.full_space()), (1, 1))
        self.assertEqual(generating_idempotent(self.D, self.D.zero_space()), (0, 0))
        self.assertIsNone(generating_idempotent(make_example('z3_counterexample'),
                                                make_example('z3_counterexample').full_space()))

    def test_unique_generator(self):
        """Test the natural idempotent of a line"""
        self.assertEqual(unique_generator(self.D, self.D.span([(2, 0)])), (1, 0))
        with self.assertRaises(HypothesisError):
            unique_generator(self.D, self.D.span([(1, 1)]))
        with self.assertRaises(HypothesisError):
            unique_generator(self.D, self.D.full_space())

    def test_coherent_choice(self):
        """Test picking e1 + e2 in the minimal ideal of A_4"""
        A = make_example('four_dim_nonsimple_minimal', GF5)
        I = A.span([(1, 1, 0, 0), (0, 0, 1, 1)])
        result = coherent_choice_check(A, {I: (1, 1, 0, 0)})
        self.assertTrue(result.valid)
        self.assertEqual(result.unstable_count, 1)
        self.assertEqual(result.bound, 1)
        self.assertTrue(result.prop82_bound_holds)
        with self.assertRaises(HypothesisError):
            coherent_choice_check(A, {})


class TestSimplicityPredicates(SimpleTestCase):
    """Test ideal simplicity of minimal ideals and idempotent generation"""

    def test_diag(self):
        """Test diag(2) satisfies every predicate"""
        D = make_example('diag', GF3, 2)
        report = ideally_simple_predicates(D)
        self.assertTrue(report.minimal_ideally_simple)
        self.assertTrue(report.evolution_minimal_ideally_simple)
        self.assertTrue(report.with_nonzero_product)
        generation = idempotent_generation_predicates(D)
        self.assertTrue(generation.minimal)
        self.assertTrue(generation.evolution)

    def test_zero_algebra(self):
        """Test lines of the zero algebra are ideally simple with zero product"""
        report = ideally_simple_predicates(make_example('zero', GF2, 2))
        self.assertTrue(report.minimal_ideally_simple)
        self.assertTrue(report.evolution_minimal_ideally_simple)
        self.assertFalse(report.with_nonzero_product)

    def test_minimal_ideal_with_proper_ideal(self):
        """Test the minimal ideal of A_4 is not ideally simple"""
        A = make_example('four_dim_nonsimple_minimal', GF5)
        self.assertFalse(ideally_simple_predicates(A).minimal_ideally_simple)

    def test_counterexample_generation(self):
        """Test A_Z3 has no idempotent generators"""
        generation = idempotent_generation_predicates(make_example('z3_counterexample'))
        self.assertFalse(generation.minimal)
        self.assertFalse(generation.evolution)


class TestSocleDecomposition(SimpleTestCase):
    """Test the decomposition of the socle into natural and generated parts"""

    def test_diag_decomposes(self):
        """Test diag(3) is all natural"""
        report = theorem108_report(make_example('diag', GF3, 3))
        self.assertEqual(report.s, 3)
        self.assertTrue(report.natural_sum_matches)
        self.assertTrue(report.decomposition_holds)
        self.assertEqual(report.unwitnessed, ())
        self.assertEqual(report.fseani_by_dim, {})

    def test_unwitnessed_block(self):
        """Test the A_Z3 block of diag(1) + A_Z3 has no generating idempotent"""
        S = direct_sum(make_example('diag', GF3, 1), make_example('z3_counterexample'))
        report = theorem108_report(S)
        self.assertEqual(report.s, 1)
        self.assertEqual(report.unwitnessed, (S.span([(0, 1, 0), (0, 0, 1)]),))
        self.assertFalse(report.decomposition_holds)
        self.assertTrue(report.hypotheses_hold)
        self.assertFalse(report.fseani_by_dim[2].is_fseani)
