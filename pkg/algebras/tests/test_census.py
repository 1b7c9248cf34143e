import pytest
from django.test import SimpleTestCase

from algebras.services.budget import Budget
from algebras.services.census import PROBES, VIOLATION, WITNESS, CensusResult, Finding, merge, run_census
from algebras.services.errors import BudgetExceededError, UnsupportedEnumerationError
from algebras.services.exactalg import FieldSpec

GF2 = FieldSpec.prime(2)
GF3 = FieldSpec.prime(3)
Q = FieldSpec.rationals()


class TestRunCensus(SimpleTestCase):
    """Test the census driver"""

    def test_probe_registry(self):
        """Test every probe is registered under its command-line name"""
        self.assertEqual(len(PROBES), 15)
        for name in ('prop41', 'thm-the', 'evlattice', 'minimal-oracle', 'prop107', 'prop70',
                     'soc-evsoc', 'breakup', 'semilatticed', 'thm-c', 'fseani', 'socle', 'thm88',
                     'separation', 'unicity'):
            self.assertIn(name, PROBES)

    def test_refusals(self):
        """Test unknown probes, infinite fields and oversized scans"""
        with self.assertRaises(ValueError):
            run_census(GF2, 2, 'nonsense')
        with self.assertRaises(UnsupportedEnumerationError):
            run_census(Q, 2, 'fseani')
        with self.assertRaises(BudgetExceededError):
            run_census(GF2, 2, 'fseani', Budget(max_scan_matrices=15))

    def test_progress_and_range(self):
        """Test the index range and the progress callback"""
        seen = []
        result = run_census(GF2, 2, 'thm-the', start=4, stop=10, progress=seen.append)
        self.assertEqual(result.scanned, 6)
        self.assertEqual(seen, [1, 2, 3, 4, 5, 6])

    def test_fseani_probe_finds_counterexample(self):
        """Test A_Z3 (index 49) is reported as simple without idempotent"""
        result = run_census(GF3, 2, 'fseani')
        self.assertEqual(result.scanned, 81)
        self.assertTrue(result.witnessed('simple-without-idempotent'))
        indices = [f.index for f in result.witnesses]
        self.assertIn(49, indices)
        finding = next(f for f in result.witnesses if f.index == 49)
        self.assertEqual(finding.matrix, (('1', '2'), ('1', '1')))

    def test_merge_matches_single_run(self):
        """Test chunked censuses merge to the single-range result"""
        whole = run_census(GF3, 2, 'fseani')
        parts = [run_census(GF3, 2, 'fseani', start=40, stop=81), run_census(GF3, 2, 'fseani', start=0, stop=40)]
        merged = merge(parts)
        self.assertEqual(merged.scanned, whole.scanned)
        self.assertEqual(merged.findings, whole.findings)
        with self.assertRaises(ValueError):
            merge([])


class TestCensusResult(SimpleTestCase):
    """Test the result container"""

    def test_split_by_kind(self):
        """Test violations and witnesses are separated"""
        findings = (
            Finding(1, (('0',),), VIOLATION, 'a'),
            Finding(2, (('1',),), WITNESS, 'b', 'detail'),
        )
        result = CensusResult(GF2, 1, 'thm-c', 2, findings)
        self.assertEqual([f.check for f in result.violations], ['a'])
        self.assertEqual([f.check for f in result.witnesses], ['b'])
        self.assertTrue(result.witnessed('b'))
        self.assertFalse(result.witnessed('a'))


class TestImplicationCensuses(SimpleTestCase):
    """Test the implication probes over every 2x2 structure matrix"""

    def test_prop41(self):
        """Test non-degeneracy and semiprimality implications over GF(2) and GF(3)"""
        # Both non-reversals are already witnessed at n = 2: check name -> a witnessing index.
        expected = {
            GF2: {'semiprime-not-nondegenerate-left': 6, 'nondegenerate-not-semiprime': 15},
            GF3: {'semiprime-not-nondegenerate-left': 12, 'nondegenerate-not-semiprime': 44},
        }
        for field, checks in expected.items():
            result = run_census(field, 2, 'prop41')
            self.assertEqual(result.violations, [], field)
            for f in result.witnesses:
                self.assertIn(f.check, checks)
            for check, index in checks.items():
                self.assertTrue(result.witnessed(check), (field, check))
                self.assertIn(index, [f.index for f in result.witnesses if f.check == check], (field, check))

    def test_simple_algebras_have_full_rank(self):
        """Test simple algebras are perfect over GF(2) and GF(3)"""
        for field in (GF2, GF3):
            self.assertEqual(run_census(field, 2, 'thm-the').violations, [])

    def test_natural_idempotents(self):
        """Test natural idempotents span their ideals and are alone on their lines"""
        self.assertEqual(run_census(GF3, 2, 'prop107').violations, [])

    def test_rescaling(self):
        """Test rescaled elements are idempotents"""
        self.assertEqual(run_census(GF3, 2, 'prop70').violations, [])

    def test_unique_natural_basis(self):
        """Test uniqueness criteria and the small-field witness"""
        result = run_census(GF2, 2, 'thm-c')
        self.assertEqual(result.violations, [])
        witness = [f.index for f in result.witnesses if f.check == 'unique-natural-basis-without-2LI']
        self.assertIn(10, witness)

    def test_socle_invariants(self):
        """Test socle partitions over GF(2)"""
        self.assertEqual(run_census(GF2, 2, 'socle').violations, [])

    def test_minimal_idempotents_with_orthogonal_complement(self):
        """Test minimal idempotents with a bipartite split are dim(e)-natural over GF(2) and GF(3)"""
        for field, diag in ((GF2, 9), (GF3, 28)):
            result = run_census(field, 2, 'thm88')
            self.assertEqual(result.violations, [], field)
            found = [f.index for f in result.witnesses if f.check == 'minimal-idempotent-meets-hypotheses']
            self.assertIn(diag, found, field)

    def test_natural_idempotents_separate(self):
        """Test a natural idempotent has no coordinate in other minimal idempotents over GF(2) and GF(3)"""
        for field, diag in ((GF2, 9), (GF3, 28)):
            result = run_census(field, 2, 'separation')
            self.assertEqual(result.violations, [], field)
            found = [f.index for f in result.witnesses if f.check == 'separated-idempotent-pair']
            self.assertIn(diag, found, field)

    def test_cuts_of_unicity(self):
        """Test the unicity conclusions on every cut found over GF(2) and GF(3)"""
        for field, diag in ((GF2, 9), (GF3, 28)):
            result = run_census(field, 2, 'unicity')
            self.assertEqual(result.violations, [], field)
            self.assertIn(diag, [f.index for f in result.witnesses if f.check == 'cut-of-unicity'], field)


@pytest.mark.slow
class TestThreeDimensionalCensuses(SimpleTestCase):
    """Test the exhaustive scans over GF(2) in dimension 3"""

    def test_evlattice_laws(self):
        """Test evinf and evsup bounds for every algebra"""
        for n in (1, 2, 3):
            self.assertEqual(run_census(GF2, n, 'evlattice').violations, [], n)

    def test_minimal_ideal_oracle(self):
        """Test principal minimal ideals match the all-subspace scan"""
        for n in (1, 2, 3):
            self.assertEqual(run_census(GF2, n, 'minimal-oracle').violations, [], n)

    def test_no_breakups_below_dimension_four(self):
        """Test sums and intersections of evolution ideals stay evolution ideals for n = 3"""
        result = run_census(GF2, 3, 'breakup')
        self.assertEqual(result.scanned, 512)
        self.assertFalse(result.witnessed('lattice-breakup'))
        self.assertFalse(result.witnessed('lattice-breakdown'))
