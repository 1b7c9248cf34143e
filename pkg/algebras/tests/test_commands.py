import json
import os
import tempfile
import uuid
from io import StringIO
from unittest.mock import patch

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from algebras.models import CensusFinding, CensusJob
from algebras.services.algebra import make_example
from algebras.services.exactalg import FieldSpec
from algebras.services.parsers import parse_algebra_file


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


@pytest.mark.integration
class TestAlgebraCommands(SimpleTestCase):
    """Test the single-algebra commands end to end"""

    def test_analyze_json(self):
        """Test analyze emits the canonical JSON report"""
        output = run('analyze', '--family', 'diag', '--field', 'GF(3)', '--dim', '2', '--json')
        report = json.loads(output)
        self.assertFalse(report['simple'])
        self.assertTrue(report['unique-natural-basis'])
        self.assertTrue(output.endswith('\n'))

    def test_analyze_text(self):
        """Test the text rendering of a simple algebra"""
        output = run('analyze', '--family', 'z3_counterexample')
        self.assertIn('simple: yes', output)
        self.assertIn('label: A_Z3', output)

    def test_analyze_over_rationals_succeeds(self):
        """Test analyze reports n/a instead of refusing over Q"""
        output = run('analyze', '--family', 'diag', '--field', 'Q', '--dim', '2')
        self.assertIn('idempotents: n/a', output)

    def test_example_round_trip(self):
        """Test example writes a definition that the other commands read"""
        text = run('example', '--family', 'z3_counterexample')
        self.assertEqual(text, "# A_Z3\nfield GF(3)\ndim 2\nrow 1 2\nrow 1 1\n")
        with tempfile.TemporaryDirectory() as temp_dir:
            path = os.path.join(temp_dir, 'a4.alg')
            run('example', '--family', 'four_dim_nonsimple_minimal', '--field', 'GF(5)', '--output', path)
            self.assertEqual(parse_algebra_file(path), make_example('four_dim_nonsimple_minimal', FieldSpec.prime(5)))
            report = json.loads(run('ideals', path, '--json'))
        self.assertEqual(report['algebra']['label'], 'a4')
        self.assertEqual(report['minimal-count'], 1)

    def test_idempotents_text(self):
        """Test the idempotent system is printed"""
        output = run('idempotents', '--family', 'z3_counterexample')
        self.assertIn('x1 = x1^2 + x2^2', output)
        self.assertIn('count: 1', output)

    def test_lattice_dot(self):
        """Test --dot emits a digraph"""
        output = run('lattice', '--family', 'diag', '--field', 'GF(3)', '--dim', '2', '--dot')
        self.assertIn('digraph', output)

    def test_natural_bases_and_socle(self):
        """Test the natural-basis and socle commands on diag(2)"""
        bases = json.loads(run('natural_bases', '--family', 'diag', '--field', 'GF(3)', '--dim', '2', '--json'))
        self.assertEqual(bases['count'], 1)
        socle = json.loads(run('socle', '--family', 'diag', '--field', 'GF(3)', '--dim', '2', '--json'))
        self.assertTrue(socle['decomposition']['holds'])


@pytest.mark.integration
class TestExitCodes(SimpleTestCase):
    """Test refusals exit with 1 and input errors with 2"""

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as ctx:
            run(*args)
        self.assertEqual(ctx.exception.returncode, code)

    def test_refused_over_rationals(self):
        """Test enumeration commands refuse over Q"""
        self.assertExitCode(1, 'idempotents', '--family', 'diag', '--field', 'Q', '--dim', '2')
        self.assertExitCode(1, 'fseani_scan', '--field', 'Q', '--dim', '2')

    def test_budget_refusal(self):
        """Test an oversized scan is refused"""
        self.assertExitCode(1, 'fseani_scan', '--field', 'GF(3)', '--dim', '2', '--max-scan-matrices', '80')

    def test_input_errors(self):
        """Test missing algebras, bad fields and bad budgets"""
        self.assertExitCode(2, 'analyze')
        self.assertExitCode(2, 'analyze', '/nonexistent/algebra.alg')
        self.assertExitCode(2, 'analyze', '--family', 'diag', '--field', 'GF(4)', '--dim', '2')
        self.assertExitCode(2, 'analyze', '--family', 'diag')
        self.assertExitCode(2, 'analyze', '--family', 'diag', '--field', 'GF(3)', '--dim', '2', '--max-vectors', '0')
        self.assertExitCode(2, 'fseani_scan', '--field', 'GF(3)', '--dim', '0')

    def test_parse_error_exit_code(self):
        """Test a malformed definition file exits with 2"""
        with tempfile.NamedTemporaryFile('w', suffix='.alg', delete=False, encoding='utf-8') as f:
            f.write("field GF(3)\ndim 2\nrow 1 2\n")
            path = f.name
        try:
            with self.assertRaises(CommandError) as ctx:
                run('analyze', path)
            self.assertEqual(ctx.exception.returncode, 2)
            self.assertIn('line 3', str(ctx.exception))
        finally:
            os.unlink(path)

    def test_fseani_scan_text(self):
        """Test GF(2) is reported 1-FSEANI"""
        output = run('fseani_scan', '--field', 'GF(2)', '--dim', '1')
        self.assertIn('is-fseani: yes', output)
        self.assertIn('summary: GF(2) is 1-FSEANI', output)


@pytest.mark.integration
class TestCensusCommand(TestCase):
    """Test the census command in the foreground and queued"""

    def test_census_exports_and_fixtures(self):
        """Test exports and a fixture file per finding"""
        with tempfile.TemporaryDirectory() as temp_dir:
            output_dir = os.path.join(temp_dir, 'out')
            fixtures_dir = os.path.join(temp_dir, 'fixtures')
            report = json.loads(run('census', '--field', 'GF(3)', '--dim', '2', '--probe', 'fseani',
                                    '--start', '49', '--stop', '50', '--output', output_dir,
                                    '--fixtures', fixtures_dir, '--json'))
            self.assertEqual(report['witnesses'], 1)
            self.assertTrue(os.path.exists(os.path.join(output_dir, 'census_fseani_3_2.xlsx')))
            self.assertTrue(os.path.exists(os.path.join(output_dir, 'census_fseani_3_2.csv')))
            fixture = parse_algebra_file(os.path.join(fixtures_dir, 'fseani_3_2_49.alg'))
        self.assertEqual(fixture, make_example('z3_counterexample'))

    def test_census_refusals(self):
        """Test Q is refused and GF(4) is an input error"""
        with self.assertRaises(CommandError) as ctx:
            run('census', '--field', 'Q', '--dim', '2', '--probe', 'fseani')
        self.assertEqual(ctx.exception.returncode, 1)
        with self.assertRaises(CommandError) as ctx:
            run('census', '--field', 'GF(4)', '--dim', '2', '--probe', 'fseani')
        self.assertEqual(ctx.exception.returncode, 2)

    @patch('algebras.management.commands.census.run_census_task')
    def test_async_chunks(self, mock_task):
        """Test --async queues one job per chunk"""
        report = json.loads(run('census', '--field', 'GF(2)', '--dim', '2', '--probe', 'thm-c',
                                '--async', '--chunks', '2', '--json'))
        self.assertEqual([(job['start'], job['stop']) for job in report['jobs']], [(0, 8), (8, 16)])
        self.assertEqual(CensusJob.objects.count(), 2)
        self.assertEqual(mock_task.delay.call_count, 2)
        job_ids = {str(job.id) for job in CensusJob.objects.all()}
        self.assertEqual({c.args[0] for c in mock_task.delay.call_args_list}, job_ids)

    def test_census_status(self):
        """Test stored jobs and findings are listed"""
        job = CensusJob.objects.create(field='GF(3)', dim=2, probe='fseani', start_index=49, stop_index=50,
                                       status='COMPLETED', total_scanned=1, witness_count=1)
        CensusFinding.objects.create(job=job, index=49, matrix=[['1', '2'], ['1', '1']], kind='witness',
                                     check_name='simple-without-idempotent')
        report = json.loads(run('census_status', str(job.id), '--findings', '--json'))
        self.assertEqual(len(report['jobs']), 1)
        entry = report['jobs'][0]
        self.assertEqual(entry['status'], 'COMPLETED')
        self.assertEqual(entry['range'], [49, 50])
        self.assertEqual(entry['findings'][0]['check'], 'simple-without-idempotent')
        self.assertIsNone(entry['excel'])

    def test_census_status_unknown_job(self):
        """Test unknown and malformed ids exit with 2"""
        for job_id in (str(uuid.uuid4()), 'not-a-uuid'):
            with self.assertRaises(CommandError) as ctx:
                run('census_status', job_id)
            self.assertEqual(ctx.exception.returncode, 2)
