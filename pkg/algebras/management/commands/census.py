import logging
import os
from pathlib import Path

from django.core.management.base import CommandError

from ...models import CensusJob
from ...services.algebra import EvolutionAlgebra, structure_matrix_from_index
from ...services.census import PROBES, run_census
from ...services.errors import UnsupportedEnumerationError
from ...services.excel import CensusExcelWriter
from ...services.exactalg import FieldSpec
from ...services.parsers import dump_algebra
from ...services.reports import census_report
from ...tasks import run_census_task
from ..base import EXIT_INPUT, EvolabCommand

logger = logging.getLogger(__name__)


class Command(EvolabCommand):
    help = 'Run a named probe over every structure matrix of the given size and field'

    def add_arguments(self, parser):
        parser.add_argument('--field', required=True, help='GF(p)')
        parser.add_argument('--dim', type=int, required=True)
        parser.add_argument('--probe', required=True, choices=sorted(PROBES))
        parser.add_argument('--start', type=int, default=0, help='First structure-matrix index')
        parser.add_argument('--stop', type=int, help='One past the last structure-matrix index')
        parser.add_argument('--output', help='Directory for the Excel and CSV exports')
        parser.add_argument('--fixtures', help='Directory receiving a definition file per finding')
        parser.add_argument('--async', dest='run_async', action='store_true',
                            help='Queue census jobs for the Celery workers instead of running here')
        parser.add_argument('--chunks', type=int, default=1, help='Split the index range into this many jobs')
        super().add_arguments(parser)

    def run(self, options, budget):
        if options['dim'] < 1 or options['start'] < 0 or options['chunks'] < 1:
            raise CommandError("--dim and --chunks must be positive, --start non-negative", returncode=EXIT_INPUT)
        field = FieldSpec.parse(options['field'])
        if options['run_async']:
            return self.submit(field, options, budget)

        result = run_census(field, options['dim'], options['probe'], budget,
                            start=options['start'], stop=options['stop'])
        if options.get('output'):
            self.write_exports(result, options['output'])
        if options.get('fixtures'):
            self.write_fixtures(result, options['fixtures'])
        return census_report(result)

    def submit(self, field: FieldSpec, options, budget):
        """Create one CensusJob per index chunk and queue them."""
        if not field.is_prime_field:
            raise UnsupportedEnumerationError(f"Cannot run a census over {field}")
        n = options['dim']
        total = field.p ** (n * n)
        stop = total if options['stop'] is None else min(options['stop'], total)
        start = options['start']
        budget.check_scan(max(stop - start, 0))
        step = max(-(-(stop - start) // options['chunks']), 1)
        overrides = {
            key: options[key]
            for key in ('max_vectors', 'max_subspaces', 'max_scan_matrices')
            if options.get(key) is not None
        }

        jobs = []
        for lo in range(start, stop, step):
            job = CensusJob.objects.create(
                field=field.name, dim=n, probe=options['probe'],
                start_index=lo, stop_index=min(lo + step, stop), status='PENDING',
            )
            run_census_task.delay(str(job.id), overrides)
            logger.info(f"Submitted census job {job.id} for indices {lo}..{job.stop_index - 1}")
            jobs.append({'id': str(job.id), 'start': lo, 'stop': job.stop_index})
        return {'field': field.name, 'dim': n, 'probe': options['probe'], 'jobs': jobs}

    def write_exports(self, result, output_dir: str):
        os.makedirs(output_dir, exist_ok=True)
        base = os.path.join(output_dir, f"census_{result.probe}_{result.field.p}_{result.n}")
        writer = CensusExcelWriter()
        writer.write_excel(result, f"{base}.xlsx")
        writer.write_csv(result, f"{base}.csv")

    def write_fixtures(self, result, fixtures_dir: str):
        target = Path(fixtures_dir)
        target.mkdir(parents=True, exist_ok=True)
        for index in sorted({f.index for f in result.findings}):
            A = EvolutionAlgebra(result.field, structure_matrix_from_index(result.field, result.n, index))
            checks = ', '.join(sorted({f.check for f in result.findings if f.index == index}))
            path = target / f"{result.probe}_{result.field.p}_{result.n}_{index}.alg"
            path.write_text(dump_algebra(A, comment=f"census {result.probe} #{index}: {checks}"), encoding='utf-8')
        logger.info(f"Wrote fixtures for {len(result.findings)} findings to {target}")
