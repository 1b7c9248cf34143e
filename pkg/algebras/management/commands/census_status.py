from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from ...models import CensusJob
from ..base import EXIT_INPUT, EvolabCommand


class Command(EvolabCommand):
    help = 'Show the status and findings of queued census jobs'

    def add_arguments(self, parser):
        parser.add_argument('job_ids', nargs='*', help='CensusJob ids (default: the 20 most recent jobs)')
        parser.add_argument('--findings', action='store_true', help='Include the stored findings')
        super().add_arguments(parser)

    def run(self, options, budget):
        if options['job_ids']:
            jobs = []
            for job_id in options['job_ids']:
                try:
                    jobs.append(CensusJob.objects.get(id=job_id))
                except (CensusJob.DoesNotExist, ValidationError, ValueError):
                    raise CommandError(f"Census job {job_id} not found", returncode=EXIT_INPUT)
        else:
            jobs = list(CensusJob.objects.all()[:20])
        return {'jobs': [self.describe(job, options['findings']) for job in jobs]}

    def describe(self, job: CensusJob, with_findings: bool) -> dict:
        data = {
            'id': str(job.id),
            'status': job.status,
            'field': job.field,
            'dim': job.dim,
            'probe': job.probe,
            'range': [job.start_index, job.stop_index],
            'scanned': job.total_scanned,
            'violations': job.violation_count,
            'witnesses': job.witness_count,
            'error': job.error_message,
        }
        if job.status == 'COMPLETED':
            data['excel'] = job.result_excel.name if job.result_excel else None
            data['csv'] = job.result_csv.name if job.result_csv else None
        if with_findings:
            data['findings'] = [
                {'index': f.index, 'matrix': f.matrix, 'kind': f.kind, 'check': f.check_name, 'detail': f.detail}
                for f in job.findings.all()
            ]
        return data
