import os
import logging
from django.conf import settings
from django.utils import timezone
from celery import shared_task
from .models import CensusJob, CensusFinding
from .services import Budget, CensusExcelWriter, FieldSpec, run_census

logger = logging.getLogger(__name__)


def write_census_exports(job: CensusJob, result) -> None:
    """Write Excel and CSV exports for ``result`` and attach them to ``job``."""
    output_dir = os.path.join(settings.MEDIA_ROOT, 'results')
    os.makedirs(output_dir, exist_ok=True)

    output_base = f"census_{job.probe}_{result.field.p}_{job.dim}_{job.id}"
    writer = CensusExcelWriter()
    writer.write_excel(result, os.path.join(output_dir, f"{output_base}.xlsx"))
    writer.write_csv(result, os.path.join(output_dir, f"{output_base}.csv"))
    job.result_excel = f"results/{output_base}.xlsx"
    job.result_csv = f"results/{output_base}.csv"


@shared_task(bind=True)
def run_census_task(self, job_id, budget_overrides=None):
    """
    Background task running one census job over its index range.

    Args:
        job_id: UUID of the CensusJob
        budget_overrides: optional dict of Budget field overrides
    """
    job = None
    try:
        job = CensusJob.objects.get(id=job_id)
        job.status = 'PROCESSING'
        job.started_at = timezone.now()
        job.task_id = self.request.id
        job.save()

        logger.info(f"Starting census job {job_id}: {job.probe} over {job.field}, n={job.dim}")

        budget = Budget.from_settings(**(budget_overrides or {}))
        result = run_census(
            FieldSpec.parse(job.field), job.dim, job.probe, budget,
            start=job.start_index, stop=job.stop_index,
        )

        CensusFinding.objects.bulk_create([
            CensusFinding(
                job=job,
                index=f.index,
                matrix=[list(row) for row in f.matrix],
                kind=f.kind,
                check_name=f.check,
                detail=f.detail,
            )
            for f in result.findings
        ])
        write_census_exports(job, result)

        job.total_scanned = result.scanned
        job.violation_count = len(result.violations)
        job.witness_count = len(result.witnesses)
        job.status = 'COMPLETED'
        job.completed_at = timezone.now()
        job.save()

        logger.info(f"Completed census job {job_id}: {result.scanned} scanned, "
                    f"{job.violation_count} violations")
        return {
            'job_id': str(job_id),
            'status': 'COMPLETED',
            'scanned': result.scanned,
            'violations': job.violation_count,
            'witnesses': job.witness_count,
        }

    except CensusJob.DoesNotExist:
        logger.error(f"Census job {job_id} not found")
        raise

    except Exception as e:
        logger.exception(f"Error running census job {job_id}: {e}")
        try:
            job = CensusJob.objects.get(id=job_id)
            job.status = 'FAILED'
            job.error_message = str(e)
            job.completed_at = timezone.now()
            job.save()
        except Exception as save_error:
            logger.error(f"Failed to save error status: {save_error}")
        raise

    finally:
        logger.info(f"Census job {job_id} finished with status {job.status if job else 'UNKNOWN'}")
