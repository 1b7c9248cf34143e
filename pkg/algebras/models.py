import uuid
from django.db import models


class CensusJob(models.Model):
    """Track background census runs"""
    STATUS_CHOICES = [
        ('PENDING', 'Pending'),
        ('PROCESSING', 'Processing'),
        ('COMPLETED', 'Completed'),
        ('FAILED', 'Failed'),
    ]

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    task_id = models.CharField(max_length=255, unique=True, null=True, blank=True)
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default='PENDING')
    created_at = models.DateTimeField(auto_now_add=True)
    started_at = models.DateTimeField(null=True, blank=True)
    completed_at = models.DateTimeField(null=True, blank=True)

    # Input
    field = models.CharField(max_length=32)  # "GF(3)"
    dim = models.PositiveSmallIntegerField()
    probe = models.CharField(max_length=64)
    start_index = models.BigIntegerField(default=0)
    stop_index = models.BigIntegerField(null=True, blank=True)

    # Results
    result_excel = models.FileField(upload_to='results/', max_length=500, null=True, blank=True)
    result_csv = models.FileField(upload_to='results/', max_length=500, null=True, blank=True)
    total_scanned = models.BigIntegerField(default=0)
    violation_count = models.IntegerField(default=0)
    witness_count = models.IntegerField(default=0)

    error_message = models.TextField(null=True, blank=True)

    class Meta:
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['-created_at'], name='census_job_created_idx'),
            models.Index(fields=['status'], name='census_job_status_idx'),
        ]

    def __str__(self):
        return f"Census {self.probe} {self.field} n={self.dim} - {self.status}"


class CensusFinding(models.Model):
    job = models.ForeignKey(CensusJob, on_delete=models.CASCADE, related_name='findings')
    index = models.BigIntegerField()
    matrix = models.JSONField(default=list)  # rows of scalar strings
    kind = models.CharField(max_length=16)  # violation | witness
    check_name = models.CharField(max_length=128)
    detail = models.TextField(blank=True, default='')

    class Meta:
        ordering = ['index', 'kind', 'check_name']

    def __str__(self):
        return f"{self.kind} {self.check_name} at #{self.index}"
