# Generated by Django 5.2.7 on 2026-10-18 09:12

import django.db.models.deletion
import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='CensusJob',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('task_id', models.CharField(blank=True, max_length=255, null=True, unique=True)),
                ('status', models.CharField(choices=[('PENDING', 'Pending'), ('PROCESSING', 'Processing'), ('COMPLETED', 'Completed'), ('FAILED', 'Failed')], default='PENDING', max_length=20)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('started_at', models.DateTimeField(blank=True, null=True)),
                ('completed_at', models.DateTimeField(blank=True, null=True)),
                ('field', models.CharField(max_length=32)),
                ('dim', models.PositiveSmallIntegerField()),
                ('probe', models.CharField(max_length=64)),
                ('start_index', models.BigIntegerField(default=0)),
                ('stop_index', models.BigIntegerField(blank=True, null=True)),
                ('result_excel', models.FileField(blank=True, max_length=500, null=True, upload_to='results/')),
                ('result_csv', models.FileField(blank=True, max_length=500, null=True, upload_to='results/')),
                ('total_scanned', models.BigIntegerField(default=0)),
                ('violation_count', models.IntegerField(default=0)),
                ('witness_count', models.IntegerField(default=0)),
                ('error_message', models.TextField(blank=True, null=True)),
            ],
            options={
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['-created_at'], name='census_job_created_idx'), models.Index(fields=['status'], name='census_job_status_idx')],
            },
        ),
        migrations.CreateModel(
            name='CensusFinding',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('index', models.BigIntegerField()),
                ('matrix', models.JSONField(default=list)),
                ('kind', models.CharField(max_length=16)),
                ('check_name', models.CharField(max_length=128)),
                ('detail', models.TextField(blank=True, default='')),
                ('job', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='findings', to='algebras.censusjob')),
            ],
            options={
                'ordering': ['index', 'kind', 'check_name'],
            },
        ),
    ]
