import os
from celery import Celery

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'evolab.settings')

app = Celery('evolab')

# All celery-related configuration keys carry a `CELERY_` prefix in settings.
app.config_from_object('django.conf:settings', namespace='CELERY')

# Census tasks live in algebras/tasks.py.
app.autodiscover_tasks()
