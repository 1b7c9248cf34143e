"""
Django settings for the evolab project.

The project has no web surface: Django provides configuration, the ORM for
census job tracking, and management commands as the command-line front end.
"""

import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get('SECRET_KEY', 'django-insecure-evolab-local-only')

DEBUG = os.environ.get('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django_celery_results',
    'algebras',
]


# Use PostgreSQL in Docker, SQLite for local runs
DATABASE_URL = os.environ.get('DATABASE_URL', '')

if DATABASE_URL:
    import dj_database_url
    DATABASES = {
        'default': dj_database_url.config(
            default=DATABASE_URL,
            conn_max_age=600
        )
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'db.sqlite3',
        }
    }


LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# Census exports land in MEDIA_ROOT/results/
MEDIA_ROOT = BASE_DIR / 'media'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Enumeration budgets. Each key can be overridden with an EVOLAB_<KEY>
# environment variable, e.g. EVOLAB_MAX_VECTORS=100000.

_BUDGET_DEFAULTS = {
    'MAX_VECTORS': 10 ** 6,
    'MAX_SUBSPACES': 10 ** 5,
    'NATURAL_BASIS_MAX_DIM': 4,
    'NATURAL_BASIS_MAX_PRIME': 7,
    'DEFINABLE_LATTICE_LIMIT': 12,
    'MAX_SUBSETS': 10 ** 5,
    'MAX_SCAN_MATRICES': 10 ** 5,
}

EVOLAB_BUDGETS = {
    key: int(os.environ.get(f'EVOLAB_{key}', default))
    for key, default in _BUDGET_DEFAULTS.items()
}


# Logging

EVOLAB_LOG_LEVEL = os.environ.get('EVOLAB_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'standard': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'standard',
        },
    },
    'loggers': {
        'algebras': {
            'handlers': ['console'],
            'level': EVOLAB_LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Celery Configuration
CELERY_BROKER_URL = os.environ.get('CELERY_BROKER_URL', 'redis://localhost:6379/0')
CELERY_RESULT_BACKEND = 'django-db'
CELERY_CACHE_BACKEND = 'django-cache'
CELERY_ACCEPT_CONTENT = ['application/json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = TIME_ZONE
CELERY_TASK_TRACK_STARTED = True
CELERY_TASK_TIME_LIMIT = 6 * 60 * 60  # exhaustive censuses run long
CELERY_BROKER_CONNECTION_RETRY_ON_STARTUP = True
