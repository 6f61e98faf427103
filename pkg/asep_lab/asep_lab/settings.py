"""
Django settings for asep_lab project.

The project hosts no web surface; Django provides configuration, the ORM
used to record verification and simulation runs, management commands and
the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'django-insecure-asep-lab-local-only')

DEBUG = os.environ.get('DJANGO_DEBUG', '0') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'qring',
    'lattice',
    'generator',
    'qsym',
    'measures',
    'duality',
    'dynamics',
    'reports',
]

MIDDLEWARE = []


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.environ.get('ASEP_DATABASE', BASE_DIR / 'db.sqlite3'),
    }
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging
# https://docs.djangoproject.com/en/5.2/topics/logging/

ASEP_LOG_LEVEL = os.environ.get('ASEP_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': ASEP_LOG_LEVEL,
            'propagate': False,
        }
        for app in INSTALLED_APPS
    },
}


# Celery
# Trajectory batches run in-process unless a broker is configured and eager
# mode is switched off.

CELERY_BROKER_URL = os.environ.get('CELERY_BROKER_URL', 'redis://localhost:6379/0')
CELERY_RESULT_BACKEND = os.environ.get('CELERY_RESULT_BACKEND', 'redis://localhost:6379/1')
CELERY_TASK_ALWAYS_EAGER = os.environ.get('CELERY_TASK_ALWAYS_EAGER', '1') == '1'
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_ACCEPT_CONTENT = ['json']


# Model defaults, resource caps and tolerances

ASEP = {
    'DEFAULT_R': '2',
    'DEFAULT_ELL': '1/2',
    'EXACT_MAX_L': 3,
    'FLOAT_MAX_L': 6,
    'SIMULATION_MAX_L': 10,
    'ALGEBRA_MAX_L': 2,
    'SYMMETRY_OPERATOR_MAX_L': 3,
    'POISSON_TAIL': 1e-14,
    'STOCHASTIC_TOLERANCE': 1e-12,
    'DEFAULT_TRAJECTORIES': 100000,
    'TRAJECTORY_BATCH': 5000,
    'DEFAULT_SEED': 20150101,
    'HARD_FAILURE_Z': 5.0,
    'DEFAULT_TIMES': [0.0, 1.0],
}
