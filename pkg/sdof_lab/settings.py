"""
Django settings for the sdof_lab project.

The project has no web surface; Django provides the management commands,
the settings layer and the test runner.
"""

import os

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "sdof-lab-local-only")

# Set DJANGO_DEBUG=false for batch runs
DEBUG = os.environ.get("DJANGO_DEBUG", "true").lower() in ("true", "1", "yes")

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'sdof_lab',
]

# Nothing is persisted; commands and tests never touch the database.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


def _env_float(name, default):
    value = os.environ.get("SDOF_" + name)
    return float(value) if value else default


def _env_int(name, default):
    value = os.environ.get("SDOF_" + name)
    return int(float(value)) if value else default


SDOF_LAB = {
    # |gain| below this is rejected by the channel sampler
    'EPS_GAIN': _env_float('EPS_GAIN', 1e-3),
    'REJECTION_CAP': _env_int('REJECTION_CAP', 10 ** 4),
    'NOISE_VAR': _env_float('NOISE_VAR', 1.0),
    # relative tolerance separating designed alignment from near-collisions
    'RTOL': _env_float('RTOL', 1e-9),
    # max (2Q+1)^L grid points enumerated by the oracle and the decoder
    'GRID_GUARD': _env_int('GRID_GUARD', 10 ** 6),
    # max C(m, n) row subsets tried by the vertex enumeration
    'SUBSET_GUARD': _env_int('SUBSET_GUARD', 10 ** 7),
    'LEAKAGE_Q_CAP': _env_int('LEAKAGE_Q_CAP', 10 ** 6),
    'ALPHA_RANGE': (0.5, 2.0),
}

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'COERCE_DECIMAL_TO_STRING': False,
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': os.getenv('DJANGO_LOG_LEVEL', 'INFO'),
        },
        'sdof_lab': {
            'handlers': ['console'],
            'level': os.getenv('SDOF_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}
