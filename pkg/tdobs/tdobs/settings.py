"""
Django settings for the tdobs project.

Exact treedepth, bounded-treedepth graph enumeration and obstruction sets,
driven through management commands.
"""

from pathlib import Path
import os
from decouple import config
import dj_database_url

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# No request handling happens in this project; the key only satisfies Django.
SECRET_KEY = os.environ.get('SECRET_KEY', config('SECRET_KEY', default='django-insecure-tdobs-batch-pipeline'))

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    'django.contrib.contenttypes',

    # Local apps
    'obstructions',
]

# Database
# https://docs.djangoproject.com/en/4.2/ref/settings/#databases

database_url = config('DATABASE_URL', default=None)
if database_url:
    DATABASES = {
        'default': dj_database_url.parse(
            database_url,
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

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Pipeline configuration
TDOBS = {
    'WORKERS': config('TDOBS_WORKERS', default=1, cast=int),
    'CANON_CUTOFF': config('TDOBS_CANON_CUTOFF', default=8, cast=int),
    'MEMO_CAP': config('TDOBS_MEMO_CAP', default=200000, cast=int),
    'MODE': config('TDOBS_MODE', default='lookup'),
    'OUT_DIR': config('TDOBS_OUT_DIR', default=str(BASE_DIR / 'runs')),
    'TOOL_VERSION': '1.0.0',
}

LOG_LEVEL = config('LOG_LEVEL', default='INFO')

# Logging configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': True,
        },
        'obstructions': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}
