"""
Django settings for the qwt project.

The project hosts the ``qwt`` library, its management commands, and the
database tables that store verification runs and gate-count sweeps.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path
from decouple import config
import dj_database_url

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config("SECRET_KEY", default="django-insecure-qwt-local-only")

DEBUG = config("DEBUG", default=True, cast=bool)

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    "django.contrib.admin",
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.sessions",
    "django.contrib.messages",
    "django.contrib.staticfiles",
    "rest_framework",
    "qwt",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.contrib.sessions.middleware.SessionMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.csrf.CsrfViewMiddleware",
    "django.contrib.auth.middleware.AuthenticationMiddleware",
    "django.contrib.messages.middleware.MessageMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "core.urls"

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.request",
                "django.contrib.auth.context_processors.auth",
                "django.contrib.messages.context_processors.messages",
            ],
        },
    },
]

WSGI_APPLICATION = "core.wsgi.application"

# Database
DATABASES = {
    "default": dj_database_url.config(
        default=config("DATABASE_URL", default=f"sqlite:///{BASE_DIR / 'db.sqlite3'}")
    )
}

# Library tolerances and registry. Anything left out falls back to qwt.conf.DEFAULTS.
QWT = {
    "VALIDATION_TOL": config("QWT_VALIDATION_TOL", default=1e-10, cast=float),
    "RECONSTRUCTION_TOL": config("QWT_RECONSTRUCTION_TOL", default=1e-10, cast=float),
    "FACTORIZATION_TOL": config("QWT_FACTORIZATION_TOL", default=1e-8, cast=float),
    "UNITARY_TOL": config("QWT_UNITARY_TOL", default=1e-12, cast=float),
    "FIDELITY_TOL": config("QWT_FIDELITY_TOL", default=1e-10, cast=float),
    "LEVEL_TOL": config("QWT_LEVEL_TOL", default=1e-9, cast=float),
    "MCX_STRATEGY": config("QWT_MCX_STRATEGY", default="I"),
    "REGISTRY_PATH": config("QWT_REGISTRY_PATH", default=""),
    "MAX_REFERENCE_QUBITS": config("QWT_MAX_REFERENCE_QUBITS", default=12, cast=int),
    "MAX_UNITARY_QUBITS": config("QWT_MAX_UNITARY_QUBITS", default=12, cast=int),
    "RANDOM_SEED": config("QWT_RANDOM_SEED", default=1234, cast=int),
    "RANDOM_STATES": config("QWT_RANDOM_STATES", default=100, cast=int),
}

# Logging Configuration
LOGGING_DIR = BASE_DIR / "logs"
if not LOGGING_DIR.exists():
    os.makedirs(LOGGING_DIR, exist_ok=True)

LOG_LEVEL = config("LOG_LEVEL", default="INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {module} {process:d} {thread:d} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "file": {
            "level": "INFO",
            "class": "logging.FileHandler",
            "filename": LOGGING_DIR / "qwt.log",
            "formatter": "verbose",
        },
        "console": {
            "level": "WARNING",
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "django": {
            "handlers": ["file", "console"],
            "level": "INFO",
            "propagate": True,
        },
        "qwt": {
            "handlers": ["file", "console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
    },
}

# Celery Configuration
# Tasks run in-process unless CELERY_TASK_ALWAYS_EAGER is turned off and a
# broker is configured.
CELERY_TASK_ALWAYS_EAGER = config("CELERY_TASK_ALWAYS_EAGER", default=True, cast=bool)
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_BROKER_URL = config("CELERY_BROKER_URL", default="memory://")
CELERY_RESULT_BACKEND = config("CELERY_RESULT_BACKEND", default="cache+memory://")
CELERY_ACCEPT_CONTENT = ["json"]
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"
CELERY_TIMEZONE = config("TIME_ZONE", default="UTC")

# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = config("TIME_ZONE", default="UTC")

USE_I18N = True

USE_TZ = True

# Static files (CSS, JavaScript, Images)

STATIC_URL = "static/"

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"
