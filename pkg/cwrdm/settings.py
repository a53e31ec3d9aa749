# cwrdm/settings.py

from pathlib import Path
from dotenv import load_dotenv
from decouple import config

BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(BASE_DIR / ".env")

SECRET_KEY = config("SECRET_KEY", default="cwrdm-local-only")

DEBUG = config("DEBUG", default=False, cast=bool)

ALLOWED_HOSTS = []


INSTALLED_APPS = [
    "rest_framework",

    "weights",
    "partitions",
    "statespace",
    "rdm",
    "relations",
    "marginals",
    "cli",
]


# everything is computed in memory; no tables
DATABASES = {}

# serializers only; no requests, so no users
REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "UNAUTHENTICATED_USER": None,
}

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True


CWRDM = {
    "RESIDUAL_TOLERANCE": config("CWRDM_TOLERANCE", default=1e-10, cast=float),
    "CERTIFY_TOLERANCE": config("CWRDM_CERTIFY_TOLERANCE", default=1e-6, cast=float),
    "EIGEN_TOLERANCE": config("CWRDM_EIGEN_TOLERANCE", default=1e-10, cast=float),
    "NORM_TOLERANCE": config("CWRDM_NORM_TOLERANCE", default=1e-12, cast=float),
    "DEFAULT_SEED": config("CWRDM_DEFAULT_SEED", default=0, cast=int),
}


LOG_LEVEL = config("CWRDM_LOG_LEVEL", default="WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "stderr": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "loggers": {
        app: {"handlers": ["stderr"], "level": LOG_LEVEL, "propagate": False}
        for app in ("weights", "partitions", "statespace", "rdm", "relations", "marginals", "cli")
    },
}
