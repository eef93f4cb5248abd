import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent


def _load_env_file(path: Path) -> None:
    if not path.exists():
        return

    for raw_line in path.read_text().splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue

        if line.startswith("export "):
            line = line[len("export ") :].strip()

        key, sep, value = line.partition("=")
        if not sep:
            continue

        env_key = key.strip()
        env_value = value.strip().strip('"').strip("'")
        os.environ.setdefault(env_key, env_value)


def _env_bool(name: str, default: bool = False) -> bool:
    raw = os.environ.get(name)
    if raw is None:
        return default
    return raw.strip().lower() in {"1", "true", "yes", "on"}


_load_env_file(BASE_DIR / ".env")

SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "django-insecure-mlgeo-local-key")
DEBUG = _env_bool("DJANGO_DEBUG", True)
ALLOWED_HOSTS = []

INSTALLED_APPS = [
    "core.apps.CoreConfig",
    "lattice.apps.LatticeConfig",
    "polytope.apps.PolytopeConfig",
    "toric.apps.ToricConfig",
    "polysolve.apps.PolysolveConfig",
    "likelihood.apps.LikelihoodConfig",
    "tropical.apps.TropicalConfig",
    "runs.apps.RunsConfig",
    "cli.apps.CliConfig",
]

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# Computation defaults
MLDEG_DEFAULT_SEED = int(os.environ.get("MLDEG_DEFAULT_SEED", "0"))
MLDEG_TIMEOUT_SECONDS = float(os.environ.get("MLDEG_TIMEOUT_SECONDS", "3600"))
MLDEG_WORKERS = int(os.environ.get("MLDEG_WORKERS", "1"))
MLDEG_OUTPUT_FORMAT = os.environ.get("MLDEG_OUTPUT_FORMAT", "md")
MLDEG_MODULAR_PRIME = int(os.environ.get("MLDEG_MODULAR_PRIME", str(2**61 - 1)))
MLDEG_LOG_LEVEL = os.environ.get("MLDEG_LOG_LEVEL", "INFO").upper()
MLDEG_SLOW_TESTS = _env_bool("MLDEG_SLOW_TESTS", False)

_PROJECT_LOGGERS = ("core", "lattice", "polytope", "toric", "polysolve", "likelihood", "tropical", "runs", "cli")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "{levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
            "stream": "ext://sys.stderr",
        },
    },
    "loggers": {
        name: {"handlers": ["console"], "level": MLDEG_LOG_LEVEL, "propagate": False}
        for name in _PROJECT_LOGGERS
    },
}
