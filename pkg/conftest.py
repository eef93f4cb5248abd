"""Pytest wiring: configure Django the way ``manage.py test`` does."""
import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "mlgeo.settings")
django.setup()

_db_state = {}


def pytest_sessionstart(session):
    from django.test.utils import setup_databases, setup_test_environment

    setup_test_environment()
    _db_state["old_config"] = setup_databases(verbosity=0, interactive=False)


def pytest_sessionfinish(session, exitstatus):
    from django.test.utils import teardown_databases, teardown_test_environment

    if "old_config" in _db_state:
        teardown_databases(_db_state.pop("old_config"), verbosity=0)
    teardown_test_environment()
