from django.apps import AppConfig


class PolysolveConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "polysolve"
