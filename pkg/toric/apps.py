from django.apps import AppConfig


class ToricConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "toric"
