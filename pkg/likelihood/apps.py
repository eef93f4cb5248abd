from django.apps import AppConfig


class LikelihoodConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "likelihood"
