from django.apps import AppConfig


class QwtConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "qwt"
    verbose_name = "Quantum wavelet transforms"
