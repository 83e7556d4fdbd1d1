from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class SimConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.sim"
    verbose_name = _("Simulador de vetor de estado")
