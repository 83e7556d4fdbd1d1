from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class CircuitConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.circuit"
    verbose_name = _("Circuitos e modelos")
