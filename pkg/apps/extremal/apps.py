from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class ExtremalConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.extremal"
    verbose_name = _("Extremização")
