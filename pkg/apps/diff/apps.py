from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class DiffConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.diff"
    verbose_name = _("Diferenciação por parameter shift")
