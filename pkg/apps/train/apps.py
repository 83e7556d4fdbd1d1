from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class TrainConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.train"
    verbose_name = _("Treino do modelo")
