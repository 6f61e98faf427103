from django.apps import AppConfig


class QsymConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'qsym'
