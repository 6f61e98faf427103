from django.apps import AppConfig


class QringConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'qring'
