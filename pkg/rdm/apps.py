from django.apps import AppConfig


class RdmConfig(AppConfig):
    name = 'rdm'
    verbose_name = 'Reduced density matrices'
