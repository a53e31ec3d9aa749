from django.apps import AppConfig


class StatespaceConfig(AppConfig):
    name = 'statespace'
    verbose_name = 'Multi-particle states and constant-weight sectors'
