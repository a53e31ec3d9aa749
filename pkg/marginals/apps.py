from django.apps import AppConfig


class MarginalsConfig(AppConfig):
    name = 'marginals'
    verbose_name = 'Two-body marginal certificates'
