from django.apps import AppConfig


class RelationsConfig(AppConfig):
    name = 'relations'
    verbose_name = 'Linear relations among marginal diagonals'
