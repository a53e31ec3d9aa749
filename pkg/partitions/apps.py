from django.apps import AppConfig


class PartitionsConfig(AppConfig):
    name = 'partitions'
    verbose_name = 'Constant-weight partitions and frequency matrices'
