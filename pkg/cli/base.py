import json
import logging
import sys
import time

from django.core.exceptions import ValidationError as DomainValidationError
from django.core.management.base import BaseCommand, CommandError
from django.utils import timezone
from rest_framework import serializers

from .models import EXIT_IO, EXIT_USAGE
from .options import describe_errors

logger = logging.getLogger(__name__)


class ReportCommand(BaseCommand):
    """Base for commands whose exit status is part of their output.

    Invalid input exits with 3 and unreadable files with 4, so that 1 and 2
    stay reserved for failing and vacuous results.
    """

    def run_from_argv(self, argv):
        self._called_from_command_line = True
        parser = self.create_parser(argv[0], argv[1])
        try:
            parser.parse_args(argv[2:])
        except SystemExit as exc:
            if exc.code:
                sys.exit(EXIT_USAGE)
            raise
        super().run_from_argv(argv)

    def execute(self, *args, **options):
        started = time.perf_counter()
        stamp = timezone.now().isoformat(timespec='seconds')
        try:
            return super().execute(*args, **options)
        except (DomainValidationError, serializers.ValidationError, json.JSONDecodeError) as exc:
            raise CommandError('invalid input: %s' % describe_errors(exc), returncode=EXIT_USAGE)
        except OSError as exc:
            raise CommandError('cannot access %s: %s' % (exc.filename or 'file', exc.strerror or exc), returncode=EXIT_IO)
        finally:
            elapsed = time.perf_counter() - started
            logger.info('%s finished in %.3fs', self.__module__.rsplit('.', 1)[-1], elapsed)
            self.stderr.write('# started=%s runtime=%.3fs' % (stamp, elapsed))

    def write_header(self, run):
        for line in run.header_lines():
            self.stdout.write(line)
