from django.core.management.base import CommandError

from cli.base import ReportCommand
from cli.models import EXIT_FAIL, EXIT_VACUOUS, RunConfig
from cli.options import add_units_argument, load
from cli.reports import display_weight, write_certificate_table
from marginals.certificate import constant_weight_certificate
from marginals.models import CertificateVerdict
from marginals.serializers import MarginalFamilySerializer


class Command(ReportCommand):
    help = 'Decide whether a family of two-body marginals lifts to a single constant-weight sector.'

    def add_arguments(self, parser):
        parser.add_argument('--family', required=True, metavar='FILE', help='marginal family JSON')
        parser.add_argument('--pivot', type=int, action='append', help='1-based pivot particle; repeatable, default all')
        parser.add_argument('--tolerance', type=float, default=None)
        add_units_argument(parser)

    def handle(self, *args, **options):
        family = load(options['family'], MarginalFamilySerializer)
        pivots = None if not options['pivot'] else [p - 1 for p in options['pivot']]
        verdict = constant_weight_certificate(family, pivots=pivots, tolerance=options['tolerance'])
        units = options['units']
        run = RunConfig(
            command='certify', model=family.shape.model, tolerance=options['tolerance'], units=units,
            parameters=(
                ('n', family.shape.n),
                ('pivots', ','.join(str(p) for p in options['pivot']) if options['pivot'] else 'all'),
            ),
        )
        self.write_header(run)
        if verdict.is_consistent:
            self.stdout.write('consistent(%s)' % display_weight(verdict.w0, units))
        else:
            self.stdout.write(str(verdict))
        self.stdout.write('# spread=%.3e snap_distance=%.3e' % (verdict.spread, verdict.snap_distance))
        write_certificate_table(self.stdout, verdict, units)

        if verdict.status == CertificateVerdict.INCONSISTENT:
            raise CommandError('marginals are inconsistent with a single weight', returncode=EXIT_FAIL)
        if verdict.status == CertificateVerdict.UNDERDETERMINED:
            raise CommandError('pivot has no population; the condition is vacuous', returncode=EXIT_VACUOUS)
