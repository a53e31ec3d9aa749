from django.core.management.base import CommandError

from cli.base import ReportCommand
from cli.models import EXIT_USAGE, EXIT_VACUOUS, RunConfig
from cli.options import (
    add_model_arguments, add_units_argument, load, model_from_options, parse_positions, parse_weight,
)
from cli.reports import display_index, display_value, display_weight, write_deviation_table, writer
from relations.perfect import impossibility_witness, perfect_deviation
from statespace.serializers import StateSerializer


class Command(ReportCommand):
    help = (
        'Exhibit the context that rules out perfect tensors in a constant-weight sector. '
        'The first context in search order is shown; pass --i0 to evaluate a specific one.'
    )

    def add_arguments(self, parser):
        add_model_arguments(parser, required=False)
        parser.add_argument('--n', type=int, help='number of particles (taken from --state if given)')
        parser.add_argument('--w', type=parse_weight, help='sector weight (doubled units)')
        parser.add_argument(
            '--i0', type=parse_positions,
            help='1-based basis indices of the fixed particles, e.g. --i0 2 for the spin-up context of spin 1/2',
        )
        parser.add_argument('--state', metavar='FILE', help='also report how far this state is from perfect')
        add_units_argument(parser)

    def handle(self, *args, **options):
        state = load(options['state'], StateSerializer) if options['state'] else None
        model = model_from_options(options) or (state.shape.model if state else None)
        n = options['n'] or (state.shape.n if state else None)
        w = options['w'] or (state.support_weight if state else None)
        if model is None or n is None or w is None:
            raise CommandError('give a model, --n and --w, or a --state declaring its sector', returncode=EXIT_USAGE)
        units = options['units']
        run = RunConfig(
            command='witness', model=model, units=units,
            parameters=(('n', n), ('w', display_weight(w, 'doubled'))),
        )
        witness = impossibility_witness(model, n, w, i0=options['i0']) if n >= 4 else None
        self.write_header(run)
        if state is not None:
            deviation = perfect_deviation(state)
            write_deviation_table(self.stdout, deviation)
            self.stdout.write('# max_deviation=%.6e' % deviation.max_deviation)
        if witness is None:
            raise CommandError(
                'no witness context for N=%d: it needs M >= 1 with M + 1 <= N // 2' % n,
                returncode=EXIT_VACUOUS,
            )
        out = writer(self.stdout)
        out.writerow(['M', 'I0', 'S', 'b', 'sum_b'])
        out.writerow([
            witness.m, display_index(witness.i0), display_weight(witness.s, units),
            ' '.join(display_value(v, units) for v in witness.b.values), display_value(witness.contradiction, units),
        ])
