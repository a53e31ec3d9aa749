import json

from cli.base import ReportCommand
from cli.options import load, parse_positions
from rdm.serializers import ReducedDensitySerializer
from rdm.traces import partial_trace
from statespace.serializers import StateSerializer


class Command(ReportCommand):
    help = 'Partial trace of a JSON state; writes the reduced density matrix as JSON.'

    def add_arguments(self, parser):
        parser.add_argument('--state', required=True, metavar='FILE')
        parser.add_argument('--trace', type=parse_positions, required=True, help='1-based particles to trace out, e.g. 1,4')
        parser.add_argument('--output', metavar='FILE', help='write here instead of stdout')

    def handle(self, *args, **options):
        state = load(options['state'], StateSerializer)
        reduced = partial_trace(state, options['trace'])
        text = json.dumps(ReducedDensitySerializer(reduced, context={'shape': state.shape}).data, indent=2)
        if options['output']:
            with open(options['output'], 'w') as handle:
                handle.write(text + '\n')
        else:
            self.stdout.write(text)
