import json

from django.conf import settings

from cli.base import ReportCommand
from cli.options import add_model_arguments, model_from_options, parse_weight
from statespace.models import SystemShape
from statespace.serializers import StateSerializer
from statespace.states import sample_state


class Command(ReportCommand):
    help = 'Emit a seeded random state, optionally confined to one sector, as JSON.'

    def add_arguments(self, parser):
        add_model_arguments(parser)
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--w', type=parse_weight, help='sector weight (doubled units); whole space if omitted')
        parser.add_argument('--seed', type=int, default=None)
        parser.add_argument('--output', metavar='FILE')

    def handle(self, *args, **options):
        shape = SystemShape(model=model_from_options(options), n=options['n'])
        seed = settings.CWRDM['DEFAULT_SEED'] if options['seed'] is None else options['seed']
        state = sample_state(shape, options['w'], seed)
        text = json.dumps(StateSerializer(state).data, indent=2)
        if options['output']:
            with open(options['output'], 'w') as handle:
                handle.write(text + '\n')
        else:
            self.stdout.write(text)
