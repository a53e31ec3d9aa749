import json

from django.core.management.base import CommandError

from cli.base import ReportCommand
from cli.models import EXIT_VACUOUS, RunConfig
from cli.options import add_model_arguments, add_units_argument, model_from_options, parse_weight
from cli.reports import display_value, display_weight, write_partition_block
from partitions.enumeration import enumerate_partitions
from partitions.models import FrequencyMatrix
from partitions.rank import rank_analysis
from partitions.serializers import write_frequency_matrix
from relations.coefficients import b_vector


class Command(ReportCommand):
    help = 'Partitions, frequency matrix, b vectors and ranks for each target weight.'

    def add_arguments(self, parser):
        add_model_arguments(parser)
        parser.add_argument('--slots', type=int, required=True, help='number of free particles N - M')
        parser.add_argument('--target', type=parse_weight, nargs='+', required=True, help='target weights S (doubled units)')
        parser.add_argument(
            '--format', choices=('csv', 'json', 'matrix'), default='csv',
            help='matrix writes only the frequency matrices, targets in doubled units',
        )
        add_units_argument(parser)

    def handle(self, *args, **options):
        model = model_from_options(options)
        slots, units = options['slots'], options['units']
        run = RunConfig(
            command='partitions', model=model, units=units,
            parameters=(('slots', slots), ('targets', ' '.join(display_weight(t, 'doubled') for t in options['target']))),
        )
        blocks = []
        for target in options['target']:
            partitions = enumerate_partitions(model, slots, target)
            if partitions:
                matrix = self.frequency_matrix(model, slots, target, partitions)
                blocks.append((target, partitions, b_vector(model, slots, target), rank_analysis(matrix)))
            else:
                blocks.append((target, [], [], None))

        if options['format'] == 'matrix':
            self.write_header(run)
            for target, partitions, _, _ in blocks:
                if partitions:
                    write_frequency_matrix(self.frequency_matrix(model, slots, target, partitions), self.stdout)
                else:
                    self.stdout.write('# target=%s vacuous: no partitions' % display_weight(target, 'doubled'))
        elif options['format'] == 'json':
            self.stdout.write(json.dumps({'provenance': run.as_dict(), 'blocks': [
                self.block_as_dict(*block, units=units) for block in blocks
            ]}, indent=2))
        else:
            self.write_header(run)
            for block in blocks:
                write_partition_block(self.stdout, *block, units=units)

        if all(not partitions for _, partitions, _, _ in blocks):
            raise CommandError('every target is vacuous', returncode=EXIT_VACUOUS)

    @staticmethod
    def frequency_matrix(model, slots, target, partitions):
        return FrequencyMatrix(rows=tuple(p.frequencies for p in partitions), model=model, slots=slots, target=target)

    @staticmethod
    def block_as_dict(target, partitions, bs, report, units):
        if not partitions:
            return {'target': display_weight(target, units), 'vacuous': True, 'partitions': []}
        return {
            'target': display_weight(target, units),
            'vacuous': False,
            'partitions': [
                {'weights': [display_weight(w, units) for w in p.weights], 'frequencies': list(p.frequencies)}
                for p in partitions
            ],
            'b': [[display_value(v, units) for v in b.values] for b in bs],
            'rank_A': report.rank_a,
            'rank_A_tilde': report.rank_a_tilde,
            'witness': None if report.witness_b is None else [str(v) for v in report.witness_b],
        }
