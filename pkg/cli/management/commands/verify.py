from django.conf import settings
from django.core.management.base import CommandError

from cli.base import ReportCommand
from cli.models import EXIT_FAIL, EXIT_USAGE, EXIT_VACUOUS, RunConfig
from cli.options import add_model_arguments, add_units_argument, model_from_options, parse_weight
from cli.reports import display_weight, write_context_table, write_trial_table
from relations.residuals import relation_sweep
from statespace.models import SystemShape
from statespace.states import sample_state, superpose
from weights.builders import achievable_weights
from weights.models import as_weight


class Command(ReportCommand):
    help = 'Sample sector states and check every linear relation on their marginal diagonals.'

    def add_arguments(self, parser):
        add_model_arguments(parser)
        parser.add_argument('--n', type=int, required=True, help='number of particles')
        parser.add_argument('--w', type=parse_weight, required=True, help='sector weight (doubled units)')
        parser.add_argument('--seed', type=int, default=None, help='seed of the first trial; trial k uses seed + k')
        parser.add_argument('--trials', type=int, default=10)
        parser.add_argument('--m-min', type=int, default=1)
        parser.add_argument('--m-max', type=int, default=None)
        parser.add_argument('--tolerance', type=float, default=None)
        parser.add_argument('--break-weight', action='store_true', help='mix in a second sector (negative control)')
        parser.add_argument('--contexts', action='store_true', help='one row per (trial, M, I0) instead of per trial')
        add_units_argument(parser)

    def handle(self, *args, **options):
        model = model_from_options(options)
        shape = SystemShape(model=model, n=options['n'])
        w = as_weight(options['w'], model.cartan_dim)
        seed = settings.CWRDM['DEFAULT_SEED'] if options['seed'] is None else options['seed']
        tolerance = settings.CWRDM['RESIDUAL_TOLERANCE'] if options['tolerance'] is None else options['tolerance']
        m_max = shape.n - 1 if options['m_max'] is None else options['m_max']
        m_values = range(options['m_min'], m_max + 1)
        if options['trials'] < 1 or not m_values or options['m_min'] < 1 or m_max > shape.n - 1:
            raise CommandError('need trials >= 1 and 1 <= m-min <= m-max <= N - 1', returncode=EXIT_USAGE)

        achievable = achievable_weights(model, shape.n)
        if w not in achievable:
            raise CommandError('sector %s is empty for N=%d' % (display_weight(w, 'doubled'), shape.n), returncode=EXIT_VACUOUS)
        other = None
        if options['break_weight']:
            others = sorted((v for v in achievable if v != w), key=lambda v: (sum(abs(a - b) for a, b in zip(v, w)), v))
            if not others:
                raise CommandError('no second sector to mix in', returncode=EXIT_USAGE)
            other = others[0]

        run = RunConfig(
            command='verify', model=model, seed=seed, tolerance=tolerance, units=options['units'],
            parameters=(
                ('n', shape.n), ('w', display_weight(w, 'doubled')), ('trials', options['trials']),
                ('m', '%d..%d' % (m_values.start, m_values.stop - 1)),
                ('break_weight', display_weight(other, 'doubled') if other else 'no'),
            ),
        )
        self.write_header(run)

        rows, details = [], []
        for trial in range(options['trials']):
            state = sample_state(shape, w, seed + trial)
            if other is not None:
                state = superpose([state, sample_state(shape, other, seed + trial)])
            results = relation_sweep(state, w, m_values=m_values)
            feasible = [r for r in results if not r.vacuous]
            rows.append({
                'trial': trial,
                'seed': seed + trial,
                'contexts': len(results),
                'vacuous': len(results) - len(feasible),
                'max_residual': max((r.max_residual for r in feasible), default=0.0),
                'max_relative': max((max(r.relative) for r in feasible), default=0.0),
            })
            details.extend(results)

        if options['contexts']:
            write_context_table(self.stdout, details, str(model), options['units'])
        else:
            write_trial_table(self.stdout, rows)
        worst = max(row['max_residual'] for row in rows)
        vacuous = sum(row['vacuous'] for row in rows)
        verdict = 'pass' if worst <= tolerance else 'fail'
        self.stdout.write('# max_residual=%.3e vacuous=%d contexts=%d verdict=%s' % (
            worst, vacuous, sum(row['contexts'] for row in rows), verdict))
        if verdict == 'fail':
            raise CommandError('residual %.3e exceeds tolerance %g' % (worst, tolerance), returncode=EXIT_FAIL)
