import io
import json
import tempfile
from pathlib import Path

import numpy as np
from django.apps import apps
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from marginals.certificate import family_from_state
from marginals.models import MarginalFamily
from marginals.serializers import MarginalFamilySerializer
from statespace.models import SystemShape
from statespace.serializers import StateSerializer
from statespace.states import basis_state, sample_state, superpose
from weights.builders import spin_model

from .management.commands.partitions import Command as PartitionsCommand
from .management.commands.witness import Command as WitnessCommand
from .models import EXIT_FAIL, EXIT_IO, EXIT_USAGE, EXIT_VACUOUS, RunConfig


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        workdir = tempfile.TemporaryDirectory()
        self.addCleanup(workdir.cleanup)
        self.workdir = Path(workdir.name)

    def run_command(self, *args):
        out, err = io.StringIO(), io.StringIO()
        call_command(*args, stdout=out, stderr=err)
        return out.getvalue()

    def assert_exit(self, code, *args):
        out, err = io.StringIO(), io.StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command(*args, stdout=out, stderr=err)
        self.assertEqual(ctx.exception.returncode, code, str(ctx.exception))
        return out.getvalue()

    def write_json(self, name, data):
        path = self.workdir / name
        path.write_text(json.dumps(data))
        return str(path)

    def family_file(self, state, name='family.json'):
        return self.write_json(name, MarginalFamilySerializer(family_from_state(state)).data)


class PartitionsCommandTests(CommandTestCase):
    def test_reproduces_table_in_spin_units(self):
        output = self.run_command('partitions', '--spin', '2', '--slots', '4', '--target', '2', '0', '-2', '--units', 'spin')
        lines = output.splitlines()
        self.assertTrue(lines[0].startswith('# cwrdm 0.1.0 command=partitions'))
        self.assertIn('# target=1 partitions=2 rank_A=2 rank_A_tilde=3 witness=yes', lines)
        self.assertIn('1 1 0 -1,1,1,2', lines)
        self.assertIn('1 0 0 0,0,3,1', lines)
        self.assertIn('b,-5/4,-1/4,3/4', lines)
        self.assertIn('# target=0 partitions=3 rank_A=2 rank_A_tilde=2 witness=no', lines)
        self.assertIn('1 0 0 -1,1,2,1', lines)
        self.assertIn('b,-1,0,1', lines)
        self.assertIn('# target=-1 partitions=2 rank_A=2 rank_A_tilde=3 witness=yes', lines)
        self.assertIn('1 0 -1 -1,2,1,1', lines)
        self.assertIn('b,-3/4,1/4,5/4', lines)

    def test_doubled_units(self):
        output = self.run_command('partitions', '--spin', '2', '--slots', '4', '--target', '2')
        self.assertIn('b,-5/2,-1/2,3/2', output.splitlines())

    def test_vacuous_target(self):
        output = self.assert_exit(EXIT_VACUOUS, 'partitions', '--spin', '2', '--slots', '4', '--target', '99')
        self.assertIn('# target=99 vacuous: no partitions', output)

    def test_mixed_targets_pass(self):
        output = self.run_command('partitions', '--spin', '1', '--slots', '3', '--target', '1', '99')
        self.assertIn('vacuous', output)

    def test_json(self):
        output = self.run_command('partitions', '--spin', '1', '--slots', '3', '--target', '1', '--format', 'json')
        data = json.loads(output)
        self.assertEqual(data['provenance']['command'], 'partitions')
        (block,) = data['blocks']
        self.assertEqual(block['partitions'], [{'weights': ['1', '1', '-1'], 'frequencies': [1, 2]}])
        self.assertEqual(block['b'], [['-4/3', '2/3']])

    def test_matrix_format(self):
        output = self.run_command('partitions', '--spin', '2', '--slots', '4', '--target', '2', '99', '--format', 'matrix')
        lines = output.splitlines()
        start = lines.index('# D=3 slots=4 target=2 kind=linear-weight')
        self.assertEqual(lines[start + 1:start + 4], ['n_1,n_2,n_3', '1,1,2', '0,3,1'])
        self.assertEqual(lines[-1], '# target=99 vacuous: no partitions')

    def test_vector_targets(self):
        output = self.run_command('partitions', '--su3', '--slots', '3', '--target=0,0')
        self.assertIn('b[1],-1,0,1', output.splitlines())
        self.assertIn('b[2],1,-2,1', output.splitlines())

    def test_direct_sum(self):
        output = self.run_command('partitions', '--spin', '1', '--spin', '1', '--slots', '1', '--target', '1')
        self.assertIn('partition,n_1,n_2,n_3,n_4', output)

    def test_wrong_target_length(self):
        self.assert_exit(EXIT_USAGE, 'partitions', '--su3', '--slots', '2', '--target', '1')

    def test_bad_arguments_exit_with_usage_code(self):
        for argv in (
            ['manage.py', 'partitions', '--spin', '2', '--slots', 'x', '--target', '0'],
            ['manage.py', 'partitions', '--spin', '2', '--su3', '--slots', '2', '--target', '0'],
            ['manage.py', 'partitions', '--slots', '2', '--target', '0'],
        ):
            with self.subTest(argv=argv):
                with self.assertRaises(SystemExit) as ctx:
                    PartitionsCommand(stdout=io.StringIO(), stderr=io.StringIO()).run_from_argv(argv)
                self.assertEqual(ctx.exception.code, EXIT_USAGE)


class VerifyCommandTests(CommandTestCase):
    def test_sector_states_pass(self):
        output = self.run_command('verify', '--spin', '1', '--n', '4', '--w', '0', '--trials', '100', '--seed', '7')
        self.assertIn('verdict=pass', output)
        self.assertIn('# n=4 w=0 trials=100 m=1..3 break_weight=no seed=7 tolerance=1e-10 units=doubled', output)

    def test_break_weight_fails(self):
        output = self.assert_exit(EXIT_FAIL, 'verify', '--spin', '1', '--n', '4', '--w', '0', '--trials', '3', '--break-weight')
        self.assertIn('verdict=fail', output)

    def test_negative_seed_is_a_usage_error(self):
        self.assert_exit(EXIT_USAGE, 'verify', '--spin', '1', '--n', '4', '--w', '0', '--seed', '-1')
        self.assert_exit(EXIT_USAGE, 'sample', '--spin', '1', '--n', '4', '--seed', '-1')

    def test_two_particles(self):
        self.assertIn('verdict=pass', self.run_command('verify', '--spin', '1', '--n', '2', '--w', '0'))

    def test_empty_sector(self):
        self.assert_exit(EXIT_VACUOUS, 'verify', '--spin', '1', '--n', '2', '--w', '4')

    def test_context_rows(self):
        output = self.run_command('verify', '--spin', '2', '--n', '3', '--w', '2', '--trials', '1', '--contexts', '--m-max', '1')
        rows = [line for line in output.splitlines() if not line.startswith('#')]
        self.assertEqual(rows[0], 'N,model,w,M,I0,S,b,residual,vacuous')
        self.assertEqual(len(rows), 1 + 3)
        self.assertTrue(rows[1].startswith('3,spin two_j=2,2,1,1,4,-4 -2 0,'))

    @override_settings(CWRDM={
        'RESIDUAL_TOLERANCE': 1e-10, 'CERTIFY_TOLERANCE': 1e-6, 'EIGEN_TOLERANCE': 1e-10,
        'NORM_TOLERANCE': 1e-12, 'DEFAULT_SEED': 42,
    })
    def test_default_seed_from_settings(self):
        self.assertIn('seed=42', self.run_command('verify', '--spin', '1', '--n', '3', '--w', '1', '--trials', '1'))

    def test_units_do_not_change_the_verdict(self):
        for units in ('doubled', 'spin'):
            self.assert_exit(EXIT_FAIL, 'verify', '--spin', '2', '--n', '3', '--w', '0', '--trials', '2', '--break-weight', '--units', units)


class CertifyCommandTests(CommandTestCase):
    def test_sector_family(self):
        state = sample_state(SystemShape(model=spin_model(1), n=4), 0, 3)
        output = self.run_command('certify', '--family', self.family_file(state))
        self.assertIn('consistent(0)', output.splitlines())
        self.assertIn('pivot,I0,mass,candidate,residual', output)

    def test_two_sector_family(self):
        shape = SystemShape(model=spin_model(1), n=4)
        state = superpose([sample_state(shape, 2, 1), sample_state(shape, -2, 2)])
        output = self.assert_exit(EXIT_FAIL, 'certify', '--family', self.family_file(state), '--pivot', '1')
        self.assertIn('inconsistent', output.splitlines())

    def test_zero_population_pivot(self):
        shape = SystemShape(model=spin_model(1), n=3)
        zero = np.zeros((4, 4))
        family = MarginalFamily(shape=shape, entries={(0, 1): zero, (0, 2): zero, (1, 2): zero})
        path = self.write_json('zero.json', MarginalFamilySerializer(family).data)
        output = self.assert_exit(EXIT_VACUOUS, 'certify', '--family', path, '--pivot', '1')
        self.assertIn('underdetermined', output.splitlines())

    def test_spin_units(self):
        state = basis_state(SystemShape(model=spin_model(2), n=3), (2, 2, 1))
        output = self.run_command('certify', '--family', self.family_file(state), '--units', 'spin')
        self.assertIn('consistent(2)', output.splitlines())

    def test_missing_pairs(self):
        state = sample_state(SystemShape(model=spin_model(1), n=4), 0, 3)
        data = MarginalFamilySerializer(family_from_state(state, pivot=0)).data
        path = self.write_json('star.json', data)
        self.assert_exit(EXIT_USAGE, 'certify', '--family', path)
        self.assertIn('consistent(0)', self.run_command('certify', '--family', path, '--pivot', '1'))

    def test_malformed_json(self):
        path = self.workdir / 'broken.json'
        path.write_text('{"model": ')
        self.assert_exit(EXIT_USAGE, 'certify', '--family', str(path))

    def test_invalid_payload(self):
        path = self.write_json('bad.json', {'model': {'weights': [[-1], [1]]}, 'N': 1, 'pairs': []})
        self.assert_exit(EXIT_USAGE, 'certify', '--family', path)

    def test_missing_file(self):
        self.assert_exit(EXIT_IO, 'certify', '--family', str(self.workdir / 'absent.json'))


class WitnessCommandTests(CommandTestCase):
    def rows(self, output):
        return [line for line in output.splitlines() if not line.startswith('#')]

    def test_doublet(self):
        self.assertEqual(self.rows(self.run_command('witness', '--spin', '1', '--n', '4', '--w', '0'))[1], '1,1,1,-4/3 2/3,-2/3')

    def test_doublet_spin_up(self):
        rows = self.rows(self.run_command('witness', '--spin', '1', '--n', '4', '--w', '0', '--i0', '2'))
        self.assertEqual(rows[1], '1,2,-1,-2/3 4/3,2/3')

    def test_spin_one(self):
        rows = self.rows(self.run_command('witness', '--spin', '2', '--n', '5', '--w', '0'))
        self.assertTrue(rows[1].endswith(',-3/2'))

    def test_small_systems_refused(self):
        self.assert_exit(EXIT_VACUOUS, 'witness', '--spin', '1', '--n', '3', '--w', '0')

    def test_state_file(self):
        state = sample_state(SystemShape(model=spin_model(1), n=4), 0, 12)
        path = self.write_json('state.json', StateSerializer(state).data)
        output = self.run_command('witness', '--state', path)
        self.assertIn('traced,deviation', output)
        line = [ln for ln in output.splitlines() if ln.startswith('# max_deviation=')][0]
        self.assertGreater(float(line.split('=')[1]), 1e-3)

    def test_help_points_at_explicit_context(self):
        self.assertIn('--i0', WitnessCommand.help)

    def test_small_state_reports_deviation_before_refusing(self):
        shape = SystemShape(model=spin_model(1), n=2)
        bell = superpose([basis_state(shape, (0, 1)), basis_state(shape, (1, 0))])
        path = self.write_json('bell.json', StateSerializer(bell).data)
        output = self.assert_exit(EXIT_VACUOUS, 'witness', '--state', path)
        self.assertIn('traced,deviation', output)
        line = [ln for ln in output.splitlines() if ln.startswith('# max_deviation=')][0]
        self.assertLess(float(line.split('=')[1]), 1e-12)

    def test_needs_sector(self):
        self.assert_exit(EXIT_USAGE, 'witness', '--spin', '1', '--n', '4')


class StateCommandTests(CommandTestCase):
    def test_sample_is_deterministic(self):
        args = ('sample', '--spin', '1', '--n', '3', '--w', '1', '--seed', '5')
        first, second = self.run_command(*args), self.run_command(*args)
        self.assertEqual(first, second)
        data = json.loads(first)
        self.assertEqual(data['support_weight'], [1])
        self.assertEqual(len(data['amplitudes']), 3)

    def test_sample_to_file_then_trace(self):
        state_path = self.workdir / 'state.json'
        self.run_command('sample', '--spin', '2', '--n', '4', '--w', '0', '--seed', '1', '--output', str(state_path))
        output = self.run_command('trace_state', '--state', str(state_path), '--trace', '1,4')
        data = json.loads(output)
        self.assertEqual(data['kept'], [2, 3])
        self.assertEqual(len(data['matrix']), 81)
        self.assertAlmostEqual(data['trace'], 1.0, places=12)

    def test_trace_everything_rejected(self):
        state = sample_state(SystemShape(model=spin_model(1), n=2), 0, 0)
        path = self.write_json('state.json', StateSerializer(state).data)
        self.assert_exit(EXIT_USAGE, 'trace_state', '--state', path, '--trace', '1,2')


class RunConfigTests(SimpleTestCase):
    def test_header(self):
        run = RunConfig(command='verify', model=spin_model(1), parameters=(('n', 4),), seed=7, tolerance=1e-10)
        self.assertEqual(run.header_lines(), [
            '# cwrdm 0.1.0 command=verify',
            '# model=spin two_j=1 cartan_dim=1 weights=-1 1',
            '# n=4 seed=7 tolerance=1e-10 units=doubled',
        ])

    def test_tolerance_must_be_positive(self):
        from django.core.exceptions import ValidationError
        with self.assertRaises(ValidationError):
            RunConfig(command='verify', tolerance=0.0)


class ProjectSettingsTests(SimpleTestCase):
    def test_no_database_apps(self):
        self.assertFalse(apps.is_installed('django.contrib.auth'))
        self.assertFalse(apps.is_installed('django.contrib.contenttypes'))
        self.assertTrue(all(not config.get_models() for config in apps.get_app_configs()))

    def test_requirements_pinned(self):
        lines = [line for line in (settings.BASE_DIR / 'requirements.txt').read_text().splitlines() if line]
        names = {line.split('==')[0] for line in lines}
        self.assertTrue(all('==' in line for line in lines))
        self.assertIn('Django', names)
        self.assertNotIn('typing_extensions', names)
