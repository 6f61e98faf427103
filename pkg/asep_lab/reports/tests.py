import io
import json
import tempfile
from fractions import Fraction
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from dynamics.estimators import Estimate
from generator.params import EXACT, FLOAT, ModelParams
from generator.utils import build_H
from lattice.configurations import Occupation, Positions
from measures.distributions import shock_profile
from qring.polynomials import ONE, Q
from reports.checks import CheckReport
from reports.forms import RunConfigForm, default_dual_grid, default_start, parse_dual, read_config_file
from reports.models import RelationResult, SimulationRecord, VerificationRun
from reports.utils import (
    estimator_record,
    read_matrix_header,
    write_json_lines,
    write_matrix,
    write_profile,
)


def form_options(**overrides):
    options = {'default_ring': EXACT, 'default_L': 1}
    options.update(overrides)
    return options


class CheckReportTests(SimpleTestCase):
    def test_passing_lines(self):
        report = CheckReport('demo')
        report.record('x=x', True)
        self.assertTrue(report.passed)
        self.assertIsNone(report.first_failure)
        self.assertEqual(report.lines(), ['RELATION x=x PASS'])

    def test_failure_carries_first_entry(self):
        report = CheckReport('demo')
        report.record('x=x', True)
        report.record('[A,B]=0', False, 3, 7, Q - ONE)
        self.assertFalse(report.passed)
        self.assertEqual(report.first_failure.name, '[A,B]=0')
        self.assertEqual(report.lines()[1], f'RELATION [A,B]=0 FAIL 3 7 {Q - ONE}')

    def test_record_close(self):
        report = CheckReport('demo')
        self.assertTrue(report.record_close('small', 1e-14, 1e-12).passed)
        outcome = report.record_close('large', 2e-3, 1e-12)
        self.assertFalse(outcome.passed)
        self.assertEqual(outcome.residual, '2.000e-03')

    def test_extend_and_lookup(self):
        first, second = CheckReport('a'), CheckReport('b')
        first.record('one', True)
        second.record('two', False)
        first.extend(second)
        self.assertFalse(first['two'].passed)
        with self.assertRaises(KeyError):
            first['three']


class RunConfigFormTests(SimpleTestCase):
    def test_defaults(self):
        form = RunConfigForm.from_options(form_options())
        self.assertTrue(form.is_valid(), form.errors)
        params = form.cleaned_data['params']
        self.assertEqual((params.L, params.r, params.ell), (1, 2, Fraction(1, 2)))
        self.assertEqual(form.cleaned_data['t'], [0.0, 1.0])
        self.assertEqual(form.cleaned_data['ring'], EXACT)
        self.assertNotIn('sector', form.cleaned_data)

    def test_q_and_w(self):
        form = RunConfigForm.from_options(form_options(L=2, q='3', w='2'))
        self.assertTrue(form.is_valid(), form.errors)
        params = form.cleaned_data['params']
        self.assertEqual((params.r, params.ell), (6, Fraction(2, 3)))

    def test_rates_and_scales_exclude_each_other(self):
        form = RunConfigForm.from_options(form_options(r='2', ell='1', q='2', w='1'))
        self.assertFalse(form.is_valid())

    def test_rates_come_in_pairs(self):
        self.assertFalse(RunConfigForm.from_options(form_options(r='2')).is_valid())

    def test_nonpositive_rate(self):
        self.assertFalse(RunConfigForm.from_options(form_options(r='0', ell='1')).is_valid())

    def test_zero_size(self):
        self.assertFalse(RunConfigForm.from_options(form_options(L=0)).is_valid())

    def test_invalid_sector(self):
        self.assertFalse(RunConfigForm.from_options(form_options(L=1, N=2, M=1)).is_valid())

    def test_sector(self):
        form = RunConfigForm.from_options(form_options(L=2, N=1))
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual((form.cleaned_data['sector'].N, form.cleaned_data['sector'].M), (1, 0))

    def test_times(self):
        form = RunConfigForm.from_options(form_options(t='0.25, 1,4'))
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['t'], [0.25, 1.0, 4.0])
        self.assertFalse(RunConfigForm.from_options(form_options(t='-1')).is_valid())
        self.assertFalse(RunConfigForm.from_options(form_options(t='soon')).is_valid())

    def test_flags_override_config_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'run.cfg'
            path.write_text('# desk run\nL = 2\nseed = 7\nt = 0.5\n')
            form = RunConfigForm.from_options(form_options(config=str(path), seed=11))
            self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['params'].L, 2)
        self.assertEqual(form.cleaned_data['seed'], 11)
        self.assertEqual(form.cleaned_data['t'], [0.5])

    def test_config_file_rejects_unknown_keys(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'run.cfg'
            path.write_text('temperature = 3\n')
            with self.assertRaisesMessage(Exception, 'run.cfg:1'):
                read_config_file(path)

    def test_dual_coordinates(self):
        self.assertEqual(parse_dual('0A0B', 2), Positions(2, (0,), (2,)))
        grid = default_dual_grid(2)
        self.assertEqual(len(grid), 5)
        self.assertEqual({(z.N, z.M) for z in grid}, {(1, 0), (0, 1), (1, 1)})
        self.assertEqual(str(default_start(2)), 'A0B0')

    def test_dual_coordinates_on_wrong_lattice(self):
        with self.assertRaises(Exception):
            parse_dual('A0', 2)


class EmitterTests(SimpleTestCase):
    def test_matrix_header(self):
        stream = io.StringIO()
        params = ModelParams.default(1)
        H = build_H(params, EXACT)
        write_matrix(H, stream, params)
        lines = stream.getvalue().splitlines()
        self.assertEqual(lines[0], '9 Full 1 - - 2 1/2')
        self.assertEqual(len(lines), 1 + H.nnz)
        self.assertEqual(read_matrix_header(lines[0]), (9, 'Full', 1, None, '2', '1/2'))

    def test_float_matrix_values_are_exact_text(self):
        stream = io.StringIO()
        params = ModelParams.default(1)
        write_matrix(build_H(params, FLOAT), stream, params)
        values = {line.split()[2] for line in stream.getvalue().splitlines()[1:]}
        self.assertIn('-2.0', values)
        self.assertIn('-0.5', values)

    def test_profile_csv(self):
        stream = io.StringIO()
        write_profile(shock_profile(Occupation.A, 0.0, ModelParams.default(2)).table(2), stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual(lines[0], 'site,density')
        self.assertEqual([line.split(',')[0] for line in lines[1:]], ['-1', '0', '1', '2'])

    def test_estimator_records(self):
        z = Positions(2, (1,))
        record = estimator_record(z, 0.0, Estimate(0.25, 0.0, 10), 0.25)
        self.assertEqual(record['z_score'], 0.0)
        stream = io.StringIO()
        write_json_lines([record], stream)
        self.assertEqual(json.loads(stream.getvalue()), record)
        self.assertNotIn('prediction', estimator_record(z, 1.0, Estimate(0.25, 0.1, 10)))


class VerifyCommandTests(TestCase):
    def test_duality_suite(self):
        out = io.StringIO()
        call_command('verify', 'duality', '--L', '1', stdout=out)
        self.assertIn('RELATION DH=HtD PASS', out.getvalue())
        run = VerificationRun.objects.get()
        self.assertEqual(run.status, 'PASS')
        self.assertIsNotNone(run.finished)
        self.assertTrue(run.relations.filter(name='DH=HtD', passed=True).exists())
        self.assertFalse(RelationResult.objects.filter(passed=False).exists())

    def test_algebra_suite(self):
        out = io.StringIO()
        call_command('verify', 'algebra', '--L', '1', stdout=out)
        self.assertIn('RELATION [H,Y1+]=0 PASS', out.getvalue())

    def test_usage_error(self):
        with self.assertRaises(CommandError) as caught:
            call_command('verify', 'all', '--L', '0', stdout=io.StringIO())
        self.assertEqual(caught.exception.returncode, 2)
        self.assertFalse(VerificationRun.objects.exists())

    def test_capacity_breach_is_a_usage_error(self):
        with self.assertRaises(CommandError) as caught:
            call_command('verify', 'algebra', '--L', '3', stdout=io.StringIO())
        self.assertEqual(caught.exception.returncode, 2)

    def test_reversibility_at_largest_exact_size(self):
        out = io.StringIO()
        call_command('verify', 'reversibility', '--L', '3', stdout=out)
        self.assertIn('RELATION H pi = pi H^T PASS', out.getvalue())
        self.assertIn('# conjugation lemma, L=2', out.getvalue())
        self.assertEqual(VerificationRun.objects.get().status, 'PASS')

    def test_measures_suite_covers_a_second_asymmetry(self):
        out = io.StringIO()
        call_command('verify', 'measures', '--L', '1', stdout=out)
        self.assertIn('# pure measures nu=0.0 mu=0.0, ', out.getvalue())
        self.assertEqual(VerificationRun.objects.get().status, 'PASS')
        titles = set(VerificationRun.objects.get().relations.values_list('title', flat=True))
        self.assertEqual(len([title for title in titles if title.startswith('pure measures nu=0.0 mu=0.0')]), 2)


class MeasureCommandTests(TestCase):
    def test_empty_sector(self):
        out = io.StringIO()
        call_command('measure', 'canonical', '--N', '0', '--M', '0', stdout=out)
        self.assertEqual(out.getvalue().splitlines(), ['config,weight', '00,1.0'])

    def test_exact_canonical(self):
        out = io.StringIO()
        call_command('measure', 'canonical', '--N', '1', '--ring', 'exact', stdout=out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], 'config,weight')
        self.assertEqual(lines[-1].split(',')[0], 'Z')
        self.assertEqual(len(lines), 4)

    def test_partition_listing(self):
        out = io.StringIO()
        call_command('measure', 'partition', '--L', '2', stdout=out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], 'N,M,Z')
        self.assertEqual(len(lines), 1 + 15)
        self.assertIn('0,0,1*q^0', lines)

    def test_profile_written_to_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'profile.csv'
            call_command('measure', 'profile', '--L', '3', '--species', 'B', '--mu', '0.5', '--out', str(path))
            lines = path.read_text().splitlines()
        self.assertEqual(lines[0], 'site,density')
        self.assertEqual(len(lines), 7)

    def test_lambda_table(self):
        out = io.StringIO()
        call_command('measure', 'lambda', '--L', '1', stdout=out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], 'N,M,Nprime,Mprime,lambda_poly')
        self.assertEqual(len(lines), 1 + 6 * 6)


class SimulateCommandTests(TestCase):
    def test_time_zero_has_zero_z_scores(self):
        out = io.StringIO()
        call_command('simulate', '--L', '2', '--t', '0', '--trajectories', '50', stdout=out, stderr=io.StringIO())
        rows = [json.loads(line) for line in out.getvalue().splitlines()]
        self.assertEqual(len(rows), 5)
        self.assertTrue(all(row['z_score'] == 0.0 for row in rows))
        self.assertEqual(SimulationRecord.objects.count(), 5)

    def test_same_seed_same_output(self):
        outputs = []
        for _ in range(2):
            out = io.StringIO()
            call_command(
                'simulate', '--L', '1', '--z', 'A0', '--z', '0B', '--t', '1', '--trajectories', '400',
                '--seed', '5', stdout=out, stderr=io.StringIO(),
            )
            outputs.append(out.getvalue())
        self.assertEqual(outputs[0], outputs[1])
        record = SimulationRecord.objects.first()
        self.assertEqual((record.seed, record.trajectories), (5, 400))
        self.assertFalse(record.is_hard_failure(5.0))

    def test_trajectory_log(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'path.csv'
            call_command(
                'simulate', '--L', '1', '--z', 'A0', '--t', '0.5', '--trajectories', '20',
                '--trajectory-log', str(path), stdout=io.StringIO(), stderr=io.StringIO(),
            )
            lines = path.read_text().splitlines()
        self.assertEqual(lines[0], 'time,config')
        self.assertEqual(lines[1], f'0.0,{default_start(1)}')

    def test_wrong_lattice_for_dual(self):
        with self.assertRaises(CommandError) as caught:
            call_command('simulate', '--L', '2', '--z', 'A0', stdout=io.StringIO())
        self.assertEqual(caught.exception.returncode, 2)


class DumpCommandTests(SimpleTestCase):
    def test_generator(self):
        out = io.StringIO()
        call_command('dump_generator', '--L', '1', stdout=out)
        self.assertEqual(out.getvalue().splitlines()[0], '9 Full 1 - - 2 1/2')

    def test_generator_sector(self):
        out = io.StringIO()
        call_command('dump_generator', '--L', '2', '--N', '1', '--M', '1', '--ring', 'float', stdout=out)
        self.assertEqual(out.getvalue().splitlines()[0], '12 Sector 2 1 1 2 1/2')

    def test_off_diagonal_part(self):
        out = io.StringIO()
        call_command('dump_generator', '--L', '1', '--part', 'H_o', stdout=out)
        for line in out.getvalue().splitlines()[1:]:
            row, col, _ = line.split(maxsplit=2)
            self.assertNotEqual(row, col)

    def test_symmetry_operator(self):
        out = io.StringIO()
        call_command('dump_symmetry', '--L', '1', '--operator', 'Y1+', stdout=out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], '9 Full 1 - - - -')
        self.assertEqual(len(lines), 1 + 6)
