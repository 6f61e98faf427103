import logging

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from dynamics.estimators import duality_rhs, estimate_Q
from dynamics.simulation import SimState, run_trajectory
from generator.params import FLOAT
from lattice.configurations import Config, Sector
from measures.distributions import Measure, canonical
from reports.forms import RunConfigForm, add_run_arguments, default_dual_grid, default_start, parse_dual
from reports.models import SimulationRecord
from reports.utils import estimator_record, open_output, write_json_lines, write_trajectory

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Estimate <Q_z(t)> by Monte-Carlo and compare it with the prediction of the self-duality'

    def add_arguments(self, parser):
        add_run_arguments(parser, ring=FLOAT, L=2)
        parser.add_argument('--z', action='append', help='dual coordinates as a configuration, e.g. 0A0B; repeatable')
        parser.add_argument('--start', help='initial configuration, e.g. A0B0')
        parser.add_argument('--initial', choices=['point', 'canonical'], default='point',
                            help='start from --start itself or from the canonical measure of its sector')
        parser.add_argument('--trajectory-log', help='CSV file for the path of trajectory 0 up to the last time')

    def handle(self, *args, **options):
        try:
            form = RunConfigForm.from_options(options)
            if not form.is_valid():
                raise CommandError(form.errors.as_text(), returncode=2)
            data = form.cleaned_data
            params = data['params']
            duals = [parse_dual(text, params.L) for text in options['z']] if options['z'] else default_dual_grid(params.L)
            start = Config.from_string(options['start']) if options['start'] else default_start(params.L)
        except (ValidationError, ValueError) as error:
            messages = error.messages if isinstance(error, ValidationError) else [str(error)]
            raise CommandError('; '.join(messages), returncode=2)
        if start.L != params.L:
            raise CommandError(f'--start {start} does not live on L={params.L}', returncode=2)

        if options['initial'] == 'canonical':
            initial = canonical(Sector(params.L, start.N, start.M))
        else:
            initial = Measure.point_mass(start)
        trajectories, seed, times = data['trajectories'], data['seed'], data['t']
        logger.info('simulate started: %s, %s trajectories, seed %s', params, trajectories, seed)

        rows = []
        for t in times:
            for z in duals:
                estimate = estimate_Q(z, initial, t, params, trajectories=trajectories, seed=seed)
                prediction = duality_rhs(z, initial, t, params)
                record = estimator_record(z, t, estimate, prediction)
                rows.append(record)
                SimulationRecord.objects.create(
                    z=record['z'], L=params.L, r=str(params.r), ell=str(params.ell), t=t,
                    mean=estimate.mean, stderr=estimate.stderr, prediction=prediction,
                    z_score=record['z_score'], trajectories=estimate.n, seed=seed,
                )

        try:
            with open_output(data['out'], self.stdout) as stream:
                write_json_lines(rows, stream)
            if options['trajectory_log'] and options['initial'] == 'point':
                log = []
                run_trajectory(SimState.start(start, seed, 0), max(times), params, log)
                with open(options['trajectory_log'], 'w', newline='') as stream:
                    write_trajectory(log, stream)
        except OSError as error:
            raise CommandError(f'cannot write output: {error}', returncode=1)

        limit = settings.ASEP['HARD_FAILURE_Z']
        failures = [row for row in rows if abs(row['z_score']) > limit]
        within = sum(1 for row in rows if abs(row['z_score']) <= 3)
        logger.info('simulate finished: %s of %s points within 3 standard errors', within, len(rows))
        if failures:
            worst = max(failures, key=lambda row: abs(row['z_score']))
            raise CommandError(
                f'{len(failures)} point(s) beyond {limit} standard errors, worst Q_{worst["z"]} at t={worst["t"]}',
                returncode=1,
            )
        self.stderr.write(self.style.SUCCESS(f'{within} of {len(rows)} points within 3 standard errors'))
