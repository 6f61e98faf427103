import logging

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from duality.checks import check_duality, check_exclusion_cutoff, sum_rule_table
from duality.exceptions import NotConstant
from generator.params import EXACT, ModelParams
from generator.utils import build_H
from lattice.lemmas import check_counting_lemmas, check_permutation_identities
from lattice.validators import validate_capacity
from measures.checks import (
    check_grandcanonical,
    check_marginal_independence,
    check_normalization,
    check_partition_factorization,
    check_pure_measures,
    check_reversibility,
    check_uniqueness,
)
from qsym.checks import check_algebra_relations, check_conjugation_lemma, check_symmetry, check_transposition
from qsym.fundamental import check_fundamental
from reports.checks import CheckReport
from reports.forms import RunConfigForm, add_run_arguments
from reports.models import VerificationRun

logger = logging.getLogger(__name__)

SUITES = [choice for choice, _ in VerificationRun.SUITE_CHOICES]
SUITE_LIMITS = {'algebra': 'ALGEBRA_MAX_L', 'reversibility': 'EXACT_MAX_L', 'duality': 'EXACT_MAX_L',
                'measures': 'EXACT_MAX_L', 'lemmas': 'EXACT_MAX_L'}
CHEMICAL_POTENTIALS = ((-1.0, 0.5), (0.0, 0.0), (1.0, -0.5))
SHOCK_ASYMMETRIES = ('6/5',)


def algebra_suite(params):
    L = params.L
    yield check_fundamental()
    yield check_transposition(L)
    yield check_symmetry(build_H(params, EXACT))
    yield check_algebra_relations(L)


def reversibility_suite(params):
    yield check_reversibility(build_H(params, EXACT))
    yield check_conjugation_lemma(min(params.L, settings.ASEP['ALGEBRA_MAX_L']))
    yield check_uniqueness(params)


def duality_suite(params):
    L = params.L
    yield check_duality(L, params)
    yield check_exclusion_cutoff(L)
    report = CheckReport(f'sum rules, L={L}')
    try:
        for result in sum_rule_table(L):
            report.extend(result.report)
    except NotConstant as error:
        report.record(f'sum rule: {error.what} constant', False, residual=f'{error.expected} != {error.found}',
                      detail=str(error.coordinate))
    yield report


def measures_suite(params):
    L = params.L
    yield check_normalization(L)
    yield check_partition_factorization(L)
    yield check_marginal_independence(L)
    for nu, mu in CHEMICAL_POTENTIALS:
        yield check_grandcanonical(nu, mu, params)
        yield check_pure_measures(nu, mu, params)
    for q in SHOCK_ASYMMETRIES:
        shallow = ModelParams.from_q_w(L, q, 1)
        for nu, mu in CHEMICAL_POTENTIALS:
            yield check_pure_measures(nu, mu, shallow)


def lemmas_suite(params):
    L = params.L
    yield check_counting_lemmas(L)
    yield check_permutation_identities(min(4, 2 * L), L)


SUITE_RUNNERS = {
    'algebra': algebra_suite,
    'reversibility': reversibility_suite,
    'duality': duality_suite,
    'measures': measures_suite,
    'lemmas': lemmas_suite,
}


class Command(BaseCommand):
    help = 'Verify the exact identities of the two-species ASEP and store the outcome'

    def add_arguments(self, parser):
        parser.add_argument('suite', choices=SUITES)
        add_run_arguments(parser)

    def handle(self, *args, **options):
        try:
            form = RunConfigForm.from_options(options)
        except ValidationError as error:
            raise CommandError('; '.join(error.messages), returncode=2)
        if not form.is_valid():
            raise CommandError(form.errors.as_text(), returncode=2)
        params = form.cleaned_data['params']
        suite = options['suite']
        names = list(SUITE_RUNNERS) if suite == 'all' else [suite]
        try:
            for name in names:
                validate_capacity(params.L, settings.ASEP[SUITE_LIMITS[name]], f'{name} suite')
        except ValidationError as error:
            raise CommandError('; '.join(error.messages), returncode=2)
        logger.info('verify %s started at %s', suite, params)

        run = VerificationRun.objects.create(
            suite=suite, L=params.L, ring=form.cleaned_data['ring'], r=str(params.r), ell=str(params.ell),
        )
        try:
            for name in names:
                for report in SUITE_RUNNERS[name](params):
                    run.record(report)
                    self.write_report(report)
        except ValidationError as error:
            run.delete()
            raise CommandError('; '.join(error.messages), returncode=2)

        status = run.finish()
        logger.info('verify %s finished: %s', suite, status)
        if status != 'PASS':
            failed = run.relations.filter(passed=False).count()
            raise CommandError(f'{failed} relation(s) failed, see run {run.pk}', returncode=1)
        self.stdout.write(self.style.SUCCESS(f'verify {suite} L={params.L}: all relations hold (run {run.pk})'))

    def write_report(self, report):
        self.stdout.write(f'# {report.title}')
        for outcome, line in zip(report.outcomes, report.lines()):
            self.stdout.write(line if outcome.passed else self.style.ERROR(line))
