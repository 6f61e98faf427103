import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from duality.checks import sum_rule_table
from duality.exceptions import NotConstant
from generator.params import EXACT, FLOAT
from lattice.configurations import Occupation, Sector, all_sectors
from measures.distributions import canonical, grandcanonical, pure_measure, shock_profile
from measures.exceptions import DegenerateWidth
from qring.utils import q_multinomial
from reports.forms import RunConfigForm, add_run_arguments
from reports.utils import (
    open_output,
    write_exact_measure,
    write_lambdas,
    write_measure,
    write_partitions,
    write_profile,
)

logger = logging.getLogger(__name__)

QUANTITIES = ['canonical', 'grandcanonical', 'pure', 'profile', 'partition', 'lambda']


class Command(BaseCommand):
    help = 'Write invariant measures, shock profiles, partition functions or sum-rule constants as CSV'

    def add_arguments(self, parser):
        parser.add_argument('what', choices=QUANTITIES)
        add_run_arguments(parser, ring=FLOAT)
        parser.add_argument('--nu', type=float, default=0.0, help='chemical potential of A')
        parser.add_argument('--mu', type=float, default=0.0, help='chemical potential of B')
        parser.add_argument('--species', choices=['A', 'B'], default='A')

    def handle(self, *args, **options):
        try:
            form = RunConfigForm.from_options(options)
        except ValidationError as error:
            raise CommandError('; '.join(error.messages), returncode=2)
        if not form.is_valid():
            raise CommandError(form.errors.as_text(), returncode=2)
        what = options['what']
        logger.info('measure %s started', what)
        try:
            with open_output(form.cleaned_data['out'], self.stdout) as stream:
                self.emit(what, form.cleaned_data, options, stream)
        except ValidationError as error:
            raise CommandError('; '.join(error.messages), returncode=2)
        except (DegenerateWidth, NotConstant) as error:
            raise CommandError(str(error), returncode=1)
        except OSError as error:
            raise CommandError(f'cannot write {form.cleaned_data["out"]}: {error}', returncode=1)
        logger.info('measure %s finished', what)

    def emit(self, what, data, options, stream):
        params = data['params']
        L = params.L
        species = Occupation.from_symbol(options['species'])
        chem_pot = options['nu'] if species is Occupation.A else options['mu']

        if what == 'canonical':
            measure = canonical(data.get('sector') or Sector(L, 0, 0))
            if data['ring'] == EXACT:
                write_exact_measure(measure, stream)
            else:
                write_measure(measure, stream, params.q)
        elif what == 'grandcanonical':
            write_measure(grandcanonical(options['nu'], options['mu'], params), stream)
        elif what == 'pure':
            write_measure(pure_measure(species, chem_pot, params), stream)
        elif what == 'profile':
            write_profile(shock_profile(species, chem_pot, params).table(L), stream)
        elif what == 'partition':
            write_partitions([(s.N, s.M, q_multinomial(2 * L, s.N, s.M)) for s in all_sectors(L)], stream)
        else:
            write_lambdas(sum_rule_table(L), stream)
