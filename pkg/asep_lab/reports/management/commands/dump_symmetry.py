import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from duality.utils import build_S
from generator.params import FLOAT
from qsym.utils import build_cartan, build_Y
from reports.forms import RunConfigForm, add_run_arguments
from reports.utils import open_output, write_matrix

logger = logging.getLogger(__name__)

OPERATORS = ['S', 'Y1+', 'Y1-', 'Y2+', 'Y2-', 'L1', 'L2', 'L3']


def build_operator(name, L):
    if name == 'S':
        return build_S(L)
    if name.startswith('Y'):
        return build_Y(int(name[1]), name[2], L)
    return build_cartan(L)[name]


class Command(BaseCommand):
    help = 'Write the symmetry operator S or one of the U_q[gl(3)] generators as a sparse matrix'

    def add_arguments(self, parser):
        add_run_arguments(parser)
        parser.add_argument('--operator', choices=OPERATORS, default='S')

    def handle(self, *args, **options):
        try:
            form = RunConfigForm.from_options(options)
            if not form.is_valid():
                raise CommandError(form.errors.as_text(), returncode=2)
            data = form.cleaned_data
            op = build_operator(options['operator'], data['params'].L)
        except ValidationError as error:
            raise CommandError('; '.join(error.messages), returncode=2)
        if data['ring'] == FLOAT:
            op = op.evaluate(data['params'].q)
        logger.info('dump %s: dim %s, nnz %s', options['operator'], op.dim, op.nnz)
        try:
            with open_output(data['out'], self.stdout) as stream:
                write_matrix(op, stream)
        except OSError as error:
            raise CommandError(f'cannot write {data["out"]}: {error}', returncode=1)
