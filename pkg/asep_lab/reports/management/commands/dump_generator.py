import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from generator.params import EXACT
from generator.utils import build_H, build_H_sector, split_H
from reports.forms import RunConfigForm, add_run_arguments
from reports.utils import open_output, write_matrix

logger = logging.getLogger(__name__)

PARTS = ['H', 'H_d', 'H_o']


class Command(BaseCommand):
    help = 'Write the generator H (or one of its parts) as a sparse matrix, on the full space or one sector'

    def add_arguments(self, parser):
        add_run_arguments(parser, ring=EXACT)
        parser.add_argument('--part', choices=PARTS, default='H')

    def handle(self, *args, **options):
        try:
            form = RunConfigForm.from_options(options)
            if not form.is_valid():
                raise CommandError(form.errors.as_text(), returncode=2)
            data = form.cleaned_data
            params, ring = data['params'], data['ring']
            if data.get('sector') is not None:
                H = build_H_sector(params, data['sector'], ring)
            else:
                H = build_H(params, ring)
        except ValidationError as error:
            raise CommandError('; '.join(error.messages), returncode=2)

        op = H if options['part'] == 'H' else dict(zip(PARTS[1:], split_H(H)))[options['part']]
        logger.info('dump %s: dim %s, nnz %s', op.label, op.dim, op.nnz)
        try:
            with open_output(data['out'], self.stdout) as stream:
                write_matrix(op, stream, params)
        except OSError as error:
            raise CommandError(f'cannot write {data["out"]}: {error}', returncode=1)
