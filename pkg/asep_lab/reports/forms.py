"""
RunConfig: command-line parameters merged as settings defaults < config file < flags.
"""
from pathlib import Path

from django import forms
from django.conf import settings
from django.core.exceptions import ValidationError

from generator.params import EXACT, RING_CHOICES, ModelParams
from lattice.configurations import Config, Sector
from lattice.utils import to_positions

RUN_FIELDS = ('L', 'r', 'ell', 'q', 'w', 'N', 'M', 't', 'trajectories', 'seed', 'out', 'ring')


def add_run_arguments(parser, ring=EXACT, L=1):
    parser.add_argument('--config', help='flat "key = value" file; flags override it')
    parser.add_argument('--L', type=int, help='lattice half-size, sites -L+1..L')
    parser.add_argument('--r', help='rate of AV->VA, VB->BV and AB->BA')
    parser.add_argument('--ell', help='rate of the reverse moves')
    parser.add_argument('--q', help='asymmetry sqrt(r/ell), with --w instead of --r/--ell')
    parser.add_argument('--w', help='time scale sqrt(r ell)')
    parser.add_argument('--N', type=int, help='number of A particles')
    parser.add_argument('--M', type=int, help='number of B particles')
    parser.add_argument('--t', help='comma-separated times')
    parser.add_argument('--trajectories', type=int)
    parser.add_argument('--seed', type=int)
    parser.add_argument('--out', help='output file or directory')
    parser.add_argument('--ring', choices=[choice for choice, _ in RING_CHOICES], default=None)
    parser.set_defaults(default_ring=ring, default_L=L)


def read_config_file(path):
    """``key = value`` lines; ``#`` starts a comment."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as error:
        raise ValidationError(f'cannot read config file {path}: {error}') from None
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        key = key.strip()
        if not sep or key not in RUN_FIELDS:
            raise ValidationError(f'{path}:{number}: expected "key = value" with key in {", ".join(RUN_FIELDS)}')
        values[key] = value.strip()
    return values


class RunConfigForm(forms.Form):
    L = forms.IntegerField(min_value=1)
    r = forms.CharField(required=False)
    ell = forms.CharField(required=False)
    q = forms.CharField(required=False)
    w = forms.CharField(required=False)
    N = forms.IntegerField(required=False, min_value=0)
    M = forms.IntegerField(required=False, min_value=0)
    t = forms.CharField(required=False)
    trajectories = forms.IntegerField(min_value=1)
    seed = forms.IntegerField(min_value=0)
    out = forms.CharField(required=False)
    ring = forms.ChoiceField(choices=RING_CHOICES)

    @classmethod
    def from_options(cls, options):
        data = {
            'L': options.get('default_L', 1),
            'trajectories': settings.ASEP['DEFAULT_TRAJECTORIES'],
            'seed': settings.ASEP['DEFAULT_SEED'],
            'ring': options.get('default_ring', EXACT),
        }
        if options.get('config'):
            data.update(read_config_file(options['config']))
        data.update({key: options[key] for key in RUN_FIELDS if options.get(key) is not None})
        return cls(data)

    def clean_t(self):
        text = self.cleaned_data.get('t')
        if not text:
            return list(settings.ASEP['DEFAULT_TIMES'])
        try:
            times = [float(item) for item in text.split(',') if item.strip()]
        except ValueError:
            raise forms.ValidationError(f'times must be comma-separated numbers, got {text!r}') from None
        if any(time < 0 for time in times):
            raise forms.ValidationError('times must be nonnegative')
        return times

    def clean(self):
        cleaned_data = super().clean()
        L = cleaned_data.get('L')
        if L is None:
            return cleaned_data
        rates = [cleaned_data.get(key) for key in ('r', 'ell')]
        scales = [cleaned_data.get(key) for key in ('q', 'w')]
        if any(rates) and any(scales):
            raise forms.ValidationError('give either --r/--ell or --q/--w, not both')
        if any(scales) and not all(scales):
            raise forms.ValidationError('--q and --w go together')
        if any(rates) and not all(rates):
            raise forms.ValidationError('--r and --ell go together')
        try:
            if any(scales):
                params = ModelParams.from_q_w(L, *scales)
            elif any(rates):
                params = ModelParams(L, *rates)
            else:
                params = ModelParams.default(L)
        except ValidationError as error:
            raise forms.ValidationError(error.messages) from None
        cleaned_data['params'] = params
        N, M = cleaned_data.get('N'), cleaned_data.get('M')
        if N is not None or M is not None:
            try:
                cleaned_data['sector'] = Sector(L, N or 0, M or 0)
            except ValidationError as error:
                raise forms.ValidationError(error.messages) from None
        return cleaned_data


def parse_dual(text, L):
    """Dual coordinates given in configuration text form, e.g. ``A00B``."""
    config = Config.from_string(text)
    if config.L != L:
        raise ValidationError(f'dual coordinates {text!r} do not live on L={L}')
    return to_positions(config)


def default_dual_grid(L):
    """One A, one B and one AB pair at a few positions."""
    texts = []
    for occ in (
        {0: 'A'},
        {1: 'A'},
        {1: 'B'},
        {L: 'B'},
        {0: 'A', L: 'B'},
    ):
        symbols = ['0'] * (2 * L)
        for k, symbol in occ.items():
            symbols[k + L - 1] = symbol
        text = ''.join(symbols)
        if text not in texts:
            texts.append(text)
    return [parse_dual(text, L) for text in texts]


def default_start(L):
    """A at site -L+1 and B at site 1."""
    symbols = ['0'] * (2 * L)
    symbols[0] = 'A'
    symbols[L] = 'B'
    return Config.from_string(''.join(symbols))
