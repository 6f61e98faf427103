import math
from dataclasses import dataclass
from fractions import Fraction

from django.conf import settings

from generator.validators import InvalidModelParams, validate_rate
from lattice.validators import validate_half_size

EXACT = 'exact'
FLOAT = 'float'

RING_CHOICES = [
    (EXACT, 'Exact (Laurent polynomials in q)'),
    (FLOAT, 'Float'),
]


def validate_ring(ring):
    if ring not in (EXACT, FLOAT):
        raise InvalidModelParams(f'ring must be one of {EXACT!r}, {FLOAT!r}, got {ring!r}')
    return ring


@dataclass(frozen=True)
class ModelParams:
    """
    Lattice half-size and hopping rates.

    ``r`` is the rate of AV -> VA, VB -> BV and AB -> BA; ``ell`` the rate of
    the reverse moves. The asymmetry ``q = sqrt(r / ell)`` and time scale
    ``w = sqrt(r ell)`` give ``r = w q`` and ``ell = w / q``.
    """

    L: int
    r: Fraction
    ell: Fraction

    def __post_init__(self):
        validate_half_size(self.L)
        object.__setattr__(self, 'r', validate_rate(self.r, 'r'))
        object.__setattr__(self, 'ell', validate_rate(self.ell, 'ell'))

    @classmethod
    def default(cls, L):
        return cls(L, settings.ASEP['DEFAULT_R'], settings.ASEP['DEFAULT_ELL'])

    @classmethod
    def from_q_w(cls, L, q, w):
        q = validate_rate(q, 'q')
        w = validate_rate(w, 'w')
        return cls(L, q * w, w / q)

    @property
    def q(self):
        return math.sqrt(self.r / self.ell)

    @property
    def w(self):
        return math.sqrt(self.r * self.ell)

    def with_size(self, L):
        return ModelParams(L, self.r, self.ell)

    def __str__(self):
        return f'L={self.L} r={self.r} ell={self.ell}'
