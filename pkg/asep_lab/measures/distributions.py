"""
Invariant measures: canonical measures on a sector, grandcanonical mixtures,
the pure single-species measures and their shock profiles.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings

from generator.operators import Basis
from lattice.configurations import Config, Occupation, Sector, all_sectors
from lattice.validators import validate_capacity
from measures.exceptions import DegenerateWidth
from measures.utils import pi_exponent, pi_unnormalized
from qring.polynomials import ZERO, LaurentPoly
from qring.utils import fugacity, q_multinomial, rogers_szego_X, rogers_szego_Y

logger = logging.getLogger(__name__)

A, B = Occupation.A, Occupation.B


@dataclass
class Measure:
    """
    Weights on configurations with a separate normalizer.

    Exact measures keep Laurent-polynomial weights and partition function;
    probabilities need a numeric ``q0``. Float measures carry ``q0`` along.
    """

    support: Basis | None
    weights: dict
    partition: object = 1.0
    label: str = ''
    q0: float | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def point_mass(cls, config):
        return cls(None, {config: 1.0}, 1.0, f'delta[{config}]')

    @property
    def is_exact(self):
        return isinstance(self.partition, LaurentPoly)

    @property
    def normalized(self):
        return self.partition == 1

    def weight(self, config):
        return self.weights.get(config, 0)

    def moment(self, observable):
        """Unnormalized sum of weights over configurations where ``observable`` holds."""
        total = ZERO if self.is_exact else 0.0
        for config, w in self.weights.items():
            if observable(config):
                total = total + w
        return total

    def _numeric(self, value, q0):
        if isinstance(value, LaurentPoly):
            q0 = self.q0 if q0 is None else q0
            if q0 is None:
                raise ValueError(f'{self.label}: exact weights need a numeric q0')
            return value.evaluate(q0)
        return float(value)

    def probabilities(self, q0=None):
        """Config -> probability, in ternary order of the configurations."""
        key = ('probabilities', q0)
        if key not in self._cache:
            partition = self._numeric(self.partition, q0)
            ordered = sorted(self.weights.items(), key=lambda item: item[0].index)
            self._cache[key] = {config: self._numeric(w, q0) / partition for config, w in ordered}
        return self._cache[key]

    def probability(self, config, q0=None):
        return self.probabilities(q0).get(config, 0.0)

    def items(self, q0=None):
        return list(self.probabilities(q0).items())

    def expectation(self, observable, q0=None):
        return math.fsum(p * observable(config) for config, p in self.probabilities(q0).items())

    def marginal(self, k, species=A, q0=None):
        """Probability that site k carries ``species``."""
        return self.expectation(lambda c: float(c.at(k) is species), q0)

    def correlation(self, sites, species=A, q0=None):
        return self.expectation(lambda c: float(all(c.at(k) is species for k in sites)), q0)

    def vector(self, basis, q0=None):
        probabilities = self.probabilities(q0)
        return np.array([probabilities.get(config, 0.0) for config in basis.configs])

    def sample(self, rng, q0=None):
        """Draw one configuration with a single uniform variate from ``rng``."""
        key = ('cumulative', q0)
        if key not in self._cache:
            items = self.items(q0)
            self._cache[key] = ([config for config, _ in items], np.cumsum([p for _, p in items]))
        configs, cumulative = self._cache[key]
        index = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side='right'))
        return configs[min(index, len(configs) - 1)]

    def serialize(self, q0=None):
        """``[(config text, probability)]``, the form shipped to trajectory workers."""
        return [(str(config), p) for config, p in self.items(q0)]

    @classmethod
    def deserialize(cls, pairs, label=''):
        return cls(None, {Config.from_string(text): p for text, p in pairs}, 1.0, label)


def canonical(sector):
    """pi*_{N,M}: pi restricted to the sector, with Z_{2L}(N,M) = C_{2L}(N,M)."""
    if not isinstance(sector, Sector):
        sector = Sector(*sector)
    basis = Basis.sector(sector)
    weights = {config: pi_unnormalized(config) for config in basis.configs}
    partition = q_multinomial(2 * sector.L, sector.N, sector.M)
    logger.debug('canonical measure on %s: %s configurations', sector, basis.dim)
    return Measure(basis, weights, partition, f'canonical {sector}')


def _grandcanonical_weight(config, nu, mu, q0):
    return fugacity(nu, config.N) * fugacity(mu, config.M) * q0 ** pi_exponent(config)


def grandcanonical(nu, mu, params):
    """Q*_{nu,mu}(eta) = e^(nu N + mu M) pi(eta) / Y_{2L}(nu, mu)."""
    validate_capacity(params.L, settings.ASEP['FLOAT_MAX_L'], 'grandcanonical measure')
    q0 = params.q
    basis = Basis.full(params.L)
    weights = {config: _grandcanonical_weight(config, nu, mu, q0) for config in basis.configs}
    partition = rogers_szego_Y(2 * params.L, nu, mu, q0)
    return Measure(basis, weights, partition, f'grandcanonical nu={nu} mu={mu}', q0)


def grandcanonical_mixture(nu, mu, params):
    """The same measure assembled as sum_{N,M} e^(nu N + mu M) Z(N,M)/Y pi*_{N,M}."""
    q0 = params.q
    total = rogers_szego_Y(2 * params.L, nu, mu, q0)
    weights = {}
    for sector in all_sectors(params.L):
        coefficient = fugacity(nu, sector.N) * fugacity(mu, sector.M)
        if not coefficient:
            continue
        measure = canonical(sector)
        mass = coefficient * measure.partition.evaluate(q0) / total
        for config, p in measure.probabilities(q0).items():
            weights[config] = mass * p
    return Measure(Basis.full(params.L), weights, 1.0, f'grandcanonical mixture nu={nu} mu={mu}', q0)


def pure_measure(species, chem_pot, params):
    """
    Grandcanonical measure of a single species: A particles with chemical
    potential ``chem_pot`` and no B (or the reverse). It is a product measure.
    """
    species = Occupation(species)
    if species not in (A, B):
        raise ValueError('pure measures exist for the A and B species only')
    validate_capacity(params.L, settings.ASEP['FLOAT_MAX_L'], 'pure measure')
    q0 = params.q
    other = B if species is A else A
    weights = {
        config: fugacity(chem_pot, config.count(species)) * q0 ** pi_exponent(config)
        for config in Basis.full(params.L).configs
        if not config.count(other)
    }
    partition = rogers_szego_X(2 * params.L, chem_pot, q0)
    return Measure(Basis.full(params.L), weights, partition, f'pure {species.name} chem_pot={chem_pot}', q0)


def pure_marginal(species, chem_pot, k, q0):
    """Closed-form one-site density of the pure measure."""
    exponent = 2 * k - 1 if Occupation(species) is A else 1 - 2 * k
    activity = math.exp(chem_pot) * q0 ** exponent
    return activity / (1 + activity)


@dataclass(frozen=True)
class ShockProfile:
    """Density 1/2 (1 + direction tanh((k - kappa) / xi)) with xi > 0."""

    species: Occupation
    kappa: float
    xi: float
    direction: int

    def density(self, k):
        return 0.5 * (1 + self.direction * math.tanh((k - self.kappa) / self.xi))

    def table(self, L):
        return [(k, self.density(k)) for k in range(-L + 1, L + 1)]


def shock_profile(species, chem_pot, params):
    """
    Shock of width xi = 1/|ln q| at kappa_A = (1 - nu/ln q)/2 for A particles and
    kappa_B = (1 + mu/ln q)/2 for B particles. A rises and B falls for q > 1;
    for q < 1 both profiles are mirrored.
    """
    species = Occupation(species)
    log_q = math.log(params.q)
    if log_q == 0:
        raise DegenerateWidth('the shock width 1/ln q diverges at q = 1')
    if species is A:
        kappa = (1 - chem_pot / log_q) / 2
        direction = 1
    else:
        kappa = (1 + chem_pot / log_q) / 2
        direction = -1
    if log_q < 0:
        direction = -direction
    return ShockProfile(species, kappa, 1 / abs(log_q), direction)

