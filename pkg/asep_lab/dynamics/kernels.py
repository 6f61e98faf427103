"""
Transition probabilities P(eta', t | eta, 0) = <eta'|exp(-Ht)|eta> by uniformization.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from django.conf import settings
from scipy.stats import poisson

from dynamics.exceptions import NonConvergence
from generator.operators import Basis
from reports.checks import CheckReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransitionKernel:
    """Column-stochastic matrix over ``basis``: column eta holds P(. , t | eta, 0)."""

    basis: Basis
    t: float
    matrix: np.ndarray

    def probability(self, target, source):
        return float(self.matrix[self.basis.position(target), self.basis.position(source)])

    def column(self, source):
        col = self.basis.position(source)
        return {config: float(self.matrix[row, col]) for row, config in enumerate(self.basis.configs)}

    def stochastic_defect(self):
        return float(np.max(np.abs(self.matrix.sum(axis=0) - 1.0)))

    def __matmul__(self, other):
        return TransitionKernel(self.basis, self.t + other.t, self.matrix @ other.matrix)


def uniformization_terms(rate, t):
    """Number of Poisson terms needed for a tail below POISSON_TAIL, and the allowed budget."""
    mean = rate * t
    terms = int(poisson.isf(settings.ASEP['POISSON_TAIL'], mean)) + 1
    return terms, int(10 * mean + 50)


def evolve(H, t):
    """
    exp(-Ht) = exp(-lambda t) sum_k (lambda t)^k / k! (1 - H/lambda)^k with
    lambda the largest exit rate.
    """
    if H.is_exact:
        raise TypeError('evolve needs a float generator')
    if t < 0 or not math.isfinite(t):
        raise ValueError(f'time must be finite and nonnegative, got {t}')
    dim = H.dim
    rate = max((float(value) for value in H.diagonal_values()), default=0.0)
    if t == 0 or rate == 0:
        return TransitionKernel(H.basis, float(t), np.eye(dim))

    terms, budget = uniformization_terms(rate, t)
    if terms > budget:
        raise NonConvergence(terms, budget)
    jump = np.eye(dim) - H.to_dense() / rate
    weights = poisson.pmf(np.arange(terms), rate * t)
    result = np.zeros((dim, dim))
    power = np.eye(dim)
    for weight in weights:
        result += weight * power
        power = jump @ power
    logger.debug('evolve on %s: t=%s, lambda=%s, %s terms', H.basis, t, rate, terms)
    return TransitionKernel(H.basis, float(t), result)


def check_semigroup(H, t1, t2, tolerance=1e-10):
    report = CheckReport(f'semigroup property on {H.basis}, t1={t1}, t2={t2}')
    combined = evolve(H, t1) @ evolve(H, t2)
    direct = evolve(H, t1 + t2)
    report.record_close('P(t1) P(t2) = P(t1+t2)', float(np.max(np.abs(combined.matrix - direct.matrix))), tolerance)
    report.record_close(
        'columns sum to 1', direct.stochastic_defect(), settings.ASEP['STOCHASTIC_TOLERANCE']
    )
    return report
