"""
Monte-Carlo expectations of Q_z(eta_t) and their prediction through the
self-duality, <Q_z(t)> = sum_z' <z|exp(-Ht)|z'> <Q_z'>_{P_0}.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from duality.utils import build_S, qz_float
from dynamics.kernels import evolve
from dynamics.tasks import simulate_batch
from generator.operators import Basis
from generator.params import FLOAT
from generator.utils import build_H, build_H_sector
from lattice.configurations import Sector
from lattice.utils import from_positions, to_positions
from lattice.validators import validate_capacity
from measures.utils import pi_exponent
from reports.checks import CheckReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Estimate:
    mean: float
    stderr: float
    n: int

    @classmethod
    def from_moments(cls, total, squares, n):
        mean = total / n
        if n < 2:
            return cls(mean, 0.0, n)
        variance = max(squares - total * total / n, 0.0) / (n - 1)
        return cls(mean, math.sqrt(variance / n), n)

    def z_score(self, prediction):
        """(mean - prediction) / stderr; 0 when both the deviation and the error vanish."""
        deviation = self.mean - prediction
        if self.stderr == 0:
            return 0.0 if abs(deviation) <= 1e-12 else math.copysign(math.inf, deviation)
        return deviation / self.stderr


def _batches(trajectories):
    size = settings.ASEP['TRAJECTORY_BATCH']
    for start in range(0, trajectories, size):
        yield start, min(size, trajectories - start)


def estimate_Q(z, initial, t, params, trajectories=None, seed=None):
    """Mean of Q_z(eta_t) over trajectories started from ``initial``, dispatched in Celery batches."""
    trajectories = trajectories or settings.ASEP['DEFAULT_TRAJECTORIES']
    seed = settings.ASEP['DEFAULT_SEED'] if seed is None else seed
    validate_capacity(params.L, settings.ASEP['SIMULATION_MAX_L'], 'simulation')
    serialized = initial.serialize(params.q)
    pending = [
        simulate_batch.delay(
            params.L, str(params.r), str(params.ell), list(z.x), list(z.y), serialized, t, seed, start, count
        )
        for start, count in _batches(trajectories)
    ]
    total = squares = 0.0
    n = 0
    for result in pending:
        batch_total, batch_squares, batch_count = result.get()
        total += batch_total
        squares += batch_squares
        n += batch_count
    estimate = Estimate.from_moments(total, squares, n)
    logger.info('estimate of Q_%s at t=%s: %s +- %s (%s trajectories)', z, t, estimate.mean, estimate.stderr, n)
    return estimate


def duality_rhs(z, initial, t, params):
    """sum_z' F(z; t | z') <Q_z'>_{P_0} with F the kernel of the dual sector (N(z), M(z))."""
    q0 = params.q
    sector = Sector(params.L, z.N, z.M)
    kernel = evolve(build_H_sector(params, sector, FLOAT), t)
    row = kernel.basis.position(from_positions(z))
    total = []
    for col, dual in enumerate(kernel.basis.configs):
        weight = kernel.matrix[row, col]
        if weight:
            other = to_positions(dual)
            total.append(weight * initial.expectation(lambda config, other=other: qz_float(other, config, q0), q0))
    return math.fsum(total)


def check_duality_dynamics(params, t, tolerance=1e-10):
    """
    Q exp(-Ht) = exp(-Ht) Q and D exp(-Ht) = exp(-Ht)^T D on the full space, with
    Q[z, eta] = Q_z(eta) and D = pi^-1 Q.
    """
    validate_capacity(params.L, settings.ASEP['EXACT_MAX_L'], 'duality dynamics check')
    report = CheckReport(f'duality under exp(-Ht), {params}, t={t}')
    q0 = params.q
    kernel = evolve(build_H(params, FLOAT), t).matrix
    Q = build_S(params.L).evaluate(q0).to_dense()
    basis = Basis.full(params.L)
    pi_inverse = np.array([q0 ** -pi_exponent(config) for config in basis.configs])
    D = pi_inverse[:, None] * Q
    report.record_close('Q exp(-Ht) = exp(-Ht) Q', _relative(Q @ kernel - kernel @ Q, Q), tolerance)
    report.record_close('D exp(-Ht) = exp(-Ht)^T D', _relative(D @ kernel - kernel.T @ D, D), tolerance)
    return report


def _relative(residual, scale):
    return float(np.max(np.abs(residual)) / max(1.0, np.max(np.abs(scale))))
