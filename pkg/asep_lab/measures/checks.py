"""
Identity checks for the invariant measures: reversibility, normalization,
uniqueness in each sector and the grandcanonical and shock forms.
"""
import logging
import math
from itertools import combinations

import numpy as np
from django.conf import settings
from scipy import linalg

from generator.operators import Basis, SparseOp
from generator.params import FLOAT
from generator.utils import build_H, build_H_sector
from lattice.configurations import Occupation, Sector, all_sectors, lattice_sites
from lattice.utils import all_configs
from lattice.validators import validate_capacity
from measures.distributions import (
    canonical,
    grandcanonical,
    grandcanonical_mixture,
    pure_marginal,
    pure_measure,
    shock_profile,
)
from measures.utils import partition_function, pi_agrees_with_positions, pi_unnormalized
from qring.utils import q_multinomial
from reports.checks import CheckReport

logger = logging.getLogger(__name__)

A, B = Occupation.A, Occupation.B

FLOAT_TOLERANCE = 1e-12
KERNEL_TOLERANCE = 1e-10


def _log(report):
    logger.info('%s: %s', report.title, 'PASS' if report.passed else 'FAIL')
    return report


def check_reversibility(H):
    """H pi^ = pi^ H^T, with pi^ the diagonal matrix of the reversible measure."""
    report = CheckReport(f'reversibility, L={H.basis.L}')
    pi_hat = SparseOp.diagonal(H.basis, pi_unnormalized, 'pi')
    report.record_equal('H pi = pi H^T', H @ pi_hat, pi_hat @ H.transpose())
    return _log(report)


def check_normalization(Lmax):
    """Z_{2L}(N,M) = C_{2L}(N,M) by brute force, and pi in the position representation."""
    validate_capacity(Lmax, settings.ASEP['EXACT_MAX_L'], 'normalization checks')
    report = CheckReport(f'normalization, L<={Lmax}')
    for L in range(1, Lmax + 1):
        failing = next(
            (s for s in all_sectors(L) if partition_function(s) != q_multinomial(2 * L, s.N, s.M)), None
        )
        report.record(f'Z_{2 * L}(N,M)=C_{2 * L}(N,M)', failing is None, detail=str(failing or ''))
        mismatch = next((c for c in all_configs(L) if not pi_agrees_with_positions(c)), None)
        report.record(f'pi positions form L={L}', mismatch is None, detail=str(mismatch or ''))
    return _log(report)


def check_partition_factorization(Lmax):
    """Z_{2L}(N,M) = Z_{2L}(N,0) Z_{2L-N}(0,M)."""
    validate_capacity(Lmax, settings.ASEP['EXACT_MAX_L'], 'partition factorization')
    report = CheckReport(f'partition factorization, L<={Lmax}')
    for L in range(1, Lmax + 1):
        failing = None
        for sector in all_sectors(L):
            left = partition_function(sector)
            right = partition_function(Sector(L, sector.N, 0)) * q_multinomial(2 * L - sector.N, 0, sector.M)
            if left != right:
                failing = sector
                break
        report.record(f'Z_{2 * L}(N,M)=Z_{2 * L}(N,0)Z(0,M)', failing is None, detail=str(failing or ''))
    return _log(report)


def stationary_vector(H):
    """
    Normalized right null vector of a float sector generator: the last row of H
    is replaced by ones and the system solved by LU with partial pivoting.
    """
    matrix = H.to_dense()
    matrix[-1, :] = 1.0
    rhs = np.zeros(H.dim)
    rhs[-1] = 1.0
    return linalg.lu_solve(linalg.lu_factor(matrix), rhs)


def check_uniqueness(params):
    """In every sector the kernel of H is one-dimensional and spanned by the canonical measure."""
    report = CheckReport(f'uniqueness of the canonical measures, {params}')
    q0 = params.q
    for sector in all_sectors(params.L):
        H = build_H_sector(params, sector, FLOAT)
        nullity = linalg.null_space(H.to_dense()).shape[1]
        report.record(f'dim ker H {sector} = 1', nullity == 1, residual='' if nullity == 1 else nullity)
        expected = canonical(sector).vector(H.basis, q0)
        deviation = float(np.max(np.abs(stationary_vector(H) - expected)))
        report.record_close(f'ker H {sector} = canonical', deviation, KERNEL_TOLERANCE)
    return _log(report)


def check_marginal_independence(L, max_points=2):
    """
    <a_{k_1} ... a_{k_n}> under canonical(N, M) does not depend on M, compared
    exactly by cross-multiplying the partition functions.
    """
    validate_capacity(L, settings.ASEP['EXACT_MAX_L'], 'marginal independence')
    report = CheckReport(f'A-marginals independent of M, L={L}')
    failing = None
    for sector in all_sectors(L):
        if not sector.M:
            continue
        measure = canonical(sector)
        reference = canonical(Sector(L, sector.N, 0))
        for n in range(1, max_points + 1):
            for sites in combinations(lattice_sites(L), n):
                def holds(config, sites=sites):
                    return all(config.at(k) is A for k in sites)

                left = measure.moment(holds) * reference.partition
                right = reference.moment(holds) * measure.partition
                if left != right:
                    failing = f'{sector} sites={list(sites)}'
                    break
            if failing:
                break
        if failing:
            break
    report.record('<a..a>_{N,M} = <a..a>_{N,0}', failing is None, detail=failing or '')
    return _log(report)


def check_grandcanonical(nu, mu, params):
    """Normalization, stationarity and the mixture form of Q*_{nu,mu}."""
    report = CheckReport(f'grandcanonical nu={nu} mu={mu}, {params}')
    measure = grandcanonical(nu, mu, params)
    basis = Basis.full(params.L)
    vector = measure.vector(basis)
    report.record_close('sum Q* = 1', abs(math.fsum(vector) - 1.0), FLOAT_TOLERANCE)
    H = build_H(params, FLOAT).to_scipy()
    report.record_close('H |Q*> = 0', float(np.max(np.abs(H @ vector))), FLOAT_TOLERANCE)
    mixture = grandcanonical_mixture(nu, mu, params).vector(basis)
    report.record_close('Q* = sum_{N,M} e^(nu N + mu M) Z/Y pi*', float(np.max(np.abs(vector - mixture))), FLOAT_TOLERANCE)
    return _log(report)


def check_pure_measures(nu, mu, params):
    """Product marginals of the pure measures and their shock profiles."""
    report = CheckReport(f'pure measures nu={nu} mu={mu}, {params}')
    q0 = params.q
    sites = list(lattice_sites(params.L))
    for species, chem_pot in ((A, nu), (B, mu)):
        measure = pure_measure(species, chem_pot, params)
        profile = shock_profile(species, chem_pot, params)
        closed = [pure_marginal(species, chem_pot, k, q0) for k in sites]
        marginals = [measure.marginal(k, species) for k in sites]
        report.record_close(
            f'{species.name} marginal = closed form', max(abs(x - y) for x, y in zip(marginals, closed)), FLOAT_TOLERANCE
        )
        report.record_close(
            f'{species.name} shock profile', max(abs(profile.density(k) - y) for k, y in zip(sites, closed)), FLOAT_TOLERANCE
        )
        product = max(
            abs(measure.correlation((j, k), species) - marginals[i] * marginals[i + 1 + d])
            for i, j in enumerate(sites)
            for d, k in enumerate(sites[i + 1:])
        )
        report.record_close(f'{species.name} two-point factorization', product, KERNEL_TOLERANCE)
    return _log(report)

