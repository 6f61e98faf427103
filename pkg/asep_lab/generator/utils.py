"""
Rates and the generator H of the two-component exclusion process.

H has ``H[eta', eta] = -w(eta -> eta')`` off the diagonal and the total exit
rate of ``eta`` on the diagonal, so probability vectors evolve as
``|P_t> = exp(-H t) |P_0>`` and the summation vector is a left null vector.
In the exact ring H is stored divided by ``w``: right moves carry ``q`` and
left moves ``q^-1``.
"""
import logging

from django.conf import settings

from generator.operators import Basis, SparseOp
from generator.params import EXACT, FLOAT, validate_ring
from lattice.configurations import Occupation, Sector, lattice_bonds
from lattice.utils import swap
from lattice.validators import validate_bond, validate_capacity
from qring.polynomials import Q, ZERO

logger = logging.getLogger(__name__)

A, V, B = Occupation.A, Occupation.V, Occupation.B

RIGHT = 'r'
LEFT = 'ell'

# (eta(k), eta(k+1)) -> direction of the exchange across the bond
MOVES = {
    (A, V): RIGHT,
    (V, B): RIGHT,
    (A, B): RIGHT,
    (V, A): LEFT,
    (B, V): LEFT,
    (B, A): LEFT,
}


def bond_move(config, k):
    """``'r'``, ``'ell'`` or ``None`` for the pair on bond (k, k+1)."""
    validate_bond(k, config.L)
    return MOVES.get((config.at(k), config.at(k + 1)))


def local_rate(config, k, params):
    """w^{k,k+1}(eta): the exchange rate on bond (k, k+1), a Fraction."""
    move = bond_move(config, k)
    if move == RIGHT:
        return params.r
    if move == LEFT:
        return params.ell
    return 0


def local_weight(config, k):
    """The same rate divided by w, as an element of the exact ring."""
    move = bond_move(config, k)
    if move == RIGHT:
        return Q
    if move == LEFT:
        return Q.inverse()
    return ZERO


def bond_rates(config, params):
    """Enabled bonds with their float rates, left to right."""
    rates = []
    for k in lattice_bonds(config.L):
        rate = local_rate(config, k, params)
        if rate:
            rates.append((k, float(rate)))
    return rates


def exit_rate(config, params):
    return sum(local_rate(config, k, params) for k in lattice_bonds(config.L))


def _rate(config, k, params, ring):
    if ring == EXACT:
        return local_weight(config, k)
    return float(local_rate(config, k, params))


def _assemble(basis, params, ring, label):
    columns = {}
    for col, config in enumerate(basis.configs):
        column = {}
        diagonal = ZERO if ring == EXACT else 0.0
        for k in lattice_bonds(basis.L):
            rate = _rate(config, k, params, ring)
            if not rate:
                continue
            column[basis.position(swap(config, k))] = -rate
            diagonal = diagonal + rate
        column[col] = diagonal
        columns[col] = column
    H = SparseOp(basis, columns, label)
    logger.debug('built %s on %s: dim %s, nnz %s', label, basis, H.dim, H.nnz)
    return H


def build_H(params, ring=EXACT):
    validate_ring(ring)
    limit = settings.ASEP['EXACT_MAX_L'] if ring == EXACT else settings.ASEP['FLOAT_MAX_L']
    validate_capacity(params.L, limit, f'full-space {ring} generator')
    return _assemble(Basis.full(params.L), params, ring, 'H')


def build_H_sector(params, sector, ring=EXACT):
    validate_ring(ring)
    if not isinstance(sector, Sector):
        sector = Sector(params.L, *sector)
    validate_capacity(params.L, settings.ASEP['SIMULATION_MAX_L'], 'sector generator')
    return _assemble(Basis.sector(sector), params, ring, f'H[{sector.N},{sector.M}]')


def split_H(H):
    """(H_d, H_o): the diagonal and off-diagonal parts of H."""
    diagonal, offdiagonal = {}, {}
    for col, column in H.columns.items():
        for row, value in column.items():
            target = diagonal if row == col else offdiagonal
            target.setdefault(col, {})[row] = value
    return SparseOp(H.basis, diagonal, 'H_d'), SparseOp(H.basis, offdiagonal, 'H_o')


def apply_generator(f, config, params, ring=FLOAT):
    """(L f)(eta) = sum_k w^{k,k+1}(eta) [f(sigma^{k,k+1} eta) - f(eta)]."""
    validate_ring(ring)
    here = f(config)
    total = ZERO if ring == EXACT else 0
    for k in lattice_bonds(config.L):
        rate = local_weight(config, k) if ring == EXACT else local_rate(config, k, params)
        if rate:
            total = total + rate * (f(swap(config, k)) - here)
    return total
