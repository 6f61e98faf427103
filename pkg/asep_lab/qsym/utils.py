"""
Tensor representation of U_q[gl(3)] on the 3^(2L)-dimensional configuration space.
"""
import logging
from fractions import Fraction

from django.conf import settings

from generator.operators import Basis, SparseOp
from lattice.configurations import Occupation, lattice_sites
from lattice.validators import validate_capacity, validate_site
from qring.polynomials import ONE, LaurentPoly, q_power
from qring.utils import q_number
from qsym import fundamental

logger = logging.getLogger(__name__)

# (i, sign) -> (single-site matrix, counted occupation, sign of the dressing exponent)
Y_DATA = {
    (1, '+'): (fundamental.a_plus, Occupation.V, 1),
    (1, '-'): (fundamental.a_minus, Occupation.A, -1),
    (2, '+'): (fundamental.b_minus, Occupation.B, 1),
    (2, '-'): (fundamental.b_plus, Occupation.V, -1),
}

SIGNS = ('+', '-')


def _scalar(value):
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.constant(int(value))


def site_embed(u, k, L, label=''):
    """u_k = 1 x ... x u x ... x 1 with ``u`` on the factor of site k."""
    validate_site(k, L)
    basis = Basis.full(L)
    columns = {}
    for col, config in enumerate(basis.configs):
        here = int(config.at(k))
        column = {}
        for target in range(3):
            value = _scalar(u[target][here])
            if value:
                column[basis.position(config.with_site(k, target))] = value
        columns[col] = column
    return SparseOp(basis, columns, label or f'u_{k}')


def dressing_exponent(config, k, occupation):
    """sum_{l<k} n_l - sum_{l>k} n_l for the indicator n of ``occupation``."""
    left = sum(1 for l in config.sites if l < k and config.at(l) is occupation)
    right = sum(1 for l in config.sites if l > k and config.at(l) is occupation)
    return left - right


def build_Y_site(i, sign, k, L):
    """Y_i^sign(k): the single-site matrix at k with its q-dressing from the other sites."""
    u, occupation, direction = Y_DATA[(i, sign)]
    validate_site(k, L)
    basis = Basis.full(L)
    columns = {}
    for col, config in enumerate(basis.configs):
        here = int(config.at(k))
        for target in range(3):
            if u[target][here]:
                exponent = direction * dressing_exponent(config, k, occupation)
                columns[col] = {basis.position(config.with_site(k, target)): q_power(exponent)}
    return SparseOp(basis, columns, f'Y{i}{sign}({k})')


def build_Y(i, sign, L):
    validate_capacity(L, settings.ASEP['SYMMETRY_OPERATOR_MAX_L'], 'symmetry operators')
    total = SparseOp.zero(Basis.full(L))
    for k in lattice_sites(L):
        total = total + build_Y_site(i, sign, k, L)
    total.label = f'Y{i}{sign}'
    logger.debug('built %s at L=%s: nnz %s', total.label, L, total.nnz)
    return total


def build_all_Y(L):
    return {(i, sign): build_Y(i, sign, L) for i in (1, 2) for sign in SIGNS}


def number_operator(L, occupation, label):
    return SparseOp.diagonal(Basis.full(L), lambda c: LaurentPoly.constant(c.count(occupation)), label)


def build_cartan(L):
    """
    Diagonal Cartan operators: N, V, M (the H~_i), H1 = N - V, H2 = V - M
    and L_i = q^(-H~_i / 2).
    """
    validate_capacity(L, settings.ASEP['SYMMETRY_OPERATOR_MAX_L'], 'symmetry operators')
    basis = Basis.full(L)
    counts = {'N': Occupation.A, 'V': Occupation.V, 'M': Occupation.B}
    cartan = {name: number_operator(L, occupation, name) for name, occupation in counts.items()}
    cartan['H1'] = cartan['N'] - cartan['V']
    cartan['H1'].label = 'H1'
    cartan['H2'] = cartan['V'] - cartan['M']
    cartan['H2'].label = 'H2'
    for index, occupation in enumerate(counts.values(), start=1):
        cartan[f'L{index}'] = SparseOp.diagonal(
            basis, lambda c, occupation=occupation: q_power(Fraction(-c.count(occupation), 2)), f'L{index}'
        )
    return cartan


def diagonal_function(op, func, label=''):
    """Apply ``func`` to the integer eigenvalues of a diagonal operator."""
    basis = op.basis
    values = op.diagonal_values()
    return SparseOp(
        basis,
        {i: {i: func(int(LaurentPoly.coerce(value).coefficient(0)) if value else 0)} for i, value in enumerate(values)},
        label,
    )


def q_bracket(op):
    """[op]_q for a diagonal operator with integer eigenvalues."""
    return diagonal_function(op, q_number, f'[{op.label}]_q')


def projector_power(p, projector):
    """p^P = 1 + (p - 1) P for a projector P."""
    identity = SparseOp.identity(projector.basis, ONE)
    return identity + (projector * (p - 1))
