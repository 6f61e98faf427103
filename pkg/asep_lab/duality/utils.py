"""
Duality functions of the two-component process and the symmetry operator S.

Dual coordinates z are :class:`~lattice.configurations.Positions`; as rows of
a duality matrix they are indexed by the configuration ``from_positions(z)``.
"""
import logging
from dataclasses import dataclass

from django.conf import settings

from generator.operators import Basis, SparseOp
from lattice.configurations import Occupation
from lattice.utils import from_positions, relabel_second_class, to_positions
from lattice.validators import validate_capacity, validate_site
from measures.utils import pi_inverse_of_positions
from qring.polynomials import ONE, ZERO, q_power
from qring.utils import q_factorial
from qsym.utils import build_Y

logger = logging.getLogger(__name__)

A, B = Occupation.A, Occupation.B

CLOSED_FORM = 'ClosedForm'
FROM_SYMMETRY = 'FromSymmetry'

SOURCE_CHOICES = [
    (CLOSED_FORM, 'pi(z)^-1 Q_z(eta)'),
    (FROM_SYMMETRY, 'pi^-1 S'),
]


def _left_right(config, site, species):
    left = sum(1 for k in config.sites if k < site and config.at(k) is species)
    right = sum(1 for k in config.sites if k > site and config.at(k) is species)
    return left, right


def QA(x, config):
    """q^(sum_{k<x} a_k - sum_{k>x} a_k) a_x."""
    validate_site(x, config.L)
    if config.at(x) is not A:
        return ZERO
    left, right = _left_right(config, x, A)
    return q_power(left - right)


def QB(y, config):
    """q^(-sum_{k<y} b_k + sum_{k>y} b_k) b_y."""
    validate_site(y, config.L)
    if config.at(y) is not B:
        return ZERO
    left, right = _left_right(config, y, B)
    return q_power(right - left)


def qz_exponent(z, config):
    """Exponent of the monomial Q_z(eta), or None when Q_z(eta) = 0."""
    if any(config.at(x) is not A for x in z.x) or any(config.at(y) is not B for y in z.y):
        return None
    exponent = 0
    for x in z.x:
        left, right = _left_right(config, x, A)
        exponent += left - right
    for y in z.y:
        left, right = _left_right(config, y, B)
        exponent += right - left
    return exponent


def Qz(z, config):
    """prod_i Q^A_{x_i}(eta) prod_i Q^B_{y_i}(eta)."""
    exponent = qz_exponent(z, config)
    return ZERO if exponent is None else q_power(exponent)


def qz_float(z, config, q0):
    exponent = qz_exponent(z, config)
    return 0.0 if exponent is None else q0 ** exponent


def duality_function(z, config):
    """D(z, eta) = pi(z)^-1 Q_z(eta)."""
    value = Qz(z, config)
    if not value:
        return ZERO
    return pi_inverse_of_positions(z) * value


def tilde_Qz(z, config):
    """The variant with Q~^A_x = q^(2 sum_{k<x} a_k) a_x and Q~^B_y = q^(-2 sum_{k<y} b_k) b_y."""
    if any(config.at(x) is not A for x in z.x) or any(config.at(y) is not B for y in z.y):
        return ZERO
    exponent = 2 * sum(_left_right(config, x, A)[0] for x in z.x)
    exponent -= 2 * sum(_left_right(config, y, B)[0] for y in z.y)
    return q_power(exponent)


def tilde_duality(z, config):
    value = tilde_Qz(z, config)
    if not value:
        return ZERO
    return pi_inverse_of_positions(z) * value


def tilde_ratio_exponent(z, config):
    """Q~_z / Q_z = q^(nN - mM - n + m) on the sector of eta, n = N(z), m = M(z)."""
    n, m = z.N, z.M
    return n * config.N - m * config.M - n + m


def second_class_duality(z, config):
    """
    Duality function for the process with second-class particles: ``config``
    carries second-class particles where the two-component process has
    vacancies, so b_k is read off the vacancies of ``config``.
    """
    return duality_function(z, relabel_second_class(config))


def qz_diagonal(z, L):
    """The diagonal operator Q^_z on the full basis."""
    return SparseOp.diagonal(Basis.full(L), lambda config: Qz(z, config), f'Q_{z}')


def _divided_powers(y):
    """[(Y^n / [n]_q!) for n = 0, 1, ...] until the power vanishes."""
    powers = [SparseOp.identity(y.basis)]
    current = powers[0]
    n = 0
    while True:
        n += 1
        current = current @ y
        if current.is_zero():
            return powers
        powers.append(current.divide(q_factorial(n)))


def build_S(L, cutoff=None):
    """
    S = sum_{n,m} (Y1-)^n/[n]_q! (Y2+)^m/[m]_q!.

    With ``cutoff`` only terms with n + m <= cutoff are kept.
    """
    validate_capacity(L, settings.ASEP['SYMMETRY_OPERATOR_MAX_L'], 'symmetry operator S')
    first = _divided_powers(build_Y(1, '-', L))
    second = _divided_powers(build_Y(2, '+', L))
    S = SparseOp.zero(Basis.full(L))
    for n, left in enumerate(first):
        for m, right in enumerate(second):
            if cutoff is not None and n + m > cutoff:
                continue
            S = S + left @ right
    S.label = 'S' if cutoff is None else f'S[n+m<={cutoff}]'
    logger.debug('built %s at L=%s: nnz %s', S.label, L, S.nnz)
    return S


@dataclass
class DualityMatrix:
    """Rows are dual coordinates z (as configurations), columns configurations eta."""

    op: SparseOp
    source: str

    @property
    def basis(self):
        return self.op.basis

    def value(self, z, config):
        basis = self.basis
        return self.op.get(basis.position(from_positions(z)), basis.position(config))

    def equals(self, other):
        return self.op.equals(other.op)


def _closed_form(L, function):
    basis = Basis.full(L)
    entries = []
    for row, dual in enumerate(basis.configs):
        z = to_positions(dual)
        for col, config in enumerate(basis.configs):
            value = function(z, config)
            if value:
                entries.append((row, col, value))
    return SparseOp.from_entries(basis, entries)


def duality_matrix(source, L):
    validate_capacity(L, settings.ASEP['EXACT_MAX_L'], 'duality matrix')
    if source == CLOSED_FORM:
        op = _closed_form(L, duality_function)
    elif source == FROM_SYMMETRY:
        S = build_S(L)
        pi_inverse = SparseOp.diagonal(S.basis, lambda config: pi_inverse_of_positions(to_positions(config)))
        op = pi_inverse @ S
    else:
        raise ValueError(f'unknown duality matrix source {source!r}')
    op.label = f'D[{source}]'
    return DualityMatrix(op, source)


def tilde_duality_matrix(L):
    validate_capacity(L, settings.ASEP['EXACT_MAX_L'], 'duality matrix')
    return DualityMatrix(_closed_form(L, tilde_duality), CLOSED_FORM)


def second_class_matrices(H):
    """
    (D2, H2): the second-class duality matrix and the generator of the relabeled
    process, H2[zeta', zeta] = H[R zeta', R zeta] with R exchanging B and vacancies.
    """
    basis = H.basis
    relabel = [basis.position(relabel_second_class(config)) for config in basis.configs]
    H2 = SparseOp(
        basis,
        {relabel[col]: {relabel[row]: value for row, value in column.items()} for col, column in H.columns.items()},
        'H2',
    )
    D2 = _closed_form(basis.L, second_class_duality)
    return D2, H2


def summation_row(basis, one=ONE):
    return {col: one for col in range(basis.dim)}
