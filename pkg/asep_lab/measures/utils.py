from lattice.configurations import Occupation, lattice_bonds
from lattice.utils import count_left, enumerate_sector, to_positions
from qring.polynomials import ZERO, q_power


def pi_exponent(config):
    """
    sum_k (2k-1)(a_k - b_k)
      + sum_{k=-L+1}^{L-1} sum_{l=-L+1}^{k} (a_l b_{k+1} - b_l a_{k+1})
    """
    exponent = sum((2 * k - 1) * (config.a(k) - config.b(k)) for k in config.sites)
    a_left = b_left = 0
    for k in lattice_bonds(config.L):
        a_left += config.a(k)
        b_left += config.b(k)
        exponent += a_left * config.b(k + 1) - b_left * config.a(k + 1)
    return exponent


def pi_unnormalized(config):
    """The reversible measure pi(eta), a monomial in q."""
    return q_power(pi_exponent(config))


def positions_exponent(z):
    A, B = Occupation.A, Occupation.B
    a_part = sum(2 * x - 1 - count_left(z, x, B) for x in z.x)
    b_part = sum(2 * y - 1 - count_left(z, y, A) for y in z.y)
    return a_part - b_part


def pi_from_positions(z):
    """pi in the position representation, q^(sum_i [2x_i - 1 - M_{x_i}] - sum_i [2y_i - 1 - N_{y_i}])."""
    return q_power(positions_exponent(z))


def pi_inverse_of_positions(z):
    return q_power(-positions_exponent(z))


def partition_function(sector):
    """Brute-force Z_{2L}(N, M): the sum of pi over the sector."""
    total = ZERO
    for config in enumerate_sector(sector):
        total = total + pi_unnormalized(config)
    return total


def pi_agrees_with_positions(config):
    return pi_exponent(config) == positions_exponent(to_positions(config))
