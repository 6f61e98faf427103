"""
Exhaustive checks of the counting identities for N_k, M_k and Theta and of
the permutation-sum identities used when summing divided powers.
"""
import logging
from itertools import permutations, product

from lattice.configurations import Occupation, Positions, all_sectors, lattice_sites
from lattice.utils import all_configs, count_left, theta, to_positions, weyl_alcove
from lattice.validators import validate_capacity
from qring.polynomials import ZERO, q_power
from qring.utils import q_factorial
from reports.checks import CheckReport

logger = logging.getLogger(__name__)


class _FirstCounterexample:
    """Collects the first failure of each named relation."""

    def __init__(self, names):
        self.names = list(names)
        self.failures = {}

    def check(self, name, holds, detail):
        if not holds and name not in self.failures:
            self.failures[name] = detail

    def into(self, report):
        for name in self.names:
            failure = self.failures.get(name)
            report.record(name, failure is None, residual=failure or '')
        return report


def _split(L, code):
    """Decode a base-3 code into two disjoint coordinate sets (first, second)."""
    first, second = [], []
    for k in lattice_sites(L):
        code, digit = divmod(code, 3)
        if digit == 0:
            first.append(k)
        elif digit == 2:
            second.append(k)
    return first, second


def check_counting_lemmas(Lmax):
    validate_capacity(Lmax, 3, 'check_counting_lemmas')
    names = ['Theta-complement', 'single-particle-count', 'A-count-sum-of-singles',
             'A-count-union', 'A-count-union-theta', 'B-count-union', 'B-count-union-theta', 'A-count-reflection', 'B-count-reflection', 'occupation-positions', 'sector-sizes']
    found = _FirstCounterexample(names)
    A, B = Occupation.A, Occupation.B

    for L in range(1, Lmax + 1):
        sites = list(lattice_sites(L))
        for r, x in product(sites, sites):
            found.check('Theta-complement', theta(r, x) + theta(x, r) + (r == x) == 1, f'L={L} r={r} x={x}')
            single = Positions(L, (x,))
            found.check('single-particle-count', count_left(single, r, A) == theta(x, r), f'L={L} x={x} r={r}')

        for code in range(3 ** (2 * L)):
            x, r = _split(L, code)
            z_x, z_r, z_xr = Positions(L, tuple(x)), Positions(L, tuple(r)), Positions(L, tuple(x + r))
            w_x, w_r, w_xr = Positions(L, (), tuple(x)), Positions(L, (), tuple(r)), Positions(L, (), tuple(x + r))
            for k in sites:
                where = f'L={L} x={x} r={r} k={k}'
                singles = sum(count_left(Positions(L, (xi,)), k, A) for xi in x)
                found.check('A-count-sum-of-singles', count_left(z_x, k, A) == singles, where)
                if k in r:
                    continue
                found.check('A-count-union', count_left(z_xr, k, A) == count_left(z_x, k, A) + count_left(z_r, k, A), where)
                found.check(
                    'A-count-union-theta',
                    count_left(z_xr, k, A) == count_left(z_x, k, A) + len(r) - sum(theta(k, ri) for ri in r),
                    where,
                )
                found.check('B-count-union', count_left(w_xr, k, B) == count_left(w_x, k, B) + count_left(w_r, k, B), where)
                found.check(
                    'B-count-union-theta',
                    count_left(w_xr, k, B) == count_left(w_x, k, B) + len(r) - sum(theta(k, ri) for ri in r),
                    where,
                )
                found.check(
                    'A-count-reflection',
                    count_left(z_r, k, A) == len(r) - sum(count_left(Positions(L, (k,)), ri, A) for ri in r),
                    where,
                )
                found.check(
                    'B-count-reflection',
                    count_left(w_r, k, B) == len(r) - sum(count_left(Positions(L, (), (k,)), ri, B) for ri in r),
                    where,
                )

        if L <= 2:
            for config in all_configs(L):
                z = to_positions(config)
                for k in sites:
                    holds = config.a(k) == z.x.count(k) and config.b(k) == z.y.count(k)
                    found.check('occupation-positions', holds, f'config={config} k={k}')

        total = sum(sector.size for sector in all_sectors(L))
        found.check('sector-sizes', total == 3 ** (2 * L), f'L={L} total={total}')

    report = found.into(CheckReport(f'counting lemmas, L <= {Lmax}'))
    logger.info('counting lemmas up to L=%s: %s', Lmax, 'PASS' if report.passed else 'FAIL')
    return report


def _inversion_exponent(values):
    """-2 sum_{i<j} Theta(v_i, v_j)."""
    return -2 * sum(theta(values[i], values[j]) for j in range(len(values)) for i in range(j))


def q_factorial_sides(r):
    """Both sides of the q-factorial permutation identity for the tuple r."""
    n = len(r)
    lhs = ZERO
    for perm in permutations(r):
        lhs = lhs + q_power(_inversion_exponent(perm) + n * (n - 1) // 2)
    reversed_theta = -2 * sum(theta(r[j], r[i]) for j in range(n) for i in range(j))
    rhs = q_factorial(n) * q_power(reversed_theta)
    return lhs, rhs


def _test_functions(n):
    weights = [
        [0] * n,
        list(range(1, n + 1)),
        [(-1) ** i for i in range(n)],
        [i * i - 1 for i in range(n)],
    ]

    def make(c):
        def f(values):
            if len(set(values)) < len(values):
                return ZERO
            return q_power(sum(ci * vi for ci, vi in zip(c, values)))
        return f

    return [(f'c={c}', make(c)) for c in weights]


def alcove_sum_sides(f, n, L):
    sites = list(lattice_sites(L))
    lhs = ZERO
    for values in product(sites, repeat=n):
        lhs = lhs + f(values)
    rhs = ZERO
    for r in weyl_alcove(n, L):
        for perm in permutations(r):
            rhs = rhs + f(perm)
    return lhs, rhs


def check_permutation_identities(nmax, Lmax):
    validate_capacity(nmax, 4, 'check_permutation_identities (n)')
    validate_capacity(Lmax, 3, 'check_permutation_identities (L)')
    found = _FirstCounterexample(['q-factorial-permutation-sum', 'alcove-permutation-sum'])
    for L in range(1, Lmax + 1):
        for n in range(1, min(nmax, 2 * L) + 1):
            for r in weyl_alcove(n, L):
                lhs, rhs = q_factorial_sides(r)
                found.check('q-factorial-permutation-sum', lhs == rhs, f'r={r} residual={lhs - rhs}')
            for label, f in _test_functions(n):
                lhs, rhs = alcove_sum_sides(f, n, L)
                found.check('alcove-permutation-sum', lhs == rhs, f'L={L} n={n} {label} residual={lhs - rhs}')
    return found.into(CheckReport(f'permutation identities, n <= {nmax}, L <= {Lmax}'))
