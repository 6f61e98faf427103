import math
from functools import lru_cache

from qring.polynomials import ONE, LaurentPoly, exact_div


@lru_cache(maxsize=None)
def q_number(n):
    """Symmetric q-number [n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n < 0:
        return -q_number(-n)
    return LaurentPoly({2 * k - n + 1: 1 for k in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n):
    if n < 0:
        raise ValueError('q-factorial needs n >= 0')
    result = ONE
    for k in range(1, n + 1):
        result = result * q_number(k)
    return result


def q_multinomial(K, N, M=0):
    """C_K(N, M) = [K]! / ([N]! [M]! [K-N-M]!), an exact Laurent polynomial."""
    if N < 0 or M < 0 or N + M > K:
        raise ValueError(f'invalid q-multinomial arguments K={K}, N={N}, M={M}')
    denominator = q_factorial(N) * q_factorial(M) * q_factorial(K - N - M)
    return exact_div(q_factorial(K), denominator)


def q_binomial(K, N):
    return q_multinomial(K, N, 0)


def evaluate(a, q0):
    return LaurentPoly.coerce(a).evaluate(q0)


def rogers_szego_X(two_l, alpha, q0):
    """X_{2L}(alpha) = sum_K e^(alpha K) C_{2L}(K) at q = q0."""
    return math.fsum(math.exp(alpha * K) * q_binomial(two_l, K).evaluate(q0) for K in range(two_l + 1))


def rogers_szego_Y(two_l, nu, mu, q0):
    """
    Y_{2L}(nu, mu) = sum_{N,M} e^(nu N + mu M) C_{2L}(N, M) at q = q0.

    ``-math.inf`` for either chemical potential drops that species.
    """
    total = []
    for N in range(two_l + 1):
        for M in range(two_l - N + 1):
            weight = fugacity(nu, N) * fugacity(mu, M)
            if weight:
                total.append(weight * q_multinomial(two_l, N, M).evaluate(q0))
    return math.fsum(total)


def rogers_szego_product(two_l, alpha, q0):
    """Product side of the q-binomial theorem, prod_k (1 + e^alpha q^(2k-1))."""
    half = two_l // 2
    return math.prod(1 + math.exp(alpha) * q0 ** (2 * k - 1) for k in range(-half + 1, half + 1))


def fugacity(chem_pot, count):
    if count == 0:
        return 1.0
    if chem_pot == -math.inf:
        return 0.0
    return math.exp(chem_pot * count)
