"""
Exact Laurent polynomials in q^(1/2) with rational coefficients.

Exponents are stored as integers counting half-steps, so ``q`` itself is the
half-exponent 2 and ``q^(1/2)`` is 1. The public surface speaks in powers of
``q``: ``LaurentPoly({1: 1, -1: 1})`` is ``q + q^-1`` and half-integer powers
are given as ``Fraction(1, 2)``.
"""
import math
import re
from fractions import Fraction

from qring.exceptions import NonIntegralQuotient

TERM_PATTERN = re.compile(r'^\s*(?P<coeff>-?\d+(?:/\d+)?)\*q\^(?P<exp>-?\d+|\(-?\d+/2\))\s*$')


def _half(exponent):
    doubled = Fraction(exponent) * 2
    if doubled.denominator != 1:
        raise ValueError(f'exponent {exponent} is not a multiple of 1/2')
    return int(doubled)


def _format_exponent(half):
    if half % 2 == 0:
        return str(half // 2)
    return f'({half}/2)'


class LaurentPoly:
    __slots__ = ('_terms',)

    def __init__(self, terms=None):
        self._terms = {}
        if terms:
            for exponent, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    key = _half(exponent)
                    self._terms[key] = self._terms.get(key, 0) + coeff
            self._terms = {k: c for k, c in self._terms.items() if c}

    @classmethod
    def _from_half(cls, terms):
        poly = cls.__new__(cls)
        poly._terms = {k: c for k, c in terms.items() if c}
        return poly

    @classmethod
    def constant(cls, value):
        return cls._from_half({0: Fraction(value)})

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls._from_half({_half(exponent): Fraction(coeff)})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        raise TypeError(f'cannot use {type(value).__name__} as a Laurent polynomial')

    @classmethod
    def parse(cls, text):
        """Read the ``coeff*q^exp + ...`` form written by ``str()``."""
        text = text.strip()
        if text == '0':
            return cls()
        terms = {}
        for chunk in text.split(' + '):
            match = TERM_PATTERN.match(chunk)
            if match is None:
                raise ValueError(f'malformed Laurent polynomial term: {chunk!r}')
            exp = match.group('exp').strip('()')
            half = int(exp.split('/')[0]) if '/' in exp else 2 * int(exp)
            terms[half] = terms.get(half, 0) + Fraction(match.group('coeff'))
        return cls._from_half(terms)

    # Inspection

    def terms(self):
        """Sorted ``(exponent, coeff)`` pairs with exponents in powers of q."""
        return [(Fraction(k, 2), c) for k, c in sorted(self._terms.items())]

    def half_terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        return len(self._terms) == 1

    def degree(self):
        if not self._terms:
            raise ValueError('the zero polynomial has no degree')
        return Fraction(max(self._terms), 2)

    def valuation(self):
        if not self._terms:
            raise ValueError('the zero polynomial has no valuation')
        return Fraction(min(self._terms), 2)

    def monomial_exponent(self):
        if not self.is_monomial():
            raise ValueError(f'{self} is not a monomial')
        (half,) = self._terms
        return Fraction(half, 2)

    def coefficient(self, exponent):
        return self._terms.get(_half(exponent), Fraction(0))

    def evaluate(self, q0):
        """Numeric value at ``q = q0 > 0``."""
        if q0 <= 0:
            raise ValueError('q0 must be positive')
        root = math.sqrt(q0)
        return math.fsum(
            float(c) * q0 ** (k // 2) * (root if k % 2 else 1.0) for k, c in self._terms.items()
        )

    def substitute_inverse(self):
        """The image under q -> 1/q."""
        return LaurentPoly._from_half({-k: c for k, c in self._terms.items()})

    # Ring operations

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self):
        return LaurentPoly._from_half({k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0) + c
        return LaurentPoly._from_half(terms)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        terms = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                terms[k1 + k2] = terms.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly._from_half(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self):
        """Multiplicative inverse; only monomials are units of the ring."""
        if not self.is_monomial():
            raise NonIntegralQuotient(ONE, self)
        ((half, coeff),) = self._terms.items()
        return LaurentPoly._from_half({-half: 1 / coeff})

    def __truediv__(self, other):
        return exact_div(self, LaurentPoly.coerce(other))

    def __rtruediv__(self, other):
        return exact_div(LaurentPoly.coerce(other), self)

    def __repr__(self):
        return f'LaurentPoly({self})'

    def __str__(self):
        if not self._terms:
            return '0'
        return ' + '.join(f'{c}*q^{_format_exponent(k)}' for k, c in sorted(self._terms.items()))


def exact_div(a, b):
    """
    Quotient ``c`` with ``a == b * c``.

    Long division by the leading term. The quotient of two Laurent
    polynomials, when it exists in the ring, has degree deg(a) - deg(b) and
    valuation val(a) - val(b); a remainder whose leading term falls below
    that valuation proves there is no exact quotient.
    """
    a = LaurentPoly.coerce(a)
    b = LaurentPoly.coerce(b)
    if not b:
        raise ZeroDivisionError('division by the zero polynomial')
    if not a:
        return ZERO
    b_top = max(b._terms)
    b_lead = b._terms[b_top]
    floor = min(a._terms) - min(b._terms)
    quotient = {}
    remainder = dict(a._terms)
    while remainder:
        top = max(remainder)
        shift = top - b_top
        if shift < floor:
            raise NonIntegralQuotient(a, b, LaurentPoly._from_half(remainder))
        factor = remainder[top] / b_lead
        quotient[shift] = factor
        for k, c in b._terms.items():
            value = remainder.get(k + shift, 0) - factor * c
            if value:
                remainder[k + shift] = value
            else:
                remainder.pop(k + shift, None)
    return LaurentPoly._from_half(quotient)


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
Q = LaurentPoly.monomial(1)


def q_power(exponent):
    """The monomial ``q^exponent``; half-integer exponents allowed."""
    return LaurentPoly.monomial(exponent)
