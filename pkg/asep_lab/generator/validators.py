import math
from fractions import Fraction

from django.core.exceptions import ValidationError


class InvalidModelParams(ValidationError):
    pass


def validate_rate(value, name):
    """
    Parse a hopping rate (int, float, Fraction or text such as ``'1/2'``)
    into a positive finite Fraction.
    """
    try:
        rate = Fraction(value)
    except (TypeError, ValueError, OverflowError, ZeroDivisionError):
        raise InvalidModelParams(f'{name} must be a positive number, got {value!r}') from None
    if rate <= 0 or not math.isfinite(float(rate)):
        raise InvalidModelParams(f'{name} must be positive and finite, got {value!r}')
    return rate
