class NonIntegralQuotient(ArithmeticError):
    """Raised when a Laurent polynomial division leaves a nonzero remainder."""

    def __init__(self, dividend, divisor, remainder=None):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f'({dividend}) is not divisible by ({divisor})')
