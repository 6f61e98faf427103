class NotConstant(AssertionError):
    """A sum that must be independent of its free coordinate is not."""

    def __init__(self, what, coordinate, expected, found):
        self.what = what
        self.coordinate = coordinate
        self.expected = expected
        self.found = found
        super().__init__(f'{what} is not constant: {expected} before, {found} at {coordinate}')
