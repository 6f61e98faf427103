class DegenerateWidth(ValueError):
    """The shock width 1/ln q is undefined at q = 1."""
