from django.core.exceptions import ValidationError


class InvalidLatticeSize(ValidationError):
    pass


class SiteOutOfRange(ValidationError):
    pass


class BondOutOfRange(ValidationError):
    pass


class OverlappingCoordinates(ValidationError):
    pass


class InvalidSector(ValidationError):
    pass


class LatticeTooLarge(ValidationError):
    pass


def validate_half_size(L):
    """
    Validate the half-size L of the lattice {-L+1, ..., L}.
    """
    if not isinstance(L, int) or isinstance(L, bool) or L < 1:
        raise InvalidLatticeSize(f'L must be a positive integer, got {L!r}')
    return L


def validate_site_count(count):
    if count <= 0 or count % 2:
        raise InvalidLatticeSize(f'the lattice needs an even, positive number of sites, got {count}')
    return count // 2


def validate_site(k, L):
    if not -L + 1 <= k <= L:
        raise SiteOutOfRange(f'site {k} is outside {{{-L + 1}, ..., {L}}}')
    return k


def validate_bond(k, L):
    if not -L + 1 <= k <= L - 1:
        raise BondOutOfRange(f'bond ({k}, {k + 1}) is outside the lattice {{{-L + 1}, ..., {L}}}')
    return k


def validate_sector(L, N, M):
    if N < 0 or M < 0 or N + M > 2 * L:
        raise InvalidSector(f'no sector with N={N}, M={M} on {2 * L} sites')


def validate_capacity(L, limit, what):
    if L > limit:
        raise LatticeTooLarge(f'{what} is capped at L <= {limit}, got L={L}')
    return L
