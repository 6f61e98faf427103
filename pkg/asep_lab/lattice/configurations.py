"""
Configurations of the two-component exclusion process on {-L+1, ..., L}.

Sites are always addressed by their lattice label k; the tuple position
k + L - 1 never leaves this module.
"""
from dataclasses import dataclass
from enum import IntEnum
from math import comb

from lattice.validators import (
    OverlappingCoordinates,
    validate_half_size,
    validate_sector,
    validate_site,
    validate_site_count,
)


class Occupation(IntEnum):
    A = 0
    V = 1
    B = 2

    @property
    def symbol(self):
        return SYMBOLS[self]

    @classmethod
    def from_symbol(cls, symbol):
        try:
            return SYMBOL_LOOKUP[symbol]
        except KeyError:
            raise ValueError(f'unknown occupation symbol {symbol!r}') from None


SYMBOLS = {Occupation.A: 'A', Occupation.V: '0', Occupation.B: 'B'}
SYMBOL_LOOKUP = {symbol: occupation for occupation, symbol in SYMBOLS.items()}

SPECIES = (Occupation.A, Occupation.B)


def lattice_sites(L):
    return range(-L + 1, L + 1)


def lattice_bonds(L):
    return range(-L + 1, L)


@dataclass(frozen=True)
class Config:
    L: int
    occ: tuple

    def __post_init__(self):
        validate_half_size(self.L)
        occ = tuple(Occupation(value) for value in self.occ)
        if len(occ) != 2 * self.L:
            raise ValueError(f'a configuration on L={self.L} has {2 * self.L} sites, got {len(occ)}')
        object.__setattr__(self, 'occ', occ)

    @classmethod
    def from_string(cls, text):
        L = validate_site_count(len(text))
        return cls(L, tuple(Occupation.from_symbol(symbol) for symbol in text))

    @classmethod
    def from_code(cls, L, code):
        """Inverse of :attr:`code` (0-based ternary code)."""
        occ = []
        for _ in range(2 * L):
            code, digit = divmod(code, 3)
            occ.append(digit)
        if code:
            raise ValueError(f'code out of range for L={L}')
        return cls(L, tuple(occ))

    @classmethod
    def from_index(cls, L, index):
        return cls.from_code(L, index - 1)

    @classmethod
    def empty(cls, L):
        return cls(L, (Occupation.V,) * (2 * L))

    @property
    def sites(self):
        return lattice_sites(self.L)

    def at(self, k):
        validate_site(k, self.L)
        return self.occ[k + self.L - 1]

    def a(self, k):
        return int(self.at(k) is Occupation.A)

    def v(self, k):
        return int(self.at(k) is Occupation.V)

    def b(self, k):
        return int(self.at(k) is Occupation.B)

    def count(self, occupation):
        return self.occ.count(occupation)

    @property
    def N(self):
        return self.count(Occupation.A)

    @property
    def M(self):
        return self.count(Occupation.B)

    @property
    def V(self):
        return self.count(Occupation.V)

    @property
    def code(self):
        """Ternary code with site -L+1 as the least significant digit."""
        return sum(int(value) * 3 ** j for j, value in enumerate(self.occ))

    @property
    def index(self):
        return self.code + 1

    def with_site(self, k, occupation):
        validate_site(k, self.L)
        occ = list(self.occ)
        occ[k + self.L - 1] = Occupation(occupation)
        return Config(self.L, tuple(occ))

    def __str__(self):
        return ''.join(value.symbol for value in self.occ)


@dataclass(frozen=True)
class Positions:
    """Position representation z = {x, y}; coordinates are sorted on construction."""

    L: int
    x: tuple = ()
    y: tuple = ()

    def __post_init__(self):
        validate_half_size(self.L)
        x = tuple(sorted(self.x))
        y = tuple(sorted(self.y))
        for k in x + y:
            validate_site(k, self.L)
        if len(set(x)) != len(x) or len(set(y)) != len(y):
            raise OverlappingCoordinates('coordinates repeat within a species')
        if set(x) & set(y):
            raise OverlappingCoordinates(f'sites {sorted(set(x) & set(y))} carry both species')
        object.__setattr__(self, 'x', x)
        object.__setattr__(self, 'y', y)

    @property
    def N(self):
        return len(self.x)

    @property
    def M(self):
        return len(self.y)

    def coordinates(self, species):
        return self.x if species is Occupation.A else self.y

    def __str__(self):
        return f'x={list(self.x)} y={list(self.y)}'


@dataclass(frozen=True)
class Sector:
    L: int
    N: int
    M: int

    def __post_init__(self):
        validate_half_size(self.L)
        validate_sector(self.L, self.N, self.M)

    @property
    def size(self):
        return comb(2 * self.L, self.N) * comb(2 * self.L - self.N, self.M)

    def contains(self, config):
        return config.L == self.L and config.N == self.N and config.M == self.M

    def __str__(self):
        return f'S({2 * self.L};{self.N},{self.M})'


def all_sectors(L):
    return [Sector(L, N, M) for N in range(2 * L + 1) for M in range(2 * L - N + 1)]
