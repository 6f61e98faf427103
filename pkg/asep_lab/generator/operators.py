"""
Sparse square matrices over the configuration basis.

Storage is column-compressed: ``columns[col][row] = value`` with no stored
zeros. Values are either :class:`~qring.polynomials.LaurentPoly` (exact
ring) or ``float`` (numeric ring); the two are never mixed in one operator.
Entry order for iteration and serialization is by column, then row.
"""
from dataclasses import dataclass
from functools import cached_property, lru_cache

from scipy import sparse

from lattice.configurations import Sector
from lattice.utils import all_configs, enumerate_sector
from qring.polynomials import ONE, LaurentPoly, exact_div

FULL = 'Full'
SECTOR = 'Sector'


@dataclass(frozen=True)
class Basis:
    """The full ternary basis on 2L sites, or the basis of one sector."""

    L: int
    N: int | None = None
    M: int | None = None

    @classmethod
    def full(cls, L):
        return _shared_basis(L, None, None)

    @classmethod
    def sector(cls, sector):
        return _shared_basis(sector.L, sector.N, sector.M)

    @property
    def kind(self):
        return FULL if self.N is None else SECTOR

    @cached_property
    def configs(self):
        if self.N is None:
            return all_configs(self.L)
        return enumerate_sector(Sector(self.L, self.N, self.M))

    @cached_property
    def _positions(self):
        return {config: i for i, config in enumerate(self.configs)}

    @property
    def dim(self):
        return len(self.configs)

    def position(self, config):
        """0-based row/column of ``config``; KeyError if outside the basis."""
        return self._positions[config]

    def __contains__(self, config):
        return config in self._positions

    def __str__(self):
        if self.N is None:
            return f'{FULL} L={self.L}'
        return f'{SECTOR} L={self.L} N={self.N} M={self.M}'


@lru_cache(maxsize=None)
def _shared_basis(L, N, M):
    return Basis(L, N, M)


def _is_exact(value):
    return isinstance(value, LaurentPoly)


class SparseOp:
    __slots__ = ('basis', 'columns', 'label')

    def __init__(self, basis, columns=None, label=''):
        self.basis = basis
        self.columns = {}
        self.label = label
        for col, column in (columns or {}).items():
            kept = {row: value for row, value in column.items() if value}
            if kept:
                self.columns[col] = kept

    # Construction

    @classmethod
    def from_entries(cls, basis, entries, label=''):
        """Accumulate ``(row, col, value)`` triples; repeated positions add up."""
        columns = {}
        for row, col, value in entries:
            column = columns.setdefault(col, {})
            column[row] = column[row] + value if row in column else value
        return cls(basis, columns, label)

    @classmethod
    def identity(cls, basis, one=ONE, label='1'):
        return cls(basis, {i: {i: one} for i in range(basis.dim)}, label)

    @classmethod
    def diagonal(cls, basis, value_of, label=''):
        """Diagonal operator with entry ``value_of(config)`` on each basis state."""
        return cls(basis, {i: {i: value_of(config)} for i, config in enumerate(basis.configs)}, label)

    @classmethod
    def zero(cls, basis, label='0'):
        return cls(basis, {}, label)

    # Inspection

    @property
    def dim(self):
        return self.basis.dim

    @property
    def nnz(self):
        return sum(len(column) for column in self.columns.values())

    @property
    def is_exact(self):
        for column in self.columns.values():
            for value in column.values():
                return _is_exact(value)
        return False

    def get(self, row, col):
        return self.columns.get(col, {}).get(row, 0)

    def entries(self):
        return [
            (row, col, self.columns[col][row])
            for col in sorted(self.columns)
            for row in sorted(self.columns[col])
        ]

    def first_nonzero(self, tolerance=0.0):
        """First ``(row, col, value)`` in column order whose value is nonzero."""
        for row, col, value in self.entries():
            if _is_exact(value) or abs(value) > tolerance:
                return row, col, value
        return None

    def is_zero(self, tolerance=0.0):
        return self.first_nonzero(tolerance) is None

    def row(self, index):
        return {col: column[index] for col, column in sorted(self.columns.items()) if index in column}

    def column(self, index):
        return dict(sorted(self.columns.get(index, {}).items()))

    def diagonal_values(self):
        return [self.get(i, i) for i in range(self.dim)]

    def column_sums(self):
        sums = []
        for col in range(self.dim):
            values = list(self.columns.get(col, {}).values())
            total = values[0] if values else 0
            for value in values[1:]:
                total = total + value
            sums.append(total)
        return sums

    # Algebra

    def _check_basis(self, other):
        if self.basis != other.basis:
            raise ValueError(f'basis mismatch: {self.basis} vs {other.basis}')

    def __add__(self, other):
        self._check_basis(other)
        columns = {col: dict(column) for col, column in self.columns.items()}
        for col, column in other.columns.items():
            target = columns.setdefault(col, {})
            for row, value in column.items():
                target[row] = target[row] + value if row in target else value
        return SparseOp(self.basis, columns)

    def __neg__(self):
        return SparseOp(
            self.basis,
            {col: {row: -value for row, value in column.items()} for col, column in self.columns.items()},
            f'-{self.label}',
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return SparseOp(
            self.basis,
            {col: {row: factor * value for row, value in column.items()} for col, column in self.columns.items()},
        )

    def __mul__(self, factor):
        if isinstance(factor, SparseOp):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check_basis(other)
        columns = {}
        for col, column in other.columns.items():
            target = {}
            for middle, right in column.items():
                for row, left in self.columns.get(middle, {}).items():
                    product = left * right
                    target[row] = target[row] + product if row in target else product
            columns[col] = target
        return SparseOp(self.basis, columns)

    def __pow__(self, exponent):
        result = SparseOp.identity(self.basis, ONE if self.is_exact else 1.0)
        for _ in range(exponent):
            result = result @ self
        return result

    def commutator(self, other):
        return self @ other - other @ self

    def transpose(self):
        columns = {}
        for col, column in self.columns.items():
            for row, value in column.items():
                columns.setdefault(row, {})[col] = value
        return SparseOp(self.basis, columns, f'{self.label}^T')

    @property
    def T(self):
        return self.transpose()

    def map_values(self, func, label=None):
        return SparseOp(
            self.basis,
            {col: {row: func(value) for row, value in column.items()} for col, column in self.columns.items()},
            self.label if label is None else label,
        )

    def divide(self, divisor):
        """Entrywise exact division by a Laurent polynomial."""
        return self.map_values(lambda value: exact_div(value, divisor))

    def restrict(self, basis):
        """The block of this full-basis operator on a sector basis."""
        positions = [self.basis.position(config) for config in basis.configs]
        back = {full: i for i, full in enumerate(positions)}
        columns = {}
        for j, full_col in enumerate(positions):
            column = self.columns.get(full_col, {})
            kept = {back[row]: value for row, value in column.items() if row in back}
            if kept:
                columns[j] = kept
        return SparseOp(basis, columns, self.label)

    # Numeric views

    def evaluate(self, q0, scale=1.0):
        """Float copy with every Laurent entry evaluated at ``q = q0``."""
        def numeric(value):
            if _is_exact(value):
                return scale * value.evaluate(q0)
            return scale * float(value)

        return self.map_values(numeric)

    def to_scipy(self):
        rows, cols, data = [], [], []
        for row, col, value in self.entries():
            if _is_exact(value):
                raise TypeError('evaluate exact operators before converting them to scipy')
            rows.append(row)
            cols.append(col)
            data.append(float(value))
        return sparse.csc_matrix((data, (rows, cols)), shape=(self.dim, self.dim))

    def to_dense(self):
        return self.to_scipy().toarray()

    def equals(self, other, tolerance=0.0):
        return (self - other).is_zero(tolerance)

    def __repr__(self):
        return f'<SparseOp {self.label or "?"} dim={self.dim} nnz={self.nnz} {self.basis}>'

