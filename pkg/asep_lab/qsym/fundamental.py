"""
The 3x3 matrices acting on a single site.

Basis order is (A, vacancy, B), matching :class:`lattice.configurations.Occupation`.
Entry ``[row, col]`` is the amplitude of ket ``row`` in the image of ket ``col``:
``a_plus`` turns a vacancy into an A particle, ``b_plus`` a vacancy into a B
particle and ``c_plus`` a B particle into an A particle.
"""
import numpy as np

from lattice.configurations import Occupation
from reports.checks import CheckReport

A, V, B = int(Occupation.A), int(Occupation.V), int(Occupation.B)


def _unit(row, col):
    matrix = np.zeros((3, 3), dtype=int)
    matrix[row, col] = 1
    return matrix


IDENTITY = np.eye(3, dtype=int)

a_plus = _unit(A, V)
a_minus = _unit(V, A)
b_plus = _unit(B, V)
b_minus = _unit(V, B)
c_plus = _unit(A, B)
c_minus = _unit(B, A)

a_hat = _unit(A, A)
v_hat = _unit(V, V)
b_hat = _unit(B, B)

TRANSITIONS = {
    'a+': a_plus,
    'a-': a_minus,
    'b+': b_plus,
    'b-': b_minus,
    'c+': c_plus,
    'c-': c_minus,
}

PROJECTORS = {
    'a^': a_hat,
    'v^': v_hat,
    'b^': b_hat,
}

FUNDAMENTAL = {**TRANSITIONS, **PROJECTORS, '1': IDENTITY}


def source_state(u):
    """The single ket a transition matrix acts on nontrivially."""
    (col,) = np.flatnonzero(u.any(axis=0))
    return int(col)


def target_state(u):
    (row,) = np.flatnonzero(u.any(axis=1))
    return int(row)


def check_fundamental():
    report = CheckReport('single-site matrices')
    same = np.array_equal
    report.record('c+ = a+ b-', same(c_plus, a_plus @ b_minus))
    report.record('c- = b+ a-', same(c_minus, b_plus @ a_minus))
    report.record('a- b+ = 0', not (a_minus @ b_plus).any(), detail='literal product a^- b^+ vanishes')
    report.record('c- = (c+)^T', same(c_minus, c_plus.T))
    for name, plus, minus in (('a', a_plus, a_minus), ('b', b_plus, b_minus), ('c', c_plus, c_minus)):
        report.record(f'({name}+)^T = {name}-', same(plus.T, minus))
    report.record('a^ + v^ + b^ = 1', same(a_hat + v_hat + b_hat, IDENTITY))
    for name, projector in PROJECTORS.items():
        report.record(f'{name} idempotent', same(projector @ projector, projector))
    report.extend(check_projector_relations())
    return report


def check_projector_relations():
    """
    u P keeps u exactly when P projects on the state u acts on, and P u
    keeps u exactly when P projects on the state u produces.
    """
    report = CheckReport('projector relations')
    for u_name, u in TRANSITIONS.items():
        for p_name, projector in PROJECTORS.items():
            diagonal_index = int(np.flatnonzero(np.diag(projector))[0])
            expected_right = u if diagonal_index == source_state(u) else np.zeros_like(u)
            expected_left = u if diagonal_index == target_state(u) else np.zeros_like(u)
            report.record(f'{u_name} {p_name}', np.array_equal(u @ projector, expected_right))
            report.record(f'{p_name} {u_name}', np.array_equal(projector @ u, expected_left))
    return report
