"""
Exact relation checks for the tensor representation: symmetry of H, the
defining and Serre relations of U_q[gl(3)], and the conjugation lemma used
for reversibility.
"""
import logging
from fractions import Fraction

from django.conf import settings

from generator.operators import SparseOp
from lattice.configurations import lattice_sites
from lattice.validators import validate_capacity
from qring.polynomials import ONE, Q, q_power
from qring.utils import q_number
from qsym import fundamental
from qsym.utils import (
    SIGNS,
    build_all_Y,
    build_cartan,
    projector_power,
    q_bracket,
    site_embed,
)
from reports.checks import CheckReport

logger = logging.getLogger(__name__)

# ket-side change (dN, dM) of each Y_i^sign
SECTOR_SHIFT = {
    (1, '+'): (1, 0),
    (1, '-'): (-1, 0),
    (2, '+'): (0, -1),
    (2, '-'): (0, 1),
}


def _sign(sign):
    return 1 if sign == '+' else -1


def check_symmetry(H, q0=None):
    """
    [H, Y_i^sign] = 0 and [H, L_i] = 0. With ``q0`` the operators are first
    specialized to ``q = q0`` and compared in floating point.
    """
    L = H.basis.L
    report = CheckReport(f'symmetry of H, L={L}' + ('' if q0 is None else f', q={q0}'))
    ys = build_all_Y(L)
    cartan = build_cartan(L)
    operators = [(f'Y{i}{sign}', y) for (i, sign), y in ys.items()]
    operators += [(f'L{i}', cartan[f'L{i}']) for i in (1, 2, 3)]
    for name, op in operators:
        if q0 is None:
            report.record_zero(f'[H,{name}]=0', H.commutator(op))
        else:
            residual = H.evaluate(q0).commutator(op.evaluate(q0))
            report.record_zero(f'[H,{name}]=0', _drop_below(residual, 1e-12))
    logger.info('%s: %s', report.title, 'PASS' if report.passed else 'FAIL')
    return report


def _drop_below(op, tolerance):
    return op.map_values(lambda value: value if abs(value) > tolerance else 0.0)


def check_algebra_relations(L):
    validate_capacity(L, settings.ASEP['ALGEBRA_MAX_L'], 'algebra relation checks')
    report = CheckReport(f'U_q[gl(3)] relations, L={L}')
    ys = build_all_Y(L)
    cartan = build_cartan(L)
    Ls = {i: cartan[f'L{i}'] for i in (1, 2, 3)}

    report.record_all_zero(
        '[L_i,L_j]=0',
        ((f'i={i} j={j}', Ls[i].commutator(Ls[j])) for i in (1, 2, 3) for j in (1, 2, 3) if i < j),
    )

    def cartan_residuals():
        for i in (1, 2, 3):
            for (j, sign), y in ys.items():
                exponent = Fraction(_sign(sign) * (int(i == j + 1) - int(i == j)), 2)
                yield f'i={i} j={j}{sign}', Ls[i] @ y - (y @ Ls[i]) * q_power(exponent)

    report.record_all_zero('L_i Y_j = q^(..) Y_j L_i', cartan_residuals())

    for i in (1, 2):
        for j in (1, 2):
            commutator = ys[(i, '+')].commutator(ys[(j, '-')])
            if i == j:
                report.record_equal(f'[Y{i}+,Y{j}-]=[H{i}]_q', commutator, q_bracket(cartan[f'H{i}']))
            else:
                report.record_zero(f'[Y{i}+,Y{j}-]=0', commutator)

    # the same relation written with L operators: (q - 1/q)[Y_i^+, Y_i^-] = q^H_i - q^-H_i
    for i in (1, 2):
        commutator = ys[(i, '+')].commutator(ys[(i, '-')]) * (Q - Q.inverse())
        q_h = _power(Ls[i], -2) @ _power(Ls[i + 1], 2)
        q_minus_h = _power(Ls[i], 2) @ _power(Ls[i + 1], -2)
        report.record_equal(f'[Y{i}+,Y{i}-] L-form', commutator, q_h - q_minus_h)

    two = q_number(2)
    for i, j in ((1, 2), (2, 1)):
        for sign in SIGNS:
            yi, yj = ys[(i, sign)], ys[(j, sign)]
            serre = (yi @ yi @ yj) - (yi @ yj @ yi) * two + (yj @ yi @ yi)
            report.record_zero(f'Serre i={i} j={j} {sign}', serre)

    for sign in SIGNS:
        s = _sign(sign)
        report.record_equal(f'[N,Y1{sign}]={sign}Y1{sign}', cartan['N'].commutator(ys[(1, sign)]), ys[(1, sign)] * s)
        report.record_equal(
            f'[M,Y2{sign}]={"-" if s > 0 else "+"}Y2{sign}', cartan['M'].commutator(ys[(2, sign)]), ys[(2, sign)] * -s
        )
    report.record_zero('[Y1-,Y2+]=0', ys[(1, '-')].commutator(ys[(2, '+')]))

    for key, y in ys.items():
        report.record(f'Y{key[0]}{key[1]} sector shift', _shifts_sector(y, SECTOR_SHIFT[key]))

    logger.info('%s: %s', report.title, 'PASS' if report.passed else 'FAIL')
    return report


def _power(diagonal, exponent):
    """Integer power of an invertible diagonal operator with monomial entries."""
    return diagonal.map_values(lambda value: value ** exponent)


def _shifts_sector(op, shift):
    configs = op.basis.configs
    for row, col, _ in op.entries():
        before, after = configs[col], configs[row]
        if (after.N - before.N, after.M - before.M) != shift:
            return False
    return True


def check_transposition(L):
    report = CheckReport(f'transposition of site operators, L={L}')
    pairs = (('a', fundamental.a_plus, fundamental.a_minus),
             ('b', fundamental.b_plus, fundamental.b_minus),
             ('c', fundamental.c_plus, fundamental.c_minus))
    for name, plus, minus in pairs:
        report.record_all_zero(
            f'({name}+_k)^T = {name}-_k',
            ((f'k={k}', site_embed(plus, k, L).transpose() - site_embed(minus, k, L)) for k in lattice_sites(L)),
        )
    return report


def check_conjugation_lemma(L):
    """
    Conjugations by p^(a^_l), p^(b^_l) and p^(a^_l b^_m), with p = q, using
    p^P = 1 + (p - 1) P for projectors P.
    """
    validate_capacity(L, settings.ASEP['ALGEBRA_MAX_L'], 'conjugation lemma checks')
    p = Q
    report = CheckReport(f'conjugation lemma, L={L}')
    report.extend(fundamental.check_projector_relations())
    sites = list(lattice_sites(L))
    hats = {
        'a': {l: site_embed(fundamental.a_hat, l, L) for l in sites},
        'b': {l: site_embed(fundamental.b_hat, l, L) for l in sites},
    }
    ladders = {
        ('a', '+'): fundamental.a_plus,
        ('a', '-'): fundamental.a_minus,
        ('b', '+'): fundamental.b_plus,
        ('b', '-'): fundamental.b_minus,
    }
    moves = {key: {x: site_embed(u, x, L) for x in sites} for key, u in ladders.items()}
    up = {l: {name: projector_power(p, hats[name][l]) for name in 'ab'} for l in sites}
    down = {l: {name: projector_power(p.inverse(), hats[name][l]) for name in 'ab'} for l in sites}

    def single(conjugating, conjugated):
        for l in sites:
            for x in sites:
                for sign in SIGNS:
                    move = moves[(conjugated, sign)][x]
                    factor = q_power(_sign(sign)) if (conjugating == conjugated and l == x) else ONE
                    residual = up[l][conjugating] @ move @ down[l][conjugating] - move * factor
                    yield f'l={l} x={x} {sign}', residual

    for conjugating in 'ab':
        for conjugated in 'ab':
            report.record_all_zero(f'p^({conjugating}^_l) {conjugated}_x p^(-{conjugating}^_l)',
                                   single(conjugating, conjugated))

    def pair(conjugated):
        for l in sites:
            for m in sites:
                projector = hats['a'][l] @ hats['b'][m]
                before = projector_power(p, projector)
                after = projector_power(p.inverse(), projector)
                for x in sites:
                    for sign in SIGNS:
                        move = moves[(conjugated, sign)][x]
                        if conjugated == 'a':
                            hit, other = l == x, hats['b'][m]
                        else:
                            hit, other = m == x, hats['a'][l]
                        expected = move
                        if hit:
                            expected = projector_power(q_power(_sign(sign)), other) @ move
                        yield f'l={l} m={m} x={x} {sign}', before @ move @ after - expected

    report.record_all_zero('p^(a^_l b^_m) a_x p^(-a^_l b^_m)', pair('a'))
    report.record_all_zero('p^(a^_l b^_m) b_x p^(-a^_l b^_m)', pair('b'))

    def exponential_of_projector():
        for l in sites:
            for m in sites:
                projector = hats['a'][l] @ hats['b'][m]
                direct = SparseOp.diagonal(projector.basis, lambda c, l=l, m=m: q_power(c.a(l) * c.b(m)))
                yield f'l={l} m={m}', direct - projector_power(p, projector)

    report.record_all_zero('p^(a^_l b^_m) = 1 + (p-1) a^_l b^_m', exponential_of_projector())
    logger.info('%s: %s', report.title, 'PASS' if report.passed else 'FAIL')
    return report
