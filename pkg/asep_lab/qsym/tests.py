from django.test import SimpleTestCase

from generator.operators import Basis, SparseOp
from generator.params import EXACT, FLOAT, ModelParams
from generator.utils import build_H
from lattice.configurations import Config, Occupation, Positions, lattice_sites
from lattice.utils import centered_count, from_positions, to_positions
from lattice.validators import LatticeTooLarge, SiteOutOfRange
from qring.polynomials import ONE, q_power
from qsym import fundamental
from qsym.checks import (
    check_algebra_relations,
    check_conjugation_lemma,
    check_symmetry,
    check_transposition,
)
from qsym.utils import build_cartan, build_Y, build_Y_site, site_embed


class FundamentalTests(SimpleTestCase):
    def test_fundamental_relations(self):
        report = fundamental.check_fundamental()
        self.assertTrue(report.passed, str(report))
        self.assertTrue(report['a- b+ = 0'].passed)

    def test_projector_relations_count(self):
        self.assertEqual(len(fundamental.check_projector_relations().outcomes), 36)

    def test_source_and_target(self):
        self.assertEqual(fundamental.source_state(fundamental.a_plus), int(Occupation.V))
        self.assertEqual(fundamental.target_state(fundamental.a_plus), int(Occupation.A))


class SiteEmbedTests(SimpleTestCase):
    def test_identity(self):
        basis = Basis.full(2)
        for k in lattice_sites(2):
            self.assertTrue(site_embed(fundamental.IDENTITY, k, 2).equals(SparseOp.identity(basis)))

    def test_projector_eigenvalues(self):
        basis = Basis.full(2)
        for k in lattice_sites(2):
            a_hat = site_embed(fundamental.a_hat, k, 2)
            for i, config in enumerate(basis.configs):
                self.assertEqual(a_hat.get(i, i), config.a(k))

    def test_different_sites_commute(self):
        a_plus = site_embed(fundamental.a_plus, 0, 1)
        b_minus = site_embed(fundamental.b_minus, 1, 1)
        self.assertTrue((a_plus @ b_minus).equals(b_minus @ a_plus))

    def test_site_out_of_range(self):
        with self.assertRaises(SiteOutOfRange):
            site_embed(fundamental.a_plus, 2, 1)

    def test_transposition(self):
        self.assertTrue(check_transposition(2).passed)


class RepresentationTests(SimpleTestCase):
    def test_bra_action_of_Y1_minus(self):
        basis = Basis.full(2)
        for r in lattice_sites(2):
            y = build_Y_site(1, '-', r, 2)
            for config in basis.configs:
                if config.at(r) is not Occupation.V:
                    continue
                z = to_positions(config)
                grown = from_positions(Positions(2, z.x + (r,), z.y))
                expected = q_power(-centered_count(z, r, Occupation.A))
                self.assertEqual(y.get(basis.position(config), basis.position(grown)), expected)

    def test_single_site_Y_is_nilpotent(self):
        for r in lattice_sites(2):
            y = build_Y_site(1, '-', r, 2)
            self.assertTrue((y @ y).is_zero())

    def test_Y2_plus_kills_configurations_without_B(self):
        y = build_Y(2, '+', 2)
        for i, config in enumerate(y.basis.configs):
            if config.M == 0:
                self.assertEqual(y.column(i), {})

    def test_entries_are_monomials(self):
        for _, _, value in build_Y(1, '+', 2).entries():
            self.assertTrue(value.is_monomial())

    def test_cartan(self):
        cartan = build_cartan(1)
        basis = Basis.full(1)
        aa = basis.position(Config.from_string('AA'))
        self.assertEqual(cartan['N'].get(aa, aa), 2)
        self.assertTrue(cartan['H1'].equals(cartan['N'] - cartan['V']))
        total = cartan['N'] + cartan['V'] + cartan['M']
        self.assertTrue(total.equals(SparseOp.identity(basis) * 2))
        self.assertEqual(cartan['L1'].get(aa, aa), q_power(-1))
        self.assertEqual(cartan['L3'].get(aa, aa), ONE)


class SymmetryTests(SimpleTestCase):
    def test_generator_commutes_with_representation(self):
        for L in (1, 2):
            report = check_symmetry(build_H(ModelParams.default(L), EXACT))
            self.assertTrue(report.passed, str(report))
            self.assertEqual(len(report.outcomes), 7)

    def test_symmetric_specialization(self):
        report = check_symmetry(build_H(ModelParams.default(1), EXACT), q0=1.0)
        self.assertTrue(report.passed, str(report))

    def test_float_generator(self):
        report = check_symmetry(build_H(ModelParams(2, 2, '1/2'), FLOAT), q0=2.0)
        self.assertTrue(report.passed, str(report))


class AlgebraTests(SimpleTestCase):
    def test_relations(self):
        for L in (1, 2):
            report = check_algebra_relations(L)
            self.assertTrue(report.passed, str(report))
        self.assertTrue(report['[Y1+,Y2-]=0'].passed)
        self.assertTrue(report['[Y1+,Y1-]=[H1]_q'].passed)
        self.assertTrue(report['Serre i=1 j=2 +'].passed)

    def test_capacity(self):
        with self.assertRaises(LatticeTooLarge):
            check_algebra_relations(3)

    def test_conjugation_lemma(self):
        for L in (1, 2):
            report = check_conjugation_lemma(L)
            self.assertTrue(report.passed, str(report))
