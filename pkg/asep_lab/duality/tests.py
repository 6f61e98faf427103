from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from duality.checks import check_duality, check_exclusion_cutoff, sum_rule, sum_rule_table
from duality.exceptions import NotConstant
from duality.utils import (
    CLOSED_FORM,
    FROM_SYMMETRY,
    QA,
    QB,
    Qz,
    build_S,
    duality_function,
    duality_matrix,
    qz_float,
    second_class_duality,
    tilde_Qz,
)
from generator.operators import Basis
from generator.params import EXACT, ModelParams
from generator.utils import build_H
from lattice.configurations import Config, Positions, Sector
from lattice.utils import all_configs, relabel_second_class, to_positions
from lattice.validators import LatticeTooLarge
from qring.polynomials import ONE, Q, ZERO, q_power
from qring.utils import q_number

configs_L2 = st.sampled_from(all_configs(2))


class DualityFunctionTests(SimpleTestCase):
    def test_projectors(self):
        config = Config.from_string('A0B0')
        self.assertEqual(QA(0, config), ZERO)
        self.assertEqual(QB(-1, config), ZERO)
        self.assertEqual(QA(-1, config), ONE)
        self.assertEqual(QB(1, config), ONE)

    def test_dressing(self):
        self.assertEqual(QA(1, Config.from_string('AA')), Q)
        self.assertEqual(QA(0, Config.from_string('AA')), q_power(-1))
        self.assertEqual(QB(1, Config.from_string('BB')), q_power(-1))

    def test_empty_coordinates(self):
        for config in all_configs(1):
            self.assertEqual(Qz(Positions(1), config), ONE)
            self.assertEqual(duality_function(Positions(1), config), ONE)

    @hypothesis_settings(max_examples=60, deadline=None)
    @given(configs_L2)
    def test_own_positions_give_a_monomial(self, config):
        self.assertTrue(Qz(to_positions(config), config).is_monomial())

    def test_mismatched_site(self):
        self.assertEqual(Qz(Positions(1, (0,)), Config.from_string('BA')), ZERO)

    def test_more_dual_particles_than_particles(self):
        self.assertEqual(duality_function(Positions(1, (0, 1)), Config.from_string('A0')), ZERO)

    def test_closed_form_value(self):
        self.assertEqual(duality_function(Positions(1, (1,)), Config.from_string('AA')), ONE)

    def test_float_values(self):
        config = Config.from_string('AA0B')
        z = Positions(2, (0,), (2,))
        self.assertEqual(qz_float(z, config, 2.0), Qz(z, config).evaluate(2.0))
        self.assertEqual(qz_float(Positions(2, (1,)), config, 2.0), 0.0)

    def test_tilde_variant(self):
        self.assertEqual(tilde_Qz(Positions(2, (-1,)), Config.from_string('A0A0')), ONE)
        self.assertEqual(tilde_Qz(Positions(2, (0,)), Config.from_string('AA0B')), q_power(2))
        self.assertEqual(tilde_Qz(Positions(2, (), (2,)), Config.from_string('BA0B')), q_power(-2))

    def test_tilde_ratio_is_constant_on_a_sector(self):
        z = Positions(2, (1,))
        ratios = set()
        for config in Basis.sector(Sector(2, 1, 1)).configs:
            if Qz(z, config):
                ratios.add(tilde_Qz(z, config) * Qz(z, config).inverse())
        self.assertEqual(len(ratios), 1)

    def test_second_class_reads_vacancies(self):
        config = Config.from_string('A00B')
        z = Positions(2, (-1,), (0,))
        self.assertEqual(second_class_duality(z, config), duality_function(z, relabel_second_class(config)))
        self.assertTrue(second_class_duality(z, config))


class SymmetryOperatorTests(SimpleTestCase):
    def test_vacuum_row_is_the_summation_vector(self):
        S = build_S(1)
        vacuum = S.basis.position(Config.empty(1))
        self.assertEqual(S.row(vacuum), {col: ONE for col in range(9)})

    def test_commutes_with_H(self):
        S = build_S(1)
        self.assertTrue(S.commutator(build_H(ModelParams.default(1), EXACT)).is_zero())

    def test_entries_are_Q(self):
        S = build_S(1)
        basis = S.basis
        for row, col, value in S.entries():
            self.assertEqual(value, Qz(to_positions(basis.configs[row]), basis.configs[col]))

    def test_capacity(self):
        with self.assertRaises(LatticeTooLarge):
            build_S(4)


class DualityMatrixTests(SimpleTestCase):
    def test_constructions_agree(self):
        closed = duality_matrix(CLOSED_FORM, 1)
        self.assertTrue(closed.equals(duality_matrix(FROM_SYMMETRY, 1)))
        self.assertEqual(closed.value(Positions(1, (1,)), Config.from_string('AA')), ONE)

    def test_unknown_source(self):
        with self.assertRaises(ValueError):
            duality_matrix('Guess', 1)

    def test_duality_suite(self):
        for L in (1, 2):
            report = check_duality(L)
            self.assertTrue(report.passed, str(report))
        self.assertTrue(report['DH=HtD'].passed)
        self.assertTrue(report['D2 H2 = Ht D2'].passed)

    def test_other_rates(self):
        report = check_duality(1, ModelParams(1, 3, '1/3'))
        self.assertTrue(report.passed, str(report))

    def test_exclusion_cutoff(self):
        for L in (1, 2):
            report = check_exclusion_cutoff(L)
            self.assertTrue(report.passed, str(report))


class SumRuleTests(SimpleTestCase):
    def test_empty_pair(self):
        result = sum_rule(Sector(1, 0, 0), Sector(1, 0, 0))
        self.assertEqual(result.value, ONE)
        self.assertTrue(result.report.passed)

    def test_more_dual_particles(self):
        self.assertEqual(sum_rule(Sector(2, 1, 0), (2, 0)).value, ZERO)
        self.assertEqual(sum_rule(Sector(2, 1, 1), (1, 2)).value, ZERO)

    def test_single_particle(self):
        self.assertEqual(sum_rule(Sector(1, 1, 0), (1, 0)).value, ONE)
        self.assertEqual(sum_rule(Sector(1, 2, 0), (1, 0)).value, q_number(2))

    def test_all_sector_pairs(self):
        for L in (1, 2):
            for result in sum_rule_table(L):
                self.assertTrue(result.report.passed, str(result.report))

    def test_csv_row(self):
        self.assertEqual(sum_rule(Sector(1, 2, 0), (1, 0)).csv_row(), [2, 0, 1, 0, str(q_number(2))])

    def test_not_constant_message(self):
        error = NotConstant('sum', 'AB', ONE, Q)
        self.assertIsInstance(error, AssertionError)
        self.assertIn('AB', str(error))
