import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from generator.operators import Basis
from generator.params import EXACT, FLOAT, ModelParams
from generator.utils import build_H, build_H_sector
from lattice.configurations import Config, Occupation, Positions, Sector
from lattice.utils import all_configs
from measures.checks import (
    check_grandcanonical,
    check_marginal_independence,
    check_normalization,
    check_partition_factorization,
    check_pure_measures,
    check_reversibility,
    check_uniqueness,
    stationary_vector,
)
from measures.distributions import (
    Measure,
    canonical,
    grandcanonical,
    pure_marginal,
    pure_measure,
    shock_profile,
)
from measures.exceptions import DegenerateWidth
from measures.utils import partition_function, pi_from_positions, pi_unnormalized
from qring.polynomials import ONE, Q, q_power
from qring.utils import q_multinomial, q_number

A, B = Occupation.A, Occupation.B


class ReversibleMeasureTests(SimpleTestCase):
    def test_empty_configuration(self):
        self.assertEqual(pi_unnormalized(Config.empty(2)), ONE)
        self.assertEqual(pi_from_positions(Positions(2)), ONE)

    def test_single_particle(self):
        self.assertEqual(pi_unnormalized(Config.from_string('A0')), q_power(-1))
        self.assertEqual(pi_unnormalized(Config.from_string('0A')), Q)
        for x in (-1, 0, 1, 2):
            self.assertEqual(pi_from_positions(Positions(2, (x,))), q_power(2 * x - 1))

    def test_two_species(self):
        self.assertEqual(pi_unnormalized(Config.from_string('AB')), q_power(-1))
        self.assertEqual(pi_unnormalized(Config.from_string('BA')), Q)

    def test_detailed_balance_on_a_bond(self):
        # pi(A0) r = pi(0A) ell with r = wq, ell = w/q
        self.assertEqual(pi_unnormalized(Config.from_string('A0')) * Q, pi_unnormalized(Config.from_string('0A')) * Q.inverse())

    def test_reversibility(self):
        for L in (1, 2, 3):
            report = check_reversibility(build_H(ModelParams.default(L), EXACT))
            self.assertTrue(report.passed, str(report))

    def test_symmetric_case(self):
        H = build_H(ModelParams(2, 1, 1), FLOAT)
        self.assertTrue(H.equals(H.transpose(), 1e-15))


class NormalizationTests(SimpleTestCase):
    def test_small_partition_functions(self):
        self.assertEqual(partition_function(Sector(1, 1, 0)), q_number(2))
        self.assertEqual(partition_function(Sector(2, 0, 0)), ONE)
        self.assertEqual(partition_function(Sector(2, 1, 1)), q_multinomial(4, 1, 1))

    def test_normalization(self):
        report = check_normalization(3)
        self.assertTrue(report.passed, str(report))

    def test_factorization(self):
        report = check_partition_factorization(3)
        self.assertTrue(report.passed, str(report))

    def test_canonical_probabilities_sum_to_one(self):
        measure = canonical(Sector(2, 2, 1))
        self.assertTrue(measure.is_exact)
        self.assertAlmostEqual(math.fsum(measure.probabilities(2.0).values()), 1.0, places=12)

    def test_canonical_needs_q0(self):
        with self.assertRaises(ValueError):
            canonical(Sector(1, 1, 0)).probabilities()


class UniquenessTests(SimpleTestCase):
    def test_canonical_spans_the_kernel(self):
        report = check_uniqueness(ModelParams.default(2))
        self.assertTrue(report.passed, str(report))

    def test_stationary_vector_is_normalized(self):
        H = build_H_sector(ModelParams.default(2), (1, 1), FLOAT)
        self.assertAlmostEqual(float(np.sum(stationary_vector(H))), 1.0, places=12)

    def test_marginals_do_not_depend_on_M(self):
        report = check_marginal_independence(2)
        self.assertTrue(report.passed, str(report))


class GrandcanonicalTests(SimpleTestCase):
    def test_forms_agree(self):
        params = ModelParams.default(2)
        for nu, mu in ((0.0, 0.0), (0.3, -0.7), (-math.inf, 0.4)):
            report = check_grandcanonical(nu, mu, params)
            self.assertTrue(report.passed, str(report))

    def test_empty_limit(self):
        measure = grandcanonical(-math.inf, -math.inf, ModelParams.default(2))
        self.assertEqual(measure.probability(Config.empty(2)), 1.0)

    def test_sample_stays_on_support(self):
        measure = grandcanonical(0.0, 0.0, ModelParams.default(1))
        rng = np.random.default_rng(7)
        for _ in range(20):
            self.assertIn(measure.sample(rng), Basis.full(1))

    def test_serialized_point_mass(self):
        config = Config.from_string('A0B0')
        restored = Measure.deserialize(Measure.point_mass(config).serialize())
        self.assertEqual(restored.probability(config), 1.0)


class PureMeasureTests(SimpleTestCase):
    def test_product_structure(self):
        report = check_pure_measures(0.3, -0.2, ModelParams.default(2))
        self.assertTrue(report.passed, str(report))

    def test_symmetric_point(self):
        self.assertAlmostEqual(pure_marginal(A, 0.0, 1, 1.0), 0.5)
        self.assertAlmostEqual(pure_marginal(A, -math.log(2.0), 1, 2.0), 0.5)

    @hypothesis_settings(max_examples=50, deadline=None)
    @given(st.integers(-5, 5), st.floats(-2, 2), st.floats(1.1, 3))
    def test_B_mirrors_A(self, k, chem_pot, q0):
        self.assertAlmostEqual(pure_marginal(B, chem_pot, k, q0), pure_marginal(A, chem_pot, 1 - k, q0))

    def test_pure_measure_has_no_other_species(self):
        measure = pure_measure(A, 0.3, ModelParams.default(1))
        self.assertTrue(all(config.M == 0 for config in measure.weights))

    def test_pure_measure_rejects_vacancies(self):
        with self.assertRaises(ValueError):
            pure_measure(Occupation.V, 0.0, ModelParams.default(1))


class ShockProfileTests(SimpleTestCase):
    def test_tanh_equals_logistic_form(self):
        params = ModelParams.from_q_w(3, 2, 1)
        profile = shock_profile(A, 0.3, params)
        for k in np.linspace(-6, 6, 20):
            self.assertAlmostEqual(profile.density(k), pure_marginal(A, 0.3, k, 2.0), places=12)

    def test_B_profile(self):
        params = ModelParams.from_q_w(3, 2, 1)
        profile = shock_profile(B, -0.4, params)
        self.assertAlmostEqual(profile.kappa, (1 - 0.4 / math.log(2)) / 2)
        for k, density in profile.table(3):
            self.assertAlmostEqual(density, pure_marginal(B, -0.4, k, 2.0), places=12)

    def test_center_and_saturation(self):
        profile = shock_profile(A, 0.5, ModelParams.default(2))
        self.assertAlmostEqual(profile.density(profile.kappa), 0.5)
        self.assertGreater(profile.density(40), 1 - 1e-12)

    def test_q_below_one_mirrors_the_profile(self):
        params = ModelParams(2, '1/2', 2)
        for species, chem_pot in ((A, 0.1), (B, -0.3)):
            profile = shock_profile(species, chem_pot, params)
            self.assertAlmostEqual(profile.xi, 1 / math.log(2))
            self.assertEqual(profile.direction, -1 if species is A else 1)
            for k, density in profile.table(2):
                self.assertAlmostEqual(density, pure_marginal(species, chem_pot, k, 0.5), places=12)

    def test_matches_pure_measure_marginals(self):
        for q in ('2', '6/5'):
            params = ModelParams.from_q_w(3, q, 1)
            for chem_pot in (-1.0, 0.0, 1.0):
                for species in (A, B):
                    with self.subTest(q=q, chem_pot=chem_pot, species=species.name):
                        profile = shock_profile(species, chem_pot, params)
                        measure = pure_measure(species, chem_pot, params)
                        for k, density in profile.table(3):
                            self.assertAlmostEqual(density, measure.marginal(k, species), delta=1e-10)

    def test_pure_measure_checks_over_a_grid(self):
        for q in ('2', '6/5'):
            for nu in (-1.0, 0.0, 1.0):
                with self.subTest(q=q, nu=nu):
                    report = check_pure_measures(nu, -nu, ModelParams.from_q_w(3, q, 1))
                    self.assertTrue(report.passed, str(report))

    def test_degenerate_width(self):
        with self.assertRaises(DegenerateWidth):
            shock_profile(A, 0.0, ModelParams(2, 1, 1))

    def test_configs_cover_full_space(self):
        self.assertEqual(len(all_configs(2)), Basis.full(2).dim)
