import math
from collections import Counter
from unittest import mock

import numpy as np
from django.test import SimpleTestCase

from duality.utils import qz_float
from dynamics import kernels
from dynamics.estimators import Estimate, check_duality_dynamics, duality_rhs, estimate_Q
from dynamics.exceptions import NonConvergence
from dynamics.kernels import check_semigroup, evolve
from dynamics.simulation import SimState, gillespie_step, make_stream, run_trajectory
from dynamics.tasks import simulate_batch
from generator.params import EXACT, FLOAT, ModelParams
from generator.utils import build_H, build_H_sector
from lattice.configurations import Config, Positions, Sector
from measures.distributions import Measure, canonical


class KernelTests(SimpleTestCase):
    def setUp(self):
        self.params = ModelParams.default(2)

    def test_time_zero_is_identity(self):
        kernel = evolve(build_H_sector(self.params, (1, 1), FLOAT), 0.0)
        self.assertTrue(np.array_equal(kernel.matrix, np.eye(12)))

    def test_two_state_closed_form(self):
        # A0 -> 0A at r = 2, back at ell = 1/2
        kernel = evolve(build_H_sector(ModelParams.default(1), (1, 0), FLOAT), 1.0)
        moved = 0.8 * (1 - math.exp(-2.5))
        self.assertAlmostEqual(kernel.probability(Config.from_string('0A'), Config.from_string('A0')), moved, places=12)
        self.assertAlmostEqual(kernel.probability(Config.from_string('A0'), Config.from_string('A0')), 1 - moved, places=12)

    def test_columns_are_stochastic(self):
        kernel = evolve(build_H(self.params, FLOAT), 1.0)
        self.assertLess(kernel.stochastic_defect(), 1e-12)
        self.assertGreaterEqual(kernel.matrix.min(), -1e-15)

    def test_ergodic_limit(self):
        params = ModelParams.default(1)
        kernel = evolve(build_H_sector(params, (1, 0), FLOAT), 1000.0)
        for source in kernel.basis.configs:
            column = kernel.column(source)
            self.assertAlmostEqual(column[Config.from_string('A0')], 0.2, delta=1e-8)
            self.assertAlmostEqual(column[Config.from_string('0A')], 0.8, delta=1e-8)

    def test_ergodic_limit_matches_canonical(self):
        H = build_H_sector(self.params, (1, 1), FLOAT)
        kernel = evolve(H, 1000.0)
        expected = canonical(Sector(2, 1, 1)).vector(H.basis, self.params.q)
        for col in range(H.dim):
            self.assertLess(np.max(np.abs(kernel.matrix[:, col] - expected)), 1e-8)

    def test_semigroup(self):
        report = check_semigroup(build_H_sector(self.params, (1, 1), FLOAT), 0.3, 0.7)
        self.assertTrue(report.passed, str(report))

    def test_rejects_exact_generator(self):
        with self.assertRaises(TypeError):
            evolve(build_H(ModelParams.default(1), EXACT), 1.0)

    def test_rejects_negative_time(self):
        with self.assertRaises(ValueError):
            evolve(build_H(ModelParams.default(1), FLOAT), -1.0)

    def test_term_budget(self):
        H = build_H(ModelParams.default(1), FLOAT)
        with mock.patch.object(kernels.poisson, 'isf', return_value=1000.0):
            with self.assertRaises(NonConvergence):
                evolve(H, 1.0)


class GillespieTests(SimpleTestCase):
    def setUp(self):
        self.params = ModelParams.default(1)

    def test_single_enabled_bond(self):
        state = SimState.start(Config.from_string('A0'), 1, 0)
        following = gillespie_step(state, self.params)
        self.assertEqual(following.config, Config.from_string('0A'))
        self.assertGreater(following.time, 0.0)

    def test_frozen_configuration(self):
        state = SimState.start(Config.empty(1), 1, 0)
        self.assertEqual(gillespie_step(state, self.params).time, math.inf)
        self.assertEqual(run_trajectory(state, 5.0, self.params).config, Config.empty(1))

    def test_streams_are_reproducible(self):
        params = ModelParams.default(2)
        logs = []
        for _ in range(2):
            log = []
            run_trajectory(SimState.start(Config.from_string('A0B0'), 11, 3), 2.0, params, log)
            logs.append(log)
        self.assertEqual(logs[0], logs[1])
        self.assertTrue(all(a[0] <= b[0] for a, b in zip(logs[0], logs[0][1:])))

    def test_streams_differ_by_index(self):
        self.assertNotEqual(make_stream(11, 0).random(), make_stream(11, 1).random())

    def test_empirical_distribution_matches_kernel(self):
        params = ModelParams.default(2)
        start = Config.from_string('A0B0')
        n = 4000
        counts = Counter(
            run_trajectory(SimState.start(start, 5, index), 1.0, params).config for index in range(n)
        )
        kernel = evolve(build_H_sector(params, (1, 1), FLOAT), 1.0)
        for config, p in kernel.column(start).items():
            band = 4 * math.sqrt(p * (1 - p) / n) + 1 / n
            self.assertLessEqual(abs(counts[config] / n - p), band, str(config))


class EstimatorTests(SimpleTestCase):
    def setUp(self):
        self.params = ModelParams.default(2)
        self.start = Config.from_string('A0B0')

    def test_from_moments(self):
        estimate = Estimate.from_moments(6.0, 20.0, 2)
        self.assertEqual(estimate.mean, 3.0)
        self.assertAlmostEqual(estimate.stderr, 1.0)
        self.assertEqual(Estimate(1.0, 0.0, 10).z_score(1.0), 0.0)
        self.assertEqual(Estimate(2.0, 0.5, 10).z_score(1.0), 2.0)

    def test_constant_observable(self):
        estimate = estimate_Q(Positions(2), Measure.point_mass(self.start), 1.0, self.params, trajectories=50, seed=3)
        self.assertEqual(estimate.mean, 1.0)
        self.assertEqual(estimate.stderr, 0.0)

    def test_time_zero(self):
        z = Positions(2, (-1,), (1,))
        estimate = estimate_Q(z, Measure.point_mass(self.start), 0.0, self.params, trajectories=20, seed=3)
        self.assertEqual(estimate.mean, qz_float(z, self.start, 2.0))
        self.assertEqual(estimate.stderr, 0.0)

    def test_batches_add_up(self):
        initial = Measure.point_mass(self.start).serialize()
        whole = simulate_batch(2, '2', '1/2', [1], [], initial, 1.0, 9, 0, 40)
        first = simulate_batch(2, '2', '1/2', [1], [], initial, 1.0, 9, 0, 15)
        second = simulate_batch(2, '2', '1/2', [1], [], initial, 1.0, 9, 15, 25)
        self.assertAlmostEqual(whole[0], first[0] + second[0])
        self.assertEqual(whole[2], 40)

    def test_rhs_at_time_zero(self):
        z = Positions(2, (1,))
        initial = Measure.point_mass(self.start)
        self.assertAlmostEqual(duality_rhs(z, initial, 0.0, self.params), qz_float(z, self.start, 2.0))

    def test_rhs_is_stationary_under_canonical_start(self):
        z = Positions(2, (0,))
        initial = canonical(Sector(2, 1, 1))
        values = [duality_rhs(z, initial, t, self.params) for t in (0.0, 0.5, 1.0, 2.0)]
        for value in values[1:]:
            self.assertAlmostEqual(value, values[0], delta=1e-10)

    def test_monte_carlo_matches_duality(self):
        initial = Measure.point_mass(self.start)
        for z in (Positions(2, (1,)), Positions(2, (), (2,)), Positions(2, (0,), (2,))):
            estimate = estimate_Q(z, initial, 1.0, self.params, trajectories=3000, seed=17)
            prediction = duality_rhs(z, initial, 1.0, self.params)
            self.assertLessEqual(abs(estimate.z_score(prediction)), 4.0, str(z))

    def test_matrix_identity(self):
        for L in (1, 2):
            report = check_duality_dynamics(ModelParams.default(L), 0.7)
            self.assertTrue(report.passed, str(report))
