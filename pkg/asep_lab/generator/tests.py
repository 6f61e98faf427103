from fractions import Fraction

from django.test import SimpleTestCase

from generator.operators import Basis, SparseOp
from generator.params import EXACT, FLOAT, ModelParams
from generator.utils import (
    apply_generator,
    bond_rates,
    build_H,
    build_H_sector,
    exit_rate,
    local_rate,
    split_H,
)
from generator.validators import InvalidModelParams
from lattice.configurations import Config, Sector, all_sectors
from lattice.validators import BondOutOfRange, LatticeTooLarge
from qring.polynomials import ONE, Q, ZERO, LaurentPoly


class ModelParamsTests(SimpleTestCase):
    def test_derived_q_and_w(self):
        params = ModelParams(2, 2, '1/2')
        self.assertEqual(params.ell, Fraction(1, 2))
        self.assertAlmostEqual(params.q, 2.0)
        self.assertAlmostEqual(params.w, 1.0)

    def test_from_q_w(self):
        params = ModelParams.from_q_w(1, 3, 2)
        self.assertEqual((params.r, params.ell), (6, Fraction(2, 3)))

    def test_default_rates(self):
        params = ModelParams.default(1)
        self.assertEqual((params.r, params.ell), (2, Fraction(1, 2)))

    def test_rates_must_be_positive(self):
        with self.assertRaises(InvalidModelParams):
            ModelParams(1, 0, 1)
        with self.assertRaises(InvalidModelParams):
            ModelParams(1, 1, 'fast')
        with self.assertRaises(InvalidModelParams):
            ModelParams(1, 1, float('inf'))


class RateTests(SimpleTestCase):
    def setUp(self):
        self.params = ModelParams(1, 2, '1/2')

    def test_local_rate_table(self):
        self.assertEqual(local_rate(Config.from_string('A0'), 0, self.params), 2)
        self.assertEqual(local_rate(Config.from_string('0B'), 0, self.params), 2)
        self.assertEqual(local_rate(Config.from_string('AB'), 0, self.params), 2)
        self.assertEqual(local_rate(Config.from_string('BA'), 0, self.params), Fraction(1, 2))
        self.assertEqual(local_rate(Config.from_string('B0'), 0, self.params), Fraction(1, 2))
        self.assertEqual(local_rate(Config.from_string('AA'), 0, self.params), 0)

    def test_bond_out_of_range(self):
        with self.assertRaises(BondOutOfRange):
            local_rate(Config.from_string('A0'), 1, self.params)

    def test_exit_rate_and_bond_rates(self):
        config = Config.from_string('A0B0')
        params = self.params.with_size(2)
        self.assertEqual(bond_rates(config, params), [(-1, 2.0), (0, 2.0), (1, 0.5)])
        self.assertEqual(exit_rate(config, params), Fraction(9, 2))
        self.assertEqual(exit_rate(Config.empty(2), params), 0)


class BuildHTests(SimpleTestCase):
    def test_single_bond_entries(self):
        H = build_H(ModelParams(1, 2, '1/2'), EXACT)
        self.assertEqual(H.nnz, 12)
        basis = H.basis
        av, va = Config.from_string('A0'), Config.from_string('0A')
        self.assertEqual(H.get(basis.position(va), basis.position(av)), -Q)
        self.assertEqual(H.get(basis.position(av), basis.position(av)), Q)
        self.assertEqual(H.get(basis.position(av), basis.position(va)), -Q.inverse())

    def test_float_entries_carry_rates(self):
        H = build_H(ModelParams(1, 2, '1/2'), FLOAT)
        basis = H.basis
        av, va = Config.from_string('A0'), Config.from_string('0A')
        self.assertEqual(H.get(basis.position(va), basis.position(av)), -2.0)
        self.assertEqual(H.get(basis.position(av), basis.position(va)), -0.5)

    def test_columns_sum_to_zero(self):
        for L in (1, 2, 3):
            H = build_H(ModelParams.default(L), EXACT)
            self.assertTrue(all(total == ZERO for total in H.column_sums()))

    def test_sign_structure(self):
        H = build_H(ModelParams.default(2), FLOAT)
        for row, col, value in H.entries():
            if row == col:
                self.assertGreater(value, 0)
            else:
                self.assertLess(value, 0)

    def test_particle_numbers_conserved(self):
        for L in (1, 2):
            H = build_H(ModelParams.default(L), EXACT)
            basis = H.basis
            N_hat = SparseOp.diagonal(basis, lambda c: LaurentPoly.constant(c.N))
            M_hat = SparseOp.diagonal(basis, lambda c: LaurentPoly.constant(c.M))
            self.assertTrue(H.commutator(N_hat).is_zero())
            self.assertTrue(H.commutator(M_hat).is_zero())

    def test_symmetric_rates_give_symmetric_generator(self):
        H = build_H(ModelParams(2, 1, 1), FLOAT)
        self.assertTrue(H.equals(H.transpose()))

    def test_split(self):
        H = build_H(ModelParams.default(2), EXACT)
        H_d, H_o = split_H(H)
        self.assertTrue((H_d + H_o).equals(H))
        self.assertTrue(all(row == col for row, col, _ in H_d.entries()))
        self.assertTrue(all(row != col for row, col, _ in H_o.entries()))

    def test_capacity(self):
        with self.assertRaises(LatticeTooLarge):
            build_H(ModelParams.default(4), EXACT)


class SectorTests(SimpleTestCase):
    def test_sector_dimensions(self):
        params = ModelParams.default(2)
        self.assertEqual(build_H_sector(params, Sector(2, 1, 1)).dim, 12)
        empty = build_H_sector(params, (0, 0))
        self.assertEqual((empty.dim, empty.nnz), (1, 0))

    def test_sectors_reassemble_full_generator(self):
        params = ModelParams.default(2)
        H = build_H(params, EXACT)
        total = 0
        for sector in all_sectors(2):
            block = build_H_sector(params, sector, EXACT)
            self.assertTrue(H.restrict(Basis.sector(sector)).equals(block))
            total += block.nnz
        self.assertEqual(total, H.nnz)


class ApplyGeneratorTests(SimpleTestCase):
    def setUp(self):
        self.params = ModelParams.default(2)
        self.H = build_H(self.params, FLOAT)
        self.configs = self.H.basis.configs

    def test_harmonic_functions(self):
        for config in self.configs:
            self.assertEqual(apply_generator(lambda c: 1, config, self.params), 0)
            self.assertEqual(apply_generator(lambda c: c.N, config, self.params), 0)
            self.assertEqual(apply_generator(lambda c: c.M, config, self.params), 0)

    def test_delta_function_reads_matrix_element(self):
        basis = self.H.basis
        target = Config.from_string('0A0B')
        for config in self.configs:
            value = apply_generator(lambda c: 1.0 if c == target else 0.0, config, self.params)
            self.assertAlmostEqual(value, -self.H.get(basis.position(target), basis.position(config)))

    def test_agrees_with_transposed_matrix(self):
        f = [((3 * i) % 7) - 2.5 for i in range(len(self.configs))]
        dense = self.H.to_dense()
        flow = -dense.T @ f
        basis = self.H.basis
        for config in self.configs:
            value = apply_generator(lambda c: f[basis.position(c)], config, self.params)
            self.assertAlmostEqual(value, flow[basis.position(config)], places=12)

    def test_exact_ring(self):
        config = Config.from_string('A0')
        value = apply_generator(lambda c: ONE if c == config else ZERO, config, ModelParams.default(1), EXACT)
        self.assertEqual(value, -Q)
