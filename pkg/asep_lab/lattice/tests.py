from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from lattice.configurations import Config, Occupation, Positions, Sector, all_sectors
from lattice.lemmas import check_counting_lemmas, check_permutation_identities, q_factorial_sides
from lattice.utils import (
    all_configs,
    centered_count,
    count_left,
    enumerate_sector,
    from_positions,
    relabel_second_class,
    swap,
    ternary_index,
    theta,
    to_positions,
    weyl_alcove,
)
from lattice.validators import (
    BondOutOfRange,
    InvalidLatticeSize,
    InvalidSector,
    LatticeTooLarge,
    OverlappingCoordinates,
    SiteOutOfRange,
)
from qring.utils import q_factorial

configs_l2 = st.integers(0, 80).map(lambda code: Config.from_code(2, code))


class ConfigTests(SimpleTestCase):
    def test_ternary_index_examples(self):
        self.assertEqual(ternary_index(Config.from_string('AA')), 1)
        self.assertEqual(ternary_index(Config.from_string('0A')), 2)
        self.assertEqual(ternary_index(Config.from_string('BB')), 9)

    def test_ternary_index_is_bijective(self):
        indices = sorted(ternary_index(c) for c in all_configs(2))
        self.assertEqual(indices, list(range(1, 82)))
        for index in (1, 17, 81):
            self.assertEqual(Config.from_index(2, index).index, index)

    def test_text_form(self):
        config = Config.from_string('A0B0')
        self.assertEqual(str(config), 'A0B0')
        self.assertEqual(config.at(-1), Occupation.A)
        self.assertEqual(config.at(1), Occupation.B)
        self.assertEqual((config.N, config.M, config.V), (1, 1, 2))

    def test_odd_lattice_rejected(self):
        with self.assertRaises(InvalidLatticeSize):
            Config.from_string('A0B')
        with self.assertRaises(InvalidLatticeSize):
            Config.empty(0)

    def test_unknown_symbol_rejected(self):
        with self.assertRaises(ValueError):
            Config.from_string('AX')

    def test_site_out_of_range(self):
        with self.assertRaises(SiteOutOfRange):
            Config.from_string('A0').at(2)

    @hypothesis_settings(max_examples=40, deadline=None)
    @given(configs_l2)
    def test_particle_numbers_fill_lattice(self, config):
        self.assertEqual(config.N + config.M + config.V, 4)


class PositionsTests(SimpleTestCase):
    def test_read_off_occupations(self):
        z = to_positions(Config.from_string('AB'))
        self.assertEqual((z.x, z.y), ((0,), (1,)))
        empty = to_positions(Config.from_string('0000'))
        self.assertEqual((empty.x, empty.y), ((), ()))

    def test_round_trip_is_identity(self):
        for config in all_configs(2):
            self.assertEqual(from_positions(to_positions(config)), config)

    def test_occupation_matches_coordinates(self):
        for config in all_configs(2):
            z = to_positions(config)
            for k in config.sites:
                self.assertEqual(config.a(k), z.x.count(k))
                self.assertEqual(config.b(k), z.y.count(k))

    def test_overlapping_coordinates_rejected(self):
        with self.assertRaises(OverlappingCoordinates):
            Positions(2, (0,), (0,))
        with self.assertRaises(OverlappingCoordinates):
            Positions(2, (1, 1))

    def test_coordinates_are_sorted(self):
        self.assertEqual(Positions(2, (2, -1)).x, (-1, 2))


class SectorTests(SimpleTestCase):
    def test_sector_sizes(self):
        self.assertEqual(len(enumerate_sector(Sector(2, 1, 1))), 12)
        self.assertEqual([str(c) for c in enumerate_sector(Sector(1, 0, 0))], ['00'])
        self.assertEqual([str(c) for c in enumerate_sector(Sector(2, 4, 0))], ['AAAA'])

    def test_enumeration_sorted_by_index(self):
        configs = enumerate_sector(Sector(2, 2, 1))
        indices = [c.index for c in configs]
        self.assertEqual(indices, sorted(indices))
        self.assertEqual(len(configs), Sector(2, 2, 1).size)

    def test_sector_sizes_sum(self):
        for L in (1, 2, 3):
            self.assertEqual(sum(s.size for s in all_sectors(L)), 3 ** (2 * L))

    def test_invalid_sector(self):
        with self.assertRaises(InvalidSector):
            Sector(1, 2, 1)
        with self.assertRaises(InvalidSector):
            Sector(1, -1, 0)


class CountingTests(SimpleTestCase):
    def test_count_left(self):
        z = Positions(2, (-1, 2))
        self.assertEqual(count_left(z, 2, Occupation.A), 1)
        self.assertEqual(count_left(z, -1, Occupation.A), 0)
        packed = Positions(2, (0,), (-1, 1, 2))
        self.assertEqual(count_left(packed, 2, Occupation.B), packed.M - 1)

    def test_centered_count(self):
        self.assertEqual(centered_count(Positions(2), 1, Occupation.A), 0)
        self.assertEqual(centered_count(Positions(2, (-1,)), 1, Occupation.A), 1)
        self.assertEqual(centered_count(Positions(2, (2,)), 1, Occupation.A), -1)

    def test_theta(self):
        self.assertEqual(theta(0, 1), 1)
        self.assertEqual(theta(1, 1), 0)
        self.assertEqual(theta(1, 0), 0)


class SwapTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(str(swap(Config.from_string('A0'), 0)), '0A')
        self.assertEqual(str(swap(Config.from_string('AB0A'), 0)), 'A0BA')

    def test_involution(self):
        for config in all_configs(2):
            for k in (-1, 0, 1):
                self.assertEqual(swap(swap(config, k), k), config)

    def test_bond_out_of_range(self):
        with self.assertRaises(BondOutOfRange):
            swap(Config.from_string('A0'), 1)

    def test_second_class_relabeling(self):
        self.assertEqual(str(relabel_second_class(Config.from_string('AB00'))), 'A0BB')


class LemmaTests(SimpleTestCase):
    def test_counting_lemmas(self):
        for Lmax in (1, 2):
            report = check_counting_lemmas(Lmax)
            self.assertTrue(report.passed, str(report))
        self.assertIn('A-count-reflection', [outcome.name for outcome in report.outcomes])

    def test_counting_lemmas_capped(self):
        with self.assertRaises(LatticeTooLarge):
            check_counting_lemmas(4)

    def test_weyl_alcove_is_lexicographic(self):
        self.assertEqual(weyl_alcove(2, 1), [(0, 1)])
        self.assertEqual(weyl_alcove(2, 2)[:3], [(-1, 0), (-1, 1), (-1, 2)])
        self.assertEqual(len(weyl_alcove(3, 3)), 20)

    def test_q_factorial_sum_two_particles(self):
        lhs, rhs = q_factorial_sides((-1, 2))
        self.assertEqual(lhs, rhs)
        self.assertEqual(rhs, q_factorial(2))

    def test_permutation_identities(self):
        report = check_permutation_identities(4, 3)
        self.assertTrue(report.passed, str(report))
        self.assertEqual([o.name for o in report.outcomes], ['q-factorial-permutation-sum', 'alcove-permutation-sum'])
