from itertools import combinations

from lattice.configurations import Config, Occupation, Positions, lattice_sites
from lattice.validators import validate_bond, validate_half_size, validate_site


def ternary_index(config):
    """1 + sum_j eta(j-L) 3^(j-1) with A -> 0, vacancy -> 1, B -> 2."""
    return config.index


def all_configs(L):
    validate_half_size(L)
    return [Config.from_code(L, code) for code in range(3 ** (2 * L))]


def to_positions(config):
    x = [k for k in config.sites if config.at(k) is Occupation.A]
    y = [k for k in config.sites if config.at(k) is Occupation.B]
    return Positions(config.L, tuple(x), tuple(y))


def from_positions(z):
    occ = [Occupation.V] * (2 * z.L)
    for k in z.x:
        occ[k + z.L - 1] = Occupation.A
    for k in z.y:
        occ[k + z.L - 1] = Occupation.B
    return Config(z.L, tuple(occ))


def enumerate_sector(sector):
    """All configurations of the sector, sorted by ternary index."""
    L, N, M = sector.L, sector.N, sector.M
    sites = list(lattice_sites(L))
    configs = []
    for x in combinations(sites, N):
        rest = [k for k in sites if k not in x]
        for y in combinations(rest, M):
            configs.append(from_positions(Positions(L, x, y)))
    return sorted(configs, key=ternary_index)


def count_left(z, k, species):
    """N_k(z) or M_k(z): particles of the species strictly left of site k."""
    validate_site(k, z.L)
    return sum(1 for site in z.coordinates(species) if site < k)


def centered_count(z, k, species):
    """A_k(z) = 2 N_k(z) - N(z), B_k(z) = 2 M_k(z) - M(z)."""
    return 2 * count_left(z, k, species) - len(z.coordinates(species))


def theta(k, l):
    return 1 if k < l else 0


def swap(config, k):
    """The local permutation exchanging the occupations of sites k and k+1."""
    validate_bond(k, config.L)
    left, right = config.at(k), config.at(k + 1)
    return config.with_site(k, right).with_site(k + 1, left)


def weyl_alcove(n, L):
    """Strictly increasing n-tuples of sites, in lexicographic order."""
    return list(combinations(lattice_sites(L), n))


def relabel_second_class(config):
    """Exchange B particles and vacancies."""
    exchange = {Occupation.A: Occupation.A, Occupation.V: Occupation.B, Occupation.B: Occupation.V}
    return Config(config.L, tuple(exchange[value] for value in config.occ))
