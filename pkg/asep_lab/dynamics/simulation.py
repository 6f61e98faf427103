"""
Continuous-time Monte-Carlo trajectories (Gillespie algorithm).

Each trajectory owns a counter-based Philox stream keyed by
``(master_seed, trajectory_index)``, so any trajectory can be replayed alone.
"""
import math
from dataclasses import dataclass, replace

import numpy as np

from generator.utils import bond_rates
from lattice.utils import swap


def make_stream(master_seed, index):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(master_seed, spawn_key=(index,))))


@dataclass(frozen=True)
class SimState:
    config: object
    time: float
    rng: np.random.Generator

    @classmethod
    def start(cls, config, master_seed, index):
        return cls(config, 0.0, make_stream(master_seed, index))


def gillespie_step(state, params):
    """
    One jump: an Exponential(R) waiting time with R the total exit rate, then a
    bond chosen with probability w^{k,k+1}/R. A configuration with R = 0 never
    moves and its clock jumps to infinity.
    """
    rates = bond_rates(state.config, params)
    total = math.fsum(rate for _, rate in rates)
    if total == 0:
        return replace(state, time=math.inf)
    wait = state.rng.exponential(1.0 / total)
    cumulative = np.cumsum([rate for _, rate in rates]) / total
    choice = min(int(np.searchsorted(cumulative, state.rng.random())), len(rates) - 1)
    bond = rates[choice][0]
    return SimState(swap(state.config, bond), state.time + wait, state.rng)


def run_trajectory(state, t, params, log=None):
    """
    Advance ``state`` to time ``t`` and return the configuration there. With a
    ``log`` list, ``(time, config)`` is appended at the start and at every jump.
    """
    if log is not None:
        log.append((state.time, state.config))
    while True:
        following = gillespie_step(state, params)
        if following.time > t:
            return replace(state, time=t)
        state = following
        if log is not None:
            log.append((state.time, state.config))
