import logging

from celery import shared_task

from duality.utils import qz_float
from dynamics.simulation import SimState, make_stream, run_trajectory
from generator.params import ModelParams
from lattice.configurations import Positions
from measures.distributions import Measure

logger = logging.getLogger(__name__)


@shared_task
def simulate_batch(L, r, ell, z_x, z_y, initial, t, master_seed, start, count):
    """
    Run trajectories ``start .. start+count-1`` and return
    ``[sum, sum of squares, count]`` of Q_z(eta_t).

    ``initial`` is a serialized :class:`Measure`; every argument is plain JSON.
    """
    params = ModelParams(L, r, ell)
    z = Positions(L, tuple(z_x), tuple(z_y))
    measure = Measure.deserialize(initial)
    q0 = params.q
    total = squares = 0.0
    for index in range(start, start + count):
        rng = make_stream(master_seed, index)
        state = SimState(measure.sample(rng), 0.0, rng)
        value = qz_float(z, run_trajectory(state, t, params).config, q0)
        total += value
        squares += value * value
    logger.debug('batch %s+%s for z=%s at t=%s: sum %s', start, count, z, t, total)
    return [total, squares, count]
