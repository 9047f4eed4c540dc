import logging

import numpy as np

from src import settings
from src.corrpath.cov_spec import CovSpec, lattice_step_law
from src.corrpath.path_pair import BROWNIAN, LATTICE, PathPair
from src.errors import DomainError, SizeError

logger = logging.getLogger(__name__)

# float64 keeps integers exact up to 2**53; beyond that lattice values and indices lose precision
MAX_STEPS = 2 ** 53 - 1


def chunk_generator(seed: int, trial: int, chunk: int) -> np.random.Generator:
    """
    Counter-based generator for one chunk of one trial. Keyed by (seed, trial, chunk) so any chunk can be drawn
    independently of the others and in any order.
    """
    key = np.random.SeedSequence([int(seed) & (2 ** 64 - 1), int(trial), int(chunk)])
    return np.random.Generator(np.random.Philox(key))


def trial_generator(seed: int, trial: int) -> np.random.Generator:
    return chunk_generator(seed, trial, 2 ** 32 - 1)


def _check_size(n: int, dt: float = 1.):
    if n < 1:
        raise DomainError(f"a path needs at least one step, got n={n}")
    if n > MAX_STEPS or not np.isfinite(n * dt):
        raise SizeError(f"n={n} steps of dt={dt} exceed the accumulator precision")


def _chunks(n: int):
    size = settings.rng_chunk_size
    for chunk, start in enumerate(range(0, n, size)):
        yield chunk, min(size, n - start)


def _cumulate(increments: np.ndarray) -> np.ndarray:
    values = np.empty(increments.size + 1, dtype=np.float64)
    values[0] = 0.
    np.cumsum(increments, out=values[1:])
    return values


def sample_brownian_pair(spec: CovSpec, n: int, dt: float, seed: int, trial: int = 0) -> PathPair:
    """
    Samples Z = (L, R) on n steps of length dt with i.i.d. Gaussian increments of covariance dt * alpha * [[1, rho],
    [rho, 1]].

    :param spec: covariance structure.
    :param n: number of steps.
    :param dt: time per step.
    :param seed: 64-bit master seed.
    :param trial: trial number, part of the RNG key.
    :return: a brownian `PathPair` starting at the origin.
    """
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    _check_size(n, dt)
    scale = np.sqrt(spec.alpha_scale * dt)
    orthogonal = np.sqrt(1. - spec.rho ** 2)
    dl = np.empty(n)
    dr = np.empty(n)
    start = 0
    for chunk, size in _chunks(n):
        gauss = chunk_generator(seed, trial, chunk).standard_normal((2, size))
        dl[start:start + size] = gauss[0]
        dr[start:start + size] = spec.rho * gauss[0] + orthogonal * gauss[1]
        start += size
    dl *= scale
    dr *= scale
    logger.debug("sampled brownian pair n=%d dt=%g seed=%d trial=%d", n, dt, seed, trial)
    return PathPair(spec=spec, dt=float(dt), L=_cumulate(dl), R=_cumulate(dr), kind=BROWNIAN)


def sample_lattice_pair(spec: CovSpec, n: int, seed: int, trial: int = 0) -> PathPair:
    """
    Samples the lattice surrogate of Z: +-1 steps with P(+,+) = P(-,-) = (1 + rho) / 4 and
    P(+,-) = P(-,+) = (1 - rho) / 4, so that E[dL dR] = rho exactly.
    """
    _check_size(n)
    law = lattice_step_law(spec.rho)
    p_same = law[(1, 1)] + law[(-1, -1)]
    dl = np.empty(n)
    dr = np.empty(n)
    start = 0
    for chunk, size in _chunks(n):
        u = chunk_generator(seed, trial, chunk).random((2, size))
        step = np.where(u[0] < .5, 1., -1.)
        dl[start:start + size] = step
        dr[start:start + size] = np.where(u[1] < p_same, step, -step)
        start += size
    logger.debug("sampled lattice pair n=%d seed=%d trial=%d", n, seed, trial)
    return PathPair(spec=spec, dt=1., L=_cumulate(dl), R=_cumulate(dr), kind=LATTICE)


def sample_pair(spec: CovSpec, n: int, seed: int, trial: int = 0, kind: str = LATTICE, dt: float = 1.) -> PathPair:
    if kind == LATTICE:
        return sample_lattice_pair(spec, n, seed, trial=trial)
    elif kind == BROWNIAN:
        return sample_brownian_pair(spec, n, dt, seed, trial=trial)
    raise DomainError(f"unknown path kind {kind!r}")


def empirical_cov(path: PathPair):
    """
    Sample variances and covariance of the increment sequence, normalized by dt.

    :return: (var_L, var_R, cov)
    """
    if path.n < 2:
        raise DomainError(f"empirical covariance needs at least two increments, got {path.n}")
    dl, dr = path.increments()
    cov = np.cov(np.vstack([dl, dr])) / path.dt
    return float(cov[0, 0]), float(cov[1, 1]), float(cov[0, 1])


def empirical_correlation(path: PathPair) -> float:
    var_l, var_r, cov = empirical_cov(path)
    if var_l == 0 or var_r == 0:
        return 0.
    return cov / np.sqrt(var_l * var_r)


def rescale(path: PathPair, c: float) -> PathPair:
    """Brownian scaling: time is multiplied by c**2 and values by c."""
    if not c > 0:
        raise DomainError(f"scaling factor must be positive, got {c}")
    kind = path.kind if c == 1 else BROWNIAN
    return PathPair(spec=path.spec, dt=path.dt * c ** 2, L=path.L * c, R=path.R * c, kind=kind)


def coarsen_to_lattice(path: PathPair) -> PathPair:
    """Replaces every increment by its sign (zero increments count as +1)."""
    dl, dr = path.increments()
    dl = np.where(dl < 0, -1., 1.)
    dr = np.where(dr < 0, -1., 1.)
    return PathPair(spec=path.spec, dt=1., L=_cumulate(dl), R=_cumulate(dr), kind=LATTICE)


def time_reversal(path: PathPair) -> PathPair:
    """Z'_k = Z_{n-k} - Z_n, the reversed path started at the origin."""
    L = path.L[::-1] - path.L[-1]
    R = path.R[::-1] - path.R[-1]
    return PathPair(spec=path.spec, dt=path.dt, L=L, R=R, kind=path.kind)
