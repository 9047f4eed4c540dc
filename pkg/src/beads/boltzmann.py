import numpy as np
from scipy import stats

from src.errors import DomainError

# areas of free Boltzmann disks with boundary length l are inverse-gamma distributed with this shape
SHAPE = 1.5


def _check_length(boundary_length: float):
    if not boundary_length > 0:
        raise DomainError(f"boundary length must be positive, got {boundary_length}")


def boltzmann_area_law(boundary_length: float):
    """Frozen scipy law of the area: density l^3 / sqrt(2 pi a^5) exp(-l^2 / (2a)) on a > 0."""
    _check_length(boundary_length)
    return stats.invgamma(a=SHAPE, scale=boundary_length ** 2 / 2)


def boltzmann_area_pdf(a, boundary_length: float):
    _check_length(boundary_length)
    a = np.asarray(a, dtype=np.float64)
    with np.errstate(divide='ignore', invalid='ignore'):
        density = boundary_length ** 3 / np.sqrt(2 * np.pi * a ** 5) * np.exp(-boundary_length ** 2 / (2 * a))
    return np.where(a > 0, density, 0.)


def boltzmann_area_cdf(a, boundary_length: float):
    return boltzmann_area_law(boundary_length).cdf(a)


def sample_boltzmann_area(boundary_length: float, seed: int, size: int = None):
    """
    Samples areas as l^2 / (2 G) with G ~ Gamma(3/2, 1).

    :param boundary_length: disk boundary length l > 0.
    :param seed: RNG seed.
    :param size: number of samples; a single float when None.
    """
    _check_length(boundary_length)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))
    gamma = rng.gamma(SHAPE, 1., size=size)
    return boundary_length ** 2 / (2 * gamma)
