from dataclasses import dataclass, field

import numpy as np

from src.errors import DomainError


def alpha_gamma_form(gamma):
    """Diameter exponent alpha written in terms of the LQG parameter gamma."""
    gamma = np.asarray(gamma, dtype=np.float64)
    g2 = gamma ** 2
    return 2 * (g2 - 2) / (g2 * (4 + 3 * g2 + 2 * np.sqrt(2 * g2 ** 2 + 8 * g2 - 4)))


def alpha_kappa_form(kappa_prime):
    """The same exponent written in terms of kappa' = 16 / gamma^2."""
    k = np.asarray(kappa_prime, dtype=np.float64)
    return (8 - k) * k / (16 * (12 + k + np.sqrt(32 * (4 + k) - k ** 2)))


def kpz_upper(beta, gamma):
    """(2 + gamma^2 / 2) beta - gamma^2 / 2 beta^2 - 2, for beta in [0, 1]."""
    beta = np.asarray(beta, dtype=np.float64)
    g2 = np.asarray(gamma, dtype=np.float64) ** 2
    value = (2 + g2 / 2) * beta - g2 / 2 * beta ** 2 - 2
    return float(value) if value.ndim == 0 else value


@dataclass(frozen=True)
class Constants:
    kappa_prime: float
    gamma: float = field(init=False)
    kappa: float = field(init=False)
    Q: float = field(init=False)
    dim_infima: float = field(init=False)
    dim_ancestor_free: float = field(init=False)
    stable_index_bubbles: float = field(init=False)
    diam_alpha: float = field(init=False)

    def __post_init__(self):
        k = self.kappa_prime
        gamma = 4 / np.sqrt(k)
        object.__setattr__(self, 'gamma', float(gamma))
        object.__setattr__(self, 'kappa', float(gamma ** 2))
        object.__setattr__(self, 'Q', float(2 / gamma + gamma / 2))
        object.__setattr__(self, 'dim_infima', 1 - k / 8)
        object.__setattr__(self, 'dim_ancestor_free', k / 8)
        object.__setattr__(self, 'stable_index_bubbles', k / 4)
        object.__setattr__(self, 'diam_alpha', float(alpha_kappa_form(k)))

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


def constants(kappa_prime: float) -> Constants:
    if not 4 < kappa_prime < 8:
        raise DomainError(f"kappa' must lie in (4, 8), got {kappa_prime}")
    return Constants(float(kappa_prime))
