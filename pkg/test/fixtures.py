from pathlib import Path

import numpy as np

from src.corrpath import LATTICE, PathPair, build_cov_spec

here = Path(__file__).parent
test_conf_path = here.parent / "src" / "configs" / "test_conf.yaml"


def make_path(L, R, kind: str = LATTICE, kappa_prime: float = 6., dt: float = 1.) -> PathPair:
    """Hand-written path fixture."""
    return PathPair(spec=build_cov_spec(kappa_prime), dt=dt, L=np.asarray(L, dtype=np.float64),
                    R=np.asarray(R, dtype=np.float64), kind=kind)


def walk_from_steps(steps) -> np.ndarray:
    return np.concatenate([[0.], np.cumsum(steps)])
