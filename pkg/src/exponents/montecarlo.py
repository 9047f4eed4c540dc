import logging
import warnings
from typing import Callable, List, Sequence

import numpy as np
from joblib import Parallel, delayed

from src import settings
from src.errors import DomainError
from src.exponents.regression import RegressionFit, bootstrap_slope, probability_fit

logger = logging.getLogger(__name__)

MIN_TRIALS = 1000


def run_trials(func: Callable[[int], object], trials: int, threads: int = None) -> List:
    """
    Evaluates func(trial) for trial = 0..trials-1 on a thread pool. Results come back in trial order, so any reduction
    over them is independent of the scheduling.
    """
    if trials < 1:
        raise DomainError(f"need at least one trial, got {trials}")
    threads = settings.worker_count() if threads is None else threads
    if threads == 1:
        return [func(trial) for trial in range(trials)]
    return Parallel(n_jobs=threads, prefer='threads')(delayed(func)(trial) for trial in range(trials))


def event_indicators(event: Callable[[int, int, np.ndarray], np.ndarray], epsilons: Sequence[float], trials: int,
                     seed: int, threads: int = None) -> np.ndarray:
    """
    :param event: event(seed, trial, epsilons) -> boolean array, one entry per eps. Each trial draws its randomness
        from its own (seed, trial) key.
    :return: boolean array of shape (trials, len(epsilons)).
    """
    epsilons = np.asarray(epsilons)
    outcomes = run_trials(lambda trial: np.asarray(event(seed, trial, epsilons), dtype=bool), trials, threads)
    outcomes = np.vstack(outcomes)
    if outcomes.shape != (trials, epsilons.size):
        raise DomainError(f"event returned {outcomes.shape[1]} outcomes for {epsilons.size} scales")
    return outcomes


def mc_probability_scaling(event: Callable[[int, int, np.ndarray], np.ndarray], epsilons: Sequence[float],
                           trials: int, seed: int, threads: int = None, resamples: int = 0) -> RegressionFit:
    """
    Estimates P(event at eps) on every scale by Monte-Carlo and fits log P against log eps. Error bars are binomial;
    with `resamples` > 1 a trial-level bootstrap stderr is attached as well.
    """
    if trials < MIN_TRIALS:
        warnings.warn(f"{trials} trials per scale is below {MIN_TRIALS}; the slope will be noisy")
    outcomes = event_indicators(event, epsilons, trials, seed, threads=threads)
    successes = outcomes.sum(axis=0)
    logger.info("event frequencies %s", (successes / trials).round(4).tolist())
    fit = probability_fit(np.asarray(epsilons, dtype=np.float64), successes, trials)
    if resamples > 1:
        fit = fit.with_bootstrap(bootstrap_slope(epsilons, outcomes, resamples=resamples, seed=seed))
    return fit
