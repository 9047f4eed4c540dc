import logging
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.stats import linregress

from src.beads import TailSample
from src.conescan import CoveringCurve, covering_count
from src.errors import DomainError, FitError

logger = logging.getLogger(__name__)

MIN_POINTS = 3
DEFAULT_RESAMPLES = 32


@dataclass(frozen=True, eq=False)
class RegressionFit:
    """
    Least squares line through (log x, log y). The fitted points are kept in `x` and `y` (not logged) so fits can be
    plotted; `y_err` are optional error bars on log y.
    """
    slope: float
    intercept: float
    r_squared: float
    stderr_slope: float
    n: int
    bootstrap_stderr: Optional[float] = None
    x: Optional[np.ndarray] = None
    y: Optional[np.ndarray] = None
    y_err: Optional[np.ndarray] = None

    def with_bootstrap(self, stderr: float) -> 'RegressionFit':
        return RegressionFit(self.slope, self.intercept, self.r_squared, self.stderr_slope, self.n,
                             bootstrap_stderr=stderr, x=self.x, y=self.y, y_err=self.y_err)


def _as_points(curve, y=None):
    if isinstance(curve, CoveringCurve):
        # covering fits run against 1 / eps so that the slope is the dimension
        return 1. / curve.epsilons, curve.counts.astype(np.float64)
    if y is None:
        points = np.asarray(curve, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != 2:
            raise DomainError("expected a covering curve, (x, y) arrays or an array of (x, y) pairs")
        return points[:, 0], points[:, 1]
    return np.asarray(curve, dtype=np.float64), np.asarray(y, dtype=np.float64)


def fit_loglog(curve, y=None, y_err=None) -> RegressionFit:
    """
    Ordinary least squares of log y against log x.

    :param curve: a `CoveringCurve` (fitted as log N against log 1/eps), an x array together with `y`, or an array
        of (x, y) pairs.
    :param y: y values when `curve` is an x array.
    :param y_err: optional error bars on log y, carried along for plotting.
    """
    x, y = _as_points(curve, y)
    if x.shape != y.shape:
        raise DomainError(f"x and y differ in shape: {x.shape} vs {y.shape}")
    if x.size < MIN_POINTS:
        raise FitError(f"a log-log fit needs at least {MIN_POINTS} points, got {x.size}")
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("log-log fits need positive coordinates")
    log_x, log_y = np.log(x), np.log(y)
    if np.ptp(log_x) == 0:
        raise FitError("degenerate x-range")
    result = linregress(log_x, log_y)
    residuals = log_y - (result.intercept + result.slope * log_x)
    total = np.sum((log_y - log_y.mean()) ** 2)
    r_squared = 1. if total == 0 else float(np.clip(1 - np.sum(residuals ** 2) / total, 0., 1.))
    stderr = float(result.stderr) if np.isfinite(result.stderr) else 0.
    return RegressionFit(slope=float(result.slope), intercept=float(result.intercept), r_squared=r_squared,
                         stderr_slope=stderr, n=int(x.size), x=x, y=y, y_err=y_err)


def bootstrap_slope(x, per_trial_y, resamples: int = DEFAULT_RESAMPLES, seed: int = 0) -> float:
    """
    Trial-level bootstrap of the slope of log mean(y) against log x: trials are redrawn with replacement and the
    averaged curve is refitted. Points whose resampled mean vanishes are dropped for that resample.

    :param x: common abscissa of all trials.
    :param per_trial_y: array of shape (trials, len(x)).
    :return: standard deviation of the resampled slopes.
    """
    x = np.asarray(x, dtype=np.float64)
    per_trial_y = np.asarray(per_trial_y, dtype=np.float64)
    if per_trial_y.ndim != 2 or per_trial_y.shape[1] != x.size:
        raise DomainError(f"per-trial values of shape {per_trial_y.shape} do not match {x.size} abscissae")
    if resamples < 2:
        raise DomainError(f"need at least two resamples, got {resamples}")
    trials = per_trial_y.shape[0]
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), trials])))
    slopes = []
    for _ in range(resamples):
        mean = per_trial_y[rng.integers(0, trials, size=trials)].mean(axis=0)
        keep = mean > 0
        if np.count_nonzero(keep) < MIN_POINTS or np.ptp(np.log(x[keep])) == 0:
            continue
        slopes.append(linregress(np.log(x[keep]), np.log(mean[keep])).slope)
    if len(slopes) < 2:
        raise FitError("too few usable bootstrap resamples")
    return float(np.std(slopes, ddof=1))


def scale_cutoff(epsilons: np.ndarray, dt: float, span: Optional[float] = None, guard: float = 1.) -> np.ndarray:
    """Mask of the scales kept by dimension fits: 8 dt guard <= eps <= span / 8."""
    keep = epsilons >= 8 * dt * guard
    if span is not None:
        keep &= epsilons <= span / 8
    return keep


def dimension_scales(epsilons: Sequence[float], dt: float, span: Optional[float] = None,
                     guard: float = 1.) -> np.ndarray:
    """The increasing eps grid restricted to the scale cutoff; at least three scales must survive."""
    epsilons = np.sort(np.asarray(epsilons, dtype=np.float64))
    kept = epsilons[scale_cutoff(epsilons, dt, span, guard)]
    if kept.size < MIN_POINTS:
        raise FitError(f"only {kept.size} scales survive the cutoff [{8 * dt * guard}, {span}/8]")
    return kept


def estimate_dimension(index_set: np.ndarray, dt: float, epsilons: Sequence[float], span: Optional[float] = None,
                       guard: float = 1.) -> RegressionFit:
    """
    Box-counting dimension of an index set: covering counts on the eps grid, restricted to the scale cutoff, fitted
    in log-log.

    :param span: length of the observation window in time units; scales above span / 8 are discarded when given.
    :param guard: mixing guard multiplying the lower cutoff 8 dt.
    """
    kept = dimension_scales(epsilons, dt, span, guard)
    return fit_loglog(covering_count(index_set, kept, dt=dt))


def pooled_dimension_fit(epsilons: np.ndarray, counts: np.ndarray, resamples: int = DEFAULT_RESAMPLES,
                         seed: int = 0) -> RegressionFit:
    """
    Fits the covering counts averaged over paths.

    :param counts: array of shape (paths, len(epsilons)).
    """
    counts = np.asarray(counts, dtype=np.float64)
    fit = fit_loglog(1. / epsilons, counts.mean(axis=0))
    if counts.shape[0] < 2 or resamples < 2:
        return fit
    return fit.with_bootstrap(bootstrap_slope(1. / epsilons, counts, resamples=resamples, seed=seed))


def estimate_pooled_dimension(index_sets: Sequence[np.ndarray], dt: float, epsilons: Sequence[float],
                              span: Optional[float] = None, guard: float = 1., resamples: int = DEFAULT_RESAMPLES,
                              seed: int = 0) -> RegressionFit:
    """Dimension fit of the covering counts averaged over several paths, with a bootstrap over paths."""
    kept = dimension_scales(epsilons, dt, span, guard)
    counts = np.array([covering_count(s, kept, dt=dt).counts for s in index_sets], dtype=np.float64)
    return pooled_dimension_fit(kept, counts, resamples=resamples, seed=seed)


def tail_cutoff(dt: float, horizon: Optional[float] = None, guard: float = 0.) -> Tuple[float, float]:
    """
    Value range kept by tail fits: 8 dt guard <= x <= horizon / 64. A zero guard disables the lower cut.
    """
    low = 8 * dt * guard
    high = np.inf if horizon is None else horizon / 64
    if not low < high:
        raise FitError(f"empty tail range [{low:.4g}, {high:.4g}]")
    return low, high


def tail_slope(sample: TailSample, quantile: float = .5, decades: float = 1., min_samples: int = 100,
               cutoff: Tuple[float, float] = (0., np.inf)) -> RegressionFit:
    """
    Slope of the empirical CCDF P(X >= x) in log-log over the central range [q, q * 10**decades], q the given
    sample quantile, clipped to `cutoff`. Tied values contribute one point each.
    """
    values = sample.values
    if values.size == 0:
        raise FitError("empty tail sample")
    low = max(float(np.quantile(values, quantile)), cutoff[0])
    high = min(low * 10 ** decades, cutoff[1])
    in_range = (values >= low) & (values <= high)
    if np.count_nonzero(in_range) < min_samples:
        raise FitError(f"{np.count_nonzero(in_range)} samples in [{low:.4g}, {high:.4g}], need {min_samples}")
    unique, first = np.unique(values, return_index=True)
    ccdf = (values.size - first) / values.size
    keep = (unique >= low) & (unique <= high)
    if np.count_nonzero(keep) < MIN_POINTS:
        raise FitError(f"only {np.count_nonzero(keep)} distinct values in [{low:.4g}, {high:.4g}]")
    logger.debug("tail fit over [%g, %g] with %d samples", low, high, np.count_nonzero(in_range))
    return fit_loglog(unique[keep], ccdf[keep])


def bootstrap_tail_slope(samples: Sequence[TailSample], resamples: int = DEFAULT_RESAMPLES, seed: int = 0,
                         **fit_options) -> float:
    """
    Path-level bootstrap of `tail_slope`: the per-path samples are redrawn with replacement, pooled and refitted.
    Resamples whose fit fails are skipped.

    :return: standard deviation of the resampled slopes.
    """
    if resamples < 2:
        raise DomainError(f"need at least two resamples, got {resamples}")
    paths = len(samples)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), paths])))
    slopes = []
    for _ in range(resamples):
        drawn = TailSample.pooled(samples[k] for k in rng.integers(0, paths, size=paths))
        try:
            slopes.append(tail_slope(drawn, **fit_options).slope)
        except FitError:
            continue
    if len(slopes) < 2:
        raise FitError("too few usable bootstrap resamples")
    return float(np.std(slopes, ddof=1))


def pooled_tail_fit(samples: Sequence[TailSample], resamples: int = DEFAULT_RESAMPLES, seed: int = 0,
                    **fit_options) -> RegressionFit:
    """Tail slope of the pooled per-path samples, with a bootstrap over paths when there are several."""
    samples = list(samples)
    fit = tail_slope(TailSample.pooled(samples), **fit_options)
    if len(samples) < 2 or resamples < 2:
        return fit
    return fit.with_bootstrap(bootstrap_tail_slope(samples, resamples=resamples, seed=seed, **fit_options))


def binomial_log_errors(successes: np.ndarray, trials: int) -> np.ndarray:
    """Delta-method standard errors of log p for binomial frequency estimates."""
    p = successes / trials
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.sqrt((1 - p) / (p * trials))


def probability_fit(epsilons: np.ndarray, successes: np.ndarray, trials: int) -> RegressionFit:
    """Log-log fit of success frequencies against eps; points without successes are dropped with a warning."""
    epsilons = np.asarray(epsilons, dtype=np.float64)
    successes = np.asarray(successes, dtype=np.int64)
    empty = successes == 0
    if np.any(empty):
        warnings.warn(f"no successes at eps={epsilons[empty].tolist()} in {trials} trials; dropping these points")
    kept = ~empty
    return fit_loglog(epsilons[kept], successes[kept] / trials,
                      y_err=binomial_log_errors(successes[kept], trials))
