from pathlib import Path
from typing import Optional, Union

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from src.visualization.templates import colors  # noqa: E402

# stable SVG element ids
matplotlib.rcParams['svg.hashsalt'] = 'peano-lab'


def plot_loglog(fit, theoretical_slope: Optional[float], destination: Union[str, Path], title: str = '',
                xlabel: str = 'x', ylabel: str = 'y'):
    """
    Log-log scatter of the fitted points with the fitted line and a guide of the theoretical slope through the
    centre of the data.

    :param fit: a `RegressionFit` that kept its points.
    :param theoretical_slope: slope of the guide line; no guide is drawn when None.
    :param destination: output file, written as SVG.
    """
    if fit.x is None or fit.y is None:
        raise ValueError("the fit does not carry its points")
    x, y = fit.x, fit.y
    fig, ax = plt.subplots(figsize=(5, 4))
    if fit.y_err is not None:
        # error bars are on log y, so they become multiplicative
        lower = y - y * np.exp(-fit.y_err)
        upper = y * np.exp(fit.y_err) - y
        ax.errorbar(x, y, yerr=[lower, upper], fmt='o', color=colors['data'], ms=4, label='estimate')
    else:
        ax.plot(x, y, 'o', color=colors['data'], ms=4, label='estimate')
    grid = np.geomspace(x.min(), x.max(), 64)
    ax.plot(grid, np.exp(fit.intercept) * grid ** fit.slope, '-', color=colors['fit'],
            label=f'fit: {fit.slope:.3f} ± {fit.stderr_slope:.3f}')
    if theoretical_slope is not None:
        x_mid = np.exp(np.log(x).mean())
        y_mid = np.exp(np.log(y).mean())
        ax.plot(grid, y_mid * (grid / x_mid) ** theoretical_slope, '--', color=colors['theory'],
                label=f'theory: {theoretical_slope:.3f}')
    ax.set_xscale('log')
    ax.set_yscale('log')
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(destination, format='svg', metadata={'Date': None})
    plt.close(fig)
