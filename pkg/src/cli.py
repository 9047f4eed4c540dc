import functools
import json
import logging
from pathlib import Path

import click
import numpy as np
from omegaconf import DictConfig

from src import MeasureTime, __version__, settings
from src.beads import bead_ledger, chordal_boundary_process
from src.conescan import covering_count, dyadic_grid, maximal_cone_intervals, non_cone_set
from src.corrpath import (LATTICE, PathPair, Window, build_cov_spec, coarsen_to_lattice, load_path, sample_pair,
                          save_path)
from src.errors import ConfigError, PeanoLabError
from src.exponents import VerificationReport, write_report
from src.exponents.claims import CLAIMS, EXPONENT_CLAIMS, run_claims
from src.mating import LOWER, UPPER, euler_genus, mate, tree_chords
from src.utils.config_io import save_config
from src.utils.parser import build_run_config
from src.utils.susi import ExperimentResults

logger = logging.getLogger(__name__)

EXIT_CLAIM_FAILURE = 3


def _config_options(func):
    @click.option('--config', 'config_name', default='default', show_default=True,
                  help="experiment name of a config in src/configs or a path to a YAML file")
    @click.option('--output-dir', type=click.Path(file_okay=False), default=None,
                  help="directory for all outputs, overrides `output_dir` of the config")
    @click.argument('overrides', nargs=-1)
    @functools.wraps(func)
    def wrapper(config_name, output_dir, overrides, **kwargs):
        try:
            config = build_run_config(config_name, overrides)
            threads = settings.worker_count()
        except (ConfigError, ValueError) as e:
            raise click.UsageError(str(e))
        destination = settings.unify_path(output_dir or config.output_dir)
        destination.mkdir(parents=True, exist_ok=True)
        save_config(destination / 'run_conf.yaml', config)
        try:
            return func(config=config, destination=destination, threads=threads, **kwargs)
        except (PeanoLabError, OSError) as e:
            raise click.ClickException(f"{type(e).__name__}: {e}")
    return wrapper


def _window(path: PathPair, config: DictConfig) -> Window:
    return path.check_window(Window.from_fractions(path.n, config.window.a, config.window.b))


def _finish(report: VerificationReport, destination: Path):
    write_report(report, destination / 'report.json')
    summary = ExperimentResults(['claim_id', 'paper_anchor', 'estimate', 'theoretical_value', 'tolerance', 'pass'])
    for claim in report.claims:
        row = claim.as_dict()
        summary.append_row({name: row[name] for name in summary.get_names()})
    summary.get_df().to_csv(destination / 'claims.csv', index=False)
    for claim in report.claims:
        click.echo(f"{'pass' if claim.passed else 'FAIL'}  {claim.claim_id}: {claim.estimate:.6g} "
                   f"(expected {claim.theoretical_value:.6g} +- {claim.tolerance:.3g})")
    if not report.passed:
        raise click.exceptions.Exit(EXIT_CLAIM_FAILURE)


@click.group()
@click.version_option(__version__)
@click.option('--verbose', '-v', is_flag=True, help="log progress at INFO level")
def main(verbose):
    """Simulation lab for pairs of correlated Brownian motions and the maps they encode."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(levelname)s: %(message)s")


@main.command()
@_config_options
def simulate(config, destination, threads):
    """Samples one path pair and writes it to path.pnlb."""
    spec = build_cov_spec(config.kappa_prime, config.alpha_scale)
    path = sample_pair(spec, config.n_steps, config.seed, kind=config.kind, dt=config.dt)
    save_path(path, destination / 'path.pnlb')
    click.echo(f"wrote {config.kind} path with n={path.n} to {destination / 'path.pnlb'}")


@main.command()
@click.option('--path', 'path_file', type=click.Path(exists=True, dir_okay=False), required=True)
@_config_options
def conescan(path_file, config, destination, threads):
    """Maximal cone intervals of the window and the covering curve of its ancestor-free set."""
    path = load_path(path_file)
    w = _window(path, config)
    intervals = maximal_cone_intervals(path, w)
    intervals.to_frame(dt=path.dt).to_csv(destination / 'intervals.csv', index=False)
    span = (w.b - w.a) * path.dt
    epsilons = dyadic_grid(span, config.eps_grid.min_exponent, config.eps_grid.max_exponent)
    covering = covering_count(non_cone_set(path, w, intervals=intervals), epsilons, dt=path.dt)
    covering.to_csv(destination / 'covering.csv')
    click.echo(f"{len(intervals)} maximal cone intervals in [{w.a}, {w.b}]")


@main.command()
@click.option('--path', 'path_file', type=click.Path(exists=True, dir_okay=False), required=True)
@click.option('--t', 'origin', type=int, default=0, show_default=True, help="index the beads are read from")
@click.option('--bead', type=int, default=0, show_default=True, help="record whose chordal process is written")
@_config_options
def beads(path_file, origin, bead, config, destination, threads):
    """Bead ledger from time t and the boundary length process of one bead."""
    path = load_path(path_file)
    ledger = bead_ledger(path, origin)
    ledger.to_csv(destination / 'ledger.csv')
    if not 0 <= bead < len(ledger):
        raise click.UsageError(f"bead {bead} out of range, the ledger has {len(ledger)} records")
    process = chordal_boundary_process(path, ledger.record(bead), complete=ledger.complete)
    process.to_csv(destination / 'chordal.csv')
    click.echo(f"{len(ledger)} beads from t={origin}; bead {bead} holds {len(process.bubbles)} bubbles")


@main.command(name='mate')
@click.option('--path', 'path_file', type=click.Path(exists=True, dir_okay=False), required=True)
@_config_options
def mate_cmd(path_file, config, destination, threads):
    """Mates the two trees of the window and checks the sphere topology of the result."""
    path = load_path(path_file)
    if path.kind != LATTICE:
        path = coarsen_to_lattice(path)
    w = _window(path, config)
    L, R = path.L[w.a:w.b + 1], path.R[w.a:w.b + 1]
    n = w.b - w.a
    planar_map = mate(tree_chords(R, LOWER), tree_chords(L, UPPER), n)
    planar_map.export(destination / 'map_edges.csv', destination / 'map_summary.json')
    V, E, F, genus = euler_genus(planar_map)
    click.echo(json.dumps({'V': V, 'E': E, 'F': F, 'genus': genus}))


def _run(config, destination, threads, names):
    plot_dir = destination if config.plots else None
    with MeasureTime() as timer:
        report = run_claims(config, names=names, threads=threads, plot_dir=plot_dir)
    report.version = __version__
    report.seed = int(config.seed)
    report.wall_time = float(np.round(timer.duration, 3))
    logger.info("claims finished in %.1f s", timer.duration)
    _finish(report, destination)


@main.command()
@_config_options
def exponents(config, destination, threads):
    """Estimates the dimensions, tail exponents and probability exponents and writes report.json."""
    _run(config, destination, threads, EXPONENT_CLAIMS)


@main.command(name='verify-all')
@_config_options
def verify_all(config, destination, threads):
    """Runs the whole acceptance suite; exits with 3 if any claim misses its tolerance."""
    _run(config, destination, threads, list(CLAIMS))


if __name__ == '__main__':
    main()
