"""Command-line front end: each figure as a machine-readable dataset.

Every subcommand resolves its flags into a RunConfig (unit tags included),
builds datasets through the shared layer in datasets.py, and writes CSV
or JSON.  Failures surface as a machine-readable JSON error on stderr
with exit code 1; usage errors exit with click's code 2.
"""

import functools
import json
import logging
import sys
from dataclasses import dataclass
from typing import Optional

import click
import numpy as np

from . import __version__
from .datasets import (
    momentum_dataset,
    simulate_datasets,
    timespectrum_dataset,
    to_csv_text,
    to_json_obj,
    trajectories_dataset,
    write_dataset,
)
from .errors import LabError, UnsupportedModeError
from .propagation import DetectionConfig
from .selfcheck import run_selfcheck, selfcheck_ok
from .states import OscillatorSpec
from .units import parse_field, parse_length, parse_momentum, parse_time, US_IN_AU

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    """Resolved per-invocation parameters; unit tags already applied."""

    spec: OscillatorSpec
    config: Optional[DetectionConfig] = None
    t_grid: Optional[np.ndarray] = None
    p_grid: Optional[np.ndarray] = None
    count: Optional[int] = None
    seed: Optional[int] = None
    bin_width: Optional[float] = None


def resolve_detection(zf, boost=None, field=None):
    """Unit-tagged strings to a DetectionConfig; one mode at most.

    A zero boost or zero field is the free mode, so "--field 0eV/cm"
    deliberately means free flight rather than an error.
    """
    z = parse_length(zf)
    p_c = parse_momentum(boost) if boost is not None else 0.0
    F = parse_field(field) if field is not None else 0.0
    if p_c != 0.0 and F != 0.0:
        raise UnsupportedModeError("boost and field cannot combine")
    if F != 0.0:
        return DetectionConfig.field(z, F)
    if p_c != 0.0:
        return DetectionConfig.boost(z, p_c)
    return DetectionConfig.free(z)


def resolve_bins(bins, config):
    """Bin width in au; the default follows the acquisition convention
    of each mode (0.01 us under extraction field, 1 us otherwise)."""
    if bins is not None:
        return parse_time(bins)
    return (0.01 if config.mode == "field" else 1.0) * US_IN_AU


def cmd_timespectrum(run):
    return timespectrum_dataset(run.spec, run.config, run.t_grid)


def cmd_momentum(run):
    return momentum_dataset(run.spec, run.config, run.p_grid)


def cmd_simulate(run):
    return simulate_datasets(
        run.spec, run.config, run.count, run.seed, run.bin_width, run.p_grid
    )


def cmd_trajectories(mu, t_grid, p_fan, zf_fan, t_star):
    return trajectories_dataset(mu, t_grid, p_fan, zf_fan, t_star)


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except LabError as exc:
            click.echo(
                json.dumps({"error": exc.category, "message": str(exc)}), err=True
            )
            sys.exit(1)

    return wrapper


def _emit(dataset, out, fmt):
    if out is None:
        if fmt == "json":
            click.echo(json.dumps(to_json_obj(dataset), indent=2))
        else:
            click.echo(to_csv_text(dataset), nl=False)
    else:
        write_dataset(dataset, out, fmt)
        log.info("wrote %s", out)


def _mode_options(n_default=0):
    def apply(fn):
        for opt in reversed(
            (
                click.option("--n", default=n_default, show_default=True,
                             help="initial-state index"),
                click.option("--mu", default=918.0, show_default=True,
                             help="reduced mass, au"),
                click.option("--omega", default=0.01, show_default=True,
                             help="packet frequency scale, au"),
                click.option("--boost", default=None,
                             help="CM momentum kick, tagged (e.g. 25au)"),
                click.option("--field", "field_", default=None,
                             help="extraction force, tagged (e.g. 1eV/cm)"),
            )
        ):
            fn = opt(fn)
        return fn

    return apply


def _output_options(fn):
    for opt in reversed(
        (
            click.option("--out", default=None, type=click.Path(dir_okay=False),
                         help="output path (stdout when omitted)"),
            click.option("--format", "fmt", default="csv", show_default=True,
                         type=click.Choice(["csv", "json"])),
        )
    ):
        fn = opt(fn)
    return fn


@click.group(invoke_without_command=True)
@click.version_option(__version__, "--version", prog_name="itlab")
@click.option("--verbose", is_flag=True, help="log progress to stderr")
@click.pass_context
def main(ctx, verbose):
    """Numerical laboratory for momentum imaging of fragmentation."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@main.command()
@_mode_options()
@click.option("--zf", default="2a0", show_default=True,
              help="detector position, tagged length")
@click.option("--tmin", default="10au", show_default=True)
@click.option("--tmax", default="6000au", show_default=True)
@click.option("--points", default=1200, show_default=True)
@_output_options
@_guarded
def timespectrum(n, mu, omega, boost, field_, zf, tmin, tmax, points, out, fmt):
    """Exact, IT, and classical arrival densities at fixed z_f."""
    run = RunConfig(
        spec=OscillatorSpec(n=n, mu=mu, omega=omega),
        config=resolve_detection(zf, boost, field_),
        t_grid=np.linspace(parse_time(tmin), parse_time(tmax), points),
    )
    _emit(cmd_timespectrum(run), out, fmt)


@main.command()
@_mode_options()
@click.option("--zf", default="2a0", show_default=True,
              help="detector position, tagged length")
@click.option("--pmin", default=-8.0, show_default=True,
              help="momentum grid start, au")
@click.option("--pmax", default=8.0, show_default=True,
              help="momentum grid end, au")
@click.option("--points", default=321, show_default=True)
@_output_options
@_guarded
def momentum(n, mu, omega, boost, field_, zf, pmin, pmax, points, out, fmt):
    """Momentum density extracted from the exact time spectrum."""
    run = RunConfig(
        spec=OscillatorSpec(n=n, mu=mu, omega=omega),
        config=resolve_detection(zf, boost, field_),
        p_grid=np.linspace(pmin, pmax, points),
    )
    _emit(cmd_momentum(run), out, fmt)


@main.command()
@_mode_options(n_default=2)
@click.option("--zf", default="20cm", show_default=True,
              help="detector position, tagged length")
@click.option("--count", default=10000, show_default=True)
@click.option("--seed", default=7, show_default=True)
@click.option("--bins", default=None,
              help="bin width, tagged time [default: 0.01us field, 1us else]")
@click.option("--pmin", default=-8.0, show_default=True)
@click.option("--pmax", default=8.0, show_default=True)
@click.option("--points", default=321, show_default=True)
@_output_options
@_guarded
def simulate(n, mu, omega, boost, field_, zf, count, seed, bins, pmin, pmax,
             points, out, fmt):
    """Seeded click simulation: events, histogram, reconstruction.

    Defaults run the extraction-field acquisition; pass --field 0eV/cm
    for free flight.  With --out, writes <out>.events.<fmt>,
    <out>.histogram.<fmt>, <out>.reconstruction.<fmt>.
    """
    if field_ is None and boost is None:
        field_ = "1eV/cm"
    config = resolve_detection(zf, boost, field_)
    run = RunConfig(
        spec=OscillatorSpec(n=n, mu=mu, omega=omega),
        config=config,
        p_grid=np.linspace(pmin, pmax, points),
        count=count,
        seed=seed,
        bin_width=resolve_bins(bins, config),
    )
    events, histogram, reconstruction = cmd_simulate(run)
    if out is None:
        if fmt == "json":
            click.echo(json.dumps(
                {ds.name: to_json_obj(ds)
                 for ds in (events, histogram, reconstruction)},
                indent=2,
            ))
        else:
            for ds in (events, histogram, reconstruction):
                click.echo(to_csv_text(ds), nl=False)
    else:
        for ds in (events, histogram, reconstruction):
            write_dataset(ds, f"{out}.{ds.name}.{fmt}", fmt)
            log.info("wrote %s.%s.%s", out, ds.name, fmt)


@main.command()
@click.option("--mu", default=918.0, show_default=True)
@click.option("--t", "t_star", default="2000au", show_default=True,
              help="Jacobian sample time, tagged")
@click.option("--tmax", default="4000au", show_default=True)
@click.option("--tpoints", default=81, show_default=True)
@click.option("--pfan-min", default=0.25, show_default=True)
@click.option("--pfan-max", default=2.0, show_default=True)
@click.option("--pfan-count", default=8, show_default=True)
@click.option("--zfan-min", default="0.5a0", show_default=True)
@click.option("--zfan-max", default="4a0", show_default=True)
@click.option("--zfan-count", default=8, show_default=True)
@_output_options
@_guarded
def trajectories(mu, t_star, tmax, tpoints, pfan_min, pfan_max, pfan_count,
                 zfan_min, zfan_max, zfan_count, out, fmt):
    """Classical fans z(t), p_i(t), and the dp_i/dz_f rectangle."""
    dataset = cmd_trajectories(
        mu,
        np.linspace(0.0, parse_time(tmax), tpoints),
        np.linspace(pfan_min, pfan_max, pfan_count),
        np.linspace(parse_length(zfan_min), parse_length(zfan_max), zfan_count),
        parse_time(t_star),
    )
    _emit(dataset, out, fmt)


@main.command()
@_guarded
def selfcheck():
    """Run the cross-module identity suite; exit 1 on any failure."""
    results = run_selfcheck()
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        click.echo(f"{status} {r.name}: measured {r.measured:.3e} "
                   f"(bound {r.bound:.3e})")
    if not selfcheck_ok(results):
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port):
    """Serve the same datasets over HTTP (FastAPI)."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
