"""Shared dataset layer: one builder per deliverable, two serializations.

The CLI and the HTTP service both produce the same plot-ready datasets;
this module owns their construction and their CSV/JSON forms so the two
front ends cannot drift apart.  Every dataset carries a provenance
header sufficient to reproduce the file byte for byte.
"""

import json
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import DomainError
from .extraction import (
    analytic_momentum_density,
    classical_density,
    extract_momentum_density,
    time_spectrum,
)
from .imaging import it_wavefunction, stationary_momentum, trajectory_position
from .montecarlo import build_histogram, reconstruct_momentum, sample_arrival_times
from .propagation import evolve
from .units import US_IN_AU


@dataclass(frozen=True)
class Dataset:
    """Named columns plus the provenance needed to regenerate them."""

    name: str
    provenance: dict
    columns: dict


def _num(x):
    return f"{float(x):.17g}"


def _base_provenance(command, spec, config):
    return {
        "artifact_version": __version__,
        "command": command,
        "n": str(spec.n),
        "mu_au": _num(spec.mu),
        "omega_au": _num(spec.omega),
        "zf_au": _num(config.z_f),
        "mode": config.mode,
        "pc_au": _num(config.p_c),
        "F_au": _num(config.F),
    }


def timespectrum_dataset(spec, config, t_grid):
    """Exact, IT-limit, and classical arrival densities over a time grid."""
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size < 2 or np.any(t_grid <= 0):
        raise DomainError("time grid must hold at least two positive times")
    spectrum = time_spectrum(spec, config, t_grid)
    prov = _base_provenance("timespectrum", spec, config)
    prov.update(
        tmin_au=_num(t_grid[0]), tmax_au=_num(t_grid[-1]), points=str(t_grid.size)
    )
    return Dataset(
        name="timespectrum",
        provenance=prov,
        columns={
            "t_au": t_grid,
            "exact_density": spectrum.density,
            "it_density": np.abs(it_wavefunction(spec, config, t_grid)) ** 2,
            "classical_density": classical_density(t_grid, spec.mu),
        },
    )


def momentum_dataset(spec, config, p_grid):
    """Analytic momentum density next to the one extracted from the
    exact time spectrum, with explicit coverage flags."""
    p_grid = np.asarray(p_grid, dtype=float)
    if p_grid.size < 2:
        raise DomainError("momentum grid must hold at least two points")

    def source(t):
        return np.abs(evolve(spec, config, t)) ** 2

    dist = extract_momentum_density(source, config, spec.mu, p_grid)
    prov = _base_provenance("momentum", spec, config)
    prov.update(
        pmin_au=_num(p_grid[0]),
        pmax_au=_num(p_grid[-1]),
        points=str(p_grid.size),
        covered_probability=_num(dist.normalization),
    )
    return Dataset(
        name="momentum",
        provenance=prov,
        columns={
            "p_au": p_grid,
            "exact_density": analytic_momentum_density(spec, p_grid),
            "extracted_density": dist.density,
            "covered_flag": dist.covered.astype(int),
        },
    )


def simulate_datasets(spec, config, count, seed, bin_width, p_grid, window=None):
    """The three artifacts of a seeded run: events, histogram, reconstruction.

    bin_width and the event times are exposed in microseconds, the
    laboratory unit of the acquisition; everything is computed in au.
    """
    p_grid = np.asarray(p_grid, dtype=float)
    events = sample_arrival_times(spec, config, count, seed, window=window)
    hist = build_histogram(events, bin_width)
    recon = reconstruct_momentum(hist, spec, config, p_grid)

    prov = _base_provenance("simulate", spec, config)
    prov.update(
        count=str(count),
        seed=str(seed),
        bin_us=_num(bin_width / US_IN_AU),
        window_lo_us=_num(events.window[0] / US_IN_AU),
        window_hi_us=_num(events.window[1] / US_IN_AU),
    )

    events_ds = Dataset(
        name="events",
        provenance=prov,
        columns={"t_us": events.times / US_IN_AU},
    )
    hist_ds = Dataset(
        name="histogram",
        provenance=prov,
        columns={
            "bin_center_us": hist.centers / US_IN_AU,
            "count": hist.counts,
            "density_per_us": hist.normalized_density * US_IN_AU,
        },
    )
    prov_rec = dict(prov)
    prov_rec.update(
        pmin_au=_num(p_grid[0]),
        pmax_au=_num(p_grid[-1]),
        points=str(p_grid.size),
        covered_probability=_num(recon.normalization),
    )
    recon_ds = Dataset(
        name="reconstruction",
        provenance=prov_rec,
        columns={
            "p_au": p_grid,
            "analytic_density": analytic_momentum_density(spec, p_grid),
            "reconstructed_density": recon.density,
            "covered_flag": recon.covered.astype(int),
        },
    )
    return events_ds, hist_ds, recon_ds


def trajectories_dataset(mu, t_grid, p_fan, zf_fan, t_star):
    """Classical fan data in long form: z(t) per launch momentum, p_i(t)
    per detector plane, and the finite-difference dp_i/dz_f rectangle at
    t_star (which equals mu/t_star identically)."""
    t_grid = np.asarray(t_grid, dtype=float)
    p_fan = np.asarray(p_fan, dtype=float)
    zf_fan = np.asarray(zf_fan, dtype=float)
    if t_star <= 0:
        raise DomainError("the Jacobian sample time must be positive")
    kinds, params, ts, values = [], [], [], []
    for p in p_fan:
        z = trajectory_position(p, t_grid, mu)
        kinds += ["z_of_t"] * t_grid.size
        params += [p] * t_grid.size
        ts.append(t_grid)
        values.append(z)
    t_pos = t_grid[t_grid > 0]
    for zf in zf_fan:
        pi = stationary_momentum(zf, t_pos, mu)
        kinds += ["p_of_t"] * t_pos.size
        params += [zf] * t_pos.size
        ts.append(t_pos)
        values.append(pi)
    p_at_star = stationary_momentum(zf_fan, np.full(zf_fan.shape, t_star), mu)
    dpdz = np.diff(p_at_star) / np.diff(zf_fan)
    mids = 0.5 * (zf_fan[:-1] + zf_fan[1:])
    kinds += ["dpdz"] * mids.size
    params += list(mids)
    ts.append(np.full(mids.shape, t_star))
    values.append(dpdz)

    prov = {
        "artifact_version": __version__,
        "command": "trajectories",
        "mu_au": _num(mu),
        "t_star_au": _num(t_star),
        "tmax_au": _num(t_grid[-1]),
        "p_fan_au": ",".join(_num(p) for p in p_fan),
        "zf_fan_au": ",".join(_num(z) for z in zf_fan),
    }
    return Dataset(
        name="trajectories",
        provenance=prov,
        columns={
            "kind": np.array(kinds),
            "param_au": np.array(params, dtype=float),
            "t_au": np.concatenate(ts),
            "value_au": np.concatenate(values),
        },
    )


def _cell(v):
    if isinstance(v, (np.floating, float)):
        return f"{v:.8e}"
    if isinstance(v, (np.integer, int)):
        return str(int(v))
    return str(v)


def to_csv_text(dataset):
    """Provenance comment lines, a header row, then 9-digit rows."""
    lines = [f"# {k}={v}" for k, v in dataset.provenance.items()]
    names = list(dataset.columns)
    lines.append(",".join(names))
    cols = [np.asarray(dataset.columns[k]) for k in names]
    length = cols[0].shape[0]
    for c in cols:
        if c.shape[0] != length:
            raise DomainError("dataset columns must share one length")
    for i in range(length):
        lines.append(",".join(_cell(c[i]) for c in cols))
    return "\n".join(lines) + "\n"


def to_json_obj(dataset):
    """JSON mirror of the CSV: same column names, nan becomes null."""
    cols = {}
    for k, v in dataset.columns.items():
        a = np.asarray(v)
        if a.dtype.kind == "f":
            cols[k] = [None if np.isnan(x) else float(x) for x in a]
        elif a.dtype.kind in "iub":
            cols[k] = [int(x) for x in a]
        else:
            cols[k] = [str(x) for x in a]
    return {"name": dataset.name, "provenance": dict(dataset.provenance),
            "columns": cols}


def write_dataset(dataset, path, fmt="csv"):
    """Serialize to path; fmt is csv or json."""
    if fmt == "csv":
        text = to_csv_text(dataset)
    elif fmt == "json":
        text = json.dumps(to_json_obj(dataset), indent=2) + "\n"
    else:
        raise DomainError(f"unknown output format {fmt!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
