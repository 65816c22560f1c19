"""Command-line front end: JSON/CSV emission for all analyses.

Commands: measures, scan, thresholds, sample-mems, werner-map. States are
given as text specs: ``bell:singlet``, ``werner:p=0.8``,
``mems:p1=0.6,p2=0.2,p3=0.15,p4=0.05`` or ``file:path/to/state.json``.
Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from . import sampling, states, thresholds
from .errors import QnlError
from .measures import classify
from .channels import FAMILIES

EXIT_NUMERICAL = 3

_CHANNEL_CHOICE = click.Choice(sorted(FAMILIES))


def _fail_usage(message: str) -> None:
    raise click.UsageError(message)


def parse_state_spec(text: str) -> states.DensityMatrix:
    """Parse a state spec string into a validated DensityMatrix."""
    kind, sep, rest = text.partition(":")
    if not sep:
        _fail_usage(f"malformed state spec {text!r}; expected '<kind>:<args>'")
    try:
        if kind == "bell":
            if rest != "singlet":
                _fail_usage(f"unknown bell state {rest!r}; only 'singlet' exists")
            return states.bell_singlet()
        if kind == "werner":
            key, _, value = rest.partition("=")
            if key != "p" or not value:
                _fail_usage("werner spec must look like 'werner:p=0.8'")
            return states.werner(float(value))
        if kind == "mems":
            parts = dict(item.split("=", 1) for item in rest.split(","))
            if sorted(parts) != ["p1", "p2", "p3", "p4"]:
                _fail_usage("mems spec must name p1..p4, e.g. 'mems:p1=0.6,p2=0.2,p3=0.15,p4=0.05'")
            w = states.MemsWeights(*(float(parts[k]) for k in ("p1", "p2", "p3", "p4")))
            return states.mems(w)
        if kind == "file":
            return states.load_state(rest)
        _fail_usage(f"unknown state kind {kind!r}; use bell, werner, mems or file")
    except click.UsageError:
        raise
    except (QnlError, ValueError, OSError, json.JSONDecodeError) as exc:
        _fail_usage(f"invalid state spec {text!r}: {exc}")
    raise AssertionError("unreachable")


def _sig12(x: float) -> float:
    """Round to 12 significant digits for stable, plot-ready output."""
    return float(format(x, ".12g"))


def _echo_json(payload: dict) -> None:
    click.echo(json.dumps(payload))


@click.group()
def main() -> None:
    """Nonlocal-correlation toolbox for two-qubit states in noisy channels."""


@main.command("measures")
@click.option("--state", "spec", required=True, help="State spec, e.g. bell:singlet.")
def cmd_measures(spec: str) -> None:
    """Print concurrence, fidelity, N and Bell parameter of a state as JSON."""
    rho = parse_state_spec(spec)
    try:
        report = classify(rho)
    except QnlError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    _echo_json(
        {
            "concurrence": _sig12(report.concurrence),
            "fidelity": _sig12(report.fidelity),
            "n_value": _sig12(report.n_value),
            "bell": _sig12(report.bell),
            "class": report.hierarchy_class.value,
        }
    )


@main.command("scan")
@click.option("--state", "spec", required=True, help="State spec.")
@click.option("--channel", default="amplitude-damping", type=_CHANNEL_CHOICE,
              show_default=True)
@click.option("--qmin", default=0.0, show_default=True)
@click.option("--qmax", default=1.0, show_default=True)
@click.option("--steps", default=101, show_default=True)
def cmd_scan(spec: str, channel: str, qmin: float, qmax: float, steps: int) -> None:
    """Print a q,concurrence,fidelity,bell CSV over an equally spaced grid."""
    rho = parse_state_spec(spec)
    if steps < 2:
        _fail_usage(f"steps must be >= 2, got {steps}")
    if not (0.0 <= qmin < qmax <= 1.0):
        _fail_usage(f"need 0 <= qmin < qmax <= 1, got qmin={qmin}, qmax={qmax}")
    grid = np.linspace(qmin, qmax, steps)
    try:
        table = thresholds.scan(rho, channel, grid)
    except QnlError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    lines = ["q,concurrence,fidelity,bell"]
    for q, c, f, b in table:
        lines.append(",".join(format(v, ".12g") for v in (q, c, f, b)))
    click.echo("\n".join(lines))


@main.command("thresholds")
@click.option("--state", "spec", required=True, help="State spec.")
@click.option("--channel", default="amplitude-damping", type=_CHANNEL_CHOICE,
              show_default=True)
@click.option("--tol", default=1e-9, show_default=True)
def cmd_thresholds(spec: str, channel: str, tol: float) -> None:
    """Print the critical strengths q_G, q_B, q_F, q_C of a state as JSON."""
    rho = parse_state_spec(spec)
    if not 0.0 < tol <= 1e-3:
        _fail_usage(f"tol must lie in (0, 1e-3], got {tol}")
    try:
        ts = thresholds.threshold_set(rho, channel, tol)
    except QnlError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    payload = {
        key: (None if value is None else _sig12(value))
        for key, value in ts.as_dict().items()
    }
    payload["hierarchy_ok"] = thresholds.hierarchy_check(ts)
    _echo_json(payload)


@main.command("sample-mems")
@click.option("--n", default=1000, show_default=True, help="Number of accepted states.")
@click.option("--seed", default=0, show_default=True)
@click.option("--channel", default="amplitude-damping", type=_CHANNEL_CHOICE,
              show_default=True)
@click.option("--tol", default=1e-6, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True))
def cmd_sample_mems(n: int, seed: int, channel: str, tol: float, out: str) -> None:
    """Run the seeded hierarchy experiment and write its CSV."""
    if n < 1:
        _fail_usage(f"--n must be >= 1, got {n}")
    if not 0.0 < tol <= 1e-3:
        _fail_usage(f"tol must lie in (0, 1e-3], got {tol}")
    cfg = sampling.SamplerConfig(n_states=n, seed=seed, channel=channel, tol=tol)
    try:
        records = sampling.hierarchy_experiment(cfg)
        with open(out, "w", encoding="utf-8", newline="") as fh:
            sampling.write_records_csv(records, fh)
    except OSError as exc:
        _fail_usage(f"cannot write {out!r}: {exc}")
    except QnlError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    ok = sum(thresholds.hierarchy_check(rec.thresholds) for rec in records)
    click.echo(f"wrote {len(records)} records to {out}; {ok} satisfy the hierarchy")


@main.command("werner-map")
@click.option("--grid", default=101, show_default=True, help="Lattice points per axis.")
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True))
def cmd_werner_map(grid: int, out: str) -> None:
    """Write the p,q,region CSV of the Werner amplitude-damping phase map."""
    if grid < 2:
        _fail_usage(f"--grid must be >= 2, got {grid}")
    axis = np.linspace(0.0, 1.0, grid)
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write("p,q,region\n")
            for p in axis:
                for q in axis:
                    region = thresholds.werner_region(p, q)
                    fh.write(f"{p:.12g},{q:.12g},{region}\n")
    except OSError as exc:
        _fail_usage(f"cannot write {out!r}: {exc}")
    click.echo(f"wrote {grid * grid} rows to {out}")


if __name__ == "__main__":
    main()
