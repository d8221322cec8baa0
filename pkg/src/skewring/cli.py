"""Command line client over the analysis handlers.

Exit codes: 0 valid/complete, 1 invalid input, 2 two independent engines
disagreed on a cross-check (a bug signal, never silent), 3 a cap was exceeded where a
verdict was mandatory.
"""

import json
import sys

import click

from . import handlers
from .render import render_text


def _emit(report, code, as_json):
    if as_json:
        click.echo(json.dumps(report, sort_keys=True, indent=2))
    else:
        click.echo(render_text(report))
    sys.exit(code)


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh), None
    except json.JSONDecodeError as e:
        return None, {
            "command": "parse",
            "valid": False,
            "diagnostic": {
                "axiom": "parse",
                "witness": {"line": e.lineno, "column": e.colno},
                "message": f"invalid JSON: {e.msg}",
            },
        }


@click.group()
def main():
    """Skew inverse semigroup rings and groupoid convolution algebras."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def verify(file, as_json):
    """Validate a semigroup, action, or groupoid description."""
    obj, err = _load(file)
    if err is not None:
        _emit(err, handlers.INVALID_INPUT, as_json)
    report, code = handlers.run_verify(obj)
    _emit(report, code, as_json)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--carrier", default="gf:2", show_default=True,
              help="scalar carrier: gf:p, q, or zmod:n")
@click.option("--bruteforce-cap", default=14, show_default=True,
              help="max quotient dimension for exhaustive ideal enumeration")
@click.option("--bisection-cap", default=16, show_default=True,
              help="max arrow count for full bisection enumeration")
@click.option("--window", default=None, type=int,
              help="expected window of an omega_plus input (checked, not applied)")
@click.option("--seed", default=0, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def analyze(file, carrier, bruteforce_cap, bisection_cap, window, seed, as_json):
    """Run the full verdict stack on a semigroup, action, or groupoid."""
    obj, err = _load(file)
    if err is not None:
        _emit(err, handlers.INVALID_INPUT, as_json)
    if window is not None:
        declared = (obj.get("space") or {}).get("window") if isinstance(obj, dict) else None
        if declared != window:
            _emit(
                {
                    "command": "analyze",
                    "valid": False,
                    "diagnostic": {
                        "axiom": "window",
                        "witness": {"requested": window, "declared": declared},
                        "message": "the window is part of the model; regenerate the "
                        "input (or the gallery entry) at the desired window",
                    },
                },
                handlers.INVALID_INPUT,
                as_json,
            )
    report, code = handlers.run_analyze(
        obj,
        carrier_name=carrier,
        bruteforce_cap=bruteforce_cap,
        bisection_cap=bisection_cap,
        seed=seed,
    )
    _emit(report, code, as_json)


@main.command()
@click.argument("name")
@click.option("--carrier", default="gf:2", show_default=True)
@click.option("--window", default=4, show_default=True,
              help="window for the countable example")
@click.option("--bruteforce-cap", default=14, show_default=True)
@click.option("--bisection-cap", default=16, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def gallery(name, carrier, window, bruteforce_cap, bisection_cap, seed, as_json):
    """Regenerate a named built-in example and analyze it."""
    report, code = handlers.run_gallery(
        name,
        carrier_name=carrier,
        window=window,
        bruteforce_cap=bruteforce_cap,
        bisection_cap=bisection_cap,
        seed=seed,
    )
    _emit(report, code, as_json)


@main.command()
@click.option("--n", "count", default=12, show_default=True,
              help="number of generated instances")
@click.option("--seed", default=0, show_default=True)
@click.option("--bruteforce-cap", default=14, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def corpus(count, seed, bruteforce_cap, as_json):
    """Generate random valid actions and run the property suite."""
    report, code = handlers.run_corpus(count, seed, bruteforce_cap=bruteforce_cap)
    _emit(report, code, as_json)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("skewring.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
