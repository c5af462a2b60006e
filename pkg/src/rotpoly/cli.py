"""Command-line front end.

A thin client over the same pydantic request models the HTTP service
consumes; every subcommand builds a request, runs the pipeline in-process,
and emits a canonical JSON or CSV artifact.

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 IO error.
"""
from __future__ import annotations

import json
import sys

import click

from . import api
from .emit import to_csv, to_json, write_artifact
from .errors import DegenerateMeasure, InputError
from .factorize import DETECT_TOL
from .orthosystem import DEFAULT_TOL

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_IO_ERROR = 3


def _measure_descriptor(measure, sigma, radius, q, c, measure_file) -> dict:
    if measure_file is not None:
        try:
            with open(measure_file, encoding="utf-8") as fh:
                return json.load(fh)
        except OSError as exc:
            _fail_io(exc)
        except json.JSONDecodeError as exc:
            _fail_input("BadMeasureFile", f"cannot parse {measure_file}: {exc}")
    if measure is None:
        _fail_input("MissingMeasure", "provide --measure or --measure-file")
    descriptor = {"kind": measure}
    for name, value in (("sigma", sigma), ("radius", radius), ("q", q), ("c", c)):
        if value is not None:
            descriptor[name] = value
    return descriptor


def _fail_input(kind: str, message: str, **detail):
    sys.stderr.write(to_json({"error": kind, "message": message, **detail}))
    sys.exit(EXIT_INPUT_ERROR)


def _fail_io(exc: OSError):
    sys.stderr.write(to_json({"error": "IOError", "message": str(exc)}))
    sys.exit(EXIT_IO_ERROR)


def _emit(report: dict, output_format: str, out: str | None) -> None:
    text = to_csv(report) if output_format == "csv" else to_json(report)
    try:
        write_artifact(text, out)
    except OSError as exc:
        _fail_io(exc)


def _run(fn, *args, **kwargs) -> dict:
    try:
        return fn(*args, **kwargs)
    except DegenerateMeasure as exc:
        _fail_input(type(exc).__name__, str(exc), sector=exc.d, size=exc.s)
    except InputError as exc:
        _fail_input(type(exc).__name__, str(exc))


def _finish(report: dict, output_format: str, out: str | None) -> None:
    _emit(report, output_format, out)
    if report.get("passed") is False:
        sys.exit(EXIT_VERIFY_FAILED)
    sys.exit(EXIT_OK)


measure_options = [
    click.option(
        "--measure",
        type=click.Choice(
            ["gaussian", "uniform-disc", "unit-circle", "explicit", "from-closed-form"]
        ),
        default=None,
        help="Measure family (or use --measure-file).",
    ),
    click.option("--sigma", default=None, help="Gaussian width, e.g. 1 or 3/2."),
    click.option("--radius", default=None, help="Disc radius."),
    click.option("--q", "q_param", default=None, help="Closed-form deformation q."),
    click.option("--c", "c_param", default=None, help="Closed-form scale c."),
    click.option(
        "--measure-file",
        type=click.Path(),
        default=None,
        help="JSON measure descriptor file.",
    ),
]

output_options = [
    click.option(
        "--arith",
        type=click.Choice(["auto", "exact", "float"]),
        default="auto",
        show_default=True,
        help="Arithmetic mode; auto picks exact when all inputs are rational.",
    ),
    click.option(
        "--format",
        "output_format",
        type=click.Choice(["json", "csv"]),
        default="json",
        show_default=True,
    ),
    click.option("--out", type=click.Path(), default=None, help="Output path."),
]


def add_options(options):
    def wrap(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn

    return wrap


@click.group()
def main():
    """Orthonormal polynomials, recurrence coefficients, and ladder
    operators of rotation-invariant planar measures."""


@main.command()
@add_options(measure_options)
@click.option("-N", "n", default=8, show_default=True, help="Highest moment index.")
@add_options(output_options)
def moments(measure, sigma, radius, q_param, c_param, measure_file, n, arith, output_format, out):
    """Emit the radial moment table m_0..m_N."""
    descriptor = _measure_descriptor(measure, sigma, radius, q_param, c_param, measure_file)
    report = _run(api.run_moments, descriptor, n, arith)
    _finish(report, output_format, out)


@main.command()
@add_options(measure_options)
@click.option("-N", "n", default=8, show_default=True, help="Max total degree.")
@add_options(output_options)
def alphas(measure, sigma, radius, q_param, c_param, measure_file, n, arith, output_format, out):
    """Emit the recurrence coefficient table alpha_(k,l)."""
    descriptor = _measure_descriptor(measure, sigma, radius, q_param, c_param, measure_file)
    report = _run(api.run_alphas, descriptor, n, arith)
    _finish(report, output_format, out)


@main.command()
@add_options(measure_options)
@click.option("-N", "n", default=8, show_default=True, help="Max total degree.")
@click.option("-M", "m", default=8, show_default=True, help="Ladder grid cutoff.")
@click.option("--tol", default=DEFAULT_TOL, show_default=True, help="Tolerance.")
@add_options(output_options)
def verify(measure, sigma, radius, q_param, c_param, measure_file, n, m, tol, arith, output_format, out):
    """Run every identity check; exit 0 iff all pass."""
    descriptor = _measure_descriptor(measure, sigma, radius, q_param, c_param, measure_file)
    report = _run(api.run_verify, descriptor, n, m, tol, arith)
    _finish(report, output_format, out)


@main.command()
@add_options(measure_options)
@click.option("-N", "n", default=8, show_default=True, help="Max total degree.")
@click.option("--tol", default=DETECT_TOL, show_default=True, help="Log-domain rank-1 tolerance.")
@add_options(output_options)
def factorize(measure, sigma, radius, q_param, c_param, measure_file, n, tol, arith, output_format, out):
    """Detect the factorized case alpha_(k,l) = f_k q^l and fit (q, c)."""
    descriptor = _measure_descriptor(measure, sigma, radius, q_param, c_param, measure_file)
    report = _run(api.run_factorize, descriptor, n, tol, arith)
    _finish(report, output_format, out)


@main.command()
@click.option("--q", "q_param", default="1/2", show_default=True)
@click.option("--c", "c_param", default="1", show_default=True)
@click.option("-M", "m", default=8, show_default=True, help="Grid cutoff.")
@click.option("--tol", default=DEFAULT_TOL, show_default=True)
@add_options(output_options)
def ladder(q_param, c_param, m, tol, arith, output_format, out):
    """Build the closed-form ladder rep and verify the q-algebra."""
    report = _run(api.run_ladder, q_param, c_param, m, tol, arith)
    _finish(report, output_format, out)


@main.command()
@click.option("--q", "q_param", default="1/2", show_default=True)
@click.option("--c", "c_param", default="1", show_default=True)
@click.option("-N", "n", default=8, show_default=True)
@click.option("--tol", default=1e-9, show_default=True)
@add_options(output_options)
def roundtrip(q_param, c_param, n, tol, arith, output_format, out):
    """Closed form -> ladder -> moments -> Gram-Schmidt -> alphas closure."""
    report = _run(api.run_roundtrip, q_param, c_param, n, tol, arith)
    _finish(report, output_format, out)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
