"""Command-line front end.

Subcommands: ``table`` (closed-form family table with matrix-pipeline
cross-check), ``profile`` (full correlation profile of a named family or a
state file), ``scaling`` (closed-form weaving sweeps over system size),
``check`` (randomized property suite).

All numeric output is in bits, rounded to 12 significant digits before
serialization so JSON and CSV reports parse back bit-exactly.  Exit codes:
0 success, 2 argument error, 3 capacity error, 4 numeric/consistency
error, 5 property-suite failure.
"""

from __future__ import annotations

import functools
import io
import json
import math
import os
import sys
from csv import writer as csv_writer
from pathlib import Path

import click

from . import __version__
from .closed_forms import (CF_FAMILIES, ClosedFormFamily, cf_dist, cf_genuine,
                           cf_scaling_sweep, cf_weaving)
from .correlations import (SubsetEntropyCache, WeightScheme, neural_complexity,
                           profile, weaving)
from .errors import (ArgumentError, CapacityError, CorrweaveError,
                     StateFileError)
from .partitions import DEFAULT_ENUM_CAP
from .properties import run_property_suite
from .states import (StateFamily, make_bell_product, make_classical,
                     make_classical_pair_product, make_dicke, make_ghz)
from .tensor import DensityState

#: Disagreement between closed-form and matrix values that flags a table row.
AGREE_TOL = 1e-8
#: Largest N the table command will cross-check with the matrix pipeline.
MATRIX_N_CAP = 8

_EXIT_BY_ERROR = ((CapacityError, 3), (ArgumentError, 2), (CorrweaveError, 4))


def _handle_errors(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except CorrweaveError as exc:
            for cls, code in _EXIT_BY_ERROR:
                if isinstance(exc, cls):
                    click.echo(f"error: {exc}", err=True)
                    sys.exit(code)
            raise
    return wrapper


# -- numeric formatting --------------------------------------------------


def _round12(x: float) -> float:
    """Round to 12 significant digits; the result reprints exactly."""
    return float(format(float(x), ".12g"))


def _round_floats(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return _round12(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _cell(value, seps=(";", "|", ",")):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".12g")
    if isinstance(value, (list, tuple)):
        return seps[0].join(_cell(v, seps[1:]) for v in value)
    return str(value)


def _emit(doc, rows, fields, output):
    """Print the report: ``doc`` as JSON, or ``rows``/``fields`` as CSV."""
    if output == "json":
        click.echo(json.dumps(_round_floats(doc), indent=2))
        return
    buf = io.StringIO()
    w = csv_writer(buf, lineterminator="\n")
    w.writerow(fields)
    for row in rows:
        w.writerow([_cell(_round_floats(row.get(f))) for f in fields])
    click.echo(buf.getvalue(), nl=False)


# -- weight schemes ------------------------------------------------------


def _scheme(spec: str, n: int) -> WeightScheme:
    if spec == "k-1":
        return WeightScheme.order_weighted(n)
    if spec == "uniform":
        return WeightScheme.uniform(n)
    if spec.startswith("delta:"):
        try:
            k = int(spec.split(":", 1)[1])
        except ValueError:
            raise ArgumentError(f"bad delta weights {spec!r}; use delta:K") from None
        return WeightScheme.delta(n, k)
    if spec.startswith("file:"):
        return _scheme_from_file(spec, n)
    raise ArgumentError(
        f"unknown weights {spec!r}; use k-1, uniform, delta:K, or file:PATH")


def _scheme_from_file(spec: str, n: int) -> WeightScheme:
    path = spec.split(":", 1)[1]
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ArgumentError(f"cannot read weights file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ArgumentError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict) or len(doc.keys() & {"omega", "big-omega"}) != 1:
        raise ArgumentError(
            f"weights file {path} must hold exactly one of 'omega' or 'big-omega'")
    key = "omega" if "omega" in doc else "big-omega"
    values = doc[key]
    if (not isinstance(values, list)
            or not all(isinstance(v, (int, float)) for v in values)):
        raise ArgumentError(f"weights file {path}: {key} must be a list of numbers")
    if len(values) != n - 1:
        raise ArgumentError(
            f"weights file {path}: {key} has {len(values)} entries, need {n - 1}")
    builder = (WeightScheme.from_omega if key == "omega"
               else WeightScheme.from_big_omega)
    return builder(values, name=spec)


# -- state files ---------------------------------------------------------


def load_state_file(path: str) -> DensityState:
    """Parse a UTF-8 JSON state file: {dims, kind, payload}."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StateFileError(f"cannot read state file {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise StateFileError(f"{path}: top level must be a JSON object")
    for key in ("dims", "kind", "payload"):
        if key not in doc:
            raise StateFileError(f"{path}: missing field {key!r}")
    dims = doc["dims"]
    if (not isinstance(dims, list) or not dims
            or not all(isinstance(d, int) and d >= 2 for d in dims)):
        raise StateFileError(f"{path}: field 'dims' must be a list of integers >= 2")
    kind = doc["kind"]
    if kind not in ("pure", "mixed", "classical"):
        raise StateFileError(
            f"{path}: field 'kind' must be pure, mixed, or classical, got {kind!r}")
    try:
        if kind == "pure":
            amps = _parse_complex_vector(doc["payload"], math.prod(dims), path)
            return DensityState.from_amplitudes(amps, dims)
        if kind == "mixed":
            rows = doc["payload"]
            dim = math.prod(dims)
            if not isinstance(rows, list) or len(rows) != dim:
                raise StateFileError(
                    f"{path}: field 'payload' must be a {dim}x{dim} matrix")
            matrix = [_parse_complex_vector(row, dim, path, field=f"payload[{i}]")
                      for i, row in enumerate(rows)]
            return DensityState.from_matrix(matrix, dims)
        return DensityState.from_probabilities(
            _parse_prob_table(doc["payload"], dims, path), dims)
    except StateFileError:
        raise
    except ArgumentError as exc:
        raise StateFileError(f"{path}: field 'payload': {exc}") from None


def _parse_complex_vector(entries, length, path, field="payload"):
    if not isinstance(entries, list) or len(entries) != length:
        raise StateFileError(f"{path}: field {field!r} must list {length} [re, im] pairs")
    out = []
    for i, pair in enumerate(entries):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, (int, float)) for v in pair)):
            raise StateFileError(
                f"{path}: field {field!r} entry {i} must be an [re, im] pair")
        out.append(complex(pair[0], pair[1]))
    return out


def _parse_prob_table(payload, dims, path):
    if not isinstance(payload, dict):
        raise StateFileError(
            f"{path}: field 'payload' must map digit strings to probabilities")
    if any(d > 10 for d in dims):
        raise StateFileError(
            f"{path}: digit-string keys support local dimensions up to 10")
    table = {}
    for key, p in payload.items():
        if (len(key) != len(dims) or not key.isdigit()
                or any(int(c) >= d for c, d in zip(key, dims))):
            raise StateFileError(
                f"{path}: field 'payload' key {key!r} is not a valid digit "
                f"string for dims {dims}")
        if not isinstance(p, (int, float)):
            raise StateFileError(
                f"{path}: field 'payload' value for {key!r} must be a number")
        table[tuple(int(c) for c in key)] = float(p)
    return table


def save_state_file(state: DensityState, path: str) -> None:
    """Write a state file that :func:`load_state_file` parses back."""
    dims = list(state.dims)
    if state.rep == "pure":
        amps = state.amplitudes()
        doc = {"dims": dims, "kind": "pure",
               "payload": [[z.real, z.imag] for z in amps]}
    elif state.rep == "classical":
        if any(d > 10 for d in dims):
            raise ArgumentError("digit-string keys support local dimensions up to 10")
        doc = {"dims": dims, "kind": "classical",
               "payload": {"".join(map(str, k)): p
                           for k, p in sorted(state.probabilities().items())}}
    else:
        m = state.to_matrix()
        doc = {"dims": dims, "kind": "mixed",
               "payload": [[[z.real, z.imag] for z in row] for row in m]}
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


# -- commands ------------------------------------------------------------


@click.group()
@click.version_option(__version__, prog_name="corrweave")
def main():
    """Correlation orders, weaving index, and closed-form family tables."""


_TABLE_FAMILIES = ("classical-pair-product", "classical", "bell-product",
                   "ghz", "dicke-1", "dicke-half", "qudit-classical",
                   "qudit-bell-product")
_EVEN_ONLY = {"classical-pair-product", "bell-product", "dicke-half",
              "qudit-bell-product"}


def _table_state(family: str, n: int, d: int) -> DensityState:
    if family == "classical-pair-product":
        return make_classical_pair_product(n)
    if family == "classical":
        return make_classical(n, 2)
    if family == "bell-product":
        return make_bell_product(n, 2)
    if family == "ghz":
        return make_ghz(n, 2)
    if family == "dicke-1":
        return make_dicke(n, 1)
    if family == "dicke-half":
        return make_dicke(n, n // 2)
    if family == "qudit-classical":
        return make_classical(n, d)
    return make_bell_product(n, d)


@main.command("table")
@click.option("--n", required=True, type=int, help="Number of parties.")
@click.option("--d", default=2, show_default=True, type=int,
              help="Local dimension of the qudit rows.")
@click.option("--weights", default="k-1", show_default=True)
@click.option("--parallel", default=1, show_default=True, type=int)
@click.option("--closed-form-only", is_flag=True,
              help="Skip the matrix-pipeline cross-check (any N).")
@click.option("--output", default="json", show_default=True,
              type=click.Choice(["json", "csv"]))
@_handle_errors
def cmd_table(n, d, weights, parallel, closed_form_only, output):
    """One row per named family: dist/genuine per order, total, weaving.

    Every row is a closed form; for N up to 8 each value is recomputed by
    the brute-force matrix pipeline and disagreements beyond 1e-8 are
    flagged in the 'agree' column.
    """
    if n < 2:
        raise ArgumentError(f"table needs n >= 2, got {n}")
    if n > MATRIX_N_CAP and not closed_form_only:
        raise CapacityError(
            f"matrix cross-check is capped at N={MATRIX_N_CAP}; "
            "pass --closed-form-only for larger N")
    scheme = _scheme(weights, n)
    workers = parallel if parallel > 1 else None
    rows = []
    for family in _TABLE_FAMILIES:
        if n % 2 and family in _EVEN_ONLY:
            continue
        d_eff = d if family.startswith("qudit") else 2
        fam = ClosedFormFamily(family, n, d=d_eff)
        dist = [cf_dist(fam, k) for k in range(1, n + 1)]
        genuine = [cf_genuine(fam, k) for k in range(2, n + 1)]
        row = {"family": family, "N": n, "d": d_eff, "dist": dist,
               "genuine": genuine, "total": dist[0],
               "weaving": cf_weaving(fam, scheme), "weights": scheme.name,
               "mode": "closed-form", "matrix_max_dev": None, "agree": None,
               "units": "bits", "version": __version__}
        if not closed_form_only:
            state = _table_state(family, n, d_eff)
            prof = profile(state, mode="brute", workers=workers)
            dev = max(
                max(abs(a - b) for a, b in zip(dist, prof.dist)),
                max(abs(a - b) for a, b in zip(genuine, prof.genuine)),
                abs(dist[0] - prof.total),
                abs(row["weaving"] - weaving(prof, scheme)))
            row["mode"] = "closed-form+brute"
            row["matrix_max_dev"] = dev
            row["agree"] = dev <= AGREE_TOL
        rows.append(row)
    fields = ["family", "N", "d", "dist", "genuine", "total", "weaving",
              "weights", "mode", "matrix_max_dev", "agree", "units", "version"]
    _emit(rows, rows, fields, output)


@main.command("profile")
@click.option("--state", "state_spec", required=True,
              help="Family spec (e.g. ghz:4, dicke:4:2) or a JSON state file.")
@click.option("--weights", default="k-1", show_default=True)
@click.option("--mode", default="auto", show_default=True,
              type=click.Choice(["auto", "brute", "fast"]))
@click.option("--parallel", default=1, show_default=True, type=int)
@click.option("--output", default="json", show_default=True,
              type=click.Choice(["json", "csv"]))
@_handle_errors
def cmd_profile(state_spec, weights, mode, parallel, output):
    """Correlation profile of one state: distances and genuine correlations
    per order, total, weaving, neural complexity, minimizing partitions."""
    if os.path.exists(state_spec):
        label_key, label = "file", state_spec
        state = load_state_file(state_spec)
    else:
        label_key = "family"
        family = StateFamily.parse(state_spec)
        label = family.label()
        state = family.build()
    n = state.n_parties
    workers = parallel if parallel > 1 else None
    cache = SubsetEntropyCache(state)
    prof = profile(state, mode=mode, cache=cache, workers=workers)
    if n >= 2:
        scheme = _scheme(weights, n)
        weave = weaving(prof, scheme)
        scheme_name = scheme.name
    else:
        weave, scheme_name = 0.0, weights
    neural = (neural_complexity(state, cache, workers=workers)
              if n <= DEFAULT_ENUM_CAP else None)
    dims = list(state.dims)
    row = {label_key: label, "N": n,
           "d": dims[0] if len(set(dims)) == 1 else None, "dims": dims,
           "dist": list(prof.dist), "genuine": list(prof.genuine),
           "total": prof.total, "weaving": weave, "neural_complexity": neural,
           "argmin": [[list(b) for b in p.blocks] for p in prof.argmin],
           "weights": scheme_name, "mode": prof.mode,
           "units": "bits", "version": __version__}
    fields = [label_key, "N", "d", "dims", "dist", "genuine", "total",
              "weaving", "neural_complexity", "argmin", "weights", "mode",
              "units", "version"]
    _emit(row, [row], fields, output)


@main.command("scaling")
@click.option("--family", required=True, type=click.Choice(CF_FAMILIES))
@click.option("--n-min", default=8, show_default=True, type=int)
@click.option("--n-max", default=4096, show_default=True, type=int)
@click.option("--d", default=2, show_default=True, type=int)
@click.option("--a", default=None, type=float,
              help="Amplitude for the a-family.")
@click.option("--weights", default="k-1", show_default=True,
              help="Named scheme only (k-1, uniform, delta:K).")
@click.option("--output", default="json", show_default=True,
              type=click.Choice(["json", "csv"]))
@_handle_errors
def cmd_scaling(family, n_min, n_max, d, a, weights, output):
    """Closed-form weaving index across system sizes (N doubling from
    --n-min to --n-max), with the family's natural normalization."""
    if n_min < 2 or n_max < n_min:
        raise ArgumentError(f"need 2 <= n-min <= n-max, got {n_min}..{n_max}")
    if weights.startswith("file:"):
        raise ArgumentError("scaling sweeps accept named weight schemes only")
    n_values = []
    n = n_min
    while n <= n_max:
        n_values.append(n)
        n *= 2
    points = cf_scaling_sweep(family, n_values, d=d, a=a, weights=weights)
    rows = [{"family": family, "N": p.n, "weaving": p.weaving,
             "normalization": p.normalization, "coefficient": p.coefficient,
             "weights": weights, "units": "bits", "version": __version__}
            for p in points]
    fields = ["family", "N", "weaving", "normalization", "coefficient",
              "weights", "units", "version"]
    _emit(rows, rows, fields, output)


@main.command("check")
@click.option("--seed", default=1234, show_default=True, type=int)
@click.option("--trials", default=200, show_default=True, type=int,
              help="Trials per property.")
@click.option("--output", default="json", show_default=True,
              type=click.Choice(["json", "csv"]))
@_handle_errors
def cmd_check(seed, trials, output):
    """Randomized property suite; exit status 5 if any property fails."""
    if trials < 1:
        raise ArgumentError(f"need at least 1 trial, got {trials}")
    results = run_property_suite(seed, trials)
    rows = [{"property": r.name, "trials": r.trials,
             "worst_margin": r.worst_margin, "tolerance": r.tolerance,
             "passed": r.passed, "seed": seed, "units": "bits",
             "version": __version__}
            for r in results]
    doc = {"seed": seed, "trials": trials,
           "passed": all(r.passed for r in results), "properties": rows,
           "units": "bits", "version": __version__}
    fields = ["property", "trials", "worst_margin", "tolerance", "passed",
              "seed", "units", "version"]
    _emit(doc, rows, fields, output)
    if not doc["passed"]:
        sys.exit(5)


if __name__ == "__main__":
    main()
