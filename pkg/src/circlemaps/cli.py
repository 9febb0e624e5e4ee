"""Command-line front end.

Every subcommand prints one report on stdout: a JSON document carrying
``schema_version`` or a CSV table with a fixed header. Floats are written
with 17 significant digits. Validation failures exit with status 2.
"""

from __future__ import annotations

import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import click
import numpy as np

from .approximation import (
    CircleClassSpec,
    approximate_lift,
    class_lift,
    sup_error,
)
from .circle_core import CircleMap, CirclePoint, GridFunction, SampledMap, eval_map, lift_expr, power, rotation
from .errors import CircleMapError, SchemaError
from .lifting import ALIAS_TOL, DEFAULT_N, LIFT_GAP_TOL, WINDING_TOL, integer_gap, lift, winding_number
from .metric import d0, d1, phi_inv
from .sw_constraints import BACKENDS, ConstraintSpec, k_point_correct

SCHEMA_VERSION = 1
GRID_ENV = "CIRCLEMAP_GRID_N"
CLASS_TOL = 1e-10


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    grid_n: int = DEFAULT_N
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.grid_n < 8:
            raise SchemaError(".grid_n", f"must be >= 8, got {self.grid_n}")
        if self.output_format not in ("json", "csv"):
            raise SchemaError(".output_format", "must be 'json' or 'csv'")


def fmt(x) -> str:
    s = format(float(x), ".17g")
    # keep floats distinguishable from integers in the output
    return s if any(c in s for c in ".en") else s + ".0"


def dumps(obj) -> str:
    """JSON text with every float written to 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise ValueError("non-finite value in report")
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) if isinstance(v, (int, np.integer)) else fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _number(spec, key, path, integer=False):
    if key not in spec:
        raise SchemaError(f"{path}.{key}", "missing")
    val = spec[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise SchemaError(f"{path}.{key}", f"expected a number, got {type(val).__name__}")
    if integer and not isinstance(val, int):
        raise SchemaError(f"{path}.{key}", "expected an integer")
    return val


def _number_list(spec, key, path):
    vals = spec.get(key, [])
    if not isinstance(vals, list):
        raise SchemaError(f"{path}.{key}", "expected a list of numbers")
    for i, v in enumerate(vals):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SchemaError(f"{path}.{key}[{i}]", "expected a number")
    return vals


def read_curve_csv(path: Path) -> SampledMap:
    """Load rows ``t,x,y`` (an optional header row is skipped)."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(".path", f"cannot read {path}: {exc.strerror}") from exc
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if lineno == 1 and parts == ["t", "x", "y"]:
            continue
        try:
            if len(parts) != 3:
                raise ValueError
            rows.append([float(p) for p in parts])
        except ValueError:
            raise SchemaError(f".path:{lineno}", f"expected 't,x,y', got {line!r}") from None
    if not rows:
        raise SchemaError(".path", f"{path} holds no samples")
    data = np.array(rows)
    return SampledMap(data[:, 0], data[:, 1:])


def write_curve_csv(path, f: SampledMap):
    rows = [(t, x, y) for t, (x, y) in zip(f.ts, f.points)]
    Path(path).write_text(csv_text(["t", "x", "y"], rows))


def parse_map_spec(text: str, base_dir: Path | None = None) -> CircleMap:
    """Build a circle map from its JSON description."""
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc.msg}") from exc
    if not isinstance(spec, dict):
        raise SchemaError("$", "expected a JSON object")
    kind = spec.get("kind")
    if kind == "power":
        return power(_number(spec, "n", "", integer=True))
    if kind == "rotation":
        return rotation(_number(spec, "theta", ""))
    if kind == "lift_expr":
        return lift_expr(
            _number_list(spec, "poly", "") or [0.0],
            _number_list(spec, "sin", ""),
            _number_list(spec, "cos", ""),
        )
    if kind == "sampled":
        p = spec.get("path")
        if not isinstance(p, str):
            raise SchemaError(".path", "expected a file path string")
        path = Path(p)
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        return read_curve_csv(path)
    raise SchemaError(".kind", f"expected one of power, rotation, lift_expr, sampled; got {kind!r}")


def load_map(arg: str) -> CircleMap:
    """``arg`` is inline JSON or a path to a JSON file."""
    if arg.lstrip().startswith("{"):
        return parse_map_spec(arg, Path.cwd())
    path = Path(arg)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError("$", f"cannot read map spec {arg!r}: {exc.strerror}") from exc
    return parse_map_spec(text, path.parent)


def parse_floats(text: str, what: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise SchemaError(f".{what}", f"expected comma-separated numbers, got {text!r}") from None


def class_spec_for(f: CircleMap, class_q: str | None, class_m: int | None, n: int) -> CircleClassSpec:
    """Class from the flags, defaulting to the map's own base value and winding."""
    if class_q is None:
        q = eval_map(f, 0.0)
    else:
        xy = parse_floats(class_q, "class_q")
        if len(xy) != 2:
            raise SchemaError(".class_q", "expected 'x,y'")
        q = CirclePoint(*xy)
    m = winding_number(f, n) if class_m is None else class_m
    return CircleClassSpec(q, m)


def _header(cfg: RunConfig) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": cfg.subcommand, "N": cfg.grid_n, "seed": cfg.seed}


def run_lift(cfg: RunConfig, f: CircleMap) -> str:
    lm = lift(f, cfg.grid_n)
    if cfg.output_format == "csv":
        return csv_text(["t", "value"], zip(lm.grid.nodes, lm.values))
    rep = _header(cfg)
    rep.update(start=lm.start, gap=lm.gap, tolerances={"alias": ALIAS_TOL, "lift_gap": LIFT_GAP_TOL})
    rep["values"] = lm.values
    return dumps(rep)


def run_winding(cfg: RunConfig, f: CircleMap) -> str:
    lm = lift(f, cfg.grid_n)
    m = integer_gap(lm.values)
    rep = _header(cfg)
    rep.update(
        winding=m,
        residual=abs(float(lm.values[-1] - lm.values[0]) - m),
        base_phase=lm.start,
        tolerances={"winding": WINDING_TOL},
    )
    return dumps(rep)


def run_dist(cfg: RunConfig, f: CircleMap, g: CircleMap) -> str:
    lf, lg = lift(f, cfg.grid_n), lift(g, cfg.grid_n)
    rep = _header(cfg)
    rep.update(
        d0=2.0 * math.pi * d1(lf, lg),
        lift_gap_f=lf.gap,
        lift_gap_g=lg.gap,
        base_phase_f=lf.start,
        base_phase_g=lg.start,
    )
    return dumps(rep)


def approx_row(f, spec, method, size, n):
    """(output map, sup error of the lift approximant, d0 error) for one size."""
    g = class_lift(f, spec, n)
    h = approximate_lift(g, spec.endpoints, method, size)
    out = phi_inv(GridFunction(h(g.nodes)))
    return out, sup_error(h, g), d0(f, out, n)


def run_approx(cfg: RunConfig, f, spec, method, size, emit_grid) -> str:
    out, err, d0_err = approx_row(f, spec, method, size, cfg.grid_n)
    m_out = winding_number(out, cfg.grid_n)
    base = out.points[0]
    rep = _header(cfg)
    rep.update(
        method=method,
        size=size,
        class_q=[spec.q.x, spec.q.y],
        class_m=spec.m,
        q_tilde=spec.q_tilde,
        winding=m_out,
        base_residual=float(math.hypot(base[0] - spec.q.x, base[1] - spec.q.y)),
        sup_error=err,
        d0_error=d0_err,
        tolerances={"class_base": CLASS_TOL},
    )
    if emit_grid:
        write_curve_csv(emit_grid, out)
        rep["grid_path"] = str(emit_grid)
    return dumps(rep)


def run_convergence(cfg: RunConfig, f, spec, method, sizes) -> str:
    rows = []
    for size in sizes:
        _, err, d0_err = approx_row(f, spec, method, size, cfg.grid_n)
        rows.append((size, err, d0_err))
    return csv_text(["size", "sup_error", "d0_error"], rows)


def run_swdemo(cfg: RunConfig, f, points, targets, size, backend_kind) -> str:
    backend = BACKENDS[backend_kind]
    g = lift(f, cfg.grid_n).grid
    if targets is None:
        targets = [g.at(x) for x in points]
    cons = ConstraintSpec(points, targets)
    ladder = []
    s = 16
    while s < size:
        ladder.append(s)
        s *= 2
    ladder.append(size)
    rows = []
    for s in ladder:
        h = k_point_correct(backend.approximate(g, s), cons)
        rows.append(
            {
                "size": s,
                "sup_error": sup_error(h, g),
                "max_residual": float(np.max(cons.residuals(h))),
            }
        )
    final = k_point_correct(backend.approximate(g, size), cons)
    rep = _header(cfg)
    rep.update(
        backend=backend.kind,
        size=size,
        points=list(cons.points),
        targets=list(cons.targets),
        residuals=cons.residuals(final),
        sup_error=sup_error(final, g),
        ladder=rows,
    )
    return dumps(rep)


def _env_grid():
    raw = os.environ.get(GRID_ENV)
    if not raw:
        return DEFAULT_N
    try:
        return int(raw)
    except ValueError:
        raise SchemaError(f"${GRID_ENV}", f"expected an integer, got {raw!r}") from None


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except CircleMapError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(2)


@click.group(cls=_Group)
@click.option("--grid-n", type=int, default=None, help=f"Grid intervals N (default ${GRID_ENV} or {DEFAULT_N}).")
@click.option("--format", "output_format", type=click.Choice(["json", "csv"]), default="json")
@click.option("--seed", type=int, default=0, show_default=True, help="Recorded in reports.")
@click.pass_context
def main(ctx, grid_n, output_format, seed):
    """Lifts, winding numbers, the d0 metric and class-preserving approximation of circle maps.

    MAP arguments are inline JSON such as '{"kind":"power","n":3}' or a path to a JSON file.
    """
    ctx.obj = {"grid_n": grid_n, "format": output_format, "seed": seed}


def _cfg(ctx, name) -> RunConfig:
    o = ctx.obj
    grid_n = o["grid_n"] if o["grid_n"] is not None else _env_grid()
    return RunConfig(name, grid_n, o["format"], o["seed"])


map_opt = click.option("--map", "map_arg", required=True, help="Map spec (JSON text or file).")


@main.command("lift")
@map_opt
@click.pass_context
def lift_cmd(ctx, map_arg):
    """Normalized lift of the map on the grid j/N."""
    click.echo(run_lift(_cfg(ctx, "lift"), load_map(map_arg)), nl=False if ctx.obj["format"] == "csv" else True)


@main.command("winding")
@map_opt
@click.pass_context
def winding_cmd(ctx, map_arg):
    """Winding number (degree) of the map."""
    click.echo(run_winding(_cfg(ctx, "winding"), load_map(map_arg)))


@main.command("dist")
@click.option("--f", "f_arg", required=True, help="First map spec.")
@click.option("--g", "g_arg", required=True, help="Second map spec.")
@click.pass_context
def dist_cmd(ctx, f_arg, g_arg):
    """d0 distance between two maps."""
    click.echo(run_dist(_cfg(ctx, "dist"), load_map(f_arg), load_map(g_arg)))


class_opts = [
    click.option("--method", type=click.Choice(["pl", "poly"]), default="poly", show_default=True),
    click.option("--class-q", default=None, help="Base value q as 'x,y' (default: the map's own)."),
    click.option("--class-m", type=int, default=None, help="Winding m (default: the map's own)."),
]


def _with(opts):
    def deco(fn):
        for opt in reversed(opts):
            fn = opt(fn)
        return fn

    return deco


@main.command("approx")
@map_opt
@_with(class_opts)
@click.option("--size", type=int, default=64, show_default=True, help="Knot count (pl) or degree (poly).")
@click.option("--emit-grid", type=click.Path(dir_okay=False), default=None, help="Write the output map as t,x,y CSV.")
@click.pass_context
def approx_cmd(ctx, map_arg, method, class_q, class_m, size, emit_grid):
    """Approximate the map inside its class C_m^q."""
    cfg = _cfg(ctx, "approx")
    f = load_map(map_arg)
    spec = class_spec_for(f, class_q, class_m, cfg.grid_n)
    click.echo(run_approx(cfg, f, spec, method, size, emit_grid))


@main.command("convergence")
@map_opt
@_with(class_opts)
@click.option("--sizes", default=None, help="Comma-separated sizes (default 9,17,33,65 for pl; 8..256 for poly).")
@click.pass_context
def convergence_cmd(ctx, map_arg, method, class_q, class_m, sizes):
    """CSV table size,sup_error,d0_error over a ladder of sizes."""
    cfg = _cfg(ctx, "convergence")
    f = load_map(map_arg)
    spec = class_spec_for(f, class_q, class_m, cfg.grid_n)
    if sizes is None:
        ladder = [9, 17, 33, 65] if method == "pl" else [8, 16, 32, 64, 128, 256]
    else:
        ladder = [int(s) for s in parse_floats(sizes, "sizes")]
    click.echo(run_convergence(cfg, f, spec, method, ladder), nl=False)


@main.command("swdemo")
@click.option("--input", "map_arg", required=True, help="Map spec whose lift is the target function.")
@click.option("--points", default="0,1", show_default=True, help="Constraint points in [0,1].")
@click.option("--targets", default=None, help="Constraint values (default: the lift's values at the points).")
@click.option("--size", type=int, default=64, show_default=True)
@click.option("--backend", type=click.Choice(sorted(BACKENDS)), default="polynomials-on-I", show_default=True)
@click.pass_context
def swdemo_cmd(ctx, map_arg, points, targets, size, backend):
    """Constrained approximation of a lift with k-point correction."""
    cfg = _cfg(ctx, "swdemo")
    pts = parse_floats(points, "points")
    tgt = None if targets is None else parse_floats(targets, "targets")
    click.echo(run_swdemo(cfg, load_map(map_arg), pts, tgt, size, backend))


if __name__ == "__main__":
    sys.exit(main())
