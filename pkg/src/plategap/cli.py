"""Command-line front end.

Examples::

    plategap table 1a --out results/
    plategap gap --force sin:1 --reinforcement none
    plategap solve --force even-test --reinforcement cross:2
    plategap optimize --class-d none,cross:0..5 --class-f sin:1..10
    plategap scan --z-points 99 --terms 2000

Errors are printed to stderr as one JSON object and the exit code is nonzero:
2 for bad arguments or configuration, 1 for solver failures.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from .config import PlateConfig
from .errors import DomainError, PlateGapError
from .forces import (CoshAlpha, DeltaPair, ExpAlpha, Field, ResonantEigen, SeparableSine, SineModes,
                     SinhAlpha, SmearedDelta, sine_force)
from .geometry import (Empty, PolygonalTruss, SymmetricCrossN, TRUSS_PRESETS, reinforcement_from_dict)
from .series import CROSS_TERMS, DELTA_TERMS


class ConfigError(PlateGapError, ValueError):
    """Malformed command-line or configuration input.

    Attributes:
        field: Name of the offending option or config key.
        line: Line number inside a config file, when known.
    """

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        super().__init__(message)
        self.field, self.line = field, line


_NUM = re.compile(r"^\s*([-+]?\d*\.?\d*(?:e[-+]?\d+)?)?\s*\*?\s*(pi)?\s*(?:/\s*(\d+\.?\d*))?\s*$", re.I)


def parse_number(text: str, field: str = "value") -> float:
    """Parses ``0.5``, ``pi``, ``pi/2``, ``3pi/4`` or ``3*pi/4``."""
    m = _NUM.match(text)
    if not m or not (m.group(1) or m.group(2)):
        raise ConfigError(f"cannot parse number {text!r}", field)
    a = float(m.group(1)) if m.group(1) not in (None, "", "+", "-") else (-1.0 if m.group(1) == "-" else 1.0)
    if m.group(2):
        a *= math.pi
    if m.group(3):
        a /= float(m.group(3))
    return a


def _range(text: str, field: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError:
            raise ConfigError(f"bad range {text!r}", field) from None
    try:
        return [int(text)]
    except ValueError:
        raise ConfigError(f"expected an integer, got {text!r}", field) from None


def _even_test() -> SeparableSine:
    return SeparableSine(SineModes.single(1), CoshAlpha(50.5), "even-test")


def parse_forces(spec: str, field: str = "force") -> list:
    """Force list from a comma-separated spec.

    Items: ``sin:N`` (boundary-trace limit), ``sinh:N:ALPHA``, ``cosh:N:ALPHA``,
    ``exp:N:ALPHA``, ``delta:Z``, ``delta-norm:Z``, ``smeared:Z:ETA:ALPHA``,
    ``eigen:M``, ``sign`` and ``even-test``. ``N`` and ``M`` accept ranges ``a..b``.
    """
    out = []
    for item in filter(None, (s.strip() for s in spec.split(","))):
        head, _, rest = item.partition(":")
        args = rest.split(":") if rest else []
        try:
            if head == "sin" and len(args) == 1:
                out += [sine_force(n) for n in _range(args[0], field)]
            elif head in ("sinh", "cosh", "exp") and len(args) == 2:
                prof = {"sinh": SinhAlpha, "cosh": CoshAlpha, "exp": ExpAlpha}[head](parse_number(args[1], field))
                out += [SeparableSine(SineModes.single(n), prof, f"{head}{n}") for n in _range(args[0], field)]
            elif head in ("delta", "delta-norm") and len(args) == 1:
                out.append(DeltaPair(parse_number(args[0], field), head == "delta-norm", item))
            elif head == "smeared" and len(args) == 3:
                z, eta, alpha = (parse_number(a, field) for a in args)
                out.append(SmearedDelta(z, eta, alpha, item))
            elif head == "eigen" and len(args) == 1:
                out += [ResonantEigen(m, label=f"e{m}") for m in _range(args[0], field)]
            elif head == "sign" and not args:
                out.append(Field(lambda x, y: np.sign(y) + 0 * x, "sign(y)", (), (0.0,)))
            elif head == "even-test" and not args:
                out.append(_even_test())
            else:
                raise ConfigError(f"unknown force item {item!r}", field)
        except DomainError as exc:
            raise ConfigError(f"{item!r}: {exc}", field) from None
    if not out:
        raise ConfigError("empty force spec", field)
    return out


def parse_reinforcements(spec: str, mu: float, eps: float, field: str = "reinforcement") -> list:
    """Reinforcement list from a comma-separated spec.

    Items: ``none``, ``cross:N`` (``N`` may be a range), ``truss:NAME``,
    ``trusses`` (all four presets) and ``file:PATH`` (JSON record).
    """
    out = []
    for item in filter(None, (s.strip() for s in spec.split(","))):
        head, _, rest = item.partition(":")
        try:
            if head in ("none", "empty") and not rest:
                out.append(Empty())
            elif head == "cross" and rest:
                out += [SymmetricCrossN(n, mu, eps) for n in _range(rest, field)]
            elif head == "truss" and rest in TRUSS_PRESETS:
                out.append(PolygonalTruss(rest))
            elif head == "trusses" and not rest:
                out += [PolygonalTruss(p) for p in TRUSS_PRESETS]
            elif head == "file" and rest:
                try:
                    out.append(reinforcement_from_dict(json.loads(Path(rest).read_text())))
                except json.JSONDecodeError as exc:
                    raise ConfigError(f"{rest}: {exc.msg}", field, exc.lineno) from None
            else:
                raise ConfigError(f"unknown reinforcement item {item!r}", field)
        except (DomainError, TypeError) as exc:
            raise ConfigError(f"{item!r}: {exc}", field) from None
    if not out:
        raise ConfigError("empty reinforcement spec", field)
    return out


CONFIG_KEYS = {"ell", "sigma", "d", "terms", "panels", "grid", "degree", "tol", "mu", "eps", "out",
               "format", "force", "reinforcement", "class_d", "class_f", "solver", "z_points", "z",
               "allow_failed"}


def load_config(path: str) -> dict:
    """Reads a JSON config; keys mirror the long option names with underscores."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", "config") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg} (column {exc.colno})", "config", exc.lineno) from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object", "config", 1)
    for key in data:
        if key not in CONFIG_KEYS:
            line = next((i for i, ln in enumerate(text.splitlines(), 1) if f'"{key}"' in ln), None)
            raise ConfigError(f"unknown config key {key!r}", key, line)
    return data


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; command-line flags take precedence")
    common.add_argument("--ell", type=str, default=None, help="half-width (default pi/150)")
    common.add_argument("--sigma", type=float, default=None, help="Poisson ratio (default 0.2)")
    common.add_argument("--d", type=float, default=None, help="stiffening strength (default 2)")
    common.add_argument("--terms", type=int, default=None, help="number of x-modes")
    common.add_argument("--panels", type=int, default=None, help="y-grid panels (default 64)")
    common.add_argument("--grid", type=int, default=None, help="Gauss order per y-panel (default 8)")
    common.add_argument("--degree", type=int, default=None, help="Galerkin polynomial degree (default 12)")
    common.add_argument("--tol", type=float, default=None, help="argmax tolerance in x (default 1e-12)")
    common.add_argument("--mu", type=float, default=None, help="cross arm half-width parameter (default 0.3)")
    common.add_argument("--eps", type=float, default=None, help="cross strip half-height (default 0.01)")
    common.add_argument("--out", default=None, help="output directory or file")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    p = argparse.ArgumentParser(prog="plategap", description="Gap functions of reinforced plates.")
    sub = p.add_subparsers(dest="command", required=True)
    t = sub.add_parser("table", parents=[common], help="reproduce a reference table")
    t.add_argument("which", choices=("1bis", "1a", "1b", "2"))
    for name, hlp in (("solve", "solve one problem and export the solution"),
                      ("gap", "export the gap curve of one problem")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--force", default=None)
        s.add_argument("--reinforcement", default=None)
        s.add_argument("--solver", choices=("auto", "analytic", "modal", "galerkin"), default=None)
        s.add_argument("--timing", action="store_true", help="include wall time (output is then not reproducible)")
    o = sub.add_parser("optimize", parents=[common], help="minimaxmax over finite classes")
    o.add_argument("--class-d", dest="class_d", default=None)
    o.add_argument("--class-f", dest="class_f", default=None)
    o.add_argument("--solver", choices=("auto", "analytic", "modal", "galerkin"), default=None)
    o.add_argument("--allow-failed", dest="allow_failed", action="store_true", default=None)
    c = sub.add_parser("scan", parents=[common], help="maximal gaps of delta pairs over z")
    c.add_argument("--z-points", dest="z_points", type=int, default=None)
    c.add_argument("--z", default=None, help="comma-separated z values, e.g. pi/4,pi/2")
    sub.add_parser("conjectures", parents=[common], help="numerical evidence for the optimality conjectures")
    return p


DEFAULTS = {"sigma": 0.2, "d": 2.0, "panels": 64, "grid": 8, "degree": 12, "tol": 1e-12, "mu": 0.3,
            "eps": 0.01, "format": "csv", "force": "sin:1", "reinforcement": "none", "solver": "auto",
            "class_d": "none,cross:0..5", "class_f": "sin:1..10", "z_points": 99, "allow_failed": False}


def _settings(args) -> dict:
    cfg = load_config(args.config) if getattr(args, "config", None) else {}
    out = dict(DEFAULTS)
    out.update(cfg)
    for k, v in vars(args).items():
        if v is not None and k not in ("config", "command"):
            out[k] = v
    return out


def _plate(s: dict) -> PlateConfig:
    ell = s.get("ell")
    ell = math.pi / 150 if ell is None else (parse_number(ell, "ell") if isinstance(ell, str) else float(ell))
    try:
        return PlateConfig(ell, float(s["sigma"]), float(s["d"]))
    except DomainError as exc:
        raise ConfigError(str(exc), "plate") from None


def _write(out: str | None, name: str, text: str) -> str | None:
    if out is None:
        return None
    p = Path(out)
    if p.suffix:
        p.parent.mkdir(parents=True, exist_ok=True)
        target = p
    else:
        p.mkdir(parents=True, exist_ok=True)
        target = p / name
    target.write_text(text)
    return str(target)


def _single(s: dict) -> tuple:
    forces = parse_forces(s["force"])
    Ds = parse_reinforcements(s["reinforcement"], s["mu"], s["eps"])
    if len(forces) != 1 or len(Ds) != 1:
        raise ConfigError("solve and gap take exactly one force and one reinforcement", "force")
    return forces[0], Ds[0]


def _solve(s: dict, cfg: PlateConfig):
    from .modal.bvp import solve_weakened
    from .modal.galerkin import solve_stiffened_galerkin
    from .optimizer import analytic_available, gap_series
    from .series import max_gap

    f, D = _single(s)
    solver = s["solver"]
    M = s.get("terms") or (DELTA_TERMS if isinstance(f, DeltaPair) and solver != "galerkin" else CROSS_TERMS)
    if solver == "galerkin":
        sol, series, rep = solve_stiffened_galerkin(f, D, cfg, (M, s["degree"]), s["panels"], s["grid"])
        return sol, series, rep.to_dict(s.get("timing", False))
    if solver == "analytic" or (solver == "auto" and analytic_available(f, D)):
        series = gap_series(f, D, cfg, "analytic", M)
        x, v = max_gap(series, s["tol"])
        return None, series, {"solver": "analytic", "modes": M, "max_gap": v, "argmax": x,
                              "truncation_estimate": series.tail_bound,
                              "coefficients": [float(c) for c in series.coefficients]}
    sol, series, rep = solve_weakened(f, D, cfg, M, panels=s["panels"], order=s["grid"])
    return sol, series, rep.to_dict(s.get("timing", False))


def cmd_table(s: dict, cfg: PlateConfig) -> dict:
    from .tables import build_table, truss_ordering

    kw = {}
    if s["which"] in ("1a", "1b"):
        # each block has its own mu unless one is given explicitly
        kw = {"mu": s["mu"] if s.get("mu_set") else None, "eps": s["eps"]}
    res = build_table(s["which"], cfg, s.get("terms"), **kw)
    files = [_write(s.get("out"), f"table_{res.name}.csv", res.to_csv()),
             _write(s.get("out"), f"table_{res.name}_diff.csv", res.diff_csv())]
    print(res.to_csv(), end="")
    print(res.diff_csv(), end="")
    print(res.summary())
    report = {"table": res.name, "summary": res.summary(), "files": [f for f in files if f]}
    if res.name == "2":
        order = truss_ordering(res)
        print("ordering Strips < Squares < Hexagons < Triangles per column: "
              + " ".join("yes" if o else "NO" for o in order))
        report["ordering"] = order
    return report


def cmd_solve(s: dict, cfg: PlateConfig) -> dict:
    sol, series, rep = _solve(s, cfg)
    if sol is not None and s.get("out"):
        rep["solution_file"] = _write(s["out"], "solution.csv", sol.export_csv()) if hasattr(sol, "export_csv") \
            else _write(s["out"], "solution.csv", _sample_csv(sol, cfg))
    text = json.dumps(rep, sort_keys=True, ensure_ascii=False)
    _write(s.get("out"), "report.json", text + "\n")
    print(text)
    return rep


def _sample_csv(sol, cfg: PlateConfig, nx: int = 101, ny: int = 21) -> str:
    xs = np.linspace(0, math.pi, nx)
    ys = np.linspace(-cfg.ell, cfg.ell, ny)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    U = sol(X, Y)
    rows = ["x,y,u"] + [f"{a!r},{b!r},{c!r}" for a, b, c in
                        zip(X.ravel().tolist(), Y.ravel().tolist(), U.ravel().tolist())]
    return "\n".join(rows) + "\n"


def cmd_gap(s: dict, cfg: PlateConfig) -> dict:
    _, series, rep = _solve(s, cfg)
    summary = {"max_gap": rep["max_gap"], "argmax": rep["argmax"], "solver": rep["solver"], "modes": rep["modes"]}
    if s["format"] == "json":
        text = json.dumps({**summary, "coefficients": rep["coefficients"]}, sort_keys=True)
        _write(s.get("out"), "gap.json", text + "\n")
        print(text)
    else:
        curve = series.export_curve()
        _write(s.get("out"), "gap.csv", curve)
        print(curve, end="")
        print(json.dumps(summary, sort_keys=True))
    return summary


def cmd_optimize(s: dict, cfg: PlateConfig) -> dict:
    from .optimizer import minimaxmax

    Ds = parse_reinforcements(s["class_d"], s["mu"], s["eps"], "class-d")
    Fs = parse_forces(s["class_f"], "class-f")
    rep = minimaxmax(Ds, Fs, s["solver"], cfg, s.get("terms"), bool(s["allow_failed"]))
    text = rep.to_json() if s["format"] == "json" else rep.to_csv()
    _write(s.get("out"), "minimax." + s["format"], text if text.endswith("\n") else text + "\n")
    print(text)
    f, D = rep.optimum
    print(json.dumps({"optimum": [f, D], "value": rep.value}, ensure_ascii=False))
    return {"optimum": [f, D], "value": rep.value}


def cmd_scan(s: dict, cfg: PlateConfig) -> dict:
    from .optimizer import worst_delta_scan

    if s.get("z"):
        z = [parse_number(v, "z") for v in str(s["z"]).split(",")]
    else:
        n = int(s["z_points"])
        if n < 1:
            raise ConfigError("z-points must be positive", "z-points")
        z = (math.pi * np.arange(1, n + 1) / (n + 1)).tolist()
    try:
        rows = worst_delta_scan(z, s.get("terms") or DELTA_TERMS, cfg)
    except DomainError as exc:
        raise ConfigError(str(exc), "z") from None
    lines = ["z,normalized,raw"] + [f"{a!r},{b!r},{c!r}" for a, b, c in rows]
    text = "\n".join(lines) + "\n"
    _write(s.get("out"), "scan.csv", text)
    print(text, end="")
    k = int(np.argmax([r[1] for r in rows]))
    return {"argmax_z": rows[k][0]}


def cmd_conjectures(s: dict, cfg: PlateConfig) -> dict:
    from .optimizer import conjecture_suite

    rep = conjecture_suite(cfg)
    text = json.dumps(rep, sort_keys=True, indent=2, ensure_ascii=False)
    _write(s.get("out"), "conjectures.json", text + "\n")
    print(text)
    return rep


COMMANDS = {"table": cmd_table, "solve": cmd_solve, "gap": cmd_gap, "optimize": cmd_optimize,
            "scan": cmd_scan, "conjectures": cmd_conjectures}


def _fail(kind: str, message: str, code: int, **extra) -> int:
    record = {"error": kind, "message": message}
    record.update({k: v for k, v in extra.items() if v is not None})
    print(json.dumps(record, sort_keys=True), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else _fail("UsageError", "invalid arguments", 2)
    try:
        s = _settings(args)
        s["command"] = args.command
        s["mu_set"] = args.mu is not None or "mu" in (load_config(args.config) if args.config else {})
        cfg = _plate(s)
        COMMANDS[args.command](s, cfg)
    except ConfigError as exc:
        return _fail("ConfigError", str(exc), 2, field=exc.field, line=exc.line)
    except DomainError as exc:
        return _fail(type(exc).__name__, str(exc), 2)
    except PlateGapError as exc:
        return _fail(type(exc).__name__, str(exc), 1)
    except OSError as exc:
        return _fail("IOError", str(exc), 1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
