"""Command-line front end: ``raylanding <command> [options]``.

Exit codes: 0 success, 1 numerical failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import acceptance, geometry, landing, maps, rays, render
from .maps import MapSpec
from .symbolic import ExpAddress, PolyAngle, SymbolicError

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2

# keys that never go into a dumped config
_META = {"command", "config", "dump_config", "func"}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------

def parse_complex(text: str) -> complex:
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 2:
        raise UsageError(f"complex numbers are written 're,im', got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_range(text: str) -> tuple[float | None, float | None]:
    lo, sep, hi = str(text).partition(":")
    if not sep:
        raise UsageError(f"ranges are written 'lo:hi', got {text!r}")
    conv = lambda s: float(s) if s.strip() else None
    return conv(lo), conv(hi)


def read_config(path: str) -> dict[str, str]:
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{n}: expected key=value")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def map_from_args(a) -> MapSpec:
    c = parse_complex(a.c)
    if a.kind == "poly":
        if a.degree < 2:
            raise UsageError("degree must be at least 2")
        return MapSpec.poly(c, a.degree)
    return MapSpec.exp(c)


def coord_from_args(a, f: MapSpec):
    if f.is_poly:
        if a.angle is None:
            raise UsageError("--angle is required for polynomial maps")
        return PolyAngle.parse(a.angle, f.degree)
    if a.address is None:
        raise UsageError("--address is required for exponential maps")
    return ExpAddress.parse(a.address)


def write_text(out: Path, name: str, text: str) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    p = out / name
    p.write_text(text, encoding="utf-8")
    return p


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, default=str) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_trace(a) -> int:
    f = map_from_args(a)
    coord = coord_from_args(a, f)
    lo, hi = parse_range(a.t) if a.t else (None, None)
    cfg = rays.TraceConfig(substeps=a.substeps)
    seg = rays.trace_ray(f, coord, lo, hi, cfg)
    out = Path(a.out)
    stem = a.name or "ray"
    write_text(out, f"{stem}.csv", seg.to_csv())
    write_text(out, f"{stem}.json", seg.to_json() + "\n")
    print(f"{len(seg.samples)} samples, t in [{seg.samples[0].t:.6g}, {seg.samples[-1].t:.6g}], "
          f"max residual {seg.max_residual:.3e}")
    return EXIT_OK if seg.max_residual < 1e-8 else EXIT_NUMERIC


def cmd_land(a) -> int:
    f = map_from_args(a)
    coord = coord_from_args(a, f)
    v = landing.land_ray(f, coord, landing.LandingConfig(substeps=a.substeps))
    write_text(Path(a.out), "landing.json", dumps(v.to_dict()))
    if v.landed:
        print(f"{coord} lands at {v.point.real:.12g}{v.point.imag:+.12g}i (nu = {v.nu:.4f}, R^2 = {v.r2:.5f})")
        return EXIT_OK
    print(f"{coord}: {v.status}")
    return EXIT_NUMERIC


def _pullback_config(a) -> landing.PullbackConfig:
    return landing.PullbackConfig(budget=a.budget, seed=a.seed, substeps=a.substeps)


def _targets(a, f: MapSpec) -> list[maps.PeriodicPoint]:
    if a.target:
        z = parse_complex(a.target)
        zz = maps.newton_periodic(f, z, a.period)
        if zz is None:
            raise UsageError(f"no period-{a.period} point near {a.target}")
        return [maps.periodic_point(f, zz, a.period)]
    pts = maps.find_periodic_points(f, a.period, k_strips=a.strips)
    return [p for p in pts if p.repelling]


def cmd_landing_set(a) -> int:
    f = map_from_args(a)
    if not f.is_poly:
        probe = maps.postsingular_probe(f)
        if not probe.bounded:
            print("warning: singular orbit not bounded up to 10^4 iterations", file=sys.stderr)
    rows, docs = [], []
    status = EXIT_OK
    for P in _targets(a, f):
        try:
            lset, run = landing.pullback_landing(f, P, _pullback_config(a))
        except (landing.LandingError, maps.LinearizationError) as exc:
            docs.append({"point": P.to_dict(), "error": str(exc)})
            status = EXIT_NUMERIC
            continue
        docs.append({"landing_set": lset.to_dict(), "run": run.to_dict()})
        if not lset.coordinates:
            status = EXIT_NUMERIC
        for v in run.verdicts:
            err = abs(v.point - P.location) if v.landed else math.inf
            rows.append((str(v.coordinate), lset.period, P.location, err, v.nu))
    write_text(Path(a.out), "landing_set.json", dumps(docs))
    print(f"{'coordinate':>16} {'period':>6} {'point':>28} {'landing error':>14} {'nu':>8}")
    for c, p, z, e, nu in rows:
        print(f"{c:>16} {p:>6} {z.real:>13.8f}{z.imag:+13.8f}i {e:>14.3e} {nu:>8.4f}")
    return status


def cmd_access(a) -> int:
    f = map_from_args(a)
    if not a.points:
        raise UsageError("--points is required")
    pts = [parse_complex(s) for s in a.points.split(";") if s.strip()]
    spec = landing.HyperbolicSetSpec(pts, a.eta, a.delta, a.k)
    ev = landing.hyperbolic_accessibility(f, spec, _pullback_config(a))
    write_text(Path(a.out), "access.json", dumps([e.to_dict() for e in ev]))
    ok = True
    for e in ev:
        coords = [] if e.landing_set is None else [str(c) for c in e.landing_set.coordinates]
        ok &= bool(coords) and e.ladder_ok
        extra = "" if e.M is None else f"  M = {e.M}"
        print(f"{e.point.real:.8f}{e.point.imag:+.8f}i  period {e.period}  rays {coords}  ladder {e.ladder_ok}{extra}")
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_shrink_profile(a) -> int:
    f = map_from_args(a)
    grid = geometry.potential_grid(f, a.t0, a.levels)
    window = None
    if f.is_poly:
        angles = a.angles or "0,1/3,2/3,1/7,2/7,4/7"
        coords = [PolyAngle.parse(s, f.degree) for s in angles.split(",")]
    else:
        base = ExpAddress.parse(a.address or "[0]")
        coords = geometry.pullback_family(base, a.prefix_len, a.max_entry)
        if a.window_radius > 0:
            fp = maps.exp_fixed_point_in_strip(f, 0)
            center = parse_complex(a.window_center) if a.window_center else fp.location
            window = (center, a.window_radius)
    prof = geometry.shrinking_profile(f, coords, grid, window, rays.TraceConfig(substeps=a.substeps))
    write_text(Path(a.out), "profile.csv", prof.to_csv())
    for r in prof.rows:
        print(f"t = {r.t:.6g}  max length {r.max_length:.6g}  ({r.n_samples} rays)")
    return EXIT_OK if prof.strictly_decreasing() else EXIT_NUMERIC


def cmd_verify(a) -> int:
    overrides = {}
    for item in a.set or []:
        k, sep, v = item.partition("=")
        if not sep:
            raise UsageError(f"--set expects key=value, got {item!r}")
        overrides[k.strip()] = v.strip()
    try:
        results = acceptance.run_suite(a.suite, overrides)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    for r in results:
        print(r.line())
    text = acceptance.results_json(results) + "\n"
    write_text(Path(a.out), "verify.json", text)
    if all(r.passed for r in results):
        return EXIT_OK
    failed = [r.to_dict() for r in results if not r.passed]
    write_text(Path(a.out), "verify_failures.json", dumps(failed))
    return EXIT_NUMERIC


def cmd_render(a) -> int:
    f = map_from_args(a)
    try:
        vp = tuple(float(x) for x in a.viewport.split(","))
        w, _, h = a.size.partition("x")
        w, h = int(w), int(h or w)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(vp) != 4:
        raise UsageError("viewport is xmin,xmax,ymin,ymax")
    overlays, markers = [], []
    for text in (a.rays.split(";") if a.rays else []):
        coord = PolyAngle.parse(text, f.degree) if f.is_poly else ExpAddress.parse(text)
        seg = rays.trace_ray(f, coord)
        overlays.append(seg.points)
    for text in (a.markers.split(";") if a.markers else []):
        markers.append(parse_complex(text))
    try:
        spec = render.RenderSpec(vp, w, h, a.max_iter, overlays, markers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    im = render.render(f, spec)
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    digest = render.save_png(im, out / (a.name or "render.png"))
    print(f"wrote {out / (a.name or 'render.png')} sha256 {digest}")
    return EXIT_OK


def cmd_report(a) -> int:
    f = map_from_args(a)
    doc: dict = {"map": f.to_dict(), "periods": {}}
    if not f.is_poly:
        pr = maps.postsingular_probe(f)
        doc["probe"] = {"bounded_up_to_N": pr.bounded, "iterations": pr.iterations, "heuristic": True}
    for p in range(1, a.period + 1):
        rows = []
        for P in maps.find_periodic_points(f, p, k_strips=a.strips):
            row = {"point": P.to_dict()}
            if P.repelling:
                try:
                    lset, _ = landing.pullback_landing(f, P, _pullback_config(a))
                    row["rays"] = [str(c) for c in lset.coordinates]
                except (landing.LandingError, maps.LinearizationError) as exc:
                    row["error"] = str(exc)
            rows.append(row)
        doc["periods"][str(p)] = rows
    text = dumps(doc)
    write_text(Path(a.out), "report.json", text)
    sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=["exp", "poly"], default="poly")
    p.add_argument("--c", default="0,0", help="parameter as re,im")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--substeps", type=int, default=8, help="samples per fundamental domain")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--config", help="key=value file; explicit flags win")
    p.add_argument("--dump-config", action="store_true", help="print the resolved config and exit")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="raylanding", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", help="trace a ray to CSV and JSON")
    _common(p)
    p.add_argument("--angle")
    p.add_argument("--address")
    p.add_argument("--t", help="potential range lo:hi")
    p.add_argument("--name", help="output file stem")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("land", help="decide whether a ray lands")
    _common(p)
    p.add_argument("--angle")
    p.add_argument("--address")
    p.set_defaults(func=cmd_land)

    for name, fn, hlp in (("landing-set", cmd_landing_set, "rays landing at repelling periodic points"),
                          ("report", cmd_report, "periodic points and their landing sets")):
        p = sub.add_parser(name, help=hlp)
        _common(p)
        p.add_argument("--period", type=int, default=1)
        p.add_argument("--target", help="approximate location re,im")
        p.add_argument("--budget", type=int, default=48)
        p.add_argument("--strips", type=int, default=1, help="strips searched for exponential seeds")
        p.set_defaults(func=fn)

    p = sub.add_parser("access", help="rays landing at points of a hyperbolic set")
    _common(p)
    p.add_argument("--points", help="re,im;re,im;...")
    p.add_argument("--eta", type=float, default=1.5)
    p.add_argument("--delta", type=float, default=0.2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--budget", type=int, default=48)
    p.set_defaults(func=cmd_access)

    p = sub.add_parser("shrink-profile", help="max fundamental-domain length per potential")
    _common(p)
    p.add_argument("--angles", help="comma separated angles (polynomial)")
    p.add_argument("--address", help="base address (exponential)")
    p.add_argument("--prefix-len", type=int, default=3)
    p.add_argument("--max-entry", type=int, default=2)
    p.add_argument("--window-radius", type=float, default=5.0)
    p.add_argument("--window-center")
    p.add_argument("--t0", type=float, default=1.0)
    p.add_argument("--levels", type=int, default=12)
    p.set_defaults(func=cmd_shrink_profile)

    p = sub.add_parser("verify", help="run the acceptance suite")
    _common(p)
    p.add_argument("--suite", default="all", choices=sorted(acceptance.SUITES))
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a tolerance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="escape-time PNG with ray overlays")
    _common(p)
    p.add_argument("--viewport", default="-2,2,-2,2")
    p.add_argument("--size", default="512x512")
    p.add_argument("--max-iter", type=int, default=200)
    p.add_argument("--rays", help="coordinates separated by ';'")
    p.add_argument("--markers", help="points re,im separated by ';'")
    p.add_argument("--name")
    p.set_defaults(func=cmd_render)
    return ap


def _resolve(ap: argparse.ArgumentParser, argv) -> argparse.Namespace:
    args = ap.parse_args(argv)
    if args.config:
        try:
            conf = read_config(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        sub = ap._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in sub._actions}
        bad = set(conf) - known
        if bad:
            raise UsageError(f"unknown config keys: {', '.join(sorted(bad))}")
        multi = {a.dest for a in sub._actions if isinstance(a, argparse._AppendAction)}
        conf = {k: (v.split("|") if k in multi else v) for k, v in conf.items()}
        sub.set_defaults(**conf)
        args = ap.parse_args(argv)
    return args


def dump_config(args: argparse.Namespace) -> str:
    lines = []
    for k, v in sorted(vars(args).items()):
        if k in _META or v is None or v is False:
            continue
        if isinstance(v, list):
            v = "|".join(v)
        lines.append(f"{k}={v}")
    return "\n".join(lines) + "\n"


_VALUE_OPTS = {"--c", "--target", "--markers", "--window-center", "--viewport", "--points", "--t",
               "--angles", "--address", "--angle", "--rays"}


def _glue_negative(argv: list[str]) -> list[str]:
    """Write '--c -2,0' as '--c=-2,0' so argparse does not read the value as an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = _glue_negative(list(sys.argv[1:] if argv is None else argv))
    try:
        args = _resolve(ap, argv)
        if args.dump_config:
            sys.stdout.write(dump_config(args))
            return EXIT_OK
        return args.func(args)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    except (ArithmeticError, landing.LandingError, rays.TraceError, maps.BranchCutError,
            maps.LinearizationError, maps.ItineraryError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, SymbolicError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
