"""Curves, comparison hyperbolic densities and shrinking of fundamental domains."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import maps, rays
from .maps import MapSpec
from .symbolic import ExpAddress, PolyAngle


class GeometryError(ValueError):
    pass


@dataclass
class Curve:
    points: np.ndarray

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=complex)

    @property
    def edge_lengths(self) -> np.ndarray:
        return np.abs(np.diff(self.points))

    @property
    def length(self) -> float:
        return float(self.edge_lengths.sum())

    def refine(self) -> "Curve":
        """Insert edge midpoints."""
        p = self.points
        out = np.empty(2 * len(p) - 1, dtype=complex)
        out[0::2] = p
        out[1::2] = (p[:-1] + p[1:]) / 2
        return Curve(out)

    def __add__(self, other: "Curve") -> "Curve":
        if len(self.points) and len(other.points) and self.points[-1] == other.points[0]:
            return Curve(np.concatenate([self.points, other.points[1:]]))
        return Curve(np.concatenate([self.points, other.points]))

    def max_distance(self, z: complex) -> float:
        return float(np.max(np.abs(self.points - z)))

    def min_distance(self, z: complex) -> float:
        return float(np.min(np.abs(self.points - z)))


@dataclass(frozen=True)
class DensityModel:
    """Comparison densities: twice-punctured neighbourhood of 0, disk exterior, half-plane."""

    kind: str
    R: float = 1.0   # ExteriorDisk radius
    C: float = 0.0   # HalfPlane abscissa

    @classmethod
    def twice_punctured(cls) -> "DensityModel":
        return cls("TwicePunctured0")

    @classmethod
    def exterior_disk(cls, R: float) -> "DensityModel":
        return cls("ExteriorDisk", R=R)

    @classmethod
    def half_plane(cls, C: float) -> "DensityModel":
        return cls("HalfPlane", C=C)

    def valid(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z)
        a = np.abs(z)
        if self.kind == "TwicePunctured0":
            return (a > 0) & (a < 1)
        if self.kind == "ExteriorDisk":
            return a > self.R
        if self.kind == "HalfPlane":
            return z.real > self.C
        raise GeometryError(f"unknown model {self.kind}")

    def density(self, z):
        z = np.asarray(z)
        a = np.abs(z)
        if self.kind == "TwicePunctured0":
            return 1.0 / (a * np.abs(np.log(a)))
        if self.kind == "ExteriorDisk":
            return 1.0 / (a * np.log(a / self.R))
        return 1.0 / (2.0 * (z.real - self.C))


def _edge_integral(a: np.ndarray, b: np.ndarray, model: DensityModel, n: int) -> np.ndarray:
    u = (np.arange(n) + 0.5) / n
    pts = a[:, None] + (b - a)[:, None] * u[None, :]
    return model.density(pts).mean(axis=1) * np.abs(b - a)


def hyperbolic_length(curve: Curve, model: DensityModel, rtol: float = 1e-6,
                      max_level: int = 22) -> float:
    """Integral of the model density along the polyline.

    Midpoint rule per edge, doubling the node count until the total changes by
    less than ``rtol`` relative; the last two levels are Richardson-combined.
    """
    p = curve.points
    if len(p) < 2:
        return 0.0
    if not np.all(model.valid(p)):
        raise GeometryError("curve leaves the validity region of the density model")
    a, b = p[:-1], p[1:]
    # refine edges crossing a singular point of the model (checked on the refined nodes)
    n = 1
    prev = _edge_integral(a, b, model, n).sum()
    for _ in range(max_level):
        n *= 2
        cur_edges = _edge_integral(a, b, model, n)
        cur = cur_edges.sum()
        if not np.isfinite(cur):
            raise GeometryError("density blows up along the curve")
        if abs(cur - prev) <= rtol * abs(cur):
            return float((4 * cur - prev) / 3)
        prev = cur
        if len(a) * n > 4_000_000:
            break
    return float(cur)


@dataclass
class DecayReport:
    R: float
    radii: list[float]
    ratios: list[float]
    monotone: bool


def density_decay_check(model: DensityModel, radii) -> DecayReport:
    """Tabulate rho(z) |z| = 1/log(|z|/R) for the exterior-disk model."""
    if model.kind != "ExteriorDisk":
        raise GeometryError("decay check applies to the exterior-disk model")
    radii = [float(r) for r in radii]
    if any(r <= model.R for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise GeometryError("radii must increase and exceed R")
    ratios = [1.0 / math.log(r / model.R) for r in radii]
    mono = all(b < a for a, b in zip(ratios, ratios[1:]))
    return DecayReport(model.R, radii, ratios, mono)


# ---------------------------------------------------------------------------
# shrinking profiles
# ---------------------------------------------------------------------------

@dataclass
class ProfileRow:
    t: float
    max_length: float
    n_samples: int


@dataclass
class ShrinkingProfile:
    rows: list[ProfileRow]
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def column(self) -> list[float]:
        return [r.max_length for r in self.rows]

    def strictly_decreasing(self) -> bool:
        col = self.column
        return all(b < a for a, b in zip(col, col[1:]))

    def t_eps(self, eps: float) -> float | None:
        """Largest grid potential from which on every tabulated max length is below eps."""
        best = None
        for row in reversed(self.rows):  # rows go from large t to small t
            if row.max_length < eps:
                best = row.t
            else:
                break
        return best

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "max_length", "n_samples"])
        for r in self.rows:
            w.writerow([repr(r.t), repr(r.max_length), r.n_samples])
        return buf.getvalue()


def pullback_family(base: ExpAddress, max_len: int, max_entry: int) -> list[ExpAddress]:
    """All addresses a_m ... a_1 base with m <= max_len and |a_j| <= max_entry."""
    fam = [base]
    layer = [base]
    for _ in range(max_len):
        layer = [s.prepend(j) for s in layer for j in range(-max_entry, max_entry + 1)]
        fam.extend(layer)
    return fam


def shrinking_profile(f: MapSpec, coords, t_grid, window: tuple[complex, float] | None = None,
                      config: rays.TraceConfig | None = None, period: int = 1) -> ShrinkingProfile:
    """Max Euclidean length of I_t over the sampled coordinates, for each t of a descending grid.

    The grid must have the form F^{-k}(t_grid[0]).  Only fundamental domains that
    meet the closed window ball (center, radius) count when a window is given.
    """
    t_grid = [float(t) for t in t_grid]
    if any(b >= a for a, b in zip(t_grid, t_grid[1:])):
        raise GeometryError("potential grid must be strictly decreasing")
    tracer = rays.RayTracer(f, config, anchor=t_grid[0])
    F = rays.growth_model(f)
    levels = []
    lvl = tracer.anchor_levels
    for t in t_grid:
        while tracer.t(lvl) > t * (1 + 1e-9):
            lvl += 1
        if abs(tracer.t(lvl) - t) > 1e-9 * t:
            raise GeometryError(f"potential {t} is not on the F-grid of {t_grid[0]}")
        levels.append(lvl)
    rows, failures = [], []
    bad = set()
    for t, lvl in zip(t_grid, levels):
        best, count = 0.0, 0
        for s in coords:
            if s in bad:
                continue
            try:
                pts = tracer.fundamental_domain(s, lvl, period)
            except (maps.BranchCutError, rays.TraceError, OverflowError) as exc:
                failures.append((str(s), str(exc)))
                bad.add(s)
                continue
            if window is not None and np.min(np.abs(pts - window[0])) > window[1]:
                continue
            count += 1
            best = max(best, float(np.abs(np.diff(pts)).sum()))
        rows.append(ProfileRow(t, best, count))
    del F
    return ShrinkingProfile(rows, failures)


def potential_grid(f: MapSpec, t0: float, n: int) -> list[float]:
    F = rays.growth_model(f)
    out = [t0]
    for _ in range(n - 1):
        out.append(F.Finv(out[-1]))
    return out


# ---------------------------------------------------------------------------
# bounded fundamental domains for exponential pullbacks
# ---------------------------------------------------------------------------

@dataclass
class PrefixCheck:
    prefix: list[int]
    p1_error: float = math.nan
    p2_margin: float = math.nan
    length: float = math.nan
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass
class BoundedDomainsReport:
    T: float
    C: float
    eps: float
    B: float
    checks: list[PrefixCheck]
    passed: bool


def bounded_fundamental_domains_check(f: MapSpec, base: ExpAddress, prefixes, T: float, C: float,
                                      t: float | None = None, p1_tol: float = 1e-8) -> BoundedDomainsReport:
    """Check P1 (pullback identity), P2 (real-part floor) and P3 (uniform length bound).

    ``prefixes`` hold a_m ... a_1 with a_1 last.  Lengths are compared with
    B(t) = 2 (F(t) - t), the bound shape for straight rays.
    """
    if f.is_poly:
        raise GeometryError("bounded fundamental domains concern exponential maps")
    rc = f.c.real
    if not C >= max(2.0, rc + 4.0):
        raise GeometryError("C must be at least max(2, Re c + 4)")
    eps = 8 * math.pi**2 / C
    if not T - eps > C + rc:
        raise GeometryError(f"T = {T} below the threshold C + Re c + eps = {C + rc + eps}")
    t = T if t is None else t
    if t < T:
        raise GeometryError("potential below T")
    F = rays.growth_model(f)
    bound = 2 * (F.F(t) - t)
    checks = []
    tracer = rays.RayTracer(f, rays.TraceConfig(), anchor=t)
    lvl = tracer.anchor_levels
    for prefix in prefixes:
        prefix = list(prefix)
        addr = base
        for a in reversed(prefix):
            addr = addr.prepend(a)
        chk = PrefixCheck(prefix)
        try:
            direct = tracer.point(addr, lvl)
            literal = rays.exp_point_by_branches(f, addr, t, depth=len(prefix) + 8)
            chk.p1_error = abs(direct - literal) / max(1.0, abs(direct))
            pts = tracer.fundamental_domain(addr, lvl)
            chk.p2_margin = float(pts.real.min()) - C
            chk.length = float(np.abs(np.diff(pts)).sum())
        except (maps.BranchCutError, rays.TraceError) as exc:
            chk.error = f"{type(exc).__name__}: {exc}"
        checks.append(chk)
    good = [c for c in checks if c.ok]
    B = max((c.length for c in good), default=0.0)
    passed = bool(good) and len(good) == len(checks) and all(
        c.p1_error < p1_tol and c.p2_margin > 0 and c.length <= bound for c in good)
    return BoundedDomainsReport(T, C, eps, B, checks, passed)
