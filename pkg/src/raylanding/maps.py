"""Unicritical polynomials z^D + c and exponential maps e^z + c.

Evaluation, inverse branches, itineraries, periodic points and their
linearization data.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2 * math.pi

NEWTON_TOL = 1e-12
NEWTON_MAXITER = 200
DEDUP_RADIUS = 1e-8
CLASS_MARGIN = 1e-6
STRIP_TOL = 1e-9
DISTORTION_SLACK = 1.05  # reported C exceeds the sampled maximum by this factor


class BranchCutError(ValueError):
    """Point lies on (or numerically at) the slit/branch point of an inverse branch."""


class ItineraryError(ValueError):
    pass


class LinearizationError(ValueError):
    pass


@dataclass(frozen=True)
class MapSpec:
    kind: str  # "poly" or "exp"
    c: complex
    degree: int = 2

    def __post_init__(self):
        if self.kind not in ("poly", "exp"):
            raise ValueError(f"unknown map kind {self.kind!r}")
        c = complex(self.c)
        if self.kind == "exp":
            # e^z + c and e^z + c + 2 pi i are conjugate: keep -pi <= Im c < pi
            k = math.floor((c.imag + math.pi) / TWO_PI)
            c = complex(c.real, c.imag - TWO_PI * k)
            object.__setattr__(self, "degree", 0)
        elif self.degree < 2:
            raise ValueError("polynomial degree must be >= 2")
        object.__setattr__(self, "c", c)

    @classmethod
    def poly(cls, c: complex, degree: int = 2) -> "MapSpec":
        return cls("poly", complex(c), degree)

    @classmethod
    def exp(cls, c: complex) -> "MapSpec":
        return cls("exp", complex(c))

    @property
    def is_poly(self) -> bool:
        return self.kind == "poly"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "c_re": self.c.real, "c_im": self.c.imag}
        if self.is_poly:
            d["degree"] = self.degree
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MapSpec":
        c = complex(float(d.get("c_re", 0.0)), float(d.get("c_im", 0.0)))
        if d["kind"] == "poly":
            return cls.poly(c, int(d.get("degree", 2)))
        return cls.exp(c)

    def __str__(self) -> str:
        if self.is_poly:
            return f"z^{self.degree} + ({self.c.real:g}{self.c.imag:+g}i)"
        return f"e^z + ({self.c.real:g}{self.c.imag:+g}i)"


def apply(f: MapSpec, z: complex) -> complex:
    if f.is_poly:
        return z**f.degree + f.c
    if z.real > 709.0:
        raise OverflowError(f"exp overflow at Re z = {z.real:g}")
    return cmath.exp(z) + f.c


def derivative(f: MapSpec, z: complex) -> complex:
    if f.is_poly:
        return f.degree * z ** (f.degree - 1)
    if z.real > 709.0:
        raise OverflowError(f"exp overflow at Re z = {z.real:g}")
    return cmath.exp(z)


def iterate(f: MapSpec, z: complex, n: int) -> complex:
    for _ in range(n):
        z = apply(f, z)
    return z


def orbit_derivative(f: MapSpec, z: complex, n: int) -> tuple[complex, complex]:
    """(f^n(z), (f^n)'(z))."""
    d = 1 + 0j
    for _ in range(n):
        d *= derivative(f, z)
        z = apply(f, z)
    return z, d


# ---------------------------------------------------------------------------
# inverse branches
# ---------------------------------------------------------------------------

def strip_index(z: complex) -> int:
    """n with z in S_n = {2 pi n - pi < Im z < 2 pi n + pi} (boundary rounds up)."""
    return math.floor((z.imag + math.pi) / TWO_PI)


def distance_to_slit(f: MapSpec, w: complex) -> float:
    """Distance from w to R = {Im z = Im c, Re z <= Re c}."""
    d = w - f.c
    if d.real <= 0:
        return abs(d.imag)
    return abs(d)


def inverse_branch_exp(f: MapSpec, n: int, w: complex, tol: float = 0.0) -> complex:
    """L_n(w) = log|w - c| + i arg(w - c) + 2 pi i n, a branch of f^{-1} onto S_n."""
    d = w - f.c
    if distance_to_slit(f, w) <= tol or (d.imag == 0 and d.real <= 0):
        raise BranchCutError(f"{w} lies on the slit of the logarithm branches")
    return cmath.log(d) + 1j * TWO_PI * n


def exp_preimage_nearest(f: MapSpec, w: complex, ref: complex) -> tuple[int, complex]:
    """The preimage of w under e^z + c closest to ``ref``, with its branch index."""
    base = cmath.log(w - f.c)
    n = round((ref.imag - base.imag) / TWO_PI)
    return n, base + 1j * TWO_PI * n


def poly_roots(f: MapSpec, w: complex) -> list[complex]:
    """All D preimages of w, starting from the principal root."""
    D = f.degree
    d = w - f.c
    if d == 0:
        return [0j]
    r = d ** (1.0 / D)
    return [r * cmath.exp(2j * math.pi * k / D) for k in range(D)]


def poly_preimage_nearest(f: MapSpec, w: complex, ref: complex) -> complex:
    roots = poly_roots(f, w)
    return min(roots, key=lambda z: abs(z - ref))


def inverse_branch_poly(f: MapSpec, j: int, w: complex) -> complex:
    """D-th root branch of w - c whose Böttcher angle lies in [j/D, (j+1)/D)."""
    from .rays import bottcher  # local import: rays depends on maps

    if abs(w - f.c) == 0:
        raise BranchCutError("w equals the critical value")
    D = f.degree
    best = None
    for z in poly_roots(f, w):
        theta = (cmath.phase(bottcher(f, z)) / TWO_PI) % 1.0
        # distance from theta to the sector [j/D, (j+1)/D)
        center = (j + 0.5) / D
        dist = abs((theta - center + 0.5) % 1.0 - 0.5)
        if best is None or dist < best[0]:
            best = (dist, z)
    return best[1]


def single_step_branch(f: MapSpec, target: complex):
    """The branch of f^{-1} that is continuous near ``target`` and fixes it as a preimage of f(target)."""
    if f.is_poly:
        return lambda w: poly_preimage_nearest(f, w, target)
    fc = apply(f, target)
    n = round((target.imag - cmath.log(fc - f.c).imag) / TWO_PI)
    return lambda w: inverse_branch_exp(f, n, w)


# ---------------------------------------------------------------------------
# itineraries
# ---------------------------------------------------------------------------

def itinerary(f: MapSpec, z: complex, length: int, tol: float = STRIP_TOL) -> list[int]:
    if f.is_poly:
        raise ValueError("itineraries are defined for exponential maps")
    out: list[int] = []
    real_orbit = z.imag == 0 and f.c.imag == 0
    for j in range(length):
        if j:
            if real_orbit and z.real > 709.0:
                # the real axis is invariant and lies in S_0
                out.extend([0] * (length - j))
                return out
            z = apply(f, z)
        n = strip_index(z)
        y = z.imag - TWO_PI * n
        if abs(y - math.pi) <= tol or abs(y + math.pi) <= tol:
            raise ItineraryError(f"itinerary undefined at step {j}: orbit on a strip boundary")
        if distance_to_slit(f, z) <= tol:
            raise ItineraryError(f"itinerary undefined at step {j}: orbit on the slit")
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# periodic points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PeriodicPoint:
    location: complex
    period: int
    multiplier: complex
    classification: str

    @property
    def mu(self) -> float:
        return abs(self.multiplier)

    @property
    def repelling(self) -> bool:
        return self.classification == "repelling"

    def to_dict(self) -> dict:
        return {
            "re": self.location.real,
            "im": self.location.imag,
            "period": self.period,
            "multiplier_re": self.multiplier.real,
            "multiplier_im": self.multiplier.imag,
            "classification": self.classification,
        }


def classify(multiplier: complex, margin: float = CLASS_MARGIN) -> str:
    m = abs(multiplier)
    if m < 1e-14:
        return "superattracting"
    if m > 1 + margin:
        return "repelling"
    if m < 1 - margin:
        return "attracting"
    return "parabolic-suspect"


def periodic_point(f: MapSpec, z: complex, p: int) -> PeriodicPoint:
    w, d = orbit_derivative(f, z, p)
    return PeriodicPoint(z, p, d, classify(d))


def cycle_of(f: MapSpec, point: PeriodicPoint) -> list[complex]:
    z = point.location
    out = [z]
    for _ in range(point.period - 1):
        z = apply(f, z)
        out.append(z)
    return out


def newton_periodic(f: MapSpec, z0: complex, p: int, tol: float = NEWTON_TOL,
                    maxiter: int = NEWTON_MAXITER) -> complex | None:
    z = complex(z0)
    for _ in range(maxiter):
        try:
            w, d = orbit_derivative(f, z, p)
        except OverflowError:
            return None
        g = w - z
        dg = d - 1
        if dg == 0 or not cmath.isfinite(g):
            return None
        step = g / dg
        z -= step
        if abs(step) < tol * max(1.0, abs(z)):
            w, _ = orbit_derivative(f, z, p)
            if abs(w - z) < 1e-10 * max(1.0, abs(z)):
                return z
    return None


def default_seeds(f: MapSpec, p: int, k_strips: int = 3) -> list[complex]:
    if f.is_poly:
        R = max(2.0, abs(f.c) ** (1 / f.degree) + 1.0)
        xs = np.linspace(-R, R, 9 + 4 * p)
        return [complex(x, y) for x in xs for y in xs]
    return [complex(math.log(TWO_PI * abs(k) + 2), TWO_PI * k) for k in range(-k_strips, k_strips + 1)]


def find_periodic_points(f: MapSpec, p: int, seeds=None, k_strips: int = 3,
                         exact_period: bool = True) -> list[PeriodicPoint]:
    """Newton on f^p(z) - z from each seed; deduplicated and sorted by location."""
    if p < 1:
        raise ValueError("period must be >= 1")
    if seeds is None:
        seeds = default_seeds(f, p, k_strips)
    found: list[complex] = []
    for s in seeds:
        z = newton_periodic(f, s, p)
        if z is None:
            continue
        if any(abs(z - q) < DEDUP_RADIUS for q in found):
            continue
        if exact_period and p > 1 and _true_period(f, z, p) != p:
            continue
        found.append(z)
    found.sort(key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    return [periodic_point(f, z, p) for z in found]


def _true_period(f: MapSpec, z: complex, p: int) -> int:
    w = z
    for k in range(1, p + 1):
        w = apply(f, w)
        if abs(w - z) < 1e-8 * max(1.0, abs(z)):
            return k
    return p


def exp_fixed_point_in_strip(f: MapSpec, k: int) -> PeriodicPoint | None:
    pts = find_periodic_points(f, 1, seeds=[complex(math.log(TWO_PI * abs(k) + 2), TWO_PI * k)])
    return pts[0] if pts else None


# ---------------------------------------------------------------------------
# linearization
# ---------------------------------------------------------------------------

@dataclass
class LinearizationData:
    center: PeriodicPoint
    radius: float
    distortion: float
    depth: int
    cycle: list[complex] = field(default_factory=list)

    @property
    def mu(self) -> float:
        return self.center.mu


def make_psi(f: MapSpec, point: PeriodicPoint):
    """Branch of f^{-p} fixing the periodic point, with derivative.

    Built as p single inverse steps, each the branch continuous at the
    corresponding cycle point.
    """
    cyc = cycle_of(f, point)
    p = point.period
    # step k maps a point near cyc[(k+1) % p] to a point near cyc[k]
    steps = [single_step_branch(f, cyc[k]) for k in range(p)]

    def psi(x: complex) -> tuple[complex, complex]:
        d = 1 + 0j
        for k in reversed(range(p)):
            x = steps[k](x)
            d /= derivative(f, x)
        return x, d

    return psi


def linearization_fit(f: MapSpec, point: PeriodicPoint, depth: int = 20, r0: float | None = None,
                      max_distortion: float = 2.0, r_min: float = 1e-6, n_samples: int = 24
                      ) -> LinearizationData:
    """Chart radius and distortion constant C with 1/(C mu^n) < |(psi^n)'| < C/mu^n."""
    if not point.repelling:
        raise LinearizationError(f"point is {point.classification}, not repelling")
    psi = make_psi(f, point)
    alpha = point.location
    mu = point.mu
    cyc = cycle_of(f, point)
    if r0 is None:
        # stay away from the critical point / other cycle points
        others = [abs(alpha - q) for q in cyc[1:]]
        crit = abs(alpha) if f.is_poly else abs(alpha - f.c)
        r0 = 0.5 * min([crit, 1.0] + others)
    r = r0
    while r >= r_min:
        C = _distortion(psi, alpha, mu, r, depth, n_samples)
        if C is not None and C * DISTORTION_SLACK <= max_distortion:
            return LinearizationData(point, r, C * DISTORTION_SLACK, depth, cyc)
        r /= 2
    raise LinearizationError("no admissible linearization radius above threshold")


def sample_disk(center: complex, r: float, n: int) -> list[complex]:
    pts = [center]
    for rho in (0.5 * r, r):
        for k in range(n):
            pts.append(center + rho * cmath.exp(2j * math.pi * (k + 0.5 * (rho < r)) / n))
    return pts


def _distortion(psi, alpha, mu, r, depth, n_samples):
    C = 1.0
    for x in sample_disk(alpha, r, n_samples):
        d = 1 + 0j
        y = x
        for n in range(1, depth + 1):
            try:
                y, dn = psi(y)
            except (BranchCutError, ZeroDivisionError, OverflowError):
                return None
            d *= dn
            if n == 1 and abs(y - alpha) >= r * (1 - 1e-12):
                return None
            v = abs(d) * mu**n
            C = max(C, v, 1 / v)
    return C


def validate_linearization(f: MapSpec, data: LinearizationData, depth: int, n_samples: int = 37) -> bool:
    """Re-check the fitted constant at another depth on a different sample set."""
    psi = make_psi(f, data.center)
    C = _distortion(psi, data.center.location, data.mu, data.radius, depth, n_samples)
    return C is not None and C <= data.distortion


# ---------------------------------------------------------------------------
# postsingular probe
# ---------------------------------------------------------------------------

@dataclass
class ProbeReport:
    bounded: bool
    iterations: int
    radius: float
    orbit: list[complex]
    heuristic: bool = True

    @property
    def max_abs(self) -> float:
        return max((abs(z) for z in self.orbit), default=0.0)


def postsingular_probe(f: MapSpec, n_iter: int = 10_000, radius: float = 10.0,
                       keep: int = 64) -> ProbeReport:
    """Iterate the singular value; bounded-up-to-N is a heuristic, not a proof."""
    z = f.c if not f.is_poly else 0j
    orbit = []
    for k in range(n_iter):
        try:
            z = apply(f, z)
        except OverflowError:
            return ProbeReport(False, k, radius, orbit)
        if not cmath.isfinite(z) or abs(z) > radius:
            orbit.append(z)
            return ProbeReport(False, k + 1, radius, orbit)
        if k < keep or k >= n_iter - keep:
            orbit.append(z)
    return ProbeReport(True, n_iter, radius, orbit)
