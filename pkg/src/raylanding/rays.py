"""Numerical dynamic rays.

Polynomial rays are preimages of straight rays under the Böttcher map;
exponential rays are limits of logarithm pullbacks of an asymptotic anchor.
Both are traced on a shared descending potential grid: the sample of ray
``s`` at level ``l`` is the preimage of the sample of ray ``shift(s)`` at
level ``l - m`` (one fundamental domain higher), chosen by continuity with
the sample of ``s`` at level ``l - 1``.  The top ``m`` levels are computed
directly from the asymptotics at large potential.
"""
from __future__ import annotations

import cmath
import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import maps
from .maps import MapSpec, TWO_PI
from .symbolic import ExpAddress, PolyAngle, shift

LOG_MAX = 709.0


class TraceError(RuntimeError):
    pass


class DomainError(ValueError):
    pass


# ---------------------------------------------------------------------------
# radial growth
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthModel:
    """F(t) = D t for polynomials, F(t) = e^t - 1 for exponentials."""

    kind: str
    degree: int = 2

    def F(self, t: float) -> float:
        if self.kind == "poly":
            return self.degree * t
        return math.expm1(t) if t <= LOG_MAX else math.inf

    def Finv(self, t: float) -> float:
        if self.kind == "poly":
            return t / self.degree
        return math.log1p(t)

    def iterate(self, t: float, k: int) -> float:
        """F^k(t); negative k iterates the inverse."""
        if self.kind == "poly":
            return t * float(self.degree) ** k
        step = self.F if k >= 0 else self.Finv
        for _ in range(abs(k)):
            t = step(t)
        return t


def growth_model(f: MapSpec) -> GrowthModel:
    return GrowthModel(f.kind, f.degree)


# ---------------------------------------------------------------------------
# Böttcher coordinate
# ---------------------------------------------------------------------------

def escape_radius(f: MapSpec) -> float:
    return max(2.0, abs(f.c) + 1.0)


def _bottcher_product(f: MapSpec, z: complex, depth: int) -> complex | None:
    """z * prod (1 + c/z_k^D)^(1/D^(k+1)) with principal powers; None if not valid at z."""
    D, c = f.degree, f.c
    if c == 0:
        return z
    logb = cmath.log(z)
    zk = z
    scale = 1.0
    for _ in range(depth):
        zD = zk**D
        u = c / zD
        if abs(u) >= 0.5:
            return None
        scale /= D
        term = scale * _clog1p(u)
        logb += term
        if abs(term) < 1e-18:
            break
        zk = zD + c
        if not cmath.isfinite(zk):
            break
    return cmath.exp(logb)


def bottcher(f: MapSpec, z: complex, depth: int = 80) -> complex:
    """Böttcher coordinate of an escaping point, asymptotic to the identity at infinity."""
    if not f.is_poly:
        raise ValueError("Böttcher coordinates are defined for polynomials")
    R0, w = escape_radius(f), z
    for _ in range(depth):
        if abs(w) > R0:
            break
        w = w**f.degree + f.c
    else:
        raise DomainError(f"point {z} does not escape within depth {depth}")
    b = _bottcher_product(f, z, depth)
    if b is not None:
        return b
    # continue the branch along the radial segment from far away down to z
    R = 4.0 * R0
    J = 64
    far = z * (R / abs(z))
    logb = cmath.log(_bottcher_product(f, far, depth))
    for j in range(J - 1, -1, -1):
        w = z * (R / abs(z)) ** (j / J)
        logb = _log_bottcher_near(f, w, logb, depth)
    return cmath.exp(logb)


def _log_bottcher_near(f: MapSpec, w: complex, ref_log: complex, depth: int) -> complex:
    D = f.degree
    wk = w
    for k in range(depth):
        b = _bottcher_product(f, wk, depth)
        if b is not None:
            lb = cmath.log(b)
            scale = float(D) ** k
            n = round((ref_log.imag * scale - lb.imag) / TWO_PI)
            return complex(lb.real / scale, (lb.imag + TWO_PI * n) / scale)
        wk = wk**D + f.c
    raise DomainError(f"point {w} does not escape within depth {depth}")


def potential(f: MapSpec, z: complex, depth: int = 200) -> float:
    """Green's function log|B(z)|, via log|f^n(z)| / D^n."""
    R = 1e8
    D = f.degree
    for n in range(depth):
        if abs(z) > R:
            b = _bottcher_product(f, z, 60)
            return math.log(abs(b)) / float(D) ** n
        z = z**D + f.c
    raise DomainError("point does not escape within depth")


def _clog1p(u: complex) -> complex:
    w = 1 + u
    if w == 1:
        return u
    return cmath.log(w) * (u / (w - 1))


# ---------------------------------------------------------------------------
# configuration and segments
# ---------------------------------------------------------------------------

@dataclass
class TraceConfig:
    substeps: int = 8            # samples per fundamental domain
    t_top: float | None = None   # potential where the direct asymptotics take over
    t_min: float | None = None   # floor of the potential grid
    max_levels: int = 4000
    K: float | None = None       # bound on |c|
    A: float = 1.0
    x: float = 0.0
    C_univ: float = 1.0
    refinement_tol: float = 1e-13
    max_depth: int = 64
    newton_tol: float = 1e-13

    def resolved_K(self, f: MapSpec) -> float:
        return abs(f.c) if self.K is None else self.K

    def resolved_t_top(self, f: MapSpec) -> float:
        K = self.resolved_K(f)
        floor = 2 * math.log(K + 3) + 0.5
        if f.is_poly:
            floor = max(floor, math.log(4 + 2 * abs(f.c)))
        if self.t_top is None:
            return floor
        if self.t_top <= 2 * math.log(K + 3):
            raise ValueError("t_top must exceed 2 log(K + 3)")
        return self.t_top

    def resolved_t_min(self, f: MapSpec) -> float:
        if self.t_min is not None:
            return self.t_min
        return 1e-4 if f.is_poly else 1e-3

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@dataclass(frozen=True)
class RaySample:
    t: float
    point: complex
    residual: float


@dataclass
class RaySegment:
    coordinate: PolyAngle | ExpAddress
    samples: list[RaySample]
    map: MapSpec
    config: TraceConfig = field(default_factory=TraceConfig)
    lowest_certified: float | None = None

    @property
    def potentials(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    @property
    def points(self) -> np.ndarray:
        return np.array([s.point for s in self.samples], dtype=complex)

    @property
    def max_residual(self) -> float:
        return max((s.residual for s in self.samples), default=0.0)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "re", "im", "residual"])
        for s in self.samples:
            w.writerow([repr(s.t), repr(s.point.real), repr(s.point.imag), repr(s.residual)])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "coordinate": str(self.coordinate),
            "coordinate_kind": "angle" if isinstance(self.coordinate, PolyAngle) else "address",
            "map": self.map.to_dict(),
            "config": self.config.to_dict(),
            "samples": [[s.t, s.point.real, s.point.imag, s.residual] for s in self.samples],
        }
        return json.dumps(doc, sort_keys=True, indent=1)


# ---------------------------------------------------------------------------
# direct samples at large potential
# ---------------------------------------------------------------------------

def exp_anchor_residual(f: MapSpec, address: ExpAddress, t: float, depth: int) -> complex:
    """delta = g_s(t) - t - 2 pi i s_0 using ``depth`` logarithm pullbacks of the anchor.

    Uses delta_k = log1p(e^{-t_k} (2 pi i s_{k+1} - 1 - c + delta_{k+1})), an exact
    rewrite of g = L_{s_0}(g_{shift s}(F t)) that keeps full relative precision
    of the tiny correction at large potential.
    """
    ts = [t]
    for _ in range(depth):
        nxt = math.expm1(ts[-1]) if ts[-1] <= LOG_MAX else math.inf
        ts.append(nxt)
        if math.isinf(nxt):
            break
    delta = 0j
    for k in range(len(ts) - 2, -1, -1):
        tk = ts[k]
        et = math.exp(-tk)
        if et == 0.0:
            delta = 0j
            continue
        u = et * (TWO_PI * 1j * address.entry(k + 1) - 1 - f.c + delta)
        delta = _clog1p(u)
    return delta


def exp_direct_point(f: MapSpec, address: ExpAddress, t: float, tol: float = 1e-13,
                     max_depth: int = 64) -> tuple[complex, complex, int]:
    """(g_s(t), delta, depth) with depth increased until two successive depths agree."""
    N = 1
    prev = exp_anchor_residual(f, address, t, N)
    while N < max_depth:
        cur = exp_anchor_residual(f, address, t, N + 2)
        if abs(cur - prev) <= tol * max(1.0, t):
            return t + TWO_PI * 1j * address.entry(0) + cur, cur, N + 2
        prev, N = cur, N + 2
    raise TraceError(f"anchor pullback did not converge at t = {t}")


def exp_point_by_branches(f: MapSpec, address: ExpAddress, t: float, depth: int) -> complex:
    """L_{s_0} o ... o L_{s_{N-1}} (F^N(t) + 2 pi i s_N) evaluated literally.

    The anchor potential is capped where it would overflow.
    """
    ts = [t]
    for _ in range(depth):
        if ts[-1] > LOG_MAX:
            break
        ts.append(math.expm1(ts[-1]))
    N = len(ts) - 1
    w = complex(ts[N], TWO_PI * address.entry(N))
    for k in range(N - 1, -1, -1):
        w = maps.inverse_branch_exp(f, address.entry(k), w)
    return w


def poly_direct_point(f: MapSpec, angle: PolyAngle, t: float, tol: float = 1e-13) -> complex:
    """Solve B(z) = exp(t + 2 pi i s) by Newton's method, starting at B ~ id."""
    w = cmath.exp(complex(t, TWO_PI * float(angle.value)))
    z = w
    for _ in range(100):
        b = _bottcher_product(f, z, 80)
        if b is None:
            raise TraceError("Böttcher product invalid; increase t_top")
        h = 1e-7 * abs(z)
        db = (_bottcher_product(f, z + h, 80) - _bottcher_product(f, z - h, 80)) / (2 * h)
        step = (b - w) / db
        z -= step
        if abs(step) < tol * abs(z):
            return z
    raise TraceError(f"Newton did not converge for angle {angle} at t = {t}")


# ---------------------------------------------------------------------------
# tracer
# ---------------------------------------------------------------------------

class RayTracer:
    """Cached ray samples on the grid t_l = F^{-(l // m)}(v_{l % m}).

    ``v_0 = F(t_top) > v_1 > ... > v_{m-1} > t_top`` is a geometric (poly) or
    log-geometric (exp) subdivision of the top fundamental domain.
    """

    def __init__(self, f: MapSpec, config: TraceConfig | None = None, anchor: float | None = None):
        self.f = f
        self.config = config or TraceConfig()
        self.F = growth_model(f)
        m = self.m = self.config.substeps
        t_top = self.config.resolved_t_top(f)
        if anchor is not None:
            # put `anchor` exactly on the grid (at a level that is a multiple of m)
            k = 0
            t = anchor
            while t < t_top:
                t = self.F.F(t)
                k += 1
            t_top = t
            self.anchor_levels = (k + 1) * m
        else:
            self.anchor_levels = None
        self.t_top = t_top
        top = self.F.F(t_top)
        if f.is_poly:
            self.band = [top * float(f.degree) ** (-i / m) for i in range(m)]
        else:
            lt, lb = math.log(top), math.log(t_top)
            self.band = [math.exp(lt - (lt - lb) * i / m) for i in range(m)]
        self._t: list[float] = list(self.band)
        self._samples: dict = {}
        self._direct_cache: dict = {}

    # grid -----------------------------------------------------------------
    def t(self, level: int) -> float:
        if level < 0:
            k, i = divmod(level, self.m)  # k < 0
            return self.F.iterate(self.band[i], -k)
        while len(self._t) <= level:
            self._t.append(self.F.Finv(self._t[len(self._t) - self.m]))
        return self._t[level]

    def level_below(self, t: float) -> int:
        """Largest level whose potential is >= t (levels increase as t decreases)."""
        lvl = 0
        while self.t(lvl + 1) >= t * (1 - 1e-12):
            lvl += 1
            if lvl > self.config.max_levels * 4:
                break
        return lvl

    def floor_level(self) -> int:
        tmin = self.f and self.config.resolved_t_min(self.f)
        lvl = 0
        while lvl < self.config.max_levels and self.t(lvl + 1) >= tmin:
            lvl += 1
        return lvl

    # samples ----------------------------------------------------------------
    def direct(self, coord, t: float) -> complex:
        key = (coord, t)
        hit = self._direct_cache.get(key)
        if hit is None:
            if self.f.is_poly:
                hit = poly_direct_point(self.f, coord, t, self.config.newton_tol)
            else:
                hit = exp_direct_point(self.f, coord, t, self.config.refinement_tol,
                                       self.config.max_depth)[0]
            self._direct_cache[key] = hit
        return hit

    def _step(self, coord, w: complex, ref: complex) -> complex:
        if self.f.is_poly:
            return maps.poly_preimage_nearest(self.f, w, ref)
        return maps.exp_preimage_nearest(self.f, w, ref)[1]

    def ensure(self, coord, level: int) -> None:
        have = self._samples.get(coord)
        if have is not None and len(have) > level:
            return
        m = self.m
        need = {coord: level}
        stack = [coord]
        while stack:
            y = stack.pop()
            z = shift(y)
            lz = need[y] - m
            if lz < 0:
                continue
            hz = len(self._samples.get(z, ())) - 1
            if lz > max(need.get(z, -1), hz):
                need[z] = lz
                stack.append(z)
        todo = [(y, lv) for y, lv in need.items() if len(self._samples.get(y, ())) <= lv]
        for y, _ in todo:
            self._samples.setdefault(y, [])
        if not todo:
            return
        lo = min(len(self._samples[y]) for y, _ in todo)
        hi = max(lv for _, lv in todo)
        shifts = {y: shift(y) for y, _ in todo}
        for lvl in range(lo, hi + 1):
            for y, lv in todo:
                s = self._samples[y]
                if len(s) != lvl or lvl > lv:
                    continue
                if lvl < m:
                    s.append(self.direct(y, self.band[lvl]))
                else:
                    w = self._samples[shifts[y]][lvl - m]
                    s.append(self._step(y, w, s[lvl - 1]))

    def point(self, coord, level: int) -> complex:
        if level < 0:
            return self.direct(coord, self.t(level))
        self.ensure(coord, level)
        return self._samples[coord][level]

    def points(self, coord, lo: int, hi: int) -> np.ndarray:
        """Samples for levels lo..hi inclusive (lo may be negative)."""
        if hi >= 0:
            self.ensure(coord, hi)
        out = [self.point(coord, l) for l in range(lo, min(hi, -1) + 1)] if lo < 0 else []
        if hi >= 0:
            out.extend(self._samples[coord][max(lo, 0):hi + 1])
        return np.array(out, dtype=complex)

    def residual(self, coord, level: int) -> float:
        """Relative functional-equation residual |f(g_s(t)) - g_{shift s}(F t)| at one sample."""
        z = self.point(coord, level)
        try:
            fz = maps.apply(self.f, z)
        except OverflowError:
            return self.asymptotic_residual(coord, level)
        w = self.point(shift(coord), level - self.m)
        return abs(fz - w) / max(1.0, abs(w))

    def asymptotic_residual(self, coord, level: int) -> float:
        if self.f.is_poly:
            return 0.0
        t = self.t(level)
        if level < self.m:
            return abs(exp_direct_point(self.f, coord, t, self.config.refinement_tol)[1])
        return abs(self.point(coord, level) - t - TWO_PI * 1j * coord.entry(0))

    def fundamental_domain(self, coord, level: int, p: int = 1) -> np.ndarray:
        """Polyline of g_s on [t_level, F^p(t_level)], i.e. levels level-p*m..level."""
        return self.points(coord, level - p * self.m, level)

    def segment(self, coord, t_lo: float | None = None, t_hi: float | None = None) -> RaySegment:
        cfg = self.config
        lo_level = self.floor_level() if t_lo is None else self.level_below(t_lo)
        if t_lo is not None and self.t(lo_level) < t_lo * (1 - 1e-12):
            lo_level -= 1
        hi_level = 0
        if t_hi is not None:
            while self.t(hi_level - 1) <= t_hi * (1 + 1e-12) and math.isfinite(self.t(hi_level - 1)):
                hi_level -= 1
                if not self.f.is_poly and self.t(hi_level - 1) > 600:
                    break
            while hi_level < lo_level and self.t(hi_level) > t_hi * (1 + 1e-12):
                hi_level += 1
        samples = []
        for lvl in range(lo_level, hi_level - 1, -1):
            z = self.point(coord, lvl)
            samples.append(RaySample(self.t(lvl), z, self.residual(coord, lvl)))
        seg = RaySegment(coord, samples, self.f, cfg)
        seg.lowest_certified = samples[0].t if samples else None
        return seg


def check_connected(f: MapSpec, n_iter: int = 500) -> bool:
    z = 0j
    R = escape_radius(f)
    for _ in range(n_iter):
        z = z**f.degree + f.c
        if abs(z) > R:
            return False
    return True


def trace_poly_ray(f: MapSpec, angle: PolyAngle, t_lo: float | None = None,
                   t_hi: float | None = None, config: TraceConfig | None = None,
                   tracer: RayTracer | None = None) -> RaySegment:
    if not f.is_poly:
        raise ValueError("trace_poly_ray needs a polynomial map")
    if angle.base != f.degree:
        angle = PolyAngle(angle.value, f.degree)
    if not check_connected(f):
        raise DomainError("critical orbit escapes: Julia set is disconnected")
    tracer = tracer or RayTracer(f, config)
    return tracer.segment(angle, t_lo, t_hi)


def trace_exp_ray(f: MapSpec, address: ExpAddress, t_lo: float | None = None,
                  t_hi: float | None = None, config: TraceConfig | None = None,
                  tracer: RayTracer | None = None) -> RaySegment:
    if f.is_poly:
        raise ValueError("trace_exp_ray needs an exponential map")
    tracer = tracer or RayTracer(f, config)
    return tracer.segment(address, t_lo, t_hi)


def trace_ray(f: MapSpec, coord, t_lo=None, t_hi=None, config=None) -> RaySegment:
    if f.is_poly:
        return trace_poly_ray(f, coord, t_lo, t_hi, config)
    return trace_exp_ray(f, coord, t_lo, t_hi, config)


# ---------------------------------------------------------------------------
# fundamental domains
# ---------------------------------------------------------------------------

def fundamental_domain(f: MapSpec, coord, t: float, config: TraceConfig | None = None,
                       p: int = 1):
    """The arc of the ray between potentials t and F^p(t), as a Curve."""
    from .geometry import Curve

    if not t > 0:
        raise DomainError("potential must be positive")
    tracer = RayTracer(f, config, anchor=t)
    level = tracer.anchor_levels
    return Curve(tracer.fundamental_domain(coord, level, p))


def segment_fundamental_domain(segment: RaySegment, t: float):
    """Sub-polyline of a traced segment between t and F(t)."""
    from .geometry import Curve

    F = growth_model(segment.map)
    ts = segment.potentials
    hi = F.F(t)
    if len(ts) == 0 or ts[0] > t * (1 + 1e-9) or ts[-1] < hi * (1 - 1e-9):
        raise TraceError(f"segment does not cover [{t}, {hi}]")
    mask = (ts >= t * (1 - 1e-9)) & (ts <= hi * (1 + 1e-9))
    return Curve(segment.points[mask])


# ---------------------------------------------------------------------------
# estimates for logarithm pullbacks
# ---------------------------------------------------------------------------

@dataclass
class PullbackEstimateReport:
    m: int
    prefix: list[int]
    C: float
    eps: float
    T: float
    margins: dict
    passed: bool


def estimate_constant_Cprime(C: float, re_c: float) -> float:
    """C' = 2 sum_j 1/(C^(2^j) - Re c)."""
    total = 0.0
    logC = math.log(C)
    for j in range(64):
        e = logC * 2.0**j
        if e > LOG_MAX:
            break
        total += 1.0 / (math.exp(e) - re_c)
    return 2 * total


def verify_pullback_estimates(f: MapSpec, base: ExpAddress, prefix: list[int], t_base: float,
                              C: float, eps: float, T: float) -> PullbackEstimateReport:
    """Check the real-part and modulus bounds, the derivative bound and Re f(w) >= Re c + e^{Re w}/2.

    ``prefix`` is a_m ... a_1 (a_1 applied first).  The point is
    z = g_base(F^m(t_base)); since F^m(t_base) is astronomically large for
    admissible T, every quantity is carried as a small correction relative to
    the all-zero pullback L_0^j(z) = g_{0^j base}(F^{m-j}(t_base)), which keeps
    the comparison exact at double precision.
    """
    if f.is_poly:
        raise ValueError("pullback estimates concern exponential maps")
    rc = f.c.real
    need = max(2.0, rc + 4.0, 8 * math.pi**2 / eps)
    if not C >= need:
        raise ValueError(f"C = {C} must be at least max(2, Re c + 4, 8 pi^2/eps) = {need}")
    if not T - eps > C + rc:
        raise ValueError("T must satisfy T - eps > C + Re c")
    if not t_base > T:
        raise ValueError("t_base must exceed T")
    m = len(prefix)
    a = list(reversed(prefix))  # a[0] = a_1
    F = growth_model(f)

    # potentials tau_j of Y_j = L_0^j(z): tau_j = F^{m-j}(t_base)
    tau = [F.iterate(t_base, m - j) for j in range(m + 1)]

    def Y(j: int) -> complex | None:
        if math.isinf(tau[j]):
            return None
        addr = base
        for _ in range(j):
            addr = addr.prepend(0)
        return exp_direct_point(f, addr, tau[j])[0]

    Ys = [Y(j) for j in range(m + 1)]

    def inv_Yc(j):
        return 0j if Ys[j] is None else 1 / (Ys[j] - f.c)

    # Delta_j = X_j - Y_j with X_j = L_{a_j} o ... o L_{a_1}(z)
    deltas = [0j]
    for j in range(m):
        d = _clog1p(deltas[j] * inv_Yc(j)) + TWO_PI * 1j * a[j]
        deltas.append(d)
    margins: dict = {}
    ok = True

    # real part: Re X_m - Re c >= Re Y_m - Re c - eps/2 > C
    m1a = deltas[m].real + eps / 2
    m1b = (Ys[m].real - rc - eps / 2 - C) if Ys[m] is not None else math.inf
    margins["real_part_lower"] = m1a
    margins["real_part_floor"] = m1b
    ok &= m1a >= 0 and m1b > 0

    # modulus, for every intermediate j: |X_j - c| >= |Y_j - c| - eps
    m2 = math.inf
    for j in range(1, m + 1):
        if Ys[j] is None:
            continue  # |X_j - c| and |Y_j - c| agree beyond double range
        yc = abs(Ys[j] - f.c)
        xc = yc * abs(1 + deltas[j] * inv_Yc(j))
        m2 = min(m2, xc - yc + eps)
    margins["modulus"] = m2
    ok &= m2 >= 0

    # derivative: log|(L_a)'(z)| - log|(L_0^m)'(z)| <= eps C'
    log_ratio = 0.0
    for j in range(m):
        log_ratio -= math.log(abs(1 + deltas[j] * inv_Yc(j)))
    Cp = estimate_constant_Cprime(C, rc)
    margins["derivative"] = eps * Cp - log_ratio
    margins["Cprime"] = Cp
    ok &= margins["derivative"] >= 0

    # real growth: for w = Y_j with f(w) = Y_{j-1} in S_0:  Re f(w) >= Re c + e^{Re w}/2 >= (Re w)^2
    m7 = math.inf
    for j in range(2, m + 1):
        if Ys[j] is None:
            continue
        w = Ys[j]
        if w.real <= C:
            continue
        if Ys[j - 1] is not None:
            lhs = Ys[j - 1].real
            m7 = min(m7, math.log(lhs - rc) - (w.real - math.log(2)))
        else:
            # log(Re f(w) - Re c) = Re w + log|1 + (c - 1 ... )e^{-Re w}| to double precision
            m7 = min(m7, math.log(2) + math.log1p(-math.exp(-w.real)))
        m7 = min(m7, (w.real - math.log(2)) - 2 * math.log(w.real))
    margins["real_growth"] = m7
    ok &= m7 >= 0
    return PullbackEstimateReport(m, list(prefix), C, eps, T, margins, bool(ok))


def estimate_threshold(f: MapSpec, eps: float) -> tuple[float, float]:
    """Smallest admissible (C, T) for the logarithm-pullback estimates."""
    C = max(2.0, f.c.real + 4.0, 8 * math.pi**2 / eps)
    T = C + f.c.real + eps + 1.0
    return C, T
