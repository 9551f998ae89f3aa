"""Landing of periodic rays: detection, the pullback construction, audits."""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import maps, rays, symbolic
from .maps import MapSpec, PeriodicPoint, TWO_PI
from .symbolic import ExpAddress, PolyAngle, shift


class LandingError(RuntimeError):
    pass


def coord_period(coord) -> int:
    if isinstance(coord, PolyAngle):
        return coord.period
    return coord.period_length


def coord_is_periodic(coord) -> bool:
    if isinstance(coord, PolyAngle):
        return coord.preperiod == 0
    return coord.is_periodic


# ---------------------------------------------------------------------------
# single-ray landing
# ---------------------------------------------------------------------------

@dataclass
class LandingConfig:
    domains: int | None = None  # fundamental domains traced below t_top
    substeps: int = 8
    nu_min: float = 1.05
    r2_min: float = 0.99
    min_levels: int = 12
    radius_floor: float = 1e-13  # relative to max(1, |limit|)
    min_levels_at_floor: int = 6  # enough when the radii reach the floor (strong contraction)

    def resolved_domains(self, f: MapSpec) -> int:
        if self.domains is not None:
            return self.domains
        return 80 if f.is_poly else 40


@dataclass
class LandingVerdict:
    coordinate: object
    status: str
    point: complex | None
    A: float
    nu: float
    r2: float
    levels: int
    radii: list[float]
    error_estimate: float

    @property
    def landed(self) -> bool:
        return self.status == "landed"

    def to_dict(self) -> dict:
        return {
            "coordinate": str(self.coordinate),
            "status": self.status,
            "point": None if self.point is None else [self.point.real, self.point.imag],
            "A": self.A,
            "nu": self.nu,
            "r2": self.r2,
            "levels": self.levels,
            "error_estimate": self.error_estimate,
        }


def _aitken_limit(xs: np.ndarray, q: int, scale: float) -> tuple[complex, float]:
    """Limit of a sequence converging geometrically along each residue class mod q."""
    noise = 1e-13 * scale
    ests = []
    for k in range(len(xs) - 2 * q):
        a, b, c = xs[k], xs[k + q], xs[k + 2 * q]
        d1, d2 = b - a, c - b
        if abs(d1) < 1e3 * noise:
            if ests:
                break
            ests.append(complex(c))
            continue
        rho = d2 / d1
        if abs(1 - rho) < 1e-3:
            continue
        ests.append(complex(c + d2 * rho / (1 - rho)))
    if not ests:
        return complex(xs[-1]), math.inf
    if len(ests) <= q:
        return ests[-1], abs(xs[-1] - ests[-1])
    return ests[-1], abs(ests[-1] - ests[-1 - q])


def fit_geometric(radii: list[float], start: int = 1) -> tuple[float, float, float, int]:
    """Least-squares log r_k = a - k log nu over k >= start; returns (A, nu, R^2, n)."""
    ks = np.arange(start, start + len(radii), dtype=float)
    r = np.asarray(radii, dtype=float)
    if len(r) < 3:
        return math.nan, math.nan, 0.0, len(r)
    y = np.log(r)
    slope, icpt = np.polyfit(ks, y, 1)
    pred = icpt + slope * ks
    ss_res = float(((y - pred) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1 - ss_res / ss_tot if ss_tot > 0 else 0.0
    nu = math.exp(-slope)
    A = float(np.max(r * nu**ks))
    return A, nu, r2, len(r)


def land_ray(f: MapSpec, coord, config: LandingConfig | None = None,
             tracer: rays.RayTracer | None = None) -> LandingVerdict:
    """Trace down through fundamental domains and fit the geometric shrinking of I_{t_k}."""
    cfg = config or LandingConfig()
    if tracer is None:
        tracer = rays.RayTracer(f, rays.TraceConfig(substeps=cfg.substeps))
    m = tracer.m
    K = cfg.resolved_domains(f)
    q = max(1, coord_period(coord))
    try:
        tracer.ensure(coord, K * m)
    except (maps.BranchCutError, rays.TraceError, OverflowError, ZeroDivisionError) as exc:
        return LandingVerdict(coord, f"not-converged: {exc}", None, math.nan, math.nan, 0.0, 0, [], math.inf)
    pts = tracer.points(coord, 0, K * m)
    ends = pts[::m]
    scale = max(1.0, float(np.max(np.abs(ends[-4:]))))
    limit, err = _aitken_limit(ends, q, scale)
    radii = []
    for k in range(1, K + 1):
        dom = pts[(k - 1) * m:k * m + 1]
        radii.append(float(np.max(np.abs(dom - limit))))
    floor = cfg.radius_floor * max(1.0, abs(limit))
    usable, at_floor = [], False
    for r in radii[1:]:
        if r <= floor:
            at_floor = True
            break
        usable.append(r)
    A, nu, r2, n = fit_geometric(usable, start=2)
    need = cfg.min_levels_at_floor if at_floor else cfg.min_levels
    ok = n >= need and nu > cfg.nu_min and r2 > cfg.r2_min and err < 1e-7 * scale
    status = "landed" if ok else "not-converged"
    return LandingVerdict(coord, status, limit if ok else None, A, nu, r2, n, radii, err)


# ---------------------------------------------------------------------------
# pullback construction
# ---------------------------------------------------------------------------

@dataclass
class PullbackConfig:
    budget: int = 48            # applications of psi
    seed: int = 0
    cloud: int = 2000
    forward_budget: int = 60
    hit_radius: float = 0.1
    substeps: int = 8
    cycle_window: int = 64
    landing: LandingConfig = field(default_factory=LandingConfig)
    landing_tol: float = 1e-6
    property1_tol: float = 1e-8
    u_radius: float | None = None    # override for the radius of U'
    exp_window: int = 3

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "landing"}
        d["landing"] = {k: getattr(self.landing, k) for k in self.landing.__dataclass_fields__}
        return d


@dataclass
class LandingSet:
    point: PeriodicPoint
    coordinates: list
    period: int

    def to_dict(self) -> dict:
        return {
            "point": self.point.to_dict(),
            "coordinates": [str(c) for c in self.coordinates],
            "period": self.period,
        }


@dataclass
class PullbackRun:
    target: PeriodicPoint
    chart_radius: float
    distortion: float
    u_prime_radius: float
    u_radius: float
    eps: float
    t_eps: float | None
    seed_coordinate: object
    seed_level: int
    t0: float
    forward_steps: int
    history: list
    digits: list[int]
    curve_errors: list[float]      # Property 1: traced vs pulled-back curve
    curve_extent: list[float]      # Property 2: sup |gamma_n - alpha|
    radii: list[float]             # Property 3: containment radii of I_{t_k}(g_{s_n})
    slope: float
    slope_r2: float
    coherence: bool
    symbolic_ok: bool
    cycle: tuple[int, list] | None
    limits: list
    verdicts: list[LandingVerdict]
    M: int | None = None

    @property
    def mu(self) -> float:
        return self.target.mu

    def property_checks(self) -> dict:
        bound = [self.distortion * 2 * self.u_prime_radius / self.mu**k for k in range(len(self.radii))]
        noise = 1e-12 * max(1.0, abs(self.target.location))
        return {
            "property1": max(self.curve_errors, default=0.0),
            "property2": all(e < self.u_prime_radius for e in self.curve_extent),
            "property3": all(r <= b + noise for r, b in zip(self.radii, bound)),
            "coherence": self.coherence,
            "symbolic": self.symbolic_ok,
        }

    def to_dict(self) -> dict:
        return {
            "target": self.target.to_dict(),
            "chart_radius": self.chart_radius,
            "distortion": self.distortion,
            "u_prime_radius": self.u_prime_radius,
            "u_radius": self.u_radius,
            "eps": self.eps,
            "t_eps": self.t_eps,
            "seed": {"coordinate": str(self.seed_coordinate), "level": self.seed_level,
                     "t0": self.t0, "forward_steps": self.forward_steps},
            "digits": self.digits,
            "curve_error_max": max(self.curve_errors, default=0.0),
            "curve_extent_max": max(self.curve_extent, default=0.0),
            "radii": self.radii,
            "slope": self.slope,
            "slope_r2": self.slope_r2,
            "log_mu": math.log(self.mu),
            "checks": self.property_checks(),
            "cycle": None if self.cycle is None else {"period": self.cycle[0], "block": list(self.cycle[1])},
            "limits": [str(c) for c in self.limits],
            "verdicts": [v.to_dict() for v in self.verdicts],
            "M": self.M,
        }


def reference_coordinate(f: MapSpec):
    return PolyAngle(Fraction(0), f.degree) if f.is_poly else ExpAddress.periodic(0)


def candidate_preimages(f: MapSpec, coord, z: complex, window: int) -> list:
    if f.is_poly:
        return symbolic.preimages(coord)
    j0 = maps.strip_index(z)
    return symbolic.preimages(coord, (j0 - window, j0 + window))


def first_digit(coord) -> int:
    if isinstance(coord, PolyAngle):
        return coord.first_digit
    return coord.entry(0)


def match_preimage(f: MapSpec, tracer: rays.RayTracer, coord, level: int, z: complex,
                   window: int = 3, tol: float = 1e-8):
    """The preimage coordinate of ``coord`` whose traced sample at ``level`` is z."""
    for w in (window, 4 * window):
        best = None
        for cand in candidate_preimages(f, coord, z, w):
            d = abs(tracer.point(cand, level) - z)
            if best is None or d < best[0]:
                best = (d, cand)
        if best is not None and best[0] <= tol * max(1.0, abs(z)):
            return best[1]
        if f.is_poly:
            break
    raise LandingError(f"no preimage ray of {coord} passes through {z}")


def _nearest_preimage(f: MapSpec, w: complex, ref: complex) -> complex:
    if f.is_poly:
        return maps.poly_preimage_nearest(f, w, ref)
    return maps.exp_preimage_nearest(f, w, ref)[1]


def _uniform_ball(rng: np.random.Generator, center: complex, radius: float, n: int) -> np.ndarray:
    r = radius * np.sqrt(rng.random(n))
    th = TWO_PI * rng.random(n)
    return center + r * np.exp(1j * th)


def _forward(f: MapSpec, z: np.ndarray) -> np.ndarray:
    if f.is_poly:
        return z**f.degree + f.c
    with np.errstate(over="ignore", invalid="ignore"):
        re = np.minimum(z.real, 700.0)
        return np.exp(re + 1j * z.imag) + f.c


def find_seed(f: MapSpec, tracer: rays.RayTracer, alpha: complex, u_radius: float,
              cfg: PullbackConfig, ref_levels: tuple[int, int]):
    """A ray point inside U = B(alpha, u_radius), found by imaging a cloud forward.

    Returns (coordinate, level, forward steps).
    """
    rng = np.random.default_rng(cfg.seed)
    cloud = _uniform_ball(rng, alpha, u_radius, cfg.cloud)
    ref = reference_coordinate(f)
    lo, hi = ref_levels
    ref_pts = tracer.points(ref, lo, hi)
    orbit = [cloud]
    for N in range(1, cfg.forward_budget + 1):
        img = _forward(f, orbit[-1])
        orbit.append(img)
        finite = np.isfinite(img)
        d = np.abs(img[:, None] - ref_pts[None, :])
        d[~finite] = np.inf
        idx = np.argmin(d, axis=1)
        dist = d[np.arange(len(img)), idx]
        for i in np.argsort(dist, kind="stable"):
            if dist[i] > cfg.hit_radius:
                break
            found = _pull_back_hit(f, tracer, orbit, int(i), ref, lo + int(idx[i]), N, cfg)
            if found is not None:
                s0, lvl = found
                z0 = tracer.point(s0, lvl)
                if abs(z0 - alpha) < u_radius:
                    return s0, lvl, N
    raise LandingError("seed search exhausted its forward budget")


def _pull_back_hit(f, tracer, orbit, i, ref, level, N, cfg):
    m = tracer.m
    coord = ref
    z = tracer.point(ref, level)
    try:
        for k in range(N - 1, -1, -1):
            z = _nearest_preimage(f, z, complex(orbit[k][i]))
            level += m
            coord = match_preimage(f, tracer, coord, level, z, cfg.exp_window)
    except (LandingError, maps.BranchCutError, rays.TraceError, OverflowError):
        return None
    return coord, level


def _psi_steps(f: MapSpec, target: PeriodicPoint):
    """Single inverse steps composing psi, in application order."""
    cyc = maps.cycle_of(f, target)
    p = target.period
    return [maps.single_step_branch(f, cyc[k]) for k in reversed(range(p))]


def pullback_landing(f: MapSpec, target: PeriodicPoint, config: PullbackConfig | None = None
                     ) -> tuple[LandingSet, PullbackRun]:
    cfg = config or PullbackConfig()
    if not target.repelling:
        raise LandingError("target must be repelling")
    alpha = target.location
    p = target.period
    lin = maps.linearization_fit(f, target)
    steps = _psi_steps(f, target)

    def psi(x: complex) -> complex:
        for st in steps:
            x = st(x)
        return x

    # (i) U' and U = psi(U')
    rp = lin.radius / 2 if cfg.u_radius is None else min(cfg.u_radius, lin.radius / 2)
    ring = [alpha + rp * cmath.exp(2j * math.pi * k / 256) for k in range(256)]
    ru = max(abs(psi(x) - alpha) for x in ring)
    eps = rp - ru
    if eps <= 0:
        raise LandingError("psi does not map U' into itself")

    tracer = rays.RayTracer(f, rays.TraceConfig(substeps=cfg.substeps))
    m = tracer.m
    ref = reference_coordinate(f)
    ref_levels = _reference_band(f, tracer)

    # (iii) seed; (ii) its fundamental domain must be shorter than eps and sit in U'
    s0, lvl0, N0 = find_seed(f, tracer, alpha, ru, cfg, ref_levels)
    seed_arc = tracer.points(s0, lvl0 - p * m, lvl0)
    seed_len = float(np.abs(np.diff(seed_arc)).sum())
    if seed_len >= eps or np.max(np.abs(seed_arc - alpha)) >= rp:
        raise LandingError("seed fundamental domain does not fit inside U'")
    t_eps = _t_eps_estimate(tracer, s0, lvl0, p, eps)

    # (iv) gamma_n := psi(gamma_{n-1}) u I_{t0}(g_{s_n})
    gamma = list(seed_arc)     # levels lvl0 - p m .. lvl0
    top = lvl0 - p * m
    coords = [s0]
    digits: list[int] = []
    errors, extent = [], [float(np.max(np.abs(seed_arc - alpha)))]
    coherent = True
    cur = s0
    for n in range(1, cfg.budget + 1):
        # pull the whole curve back; track coordinate per single step via its top point
        for k, st in enumerate(steps):
            gamma = [st(x) for x in gamma]
            lvl_top = top + (k + 1) * m
            cur = match_preimage(f, tracer, cur, lvl_top, gamma[0], cfg.exp_window)
            digits.append(first_digit(cur))
            coherent &= _coherent(f, tracer, cur)
        # ensure the arc now begins one psi-step lower and append the new top domain
        top_traced = tracer.points(cur, lvl0 - p * m, lvl0 + n * p * m)
        pulled = np.array(gamma, dtype=complex)
        errors.append(float(np.max(np.abs(top_traced[p * m:] - pulled))))
        gamma = list(top_traced)
        extent.append(float(np.max(np.abs(top_traced - alpha))))
        coords.append(cur)

    # symbolic check sigma^{p n} s_n = s_0
    symbolic_ok = all(symbolic.shift_n(c, p * n) == s0 for n, c in enumerate(coords))

    # (v) containment radii along the final curve
    final = coords[-1]
    radii = []
    for k in range(cfg.budget + 1):
        arc = tracer.points(final, lvl0 + (k - 1) * p * m, lvl0 + k * p * m)
        radii.append(float(np.max(np.abs(arc - alpha))))
    slope, r2 = _log_slope(radii, floor=1e-11 * max(1.0, abs(alpha)))

    window = min(cfg.cycle_window, len(digits) // 2)
    cyc = symbolic.detect_cycle(digits, window)
    limits, verdicts = [], []
    if cyc is not None:
        q = cyc[0]
        if q % p:
            q = q * p // math.gcd(q, p)
        L = len(digits)
        seen = set()
        for K in range(L, L - q, -1):
            if K % p:
                continue
            block = [digits[K - 1 - i] for i in range(q)]
            c = _periodic_coord(f, block)
            if c not in seen:
                seen.add(c)
                limits.append(c)
        limits.sort(key=_coord_key)
        for c in limits:
            verdicts.append(land_ray(f, c, cfg.landing))
        cyc = (q, cyc[1])
    M = None
    if not f.is_poly:
        M = _address_bound(f, s0, alpha, rp)
    run = PullbackRun(target, lin.radius, lin.distortion, rp, ru, eps, t_eps, s0, lvl0, tracer.t(lvl0),
                      N0, coords, digits, errors, extent, radii, slope, r2, coherent, symbolic_ok, cyc,
                      limits, verdicts, M)
    good = [v.coordinate for v in verdicts
            if v.landed and abs(v.point - alpha) < cfg.landing_tol]
    period = coord_period(good[0]) if good else 0
    return LandingSet(target, good, period), run


def _coord_key(c):
    if isinstance(c, PolyAngle):
        return (c.value,)
    return (tuple(c.preperiod), tuple(c.period))


def _periodic_coord(f: MapSpec, block: list[int]):
    if f.is_poly:
        return symbolic.periodic_angle(block, f.degree)
    return ExpAddress.periodic(*block)


def _reference_band(f: MapSpec, tracer: rays.RayTracer) -> tuple[int, int]:
    """Levels of the reference ray spanning a few fundamental domains at moderate potential.

    Exponential orbits leaving a neighbourhood of the Julia set escape along the
    real direction, so the band also reaches up to potential ~30 there.
    """
    m = tracer.m
    lvl = 0
    while tracer.t(lvl) > 1.0:
        lvl += m
    lo = lvl - m
    if not f.is_poly:
        while tracer.t(lo - 1) <= 30.0:
            lo -= 1
    return lo, lvl + 2 * m


def _t_eps_estimate(tracer, s0, lvl0, p, eps) -> float | None:
    m = tracer.m
    lvl = lvl0
    while lvl - p * m >= 0:
        arc = tracer.points(s0, lvl - p * m, lvl)
        if float(np.abs(np.diff(arc)).sum()) >= eps:
            return tracer.t(lvl + m)
        lvl -= m
    return tracer.t(m)


def _coherent(f: MapSpec, tracer: rays.RayTracer, coord) -> bool:
    """Digit read off geometrically agrees with the Böttcher angle / strip of the ray far out."""
    z = tracer.point(coord, 0)
    if f.is_poly:
        theta = (cmath.phase(rays.bottcher(f, z)) / TWO_PI) % 1.0
        return math.floor(theta * f.degree + 1e-12) % f.degree == coord.first_digit
    return maps.strip_index(z) == coord.entry(0)


def _log_slope(radii: list[float], floor: float) -> tuple[float, float]:
    ks, ys = [], []
    for k, r in enumerate(radii):
        if r <= floor:
            break
        ks.append(k)
        ys.append(math.log(r))
    if len(ks) < 3:
        return math.nan, 0.0
    ks_a, ys_a = np.array(ks, float), np.array(ys)
    slope, icpt = np.polyfit(ks_a, ys_a, 1)
    res = ys_a - (icpt + slope * ks_a)
    tot = ((ys_a - ys_a.mean()) ** 2).sum()
    return float(slope), float(1 - (res**2).sum() / tot) if tot > 0 else 0.0


def _address_bound(f: MapSpec, s0: ExpAddress, alpha: complex, rp: float) -> int:
    """Bound on address entries: the seed's norm and the strips met by U'."""
    strips = {maps.strip_index(alpha + rp * cmath.exp(2j * math.pi * k / 64)) for k in range(64)}
    return max([s0.sup_norm_raw] + [abs(s) for s in strips])


# ---------------------------------------------------------------------------
# hyperbolic sets
# ---------------------------------------------------------------------------

@dataclass
class HyperbolicSetSpec:
    points: list[complex]
    eta: float
    delta: float
    k: int = 1

    def verify(self, f: MapSpec, grid: int = 8) -> bool:
        for x in self.points:
            for i in range(-grid, grid + 1):
                for j in range(-grid, grid + 1):
                    z = x + self.delta * complex(i, j) / grid
                    if abs(z - x) > self.delta:
                        continue
                    _, d = maps.orbit_derivative(f, z, self.k)
                    if not abs(d) > self.eta:
                        return False
        return True


@dataclass
class AccessEvidence:
    point: complex
    period: int | None
    recurrence: list[int]
    landing_set: LandingSet | None
    ladder_ok: bool
    M: int | None
    run: PullbackRun | None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "point": [self.point.real, self.point.imag],
            "period": self.period,
            "recurrence": self.recurrence,
            "landing_set": None if self.landing_set is None else self.landing_set.to_dict(),
            "ladder_ok": self.ladder_ok,
            "M": self.M,
            "note": self.note,
        }


def _cover_cell(z: complex, size: float) -> tuple[int, int]:
    return (math.floor(z.real / size), math.floor(z.imag / size))


def hyperbolic_accessibility(f: MapSpec, spec: HyperbolicSetSpec, config: PullbackConfig | None = None,
                             orbit_budget: int = 64) -> list[AccessEvidence]:
    """Per sample point: recurrence through a finite cover, then the pullback construction."""
    cfg = config or PullbackConfig()
    if not spec.verify(f):
        raise LandingError("expansion |(f^k)'| > eta fails on the delta-neighbourhood")
    size = spec.delta / (3 * spec.eta)
    out = []
    for x0 in spec.points:
        orbit = [complex(x0)]
        for _ in range(orbit_budget):
            try:
                orbit.append(maps.iterate(f, orbit[-1], spec.k))
            except OverflowError:
                break  # rounding drift off a repelling orbit
        home = _cover_cell(x0, size)
        rec = [n for n in range(1, len(orbit)) if _cover_cell(orbit[n], size) == home]
        per = next((n for n in rec if abs(orbit[n] - x0) < 1e-9 * max(1.0, abs(x0))), None)
        if per is None:
            out.append(AccessEvidence(x0, None, rec, None, False, None, None,
                                      "no exact return within budget"))
            continue
        z = maps.newton_periodic(f, x0, per * spec.k) or x0
        target = maps.periodic_point(f, z, per * spec.k)
        local = PullbackConfig(**{**cfg.__dict__, "u_radius": spec.delta / max(spec.eta, 2.0)})
        lset, run = pullback_landing(f, target, local)
        eta_p = spec.eta ** (per * spec.k)
        noise = 1e-12 * max(1.0, abs(z))
        ladder = all(r <= spec.delta / eta_p**k + noise for k, r in enumerate(run.radii))
        out.append(AccessEvidence(z, per * spec.k, rec, lset, ladder, run.M, run))
    return out


# ---------------------------------------------------------------------------
# audits
# ---------------------------------------------------------------------------

@dataclass
class AuditReport:
    violations: list[str]
    checks: dict

    @property
    def passed(self) -> bool:
        return not self.violations


def landing_set_audit(lset: LandingSet, f: MapSpec, n0_cap: int = 64,
                      symmetry: bool = True, tol: float = 1e-6) -> AuditReport:
    coords = list(lset.coordinates)
    violations = []
    checks: dict = {}
    periods = {coord_period(c) for c in coords}
    checks["periodic"] = all(coord_is_periodic(c) for c in coords)
    checks["common_period"] = len(periods) <= 1 and (not coords or periods == {lset.period})
    if coords:
        orbit = set()
        c = coords[0]
        for _ in range(max(periods) if periods else 1):
            orbit.add(c)
            c = shift(c)
        checks["one_cycle"] = all(c in orbit for c in coords)
    else:
        checks["one_cycle"] = True
    for name in ("periodic", "common_period", "one_cycle"):
        if not checks[name]:
            violations.append(name)
    if f.is_poly:
        bound = Fraction(1, f.degree)
        pair_ok = all(symbolic.circle_distance(a, b) <= bound
                      for i, a in enumerate(coords) for b in coords[i + 1:])
        checks["pairwise_distance"] = pair_ok
        if not pair_ok:
            violations.append("pairwise_distance")
    else:
        adj = all(symbolic.adjacency_compatible(a, b) for i, a in enumerate(coords) for b in coords[i + 1:])
        checks["adjacency"] = adj
        if not adj:
            violations.append("adjacency")
    checks["cardinality"] = len(coords) <= n0_cap
    if not checks["cardinality"]:
        violations.append("cardinality")
    if f.is_poly and symmetry and coords:
        ok = True
        x = lset.point.location
        for j in range(1, f.degree):
            rot = cmath.exp(2j * math.pi * j / f.degree)
            for c in coords:
                cj = PolyAngle(c.value + Fraction(j, f.degree), f.degree)
                v = land_ray(f, cj)
                ok &= v.landed and abs(v.point - rot * x) < tol
        checks["symmetry"] = ok
        if not ok:
            violations.append("symmetry")
    return AuditReport(violations, checks)


def dumps(obj) -> str:
    """JSON with stable key order."""
    return json.dumps(obj, sort_keys=True, indent=1)
