"""The acceptance suite, shared by ``raylanding verify`` and the test-suite."""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import geometry, landing, maps, rays, symbolic
from .maps import MapSpec
from .symbolic import DigitSequence, ExpAddress, PolyAngle

DEFAULTS = {
    "seed": 0,
    "budget": 48,
    "landing_tol": 1e-6,
    "nu_rel": 0.10,
    "slope_rel": 0.10,
    "r2_min": 0.99,
    "residual_tol": 1e-8,
    "ratio_factor": 10.0,
    "C_univ": 1.0,
    "shrink_poly": 0.05,
    "shrink_exp": 0.1,
    "oracle_tol": 1e-6,
    "estimate_eps": 0.1,
    "estimate_prefixes": 20,
}

SUITES = {
    "polynomial-basics": [1, 2, 11],
    "polynomial": [1, 2, 3, 8, 9, 10, 11],
    "exponential": [4, 5, 7, 11],
    "all": list(range(1, 12)),
}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}"

    def to_dict(self) -> dict:
        return {"number": self.number, "name": self.name, "passed": self.passed, "details": self.details}


def _bisect(g, a: float, b: float, tol: float = 1e-15) -> float:
    ga = g(a)
    for _ in range(200):
        mid = (a + b) / 2
        gm = g(mid)
        if (gm > 0) == (ga > 0):
            a, ga = mid, gm
        else:
            b = mid
        if b - a < tol:
            break
    return (a + b) / 2


def _metric_expansion_exhaustive(max_len: int = 8, bases=(2, 3, 4), all_pairs_below: int = 82
                                 ) -> tuple[bool, int]:
    """sigma_D-distance of shifts equals D times the distance, for equal first digits.

    Every digit string of length <= max_len is checked as a preperiod.  Pairs are
    exhaustive while D^n < all_pairs_below; beyond that each string meets three
    partners (digit complement, reversal, a seeded random string).  Tails rotate
    through [0], [D-1] and [0 D-1].
    """
    rng = random.Random(1)
    count = 0
    for D in bases:
        tails = ((0,), (D - 1,), (0, D - 1))
        for n in range(1, max_len + 1):
            strings = list(itertools.product(range(D), repeat=n))
            exhaustive = D**n < all_pairs_below
            for idx, a in enumerate(strings):
                if exhaustive:
                    partners = strings
                else:
                    partners = [tuple(D - 1 - x for x in a), a[::-1],
                                tuple(rng.randrange(D) for _ in range(n))]
                for j, b in enumerate(partners):
                    b = (a[0],) + b[1:]
                    tail = tails[(idx + j) % 3]
                    tail2 = tails[(idx + 2 * j) % 3]
                    s = DigitSequence(a, tail, D)
                    t = DigitSequence(b, tail2, D)
                    lhs = symbolic.sigma_d_metric(symbolic.shift(s), symbolic.shift(t))
                    if lhs != D * symbolic.sigma_d_metric(s, t):
                        return False, count
                    count += 1
    return True, count


class Suite:
    def __init__(self, overrides: dict | None = None):
        self.s = dict(DEFAULTS)
        for k, v in (overrides or {}).items():
            if k not in DEFAULTS:
                raise KeyError(f"unknown acceptance setting {k!r}")
            self.s[k] = type(DEFAULTS[k])(v)

    def _cfg(self, budget=None) -> landing.PullbackConfig:
        return landing.PullbackConfig(budget=budget or int(self.s["budget"]), seed=int(self.s["seed"]))

    # shared runs -----------------------------------------------------------
    @cached_property
    def poly0(self):
        f = MapSpec.poly(0)
        return f, maps.periodic_point(f, 1.0, 1)

    @cached_property
    def basilica(self):
        f = MapSpec.poly(-1)
        return f, maps.periodic_point(f, (1 - math.sqrt(5)) / 2, 1)

    @cached_property
    def exp2(self):
        f = MapSpec.exp(-2)
        return f, maps.exp_fixed_point_in_strip(f, 0)

    def run(self, which: str, budget=None):
        key = (which, budget)
        cache = self.__dict__.setdefault("_runs", {})
        if key not in cache:
            f, P = getattr(self, which)
            cache[key] = landing.pullback_landing(f, P, self._cfg(budget))
        return cache[key]

    # criteria --------------------------------------------------------------
    def c1(self) -> CriterionResult:
        ok, n = _metric_expansion_exhaustive()
        return CriterionResult(1, "symbolic metric expansion (exact)", ok, {"pairs_checked": n})

    def _landing_details(self, which: str) -> dict:
        lset, run = self.run(which)
        return {
            "coordinates": [str(c) for c in lset.coordinates],
            "period": lset.period,
            "landing_errors": [abs(v.point - run.target.location) if v.landed else None for v in run.verdicts],
            "nu": [v.nu for v in run.verdicts],
            "mu": run.mu,
            "checks": run.property_checks(),
        }

    def c2(self) -> CriterionResult:
        f, P = self.poly0
        lset, run = self.run("poly0")
        d = self._landing_details("poly0")
        ok = ([str(c) for c in lset.coordinates] == [str(PolyAngle(Fraction(0)))] and lset.period == 1
              and all(e is not None and e < self.s["landing_tol"] for e in d["landing_errors"])
              and all(abs(v.nu - 2) <= self.s["nu_rel"] * 2 for v in run.verdicts))
        return CriterionResult(2, "polynomial landing c = 0", ok, d)

    def c3(self) -> CriterionResult:
        f, P = self.basilica
        lset, run = self.run("basilica")
        d = self._landing_details("basilica")
        want = {PolyAngle.parse("1/3"), PolyAngle.parse("2/3")}
        indep = [landing.land_ray(f, c) for c in sorted(want)]
        d["independent_errors"] = [abs(v.point - P.location) if v.landed else None for v in indep]
        audit = landing.landing_set_audit(lset, f)
        d["audit"] = audit.checks
        ok = (set(lset.coordinates) == want and len(lset.coordinates) == 2 and lset.period == 2
              and all(e is not None and e < self.s["landing_tol"] for e in d["independent_errors"])
              and audit.passed)
        return CriterionResult(3, "basilica landing set {1/3, 2/3}", ok, d)

    def c4(self) -> CriterionResult:
        f, P = self.exp2
        probe = maps.postsingular_probe(f, 10_000, 10.0)
        oracle = _bisect(lambda x: math.exp(x) - 2 - x, 0.5, 2.0)
        lset, run = self.run("exp2")
        d = self._landing_details("exp2")
        zero = ExpAddress.periodic(0)
        norms = [c.sup_norm_raw for c in run.history] + [c.sup_norm_raw for c in lset.coordinates]
        adj = all(symbolic.adjacency_compatible(a, b)
                  for a, b in itertools.combinations(lset.coordinates, 2))
        d.update({"probe_bounded": probe.bounded, "oracle": oracle,
                  "location_error": abs(P.location - oracle), "M": run.M, "max_norm": max(norms)})
        ok = (probe.bounded and abs(P.location - oracle) < self.s["oracle_tol"]
              and zero in lset.coordinates
              and all(landing.coord_is_periodic(c) for c in lset.coordinates)
              and run.M is not None and max(norms) <= run.M and adj)
        return CriterionResult(4, "exponential landing c = -2", ok, d)

    def c5(self) -> CriterionResult:
        f = MapSpec.exp(-2)
        K, Cu = 2.0, self.s["C_univ"]
        rows = {}
        ok = True
        for addr in (ExpAddress.periodic(0), ExpAddress.periodic(1)):
            r20 = abs(rays.exp_direct_point(f, addr, 20.0)[1])
            r25 = abs(rays.exp_direct_point(f, addr, 25.0)[1])
            ratio = r25 / r20
            lo, hi = math.exp(-5) / self.s["ratio_factor"], math.exp(-5) * self.s["ratio_factor"]
            bound = 2 * math.exp(-25) * (K + 2 + 2 * math.pi + 2 * math.pi * Cu)
            # smallest C_univ for which the bound would hold
            need = max(0.0, (r25 / (2 * math.exp(-25)) - K - 2 - 2 * math.pi) / (2 * math.pi))
            rows[str(addr)] = {"r20": r20, "r25": r25, "ratio": ratio, "bound": bound,
                               "smallest_C_univ": need}
            ok &= lo <= ratio <= hi and r25 < bound
        g = rays.exp_direct_point(f, ExpAddress.periodic(1), 30.0)[0]
        rows["im_at_30"] = g.imag
        ok &= abs(g.imag - 2 * math.pi) < 0.1
        return CriterionResult(5, "asymptotic residual decay", ok, rows)

    def acceptance_segments(self) -> list[rays.RaySegment]:
        segs = []
        f0 = MapSpec.poly(0)
        segs.append(rays.trace_poly_ray(f0, PolyAngle(Fraction(0))))
        fb = MapSpec.poly(-1)
        tr = rays.RayTracer(fb)
        for a in ("1/3", "2/3"):
            segs.append(rays.trace_poly_ray(fb, PolyAngle.parse(a), tracer=tr))
        fe = MapSpec.exp(-2)
        tr = rays.RayTracer(fe)
        for addr in (ExpAddress.periodic(0), ExpAddress.periodic(1)):
            segs.append(rays.trace_exp_ray(fe, addr, 0.01, 30.0, tracer=tr))
        return segs

    def c6(self) -> CriterionResult:
        segs = self.acceptance_segments()
        worst = {f"{s.map} {s.coordinate}": s.max_residual for s in segs}
        ok = all(v < self.s["residual_tol"] for v in worst.values())
        return CriterionResult(6, "functional equation residual", ok,
                               {"max_residual": worst, "samples": sum(len(s.samples) for s in segs)})

    def c7(self) -> CriterionResult:
        f = MapSpec.exp(-2)
        eps = self.s["estimate_eps"]
        C, T = rays.estimate_threshold(f, eps)
        rng = random.Random(int(self.s["seed"]))
        reports = []
        ok = True
        for _ in range(int(self.s["estimate_prefixes"])):
            m = rng.randint(1, 6)
            prefix = [rng.randint(-2, 2) for _ in range(m)]
            rep = rays.verify_pullback_estimates(f, ExpAddress.periodic(0), prefix, T + 1.0, C, eps, T)
            reports.append({"prefix": prefix, "passed": rep.passed,
                            "min_margin": min(v for k, v in rep.margins.items() if k != "Cprime")})
            ok &= rep.passed
        fixed = rays.verify_pullback_estimates(f, ExpAddress.periodic(0), [1, -1, 2, 0, 1], T + 1.0, C, eps, T)
        ok &= fixed.passed
        return CriterionResult(7, "logarithm pullback estimates", ok,
                               {"C": C, "T": T, "eps": eps, "runs": reports, "fixed_prefix": fixed.passed})

    def c8(self) -> CriterionResult:
        fb = MapSpec.poly(-1)
        angles = [PolyAngle.parse(a) for a in ("0", "1/3", "2/3", "1/7", "2/7", "4/7")]
        pp = geometry.shrinking_profile(fb, angles, [2.0**-k for k in range(12)])
        fe = MapSpec.exp(-2)
        alpha = maps.exp_fixed_point_in_strip(fe, 0).location
        fam = geometry.pullback_family(ExpAddress.periodic(0), 3, 2)
        pe = geometry.shrinking_profile(fe, fam, geometry.potential_grid(fe, 2.0, 10), window=(alpha, 5.0))
        bfd = geometry.bounded_fundamental_domains_check(
            fe, ExpAddress.periodic(0), [[], [1], [-2, 2], [2, 0, -1]], T=20.0, C=10.0)
        ok = (pp.strictly_decreasing() and pp.column[-1] < self.s["shrink_poly"]
              and pe.strictly_decreasing() and pe.column[-1] < self.s["shrink_exp"] and bfd.passed
              and not pp.failures and not pe.failures)
        return CriterionResult(8, "fundamental domains shrink", ok, {
            "poly_column": pp.column, "exp_column": pe.column, "bounded_domains": bfd.passed, "B": bfd.B})

    def c9(self) -> CriterionResult:
        rows = {}
        ok = True
        for which in ("poly0", "basilica", "exp2"):
            _, run = self.run(which)
            target = -math.log(run.mu)
            good = abs(run.slope - target) <= self.s["slope_rel"] * abs(target) and run.slope_r2 > self.s["r2_min"]
            rows[which] = {"slope": run.slope, "minus_log_mu": target, "r2": run.slope_r2}
            ok &= good
        return CriterionResult(9, "containment radii decay at rate mu", ok, rows)

    def c10(self) -> CriterionResult:
        rows = {}
        ok = True
        for which in ("poly0", "basilica", "exp2"):
            a, _ = self.run(which)
            b, _ = self.run(which, budget=2 * int(self.s["budget"]))
            sa, sb = {str(c) for c in a.coordinates}, {str(c) for c in b.coordinates}
            rows[which] = {"budget": sorted(sa), "doubled": sorted(sb)}
            ok &= bool(sa) and sb <= sa
        return CriterionResult(10, "landing sets stable under doubled budget", ok, rows)

    def c11(self) -> CriterionResult:
        def snapshot() -> str:
            other = Suite({k: v for k, v in self.s.items() if k in DEFAULTS})
            parts = [other.c2().to_dict(), other.c5().to_dict()]
            return json.dumps(parts, sort_keys=True)
        a, b = snapshot(), snapshot()
        return CriterionResult(11, "deterministic machine output", a == b, {"bytes": len(a)})

    def evaluate(self, numbers) -> list[CriterionResult]:
        out = []
        for n in numbers:
            try:
                out.append(getattr(self, f"c{n}")())
            except Exception as exc:  # a crash is a failed criterion, reported not raised
                out.append(CriterionResult(n, f"criterion {n}", False, {"error": f"{type(exc).__name__}: {exc}"}))
        return out


def run_suite(suite: str = "all", overrides: dict | None = None) -> list[CriterionResult]:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}")
    return Suite(overrides).evaluate(SUITES[suite])


def results_json(results: list[CriterionResult]) -> str:
    return json.dumps({"passed": all(r.passed for r in results),
                       "criteria": [r.to_dict() for r in results]}, sort_keys=True, indent=1, default=str)
