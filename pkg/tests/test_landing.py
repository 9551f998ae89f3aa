import math
from fractions import Fraction

import pytest

from raylanding import landing, maps
from raylanding.landing import HyperbolicSetSpec, LandingSet, PullbackConfig
from raylanding.maps import MapSpec
from raylanding.symbolic import ExpAddress, PolyAngle, shift_n

GOLDEN = (1 + 5**0.5) / 2


@pytest.fixture(scope="module")
def basilica():
    f = MapSpec.poly(-1)
    alpha = maps.periodic_point(f, (1 - 5**0.5) / 2, 1)
    return f, landing.pullback_landing(f, alpha)


@pytest.fixture(scope="module")
def exp_zero():
    f = MapSpec.exp(-2)
    return f, landing.pullback_landing(f, maps.exp_fixed_point_in_strip(f, 0))


def test_land_zero_parameter():
    v = landing.land_ray(MapSpec.poly(0), PolyAngle.parse("0"))
    assert v.landed
    assert abs(v.point - 1) < 1e-6
    assert v.nu == pytest.approx(2, rel=0.05)


def test_land_beta_fixed_point():
    v = landing.land_ray(MapSpec.poly(-1), PolyAngle.parse("0"))
    assert v.landed and abs(v.point - GOLDEN) < 1e-6


def test_land_exponential_zero_ray():
    # oracle: x -> log(x + 2) iterated converges to the repelling fixed point
    x = 5.0
    for _ in range(200):
        x = math.log(x + 2)
    v = landing.land_ray(MapSpec.exp(-2), ExpAddress.periodic(0))
    assert v.landed and abs(v.point - x) < 1e-6
    assert abs(x - 1.1462) < 1e-4


@pytest.mark.parametrize("k", [-2, 2])
def test_land_strongly_repelling_strip_point(k):
    # radii reach the noise floor before the default level count
    f = MapSpec.exp(-2)
    pt = maps.exp_fixed_point_in_strip(f, k)
    v = landing.land_ray(f, ExpAddress.periodic(k))
    assert v.landed and abs(v.point - pt.location) < 1e-6
    assert v.levels < landing.LandingConfig().min_levels


def test_land_reports_non_convergence():
    cfg = landing.LandingConfig(domains=3)
    v = landing.land_ray(MapSpec.poly(-1), PolyAngle.parse("1/3"), cfg)
    assert not v.landed and v.point is None
    assert v.to_dict()["status"].startswith("not-converged")


def test_fit_geometric_recovers_rate():
    radii = [3.0 * 2.5**-k for k in range(20)]
    A, nu, r2, n = landing.fit_geometric(radii, start=0)
    assert nu == pytest.approx(2.5) and A == pytest.approx(3.0) and r2 > 0.999999


def test_pullback_zero_parameter():
    f = MapSpec.poly(0)
    lset, run = landing.pullback_landing(f, maps.periodic_point(f, 1.0, 1))
    assert lset.coordinates == [PolyAngle.parse("0")] and lset.period == 1
    # brute force: 0 is the only angle with small denominator fixed by doubling
    fixed = {Fraction(p, q) for q in range(1, 40) for p in range(q) if (2 * Fraction(p, q)) % 1 == Fraction(p, q)}
    assert fixed == {0}


def test_pullback_basilica(basilica):
    f, (lset, run) = basilica
    assert set(lset.coordinates) == {PolyAngle.parse("1/3"), PolyAngle.parse("2/3")}
    assert lset.period == 2
    for a in lset.coordinates:
        v = landing.land_ray(f, a)
        assert v.landed and abs(v.point - lset.point.location) < 1e-6


def test_pullback_run_properties(basilica):
    _, (_, run) = basilica
    checks = run.property_checks()
    assert checks["property1"] < 1e-8
    assert checks["property2"] and checks["property3"]
    assert checks["coherence"] and checks["symbolic"]
    assert run.slope == pytest.approx(-math.log(run.mu), rel=0.05)
    for n, s in enumerate(run.history):
        assert shift_n(s, n) == run.history[0]


def test_pullback_exponential(exp_zero):
    f, (lset, run) = exp_zero
    assert lset.coordinates == [ExpAddress.periodic(0)] and lset.period == 1
    assert run.M == 0
    alpha = lset.point.location
    for j in (-2, -1, 1, 2):
        for s in (ExpAddress.periodic(j), ExpAddress((j,), (0,))):
            v = landing.land_ray(f, s)
            assert not v.landed or abs(v.point - alpha) > 1e-3


def test_pullback_run_serializes(exp_zero):
    _, (lset, run) = exp_zero
    text = landing.dumps({"set": lset.to_dict(), "run": run.to_dict()})
    assert '"period": 1' in text and "log_mu" in text


def test_pullback_rejects_attracting_target():
    f = MapSpec.poly(0)
    with pytest.raises(landing.LandingError):
        landing.pullback_landing(f, maps.periodic_point(f, 0.0, 1))


def test_access_degenerate_single_point(basilica):
    f, (lset, _) = basilica
    x = lset.point.location
    spec = HyperbolicSetSpec([x], eta=1.1, delta=0.05)
    (ev,) = landing.hyperbolic_accessibility(f, spec)
    assert ev.period == 1
    assert set(ev.landing_set.coordinates) == set(lset.coordinates)


def test_access_zero_parameter_two_cycle():
    f = MapSpec.poly(0)
    pts = [complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))]
    spec = HyperbolicSetSpec(pts, eta=1.5, delta=0.1)
    (ev,) = landing.hyperbolic_accessibility(f, spec)
    assert ev.period == 2 and ev.ladder_ok
    assert ev.landing_set.coordinates[0] in (PolyAngle.parse("1/3"), PolyAngle.parse("2/3"))
    assert set(ev.landing_set.coordinates) <= {PolyAngle.parse("1/3"), PolyAngle.parse("2/3")}


def test_access_exponential_strips():
    f = MapSpec.exp(-2)
    pts = [maps.exp_fixed_point_in_strip(f, k).location for k in (0, 1)]
    spec = HyperbolicSetSpec(pts, eta=1.5, delta=0.4)
    out = landing.hyperbolic_accessibility(f, spec)
    assert [e.landing_set.coordinates for e in out] == [[ExpAddress.periodic(0)], [ExpAddress.periodic(1)]]
    for e in out:
        assert all(c.sup_norm_raw <= e.M for c in e.landing_set.coordinates)


def test_access_requires_expansion():
    with pytest.raises(landing.LandingError):
        landing.hyperbolic_accessibility(MapSpec.poly(0), HyperbolicSetSpec([0.0], eta=1.5, delta=0.1))


def test_audit_basilica(basilica):
    f, (lset, _) = basilica
    rep = landing.landing_set_audit(lset, f)
    assert rep.passed, rep.violations
    assert rep.checks["pairwise_distance"]


def test_audit_adjacency_violation():
    f = MapSpec.exp(-2)
    pt = maps.exp_fixed_point_in_strip(f, 0)
    lset = LandingSet(pt, [ExpAddress.periodic(0), ExpAddress.periodic(2)], 1)
    rep = landing.landing_set_audit(lset, f)
    assert "adjacency" in rep.violations and "one_cycle" in rep.violations


def test_audit_singleton():
    f = MapSpec.exp(-2)
    lset = LandingSet(maps.exp_fixed_point_in_strip(f, 0), [ExpAddress.periodic(0)], 1)
    assert landing.landing_set_audit(lset, f).passed


def test_config_serialization():
    d = PullbackConfig(budget=10).to_dict()
    assert d["budget"] == 10 and d["landing"]["nu_min"] == 1.05
