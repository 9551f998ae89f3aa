import cmath
import math

import numpy as np
import pytest

from raylanding import maps, rays
from raylanding.maps import MapSpec
from raylanding.symbolic import ExpAddress, PolyAngle, shift


def test_growth_model():
    assert rays.growth_model(MapSpec.exp(-2)).F(0.0) == 0.0
    F = rays.growth_model(MapSpec.poly(0))
    assert F.iterate(1.0, 3) == pytest.approx(8.0)
    E = rays.growth_model(MapSpec.exp(-2))
    assert E.Finv(E.F(2.5)) == pytest.approx(2.5)
    assert E.iterate(E.iterate(0.7, 3), -3) == pytest.approx(0.7)


def test_bottcher_identity_for_zero_parameter():
    f = MapSpec.poly(0)
    for z in (1.5, -3 + 2j, 0.2 + 1.1j):
        assert rays.bottcher(f, z) == pytest.approx(z, rel=1e-14)


def test_bottcher_depth_oracle():
    f = MapSpec.poly(-1)
    # float oracle: (f^n(z))^(1/2^n), real and positive at z = 10
    w, oracle = 10.0, []
    for n in range(1, 7):
        w = w * w - 1
        oracle.append(math.exp(math.log(w) / 2**n))
    assert abs(oracle[-1] - oracle[-2]) < 1e-8
    b = rays.bottcher(f, 10.0)
    assert abs(b - oracle[-1]) < 1e-6
    assert abs(b - rays.bottcher(f, 10.0, depth=81)) < 1e-8
    assert abs(b - 9.9496205510) < 1e-9


def test_bottcher_conjugacy():
    f = MapSpec.poly(complex(-0.12, 0.74))
    z = 2.1 - 1.3j
    assert rays.bottcher(f, maps.apply(f, z)) == pytest.approx(rays.bottcher(f, z) ** 2, rel=1e-11)
    assert abs(rays.bottcher(f, 1.3 + 0.2j)) > 1


def test_bottcher_rejects_bounded_points():
    with pytest.raises(rays.DomainError):
        rays.bottcher(MapSpec.poly(-1), 0.0)


def test_poly_rays_for_zero_parameter():
    f = MapSpec.poly(0)
    seg = rays.trace_poly_ray(f, PolyAngle.parse("0"), 0.05, 4.0)
    assert np.allclose(seg.points.imag, 0, atol=1e-10)
    assert np.allclose(seg.points.real, np.exp(seg.potentials), rtol=1e-10)
    seg = rays.trace_poly_ray(f, PolyAngle.parse("1/2"), 0.05, 4.0)
    assert np.allclose(seg.points, -np.exp(seg.potentials), rtol=1e-10)


def test_poly_ray_functional_equation():
    f = MapSpec.poly(-1)
    tracer = rays.RayTracer(f)
    a = PolyAngle.parse("1/3")
    seg = rays.trace_poly_ray(f, a, tracer=tracer)
    img = rays.trace_poly_ray(f, shift(a), tracer=tracer)
    F = rays.growth_model(f)
    lookup = dict(zip(np.round(img.potentials, 12), img.points))
    worst = 0.0
    for t, z in zip(seg.potentials, seg.points):
        key = round(F.F(t), 12)
        if key in lookup:
            worst = max(worst, abs(maps.apply(f, z) - lookup[key]) / max(1, abs(z)))
    assert worst < 1e-8
    assert seg.max_residual < 1e-8


def test_disconnected_julia_set_rejected():
    with pytest.raises(rays.DomainError):
        rays.trace_poly_ray(MapSpec.poly(1), PolyAngle.parse("0"))


def test_trace_segment_serialization():
    seg = rays.trace_poly_ray(MapSpec.poly(0), PolyAngle.parse("0"), 0.5, 2.0)
    lines = seg.to_csv().splitlines()
    assert lines[0] == "t,re,im,residual"
    ts = [float(l.split(",")[0]) for l in lines[1:]]
    assert ts == sorted(ts) and len(set(ts)) == len(ts)


def _log_oracle(t, f=MapSpec.exp(-2)):
    # 1-d backward iteration x -> log(x + 2) from a far-out real anchor
    E = rays.growth_model(f)
    n = 0
    while E.iterate(t, n + 1) < 600:
        n += 1
    T = E.iterate(t, n)
    # g(T) = log(g(F(T)) + 2) with g(F(T)) = F(T) up to e^{-F(T)}
    x = T + math.log1p(math.exp(-T))
    for _ in range(n):
        x = math.log(x + 2)
    return x


def test_exp_zero_ray_is_real_and_increasing():
    f = MapSpec.exp(-2)
    seg = rays.trace_exp_ray(f, ExpAddress.periodic(0), 0.01, 6.0)
    assert np.allclose(seg.points.imag, 0, atol=1e-12)
    # near the fixed point consecutive samples agree to double precision
    assert np.all(np.diff(seg.points.real) >= 0)
    far = seg.points.real[seg.potentials > 0.1]
    assert np.all(np.diff(far) > 0)
    fixed = maps.exp_fixed_point_in_strip(f, 0).location.real
    assert np.all(seg.points.real >= fixed - 1e-14)
    for t, z in list(zip(seg.potentials, seg.points))[::40]:
        if t > 0.3:
            assert z.real == pytest.approx(_log_oracle(t), rel=1e-12)


def test_exp_asymptotic_residual_decay():
    f = MapSpec.exp(-2)
    s = ExpAddress.periodic(0)
    r20 = abs(rays.exp_direct_point(f, s, 20.0)[0] - 20.0)
    r25 = abs(rays.exp_direct_point(f, s, 25.0)[0] - 25.0)
    bound = 2 * math.exp(-20) * (2 + 2 + 2 * math.pi)
    assert r20 <= bound
    assert math.exp(-5) / 10 < r25 / r20 < math.exp(-5) * 10


def test_strip_one_ray_height():
    z = rays.exp_direct_point(MapSpec.exp(-2), ExpAddress.periodic(1), 30.0)[0]
    assert abs(z.imag - 2 * math.pi) < 0.1


def test_exp_depth_stability():
    f = MapSpec.exp(complex(-1.5, 0.6))
    s = ExpAddress.parse("1 [0 -1]")
    for t in (0.5, 2.0, 7.0):
        a = rays.exp_point_by_branches(f, s, t, 6)
        b = rays.exp_point_by_branches(f, s, t, 8)
        assert abs(a - b) < 1e-11


def test_exp_direct_matches_branch_composition():
    f = MapSpec.exp(-2)
    s = ExpAddress.parse("[1 -1]")
    for t in (0.8, 3.0):
        d = rays.exp_direct_point(f, s, t)[0]
        assert abs(d - rays.exp_point_by_branches(f, s, t, 8)) < 1e-11


def test_itinerary_matches_address():
    f = MapSpec.exp(-2)
    s = ExpAddress.parse("2 [-1 0 1]")
    t = 2 * math.log(2 + 3) + 0.1
    z = rays.exp_direct_point(f, s, t)[0]
    assert maps.itinerary(f, z, 3) == [s.entry(i) for i in range(3)]


def test_polynomial_rays_converge_transversally():
    f = MapSpec.poly(-1)
    tracer = rays.RayTracer(f)
    target = tracer.points(PolyAngle.parse("1/3"), tracer.level_below(2.0), tracer.level_below(0.2))
    dists = []
    for n in range(2, 9):
        a = PolyAngle(PolyAngle.parse("1/3").value * (1 + 2**-n), 2)
        pts = tracer.points(a, tracer.level_below(2.0), tracer.level_below(0.2))
        dists.append(np.max(np.abs(pts - target)))
    assert all(x > y for x, y in zip(dists, dists[1:]))
    assert dists[-1] < dists[0] / 10


def test_exponential_rays_converge_transversally():
    f = MapSpec.exp(-2)
    base = ExpAddress.periodic(0)
    ref = np.array([rays.exp_direct_point(f, base, t)[0] for t in (0.5, 1.0, 2.0)])
    dists = []
    for n in (1, 2, 3, 4):
        s = ExpAddress((0,) * n + (1,), (0,))
        pts = np.array([rays.exp_direct_point(f, s, t)[0] for t in (0.5, 1.0, 2.0)])
        dists.append(np.max(np.abs(pts - ref)))
    assert all(x > y for x, y in zip(dists, dists[1:]))


def test_fundamental_domain_lengths():
    c = rays.fundamental_domain(MapSpec.poly(0), PolyAngle.parse("0"), 1.0)
    assert c.length == pytest.approx(math.e**2 - math.e, rel=1e-10)
    f = MapSpec.exp(-2)
    d = rays.fundamental_domain(f, ExpAddress.periodic(0), 10.0)
    expected = math.exp(10) - 10
    assert expected / 2 < d.length < expected * 2


def test_fundamental_domain_endpoint_match():
    f = MapSpec.exp(complex(-2, 0.5))
    s = ExpAddress.parse("[1 0]")
    I = rays.fundamental_domain(f, s, 1.2)
    J = rays.fundamental_domain(f, shift(s), rays.growth_model(f).F(1.2))
    assert abs(maps.apply(f, I.points[0]) - J.points[0]) < 1e-8
    assert abs(maps.apply(f, I.points[-1]) - J.points[-1]) < 1e-8 * abs(J.points[-1])


def test_segment_fundamental_domain_needs_coverage():
    tracer = rays.RayTracer(MapSpec.poly(0), anchor=0.5)
    seg = tracer.segment(PolyAngle.parse("0"), 0.5, 1.5)
    with pytest.raises(rays.TraceError):
        rays.segment_fundamental_domain(seg, 1.0)
    assert rays.segment_fundamental_domain(seg, 0.5).length == pytest.approx(math.e - math.exp(0.5))


def test_pullback_estimates_example():
    f = MapSpec.exp(-2)
    C, T = rays.estimate_threshold(f, 0.1)
    rep = rays.verify_pullback_estimates(f, ExpAddress.periodic(0), [1, -1, 2, 0, 1], T + 1, C, 0.1, T)
    assert rep.passed
    assert rep.margins["derivative"] >= 0 and rep.margins["modulus"] >= 0


@pytest.mark.parametrize("a1", [-3, 0, 2, 7])
def test_pullback_estimate_single_step(a1):
    f = MapSpec.exp(-2)
    C, T = rays.estimate_threshold(f, 0.1)
    rep = rays.verify_pullback_estimates(f, ExpAddress.periodic(0), [a1], T + 1, C, 0.1, T)
    assert rep.margins["real_part_lower"] >= 0.05 - 1e-12


def test_pullback_estimate_preconditions():
    f = MapSpec.exp(-2)
    with pytest.raises(ValueError):
        rays.verify_pullback_estimates(f, ExpAddress.periodic(0), [1], 10.0, 3.0, 0.1, 9.0)
    C, T = rays.estimate_threshold(f, 0.1)
    with pytest.raises(ValueError):
        rays.verify_pullback_estimates(f, ExpAddress.periodic(0), [1], T - 1, C, 0.1, T)


def test_real_growth_inequality():
    f = MapSpec.exp(-2)
    for w in (5.0, 20.0, 80.0):
        assert maps.apply(f, w).real >= -2 + math.exp(w) / 2


def test_cprime_series():
    # direct partial sums of 2 sum 1/(C^(2^j) - Re c)
    C, rc = 3.0, -2.0
    direct = 2 * sum(1 / (C ** (2**j) - rc) for j in range(8))
    assert rays.estimate_constant_Cprime(C, rc) == pytest.approx(direct)
    assert cmath.isfinite(rays.estimate_constant_Cprime(100.0, 0.0))
