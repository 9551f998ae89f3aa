import cmath
import math

import numpy as np
import pytest

from raylanding import geometry, maps, rays
from raylanding.geometry import Curve, DensityModel
from raylanding.maps import MapSpec
from raylanding.symbolic import ExpAddress, PolyAngle


def _segment(a, b, n=50):
    return Curve(np.linspace(a, b, n).astype(complex))


def test_exterior_disk_closed_form():
    # antiderivative of 1/(x log x) is log log x
    L = geometry.hyperbolic_length(_segment(math.e, math.e**2), DensityModel.exterior_disk(1.0))
    assert L == pytest.approx(math.log(2), rel=1e-6)


def test_half_plane_vertical_segment():
    L = geometry.hyperbolic_length(_segment(1.0, 1.0 + 1j), DensityModel.half_plane(0.0))
    assert L == pytest.approx(0.5, rel=1e-9)


def test_twice_punctured_cusp():
    model = DensityModel.twice_punctured()
    near = [geometry.hyperbolic_length(_segment(e, 2 * e), model) for e in (1e-2, 1e-4, 1e-6)]
    # the doubling segments shrink in hyperbolic length near the puncture
    assert near[0] > near[1] > near[2]
    far = [geometry.hyperbolic_length(_segment(d, 0.1, 400), model) for d in (1e-2, 1e-4, 1e-8)]
    assert far[0] < far[1] < far[2]
    assert far[2] - far[1] > 0.5 * (far[1] - far[0])


def test_twice_punctured_euclidean_shrinking():
    # fixed hyperbolic length segments pushed into the cusp have vanishing Euclidean size
    model = DensityModel.twice_punctured()
    sizes = []
    for k in (1, 2, 3, 4):
        a = 10.0**-k
        lo, hi = a, 2 * a
        target = 0.3
        for _ in range(60):
            b = math.sqrt(lo * hi) if hi / lo > 1.0001 else (lo + hi) / 2
            if geometry.hyperbolic_length(_segment(a, a + b), model) > target:
                hi = b
            else:
                lo = b
        sizes.append(lo)
    assert all(x > y for x, y in zip(sizes, sizes[1:]))


def test_model_validity():
    with pytest.raises(geometry.GeometryError):
        geometry.hyperbolic_length(_segment(0.5, 3.0), DensityModel.exterior_disk(1.0))
    with pytest.raises(geometry.GeometryError):
        geometry.hyperbolic_length(_segment(-1 + 1j, 1 + 1j), DensityModel.half_plane(0.0))


def test_decay_check():
    rep = geometry.density_decay_check(DensityModel.exterior_disk(1.0), [math.e, math.exp(10)])
    assert rep.ratios == pytest.approx([1.0, 0.1])
    assert rep.monotone
    rep = geometry.density_decay_check(DensityModel.exterior_disk(2.0), np.linspace(3, 300, 40))
    assert rep.monotone
    with pytest.raises(geometry.GeometryError):
        geometry.density_decay_check(DensityModel.half_plane(0.0), [2.0])


def test_additivity_and_refinement():
    model = DensityModel.exterior_disk(1.0)
    pts = 3 * np.exp(1j * np.linspace(0, 2, 30)) * np.linspace(1, 2, 30)
    a, b = Curve(pts[:15]), Curve(pts[14:])
    whole = geometry.hyperbolic_length(Curve(pts), model)
    assert geometry.hyperbolic_length(a, model) + geometry.hyperbolic_length(b, model) == pytest.approx(whole, rel=1e-6)
    assert geometry.hyperbolic_length(Curve(pts).refine(), model) == pytest.approx(whole, rel=1e-6)
    assert (a + b).length == pytest.approx(Curve(pts).length)


def test_logarithm_contracts_comparison_lengths():
    # a curve in the half-plane Re w > C, pulled back by L_0, measured in the exterior-disk model
    f = MapSpec.exp(-2)
    C = 10.0
    gamma = Curve(np.linspace(14 - 3j, 30 + 5j, 200))
    back = Curve(np.array([maps.inverse_branch_exp(f, 0, w) for w in gamma.points]))
    R = 1.0
    assert np.min(np.abs(back.points)) > R
    lh = geometry.hyperbolic_length(gamma, DensityModel.half_plane(C))
    le = geometry.hyperbolic_length(back, DensityModel.exterior_disk(R))
    assert le <= lh


def test_profile_for_zero_parameter():
    f = MapSpec.poly(0)
    grid = geometry.potential_grid(f, 1.0, 12)
    prof = geometry.shrinking_profile(f, [PolyAngle.parse("0")], grid)
    for row in prof.rows:
        assert row.max_length == pytest.approx(math.exp(2 * row.t) - math.exp(row.t), abs=1e-10)
    assert prof.strictly_decreasing()


def test_profile_basilica():
    f = MapSpec.poly(-1)
    angles = [PolyAngle.parse(a) for a in ("0", "1/3", "2/3", "1/7", "2/7", "4/7")]
    grid = [2.0**-k for k in range(0, 14)]
    prof = geometry.shrinking_profile(f, angles, grid)
    assert prof.strictly_decreasing()
    assert prof.t_eps(0.05) is not None and prof.t_eps(0.05) > 0
    assert prof.to_csv().splitlines()[0] == "t,max_length,n_samples"


def test_profile_exponential_window():
    f = MapSpec.exp(-2)
    alpha = maps.exp_fixed_point_in_strip(f, 0).location
    fam = geometry.pullback_family(ExpAddress.periodic(0), 3, 2)
    assert len(fam) == 1 + 5 + 25 + 125
    grid = geometry.potential_grid(f, 2.0, 10)
    prof = geometry.shrinking_profile(f, fam, grid, window=(alpha, 5.0))
    col = prof.column
    assert col[-1] < col[0] / 10
    assert col[-1] < 1e-2


def test_profile_grid_errors():
    f = MapSpec.poly(0)
    with pytest.raises(geometry.GeometryError):
        geometry.shrinking_profile(f, [PolyAngle.parse("0")], [0.5, 1.0])
    with pytest.raises(geometry.GeometryError):
        geometry.shrinking_profile(f, [PolyAngle.parse("0")], [1.0, 0.3])


def test_bounded_domains_example():
    f = MapSpec.exp(-2)
    rep = geometry.bounded_fundamental_domains_check(f, ExpAddress.periodic(0), [[1]], T=20.0, C=10.0)
    assert rep.passed
    chk = rep.checks[0]
    assert chk.p1_error < 1e-8 and chk.p2_margin > 0


def test_bounded_domains_empty_prefix():
    f = MapSpec.exp(-2)
    rep = geometry.bounded_fundamental_domains_check(f, ExpAddress.periodic(0), [[]], T=20.0, C=10.0)
    assert rep.passed and rep.checks[0].p1_error < 1e-12


def test_bounded_domains_reports_branch_errors(monkeypatch):
    f = MapSpec.exp(-2)

    def boom(*a, **k):
        raise maps.BranchCutError("orbit reached the slit")

    monkeypatch.setattr(rays, "exp_point_by_branches", boom)
    rep = geometry.bounded_fundamental_domains_check(f, ExpAddress.periodic(0), [[1], [2, 0]], T=20.0, C=10.0)
    assert not rep.passed
    assert all("BranchCutError" in c.error for c in rep.checks)


def test_bounded_domains_threshold():
    with pytest.raises(geometry.GeometryError):
        geometry.bounded_fundamental_domains_check(MapSpec.exp(-2), ExpAddress.periodic(0), [[1]], T=5.0, C=10.0)


def test_curve_distances():
    c = Curve(np.array([0, 1, 1 + 1j]))
    assert c.max_distance(0) == pytest.approx(abs(1 + 1j))
    assert c.min_distance(2 + 1j) == pytest.approx(1.0)
    assert cmath.isclose(c.points[-1], 1 + 1j)
