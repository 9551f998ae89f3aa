"""Fundamental domains of pulled-back exponential rays near a repelling point.

Tabulates the largest Euclidean length of I_t over all addresses a_3 a_2 a_1 0̄
with |a_j| <= 2 that meet a ball of radius 5 about the strip-0 fixed point.
"""
from raylanding import geometry, maps
from raylanding.maps import MapSpec
from raylanding.symbolic import ExpAddress

f = MapSpec.exp(-2)
alpha = maps.exp_fixed_point_in_strip(f, 0).location
family = geometry.pullback_family(ExpAddress.periodic(0), 3, 2)
grid = geometry.potential_grid(f, 2.0, 12)
prof = geometry.shrinking_profile(f, family, grid, window=(alpha, 5.0))

print(f"{len(family)} addresses, {len(prof.failures)} could not be traced")
print("      t         max length   rays in window")
for row in prof.rows:
    print(f"{row.t:10.4g}   {row.max_length:12.4e}   {row.n_samples}")
print("strictly decreasing:", prof.strictly_decreasing(), " t_eps(0.05) =", prof.t_eps(0.05))
