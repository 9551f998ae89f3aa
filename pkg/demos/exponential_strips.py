"""Rays landing at repelling fixed points of e^z - 2, one strip at a time."""
from raylanding import landing, maps
from raylanding.maps import MapSpec
from raylanding.symbolic import ExpAddress

f = MapSpec.exp(-2)
probe = maps.postsingular_probe(f, 2000)
print(f"singular orbit bounded: {probe.bounded} (last iterate {probe.orbit[-1].real:.10f})")

for k in (-2, -1, 0, 1, 2):
    pt = maps.exp_fixed_point_in_strip(f, k)
    lset, run = landing.pullback_landing(f, pt)
    z = pt.location
    addrs = ", ".join(str(a) for a in lset.coordinates) or "none found"
    print(f"strip {k:+d}: z = {z.real:.6f}{z.imag:+.6f}i  |mu| = {pt.mu:7.3f}  "
          f"rays {addrs}  M = {run.M}")

# any other address landing at the strip-0 point? try the obvious neighbours
alpha = maps.exp_fixed_point_in_strip(f, 0).location
for addr in ("[1]", "[-1]", "[0 1]", "[1 -1]"):
    v = landing.land_ray(f, ExpAddress.parse(addr))
    where = f"{v.point:.6f}" if v.landed else v.status
    print(f"ray {addr:8s} lands at {where}; distance to alpha "
          f"{abs(v.point - alpha) if v.landed else float('nan'):.3g}")
