"""Which external rays land at the alpha fixed point of z^2 - 1?

Runs the pullback construction, prints the landing set and the shrinking of
the containment radii, then draws the two rays on the filled Julia set.
"""
import math
import sys
from pathlib import Path

from raylanding import landing, maps, render
from raylanding.maps import MapSpec
from raylanding.rays import trace_poly_ray

f = MapSpec.poly(-1)
alpha = maps.periodic_point(f, (1 - math.sqrt(5)) / 2, 1)
print(f"alpha = {alpha.location.real:.12f}, multiplier {alpha.multiplier.real:.6f}")

lset, run = landing.pullback_landing(f, alpha)
print("rays landing at alpha:", ", ".join(str(c) for c in lset.coordinates), f"(period {lset.period})")
print("digits recorded by the pullback:", "".join(map(str, run.digits[:24])), "...")

print("\n k   radius of I_{t_k}   ratio")
for k, (a, b) in enumerate(zip(run.radii, run.radii[1:])):
    if k % 4 == 0 and b > 0:
        print(f"{k:2d}   {a:.3e}          {a / b:.4f}")
print(f"fitted log-slope {run.slope:.5f} vs -log|mu| = {-math.log(run.mu):.5f}")

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
spec = render.RenderSpec((-1.8, 1.8, -1.2, 1.2), 720, 480, 150,
                         rays=[trace_poly_ray(f, c).points for c in lset.coordinates],
                         markers=[alpha.location])
digest = render.save_png(render.render(f, spec), out / "basilica_alpha.png")
print(f"\nwrote {out / 'basilica_alpha.png'} (sha256 {digest[:16]}...)")
