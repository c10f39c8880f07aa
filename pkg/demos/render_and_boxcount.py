"""Drawing a carpet and measuring how its covering number grows.

box_count(spec, delta) counts half-open delta-grid cells meeting the
delta-approximation of the attractor; the log-log slope of the curve
estimates the box dimension without solving any equation.
"""

from pathlib import Path

from lgcarpet import box_count, n_delta_curve, render_svg, solve_bdim, synth

dust = synth.cantor_dust()

out = Path("dust_depth3.svg")
out.write_text(render_svg(dust, depth=3, size=512))
print(f"wrote {out} ({out.stat().st_size} bytes)")

# the same picture selected by resolution instead of depth
svg = render_svg(dust, delta=1 / 27, size=512)
print(f"delta-render has {svg.count('<rect')} rectangles")

print()
print("delta        N_delta(E)")
for k in range(1, 7):
    delta = 3.0 ** -k
    print(f"3^-{k}        {box_count(dust, delta)}")

curve = n_delta_curve(dust, delta_max=1 / 9, delta_min=3.0 ** -7, steps=6)
s = solve_bdim(dust).s
print()
print(f"log-log slope over the curve : {curve.slope:.5f}")
print(f"dimension from the equations : {s:.5f}")
print(f"relative slope error         : {abs(curve.slope - s) / s:.2%}")
