"""The y-axis projection, point itineraries, and horizontal fibers.

Projecting a carpet to the y-axis gives a self-similar set generated by the
nonempty rows.  Each projected point has at most two row itineraries
(codings); the fiber over a coding is the horizontal slice of the attractor,
approximated here by nested interval unions.
"""

from lgcarpet import (
    check_hd_bound,
    fiber_approx,
    find_gap_interval,
    gap_fraction,
    h_delta,
    idelta_classes,
    project_F,
    synth,
    y_codings,
)

dust = synth.cantor_dust()

proj = project_F(dust)
print("dust projection rows:", proj.rows, "ratios:", proj.ratios)

# y = 0 keeps a single itinerary; the top of the first strip keeps two
print("codings of y=0.0 to depth 4: ", y_codings(dust, 0.0, 4))
print("codings of y=1/3 to depth 4: ", y_codings(dust, 1 / 3, 4))

print()

# a fiber is a Cantor set of intervals; depth controls the resolution
coding = (1, 3, 1, 3, 1, 3)
fiber = fiber_approx(dust, coding)
print(f"fiber over {coding}: {len(fiber.intervals)} intervals, "
      f"first {fiber.intervals[0]}")

# two fibers sharing a prefix are close: Hausdorff distance is bounded by
# the product of the widest cells along the shared prefix
chk = check_hd_bound(dust, (1, 3, 1, 1, 1, 1), (1, 3, 1, 3, 3, 3))
print(f"shared prefix {chk.shared_prefix}: distance {chk.distance:.6f} "
      f"<= bound {chk.bound:.6f} (ok={chk.ok})")

print()

# every interval I contains a fiber-free open gap J of proportional length
mcm = synth.three_map_carpet()
lam = gap_fraction(mcm)
interval = (0.2, 0.5)
j = find_gap_interval(mcm, (1, 2) * 15, interval)
print(f"lambda = {lam:.6f}")
print(f"gap inside {interval}: J = ({j[0]:.6f}, {j[1]:.6f}), "
      f"|J|/|I| = {(j[1] - j[0]) / 0.3:.4f}")

print()

# stopping words whose projection blocks chain within delta
dc = idelta_classes(dust, 1 / 9)
print(f"dust delta=1/9: {len(dc.words)} stopping words, "
      f"largest class {dc.l_emp}")
print(f"largest fiber measure at delta=1/9: {h_delta(dust, 1 / 9):.6f}")
