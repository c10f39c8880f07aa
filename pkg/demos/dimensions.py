"""Box dimension of a carpet from its two implicit equations.

s1 solves sum_i b_i^s1 = 1 over the nonempty rows (the dimension of the
y-axis projection); the full dimension s then solves
sum_ij b_i^s1 a_ij^(s - s1) = 1.  Both are monotone in the exponent, so a
bisection nails them to 1e-12.
"""

import math

from lgcarpet import solve_bdim, solve_s1, synth

dust = synth.cantor_dust()
res = solve_bdim(dust)
print("cantor dust")
print(f"  s1 = {res.s1:.12f}   (ln 2 / ln 3 = {math.log(2) / math.log(3):.12f})")
print(f"  s  = {res.s:.12f}   (log_3 2 + 1/2 = {math.log(2, 3) + 0.5:.12f})")
print(f"  residuals {res.residual_s1:.2e} / {res.residual_s:.2e}, "
      f"{res.iterations} bisection steps")

print()

mcm = synth.three_map_carpet()
res = solve_bdim(mcm)
print("three-map carpet")
print(f"  s1 = {res.s1:.12f}   (both rows nonempty: projection is [0,1])")
print(f"  s  = {res.s:.12f}   (1 + log_3 (3/2) = {1 + math.log(1.5, 3):.12f})")

print()

# uniform-grid carpets have a closed form: log_m' t + log_n' (N / t)
spec = synth.random_grid_spec(seed=7)
t = len(spec.nonempty_rows)
n_cols = round(1.0 / spec.rows[spec.nonempty_rows[0] - 1].cells[0].a)
total = sum(len(r.cells) for r in spec.rows)
closed = math.log(t, spec.m) + math.log(total / t, n_cols)
print(f"random {spec.m}x{n_cols} grid spec, {total} cells in {t} rows")
print(f"  solver {solve_bdim(spec).s:.12f}")
print(f"  closed {closed:.12f}")

print()

# s1 alone, at looser tolerance, for the projection only
print(f"dust projection dimension at tol 1e-6: {solve_s1(dust, tol=1e-6):.8f}")
