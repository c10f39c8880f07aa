"""Is the attractor uniformly disconnected?  Three possible answers.

Every row nonempty: no, and an epsilon-chain of attractor points witnesses
it.  Some row empty and a depth at which all cylinders are pairwise
separated: yes, and then the set is quasisymmetrically a Cantor set.
Touching cylinders at every tried depth: undetermined, with the diameter
bound of the touching components reported per depth.
"""

from lgcarpet import (
    build_epsilon_chain,
    certify_totally_disconnected,
    check_uniform_disconnectedness,
    empty_rows,
    synth,
)

for name, spec in [
    ("cantor dust", synth.cantor_dust()),
    ("three-map carpet", synth.three_map_carpet()),
    ("mixed rows", synth.mixed_rows()),
    ("touching columns", synth.touching_columns()),
]:
    v = check_uniform_disconnectedness(spec)
    print(f"{name:18s} empty rows {empty_rows(spec)!s:6s} -> {v.kind}"
          f"  (qs-Cantor: {v.quasisymmetric_to_cantor})")

print()

# the positive certificate: separated cylinders at depth 1 already
cert = certify_totally_disconnected(synth.cantor_dust())
print(f"dust separation certificate: status={cert.status} depth={cert.depth}")

print()

# the negative certificate: a chain from xi to xi' in steps <= eps0 * |xi - xi'|
mcm = synth.three_map_carpet()
for eps0 in (0.5, 0.1):
    ch = build_epsilon_chain(mcm, eps0)
    print(f"eps0={eps0}: {len(ch.points)} points, tall word length {ch.ell}, "
          f"max step ratio {ch.max_step_ratio:.4f}")
ch = build_epsilon_chain(mcm, 0.5)
print("chain endpoints:", ch.xi, "->", ch.xi_prime)

print()

# the honest failure mode: touching columns never separate, the bound stalls
v = check_uniform_disconnectedness(synth.touching_columns(), max_depth=6)
print("touching columns bounds by depth:")
for depth, bound in enumerate(v.evidence["bounds_by_depth"], start=1):
    print(f"  depth {depth}: {bound:.5f}")
print(v.evidence["note"])
