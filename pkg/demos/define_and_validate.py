"""Defining carpet specs, validating them, and walking their cylinders.

A spec is rows of height b_i stacked bottom to top, each holding cells of
width a_ij < b_i.  Everything downstream (dimensions, gap sequences,
disconnectedness verdicts) starts from one of these.
"""

from lgcarpet import (
    CarpetSpec,
    Cell,
    RowSpec,
    enumerate_depth,
    parse_spec,
    spec_to_dict,
    synth,
    validate,
)

# the four canonical examples used throughout the demos
for name, spec in [
    ("cantor dust", synth.cantor_dust()),
    ("three-map carpet", synth.three_map_carpet()),
    ("mixed rows", synth.mixed_rows()),
    ("touching columns", synth.touching_columns()),
]:
    rows = " + ".join(str(len(r.cells)) for r in spec.rows)
    print(f"{name:18s} m={spec.m} cells per row: {rows}  hash={spec.spec_hash}")

print()

# hand-built spec with a deliberate mistake: cell wider than its row is tall
bad = CarpetSpec(rows=(
    RowSpec(b=0.5, cells=(Cell(a=0.6, c=0.0),)),
    RowSpec(b=0.5, cells=(Cell(a=0.25, c=0.5),)),
))
for v in validate(bad):
    print(f"violation {v.constraint} at {v.where}: {v.message}")

print()

# specs round-trip through JSON without changing any derived value
dust = synth.cantor_dust()
import json

again = parse_spec(json.dumps(spec_to_dict(dust)))
print("round-trip hash match:", again.spec_hash == dust.spec_hash)

# cylinders at depth 2: images of the unit square under two-map compositions
cylinders = enumerate_depth(dust, 2)
print(f"depth-2 cylinders: {len(cylinders)}")
c = cylinders[0]
print(f"first word {c.word} -> rect ({c.rect.x0:.4f}, {c.rect.y0:.4f}, "
      f"w={c.rect.w:.4f}, h={c.rect.h:.4f})")
