"""The command-line surface, driven in process.

Every capability is also reachable through the `lgcarpet` console script;
`report` bundles dimensions, the disconnectedness verdict, and the gap
scaling fit into one deterministic JSON file (two runs on the same input
are byte-identical).
"""

import json
from pathlib import Path

from lgcarpet.cli import main

spec_dir = Path(__file__).resolve().parent.parent / "specs"
cd = str(spec_dir / "CD.json")

print("$ lgcarpet validate CD.json")
main(["validate", cd])

print()
print("$ lgcarpet dimension CD.json")
main(["dimension", cd])

print()
print("$ lgcarpet gaps CD.json --delta-res 1/81 --top 4")
main(["gaps", cd, "--delta-res", "1/81", "--top", "4"])

print()
print("$ lgcarpet report CD.json --delta-res 1/243 --out report.json")
main(["report", cd, "--delta-res", "1/243", "--out", "report.json"])
payload = json.loads(Path("report.json").read_text())
print(f"report for spec {payload['spec_hash']}:")
print(f"  s = {payload['dimensions']['s']:.6f}")
print(f"  verdict = {payload['ud']['kind']}")
print(f"  gap count = {payload['gap_scaling']['gap_count']}")
Path("report.json").unlink()
