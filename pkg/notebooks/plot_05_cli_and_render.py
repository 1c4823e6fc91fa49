"""
Command line round trip and SVG output
======================================

"""

import tempfile
from pathlib import Path

from convcover.cli import main
from convcover.fixtures import DON
from convcover.model import Instance, write_instance

work = Path(tempfile.mkdtemp())
inst = work / "don.instance.json"
inst.write_bytes(write_instance(Instance(DON, "don")))

# solve writes the solution and a report next to it
main(["solve", "--in", str(inst), "--out", str(work / "don.solution.json"), "--solver", "exact"])
print((work / "don.solution.json.report.json").read_text()[:200])

# verify exits 0 on a valid cover
print(main(["verify", "--in", str(inst), "--solution", str(work / "don.solution.json")]))

# the drawing: outer ring, hole, one translucent fill per polygon
main(["render", "--in", str(inst), "--solution", str(work / "don.solution.json"), "--out", str(work / "don.svg")])
print((work / "don.svg").read_text()[:300])
print(work)
