"""Regenerates the bundled corpus under corpus/.

Diagram files come straight from the builders; grid files are written
verbatim.  Rerunning must be a no-op on a clean tree, so everything here
is deterministic.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hfk.builders import (  # noqa: E402
    essential_circle_diagram,
    genus2_tube_diagram,
    lens_diagram,
    lens_finger_diagram,
)
from hfk.diagram import save_diagram, validate  # noqa: E402
from hfk.grid import parse_grid  # noqa: E402

GRIDS = {
    "unknot2.grid": "# unknot, smallest grid\n0 1\n1 0\n",
    "unknot3.grid": "# unknot with one stabilization\n1 2 0\n0 1 2\n",
    "trefoil.grid": "# trefoil on a five by five grid\n"
                    "1 2 3 4 0\n4 0 1 2 3\n",
    "figure8.grid": "# figure eight knot on a six by six grid\n"
                    "5 1 0 3 2 4\n3 4 2 1 5 0\n",
}


def main() -> int:
    root = os.path.join(os.path.dirname(__file__), "..", "corpus")
    os.makedirs(root, exist_ok=True)
    diagrams = {
        "essential_circle.hd.json": essential_circle_diagram(),
        "genus2_tube.hd.json": genus2_tube_diagram(),
    }
    for e in range(1, 7):
        diagrams["lens_e%d.hd.json" % e] = lens_diagram(e)
    for e in (2, 3):
        diagrams["lens_e%d_finger.hd.json" % e] = lens_finger_diagram(e)
    for name, d in sorted(diagrams.items()):
        report = validate(d)
        if not report.is_valid:
            print("%s failed validation: %s" % (name, report.errors))
            return 1
        save_diagram(d, os.path.join(root, name))
        print("wrote %s" % name)
    for name, text in sorted(GRIDS.items()):
        parse_grid(text)
        with open(os.path.join(root, name), "w", encoding="utf-8") as fh:
            fh.write(text)
        print("wrote %s" % name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
