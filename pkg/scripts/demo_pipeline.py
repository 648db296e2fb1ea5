#!/usr/bin/env python3
"""End-to-end tour: generate a net, verify it, classify it, compute its
curvature data and export an OBJ, printing a short summary of each stage."""

import json
import tempfile
from pathlib import Path

from liechannel.cli import main


def run(args):
    print(f"$ liechannel {' '.join(args)}")
    code = main(args)
    print(f"  -> exit {code}\n")
    return code


if __name__ == "__main__":
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        net = tmp / "torus.json"
        report = tmp / "verify.json"
        curv = tmp / "curvature.json"
        obj = tmp / "torus.obj"

        run(["generate", "dupin-torus", "--R", "2", "--r", "1",
             "--m", "16", "--n", "16", "--out", str(net)])
        run(["verify", "--in", str(net), "--direction", "both",
             "--report", str(report)])
        rep = json.loads(report.read_text())
        print("verify report highlights:")
        for d in ("+", "-"):
            e = rep["directions"][d]
            print(f"  direction {d}: channel={e['channel']} "
                  f"constancy={e['constancy_residual']:.2e} "
                  f"cross-ratio spread={e['cross_ratio_spread']:.2e}")
        print(f"  dupin cyclide: {rep['dupin_cyclide']}, "
              f"isothermic: {rep['isothermic']['all_pass']}\n")
        run(["classify", "--in", str(net)])
        run(["curvature", "--in", str(net), "--report", str(curv)])
        run(["export", "--in", str(net), "--obj", str(obj), "--circles"])
        n_v = sum(1 for l in obj.read_text().splitlines() if l.startswith("v "))
        print(f"OBJ written with {n_v} vertex records")
