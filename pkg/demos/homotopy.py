"""
Checking a right homotopy
=========================

Two maps Q[x] -> C into the cone-like cdga C = Q[u, y], d u = y, are homotopic
through H(x) = y t - u dt in the path object C (x) forms on the interval.
A corrupted candidate is rejected with a diagnostic naming the generator.
"""

import io
import json
from pathlib import Path

from dgtann.cli import main

ws = Path(__file__).resolve().parent / "data" / "homotopy.json"
print(json.dumps(json.loads(ws.read_text())["homotopies"]["good"]["H"]))

for name in ("good", "corrupted"):
    out, err = io.StringIO(), io.StringIO()
    code = main(["--workspace", str(ws), "--emit", "json", "verify", "--check", "homotopy", "--homotopy", name], out, err)
    print(name, "exit", code, json.loads(out.getvalue())["diagnostics"])
