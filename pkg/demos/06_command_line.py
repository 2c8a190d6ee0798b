"""
Running the suites from the command line
========================================

The ``quadhy`` entry point wraps every check. Here it is driven through
``main`` so the script runs without a shell. Reports are JSON or CSV on
stdout or in a file. The exit status is 0 when every check passes,
1 when a check fails and 2 for configuration errors.
"""

import json
import tempfile
from pathlib import Path

from quadhy.cli import main

# %%
# Bound constants for a set of parameters.
main(["constants", "--p", "1.5", "--c1", "1", "--lambda", "16", "--R", "2", "--b", "1"])

# %%
# The oracle-equivalence suite on a small grid, written to a file.
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "oracle.json"
    status = main(["--grid=-6,6,256", "--out", str(out), "verify", "oracle", "--seed", "1"])
    data = json.loads(out.read_text())
    print("exit status", status, "with", len(data["results"]), "reports")
    print("first report:", {k: data["results"][0][k] for k in ("kind", "transform", "verdict")})

# %%
# A run config sets suite parameters; flags given on the command line win.
with tempfile.TemporaryDirectory() as tmp:
    cfg = Path(tmp) / "run.json"
    cfg.write_text(json.dumps({"suites": ["dirichlet"], "dirichlet": {"x": 0.0}}))
    status = main(["--config", str(cfg), "--format", "csv", "verify", "--x", "1.0"])
    print("exit status", status)
