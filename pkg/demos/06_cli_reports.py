"""The command-line interface: JSON in, deterministic JSON reports out.

Run:  python demos/06_cli_reports.py
"""

import json
import pathlib
import tempfile

import numpy as np

from localsolv.cli import main

workdir = pathlib.Path(tempfile.mkdtemp(prefix="localsolv-demo-"))

# forms.json: a pair of quadratic forms (optionally C and a custom J).
qa = np.zeros((4, 4))
qa[0, 3] = qa[3, 0] = 0.5
qa[1, 2] = qa[2, 1] = 0.5
qb = np.zeros((4, 4))
qb[0, 2] = qb[2, 0] = 0.5
qb[1, 3] = qb[3, 1] = -0.5
forms_path = workdir / "quartet.json"
forms_path.write_text(json.dumps({"n": 4, "A": qa.tolist(), "B": qb.tolist()}))

print("== bracket (both sign conventions) ==")
main(["bracket", str(forms_path), "--text"])

print("\n== pencil ranks ==")
main(["pencil", str(forms_path), "--text"])

print("\n== dissipativity + certificate ==")
main(["dissipativity", str(forms_path), "--text"])

print("\n== witness search (bracket mode, C computed on the fly) ==")
main(["witness", str(forms_path), "--mode", "bracket", "--restarts", "40", "--text"])

# Operator check: same pair as coefficients on the d=2 group.
op_path = workdir / "operator.json"
op_path.write_text(json.dumps({"d": 2, "A_re": qa.tolist(), "A_im": qb.tolist()}))
print("\n== check-heisenberg ==")
main(["check-heisenberg", str(op_path), "--text"])

# Step reduction emits a ready-to-run 2-step spec (round trip shown below).
lie_path = workdir / "free3.json"
lie_path.write_text(
    json.dumps(
        {
            "dim": 5,
            "grading": [1, 1, 2, 3, 3],
            "c": [[0, 1, 2, 1.0], [2, 0, 3, 1.0], [2, 1, 4, 1.0]],
            "A_re": [[1.0, 0.0], [0.0, 1.0]],
            "A_im": [[1.0, 0.0], [0.0, -1.0]],
        }
    )
)
print("\n== reduce-step (JSON report; result is a check-2step input) ==")
import contextlib
import io

buffer = io.StringIO()
with contextlib.redirect_stdout(buffer):
    main(["reduce-step", str(lie_path)])
report = json.loads(buffer.getvalue())
reduced_path = workdir / "reduced.json"
reduced_path.write_text(json.dumps(report["result"]))
print("reduced spec written to", reduced_path)

print("\n== check-2step on the reduced spec ==")
main(["check-2step", str(reduced_path), "--text"])

print("\nreports are byte-identical for identical inputs, seeds and flags;")
print("run any command twice and compare, or see tests/test_cli.py")
