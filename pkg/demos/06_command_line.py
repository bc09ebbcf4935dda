"""
Command-line reports
====================

The montlab command wraps the library checks into JSON and CSV reports.  The
same entry point can be called from Python, which is what this script does.
"""

import json
import os
import tempfile
from contextlib import redirect_stdout
from io import StringIO

from montlab.cli import main


def run(*argv):
    buf = StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


tmp = tempfile.mkdtemp()
pts = os.path.join(tmp, "fib.txt")

# write a point set file and analyse it
run("gen", "sphere", "--gen", "fibonacci", "--n", "100", "--out", pts)
code, out = run("analyze", "sphere", "--file", pts, "--degree", "32", "--checks", "montgomery,kernel-chain,theorem2")
report = json.loads(out)
print("exit code", code)
for rec in report["checks"]:
    print(f"  {rec['name']:22s} {rec['relation']:7s} lhs {rec['lhs']:12.5g} rhs {rec['rhs']:12.5g} pass {rec['pass']}")

# a sweep over degrees gives one CSV row per record
code, out = run("sweep", "sphere", "--gen", "uniform", "--n", "50", "--sets", "3", "--degree", "8,16,32", "--checks", "theorem2")
print(out.splitlines()[0])
print(len(out.splitlines()) - 1, "rows")

# torus: the classical lemma on a grid
code, out = run("analyze", "torus", "--gen", "grid", "--n", "16", "--x", "4", "--checks", "montgomery-lemma")
rec = json.loads(out)["checks"][0]
print("grid 4x4, X = 4:", rec["lhs"], ">=", rec["rhs"])
