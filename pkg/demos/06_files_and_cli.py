"""
Files and the command line
==========================

Algebras and bimodules travel as JSON with exact string scalars.  Write the
fixture corpus, break one file on purpose, and drive the ``invhoch``
command from Python (the same arguments work in a shell).
"""

import json
import tempfile
from pathlib import Path

from invhoch.cli import main

out = Path(tempfile.mkdtemp(prefix="invhoch-demo-"))
main(["fixtures", "--emit", str(out), "--field", "rational"])

path = out / "dual_anti_Q.json"
print(path.read_text()[:400], "...")

main(["validate", str(path), str(out / "dual_anti_Q.regular.json")])
main(["hh", "--algebra", str(path), "--variant", "ihh", "--oracle", "check"])

# change x.x from 0 to x: still associative, but (x x)* = -x while x* x* = x
d = json.loads(path.read_text())
d["mul"][1][1] = ["0", "1"]
bad = out / "broken.json"
bad.write_text(json.dumps(d))
code = main(["validate", str(bad)])
print("exit code", code)

# in characteristic 2 the involutive variants report the oracle value
main(["--json", "hh", "--algebra", "fixture:k", "--field", "2", "--variant", "ihh"])
