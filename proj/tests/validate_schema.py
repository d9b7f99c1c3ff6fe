"""Validate `learn --json` output for every sample against the result schema."""
import json
import pathlib
import subprocess
import sys

import jsonschema

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
schema = json.loads((root / "docs" / "result.schema.json").read_text())
for kb in sorted((root / "samples").glob("*.kb")):
    run = subprocess.run([cli, "learn", "--json", str(kb)], capture_output=True, text=True)
    if run.returncode not in (0, 1):
        sys.exit(f"{kb.name}: exit {run.returncode}: {run.stderr}")
    jsonschema.validate(json.loads(run.stdout), schema)
    print(f"{kb.name}: ok")
