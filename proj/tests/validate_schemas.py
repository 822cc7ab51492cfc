"""Runs the CLI with --json and validates each output against the committed schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

CASES = [
    ("decide", ["--p", "5", "--alpha", "6", "--beta", "11", "decide", "exists x in G. V(x) = 0"]),
    ("decide", ["decide", "forall x in H. V(x - a) >= 0"]),
    ("decide", ["check-sat", "V(x - a) >= 2"]),
    ("decide", ["check-sat", "x = a and x = b"]),
    ("decide", ["check-sat", "V(x) = 1 and V(y) = 2"]),
    ("decide", ["eval", "V(x - a) >= 1", "--env", "x=1,0"]),
    ("audit", ["audit", "--depth", "4", "--samples", "8"]),
    ("audit", ["--bound", "3", "audit", "--depth", "4", "--samples", "8"]),
    ("audit", ["--p", "7", "--alpha", "8", "--beta", "29", "audit", "--depth", "3"]),
    ("mann", ["mann", "--generators", "2,3", "--coeffs", "1,-1", "--bound", "10"]),
    ("mann", ["mann", "--generators", "2,3", "--coeffs", "1/2,3", "--bound", "3"]),
    ("interp", ["--p", "2", "--alpha", "2", "--beta", "6", "interp", "tau", "3"]),
    ("interp", ["--p", "2", "--alpha", "2", "--beta", "6", "interp", "vpmap", "12"]),
    ("interp", ["--p", "3", "--alpha", "3", "--beta", "12", "interp", "ppow", "2"]),
    ("interp", ["--p", "2", "--alpha", "2", "--beta", "6", "interp", "compile", "V_p(12) = 4"]),
    ("density", ["density", "--target", "3,-2", "--n", "2", "--radius", "5"]),
]


def main() -> int:
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    resources = []
    for path in schema_dir.glob("*.schema.json"):
        resources.append((path.name, Resource.from_contents(json.loads(path.read_text()))))
    registry = Registry().with_resources(resources)
    failures = 0
    for schema_name, args in CASES:
        for timing in ([], ["--no-timing"]):
            cmd = [binary, "--json", *timing, *args]
            proc = subprocess.run(cmd, capture_output=True, text=True, check=False)
            if proc.returncode not in (0, 2):
                print(f"FAIL exit {proc.returncode}: {cmd}\n{proc.stderr}")
                failures += 1
                continue
            schema = registry.contents(f"{schema_name}.schema.json")
            validator = jsonschema.Draft202012Validator(schema, registry=registry)
            errors = list(validator.iter_errors(json.loads(proc.stdout)))
            for e in errors:
                print(f"FAIL {cmd}: {e.message} at {list(e.absolute_path)}")
            failures += bool(errors)
    print(f"{len(CASES) * 2 - failures} of {len(CASES) * 2} outputs valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
