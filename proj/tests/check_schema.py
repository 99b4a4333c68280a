"""Runs every pbm subcommand and validates its JSON against the shipped schema."""
import json
import subprocess
import sys

import jsonschema

binary, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as fh:
    schema = json.load(fh)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

jobs = [
    ["matrix", "--n", "3", "--word", "A 1 3"],
    ["matrix", "--n", "2", "--word", "s1 s2^-1", "--basis", "unreduced"],
    ["verify", "--n", "3", "--word", "A 1 3"],
    ["form", "--n", "3"],
    ["form", "--d", "3", "--k", "1,1,2"],
    ["specialize", "--d", "3", "--k", "1,1,1"],
    ["specialize", "--d", "5", "--k", "1,2,3,4", "--word", "D 1 4 D 1 4"],
    ["spectral", "--d", "3", "--k", "1,1,1,1"],
    ["spectral", "--d", "2", "--k", "1,1,1,1,1,1"],
    ["decompose", "--d", "18", "--k", "1,1,1,1"],
    ["dm", "--d", "18", "--k", "1,1,1,1", "--f", "7"],
    ["dm", "--d", "2", "--k", "1,1,1"],
    ["classify", "--d", "3", "--k", "1,1,1,1,1,1,1"],
    ["classify", "--d", "18", "--k", "1,1,1,1"],
    ["classify", "--d", "5", "--k", "1,2,3,4,1"],
    ["signature", "--d", "18", "--k", "1,1,1,1", "--f", "7"],
    ["sweep", "--d", "2..4", "--n", "1..3"],
]

failures = 0
for job in jobs:
    out = subprocess.run([binary] + job, capture_output=True, text=True)
    if out.returncode != 0:
        print("FAIL exit", out.returncode, job, out.stderr)
        failures += 1
        continue
    docs = [line for line in out.stdout.splitlines() if line.strip()] if job[0] == "sweep" else [out.stdout]
    for text in docs:
        doc = json.loads(text)
        errors = list(validator.iter_errors(doc))
        if errors:
            print("FAIL schema", job, errors[0].message)
            failures += 1
        if json.loads(json.dumps(doc)) != doc:
            print("FAIL round trip", job)
            failures += 1
    print("ok", " ".join(job), f"({len(docs)} document(s))")

# The schema must reject a report with a missing required field.
broken = json.loads(subprocess.run([binary, "classify", "--d", "18", "--k", "1,1,1,1"],
                                   capture_output=True, text=True).stdout)
del broken["verdict"]
if validator.is_valid(broken):
    print("FAIL schema accepts a classify report without a verdict")
    failures += 1

sys.exit(1 if failures else 0)
