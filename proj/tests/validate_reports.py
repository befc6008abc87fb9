"""Runs every subcommand with --json and validates the reports."""
import json
import subprocess
import sys

import jsonschema

exe, schema_path, data = sys.argv[1:4]
with open(schema_path) as f:
    schema = json.load(f)
validator = jsonschema.Draft202012Validator(schema)

runs = [
    ["normalize", "x*x - x"],
    ["expand", "x + y"],
    ["interpret", "x - y"],
    ["interpret", "2"],
    ["check", "barbara.prob"],
    ["check", "intro.prob", "--mode", "oracle"],
    ["check", "cx.prob", "--trace", "cx.trace"],
    ["embed", "--boole", "2"],
    ["embed", "p_intro.alg", "q_xor.alg"],
    ["embed", "p_intro.alg", "--theory", "comm.theory"],
    ["model-search", "comm.theory", "--size", "2"],
    ["counterexample", "intro"],
    ["counterexample", "cx"],
    ["theorem-demo"],
]
failures = 0
for args in runs:
    proc = subprocess.run([exe, "--json", *args], cwd=data, capture_output=True, text=True)
    doc = json.loads(proc.stdout)
    errors = sorted(validator.iter_errors(doc), key=str)
    if doc["exit_code"] != proc.returncode:
        errors.append(f"exit_code {doc['exit_code']} but process exited {proc.returncode}")
    for e in errors:
        failures += 1
        print(f"{' '.join(args)}: {getattr(e, 'message', e)}")
    if not errors:
        print(f"ok  {' '.join(args)}")
sys.exit(1 if failures else 0)
