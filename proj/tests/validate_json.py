# Validates vm-landau JSON outputs against the shipped schemas.
# usage: validate_json.py <vm-landau> <repo root> <scratch dir>
import json
import os
import subprocess
import sys

import jsonschema

exe, root, work = sys.argv[1:4]
os.makedirs(work, exist_ok=True)
out_schema = json.load(open(os.path.join(root, "schema", "outputs.schema.json")))
eq_schema = json.load(open(os.path.join(root, "schema", "equilibrium.schema.json")))

for name in ("maxwellian.json", "powerlaw.json", "tabulated.json"):
    jsonschema.validate(json.load(open(os.path.join(root, "configs", name))), eq_schema)
try:
    jsonschema.validate(json.load(open(os.path.join(root, "configs", "powerlaw_M2.json"))), eq_schema)
    sys.exit("M = 2 config passed the schema")
except jsonschema.ValidationError:
    pass

cfg = os.path.join(root, "configs", "maxwellian.json")


def run(*args):
    subprocess.run([exe, *args, "--equilibrium", cfg], check=True, stdout=subprocess.DEVNULL)


run("kernels", "--out", os.path.join(work, "k.json"))
run("dispersion", "--kmax", "2", "--n", "16", "--out", os.path.join(work, "d.csv"))
run("green", "--k", "1", "--tmax", "20", "--dt", "0.01", "--out", os.path.join(work, "g.csv"),
    "--report", os.path.join(work, "g.json"))
run("report", "--only", "1", "--out", os.path.join(work, "r.json"))
for f in ("k.json", "d.csv.json", "g.json", "r.json"):
    jsonschema.validate(json.load(open(os.path.join(work, f))), out_schema)
print("schemas ok")
