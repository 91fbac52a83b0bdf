"""Validates hslope CLI outputs and example inputs against tools/schemas."""

import csv
import io
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

SIMULATE_HEADER = ["n", "re", "im", "arg", "rho_step", "dx", "dy"]
QUADCHECK_HEADER = ["family", "alpha", "r", "theta_over_pi", "quad_re", "quad_im",
                    "closed_re", "closed_im", "rel_err"]


def main() -> int:
    binary, schema_dir, examples = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schemas = {p.name.split(".")[0]: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    for s in schemas.values():
        jsonschema.Draft202012Validator.check_schema(s)
    failures = []

    def run(*args):
        res = subprocess.run([binary, "--no-timestamp", *args], capture_output=True, text=True)
        if res.returncode != 0:
            failures.append(f"{' '.join(args)}: exit {res.returncode}: {res.stderr.strip()}")
        return res.stdout

    def check(name, instance, label):
        try:
            jsonschema.validate(instance, schemas[name], cls=jsonschema.Draft202012Validator)
            print(f"ok   {label} ({name})")
        except jsonschema.ValidationError as e:
            failures.append(f"{label}: {e.message} at {list(e.absolute_path)}")

    for path in sorted(examples.glob("*.json")):
        doc = json.loads(path.read_text())
        check("construction" if "terms" in doc else "map", doc, path.name)

    tmp = pathlib.Path(tempfile.mkdtemp())
    spec = tmp / "spec.json"
    spec.write_text(run("construct", "--variant", "full", "--K", "4", "--search"))
    check("construction", json.loads(spec.read_text()), "construct --search")
    check("construct_infeasible",
          json.loads(run("construct", "--variant", "full", "--K", "4", "--search", "--max-growth-exp", "0")),
          "construct infeasible")
    check("condition_report", json.loads(run("validate", "--spec", str(spec))), "validate search spec")
    check("condition_report", json.loads(run("validate", "--spec", str(examples / "factorial_pure.json"))),
          "validate factorial_pure")
    for m in ["delta0", "alpha05", "translation", "log_example"]:
        check("classification", json.loads(run("classify", "--map", str(examples / f"{m}.json"), "--budget", "1000")),
              f"classify {m}")
    check("slope", json.loads(run("slope", "--map", str(examples / "alpha05.json"), "--iters", "2000")), "slope")
    check("slope", json.loads(run("slope", "--map", str(examples / "delta0.json"), "--iters", "2000",
                                  "--seed", "0,1", "--seed", "1,2")), "slope independence")
    check("slope", json.loads(run("slope", "--map", str(examples / "translation.json"), "--iters", "2000",
                                  "--singleton")), "slope singleton")
    check("lemma_report", json.loads(run("lemmacheck", "--spec", str(spec), "--grid", "4")), "lemmacheck full")
    check("lemma_report", json.loads(run("lemmacheck", "--spec", str(examples / "half_k3.json"), "--grid", "4")),
          "lemmacheck half")

    rows = list(csv.reader(io.StringIO(run("simulate", "--map", str(examples / "delta0.json"), "--iters", "20"))))
    if rows[0] != SIMULATE_HEADER:
        failures.append(f"simulate header {rows[0]}")
    rows = list(csv.reader(io.StringIO(run("quadcheck"))))
    if rows[0] != QUADCHECK_HEADER:
        failures.append(f"quadcheck header {rows[0]}")

    for f in failures:
        print(f"FAIL {f}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
