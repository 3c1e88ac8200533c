"""Validate tfzpp output files against the schemas in schemas/."""
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

tfzpp, schema_dir, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
work.mkdir(parents=True, exist_ok=True)

schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())


def check(schema, doc, label):
    v = jsonschema.Draft202012Validator(schemas[schema], registry=registry)
    errors = list(v.iter_errors(doc))
    print(("FAIL " if errors else "PASS ") + label)
    for e in errors[:3]:
        print("   ", e.message)
    return not errors


def run(*args):
    return subprocess.run([tfzpp, *map(str, args)], capture_output=True, text=True)


ok = True
problems = ["lossy", "empty-child", "nephew", "dlo", "amgm", "metered-line", "sink-of-dag", "weak-pigeon",
            "btree-leaf", "lossy+line"]
for p in problems:
    f = work / f"{p}.json"
    run("gen", "--problem", p, "--size", 3, "--seed", 2, "--out", f)
    inst = json.loads(f.read_text())
    ok &= check("instance.schema.json", inst, f"instance {p}")
    r = run("solve", "--instance", f, "--brute", "--all", "--out", work / f"{p}.sol.json")
    ok &= check("solution.schema.json", json.loads((work / f"{p}.sol.json").read_text()), f"solutions {p}")
    ok &= check("report.schema.json", json.loads(r.stderr), f"solve report {p}")

sol = work / "one.json"
sol.write_text(json.dumps(json.loads((work / "lossy.sol.json").read_text())[0]))
r = run("verify", "--instance", work / "lossy.json", "--solution", sol)
ok &= check("report.schema.json", json.loads(r.stdout), "verify report")

# a target above the materialization cap is written as a recipe
r = subprocess.run([tfzpp, "reduce", "--from", work / "lossy.json", "--rule", "lossy_stretch", "--target-M", "100000",
                    "--out", work / "recipe.json"], capture_output=True, text=True)
recipe = json.loads((work / "recipe.json").read_text())
ok &= check("recipe.schema.json", recipe, "recipe")
ok &= check("instance.schema.json", recipe, "recipe as instance")

bad = {"problem": "lossy", "params": {"N": 1, "M": 2}, "oracles": {"f": [0]}}
rejected = bool(list(jsonschema.Draft202012Validator(schemas["instance.schema.json"], registry=registry).iter_errors(bad)))
print(("PASS " if rejected else "FAIL ") + "zero table entry rejected")
ok &= rejected
sys.exit(0 if ok else 1)
