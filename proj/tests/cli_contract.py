#!/usr/bin/env python3
"""Command-line contract: exit codes, schema-valid JSON, byte-identical CSV."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

BLAB = sys.argv[1]
ROOT = sys.argv[2]
CONFIGS = os.path.join(ROOT, "configs")
SCHEMAS = os.path.join(ROOT, "schemas")

failures = []


def schema(name):
    with open(os.path.join(SCHEMAS, name)) as f:
        return json.load(f)


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("BLAB_THREADS", None)
    if env:
        e.update(env)
    p = subprocess.run([BLAB, *args], capture_output=True, text=True, env=e, cwd=CONFIGS)
    return p.returncode, p.stdout, p.stderr


def expect(name, cond, detail=""):
    print(("PASS " if cond else "FAIL ") + name + ("" if cond else "  " + detail))
    if not cond:
        failures.append(name)


def valid(doc, sch):
    try:
        jsonschema.validate(doc, schema(sch))
        return True, ""
    except jsonschema.ValidationError as e:
        return False, e.message


def json_case(name, args, code, sch, check=lambda d: True):
    rc, out, err = run(*args)
    if rc != code:
        expect(name, False, "exit %d, expected %d; stderr: %s" % (rc, code, err.strip()))
        return None
    try:
        doc = json.loads(out)
    except json.JSONDecodeError as e:
        expect(name, False, "stdout is not JSON: %s" % e)
        return None
    ok, why = valid(doc, sch)
    if not ok:
        expect(name, False, "schema: " + why)
        return None
    expect(name, bool(check(doc)), json.dumps(doc)[:400])
    return doc


# Shipped inputs validate against their schemas.
for f in sorted(os.listdir(CONFIGS)):
    with open(os.path.join(CONFIGS, f)) as h:
        doc = json.load(h)
    sch = "blocks-input.schema.json" if f.startswith("blocks-") else "group-config.schema.json"
    ok, why = valid(doc, sch)
    expect("config " + f, ok, why)

# spp
json_case("spp 1+x1+x2 N=3 box 2 is undecided", ["spp", "--poly", "1 + x1 + x2", "--N", "3", "--box", "2"], 2,
          "spp-output.schema.json",
          lambda d: d["verdict"]["status"] == "unknown_up_to_bound" and d["verdict"]["counterexample"] is None)
json_case("spp x1^2+x1+1 is no_spp", ["spp", "--poly", "x1^2 + x1 + 1"], 0, "spp-output.schema.json",
          lambda d: d["verdict"]["status"] == "no_spp" and d["verdict"]["certificate"] == "cyclotomic")
json_case("spp x1-2 is has_spp N=1", ["spp", "--poly", "x1 - 2"], 0, "spp-output.schema.json",
          lambda d: d["verdict"]["status"] == "has_spp" and d["verdict"]["N"] == 1)
json_case("spp x^2-x-1 is has_spp N=2", ["spp", "--poly", "x^2 - x - 1"], 0, "spp-output.schema.json",
          lambda d: d["verdict"]["status"] == "has_spp" and d["verdict"]["N"] == 2)
rc, _, _ = run("spp", "--poly", "1 + (")
expect("spp malformed polynomial exits 1", rc == 1)
rc, _, _ = run("spp")
expect("spp without --poly exits 1", rc == 1)

# cube
json_case("cube g3 N=3 k=10 independent", ["cube", "--group", "g3-baumslag.json", "--N", "3", "--k", "10", "--seed", "7"],
          0, "cube-output.schema.json", lambda d: d["report"]["independent"] and d["report"]["n"] == 10)
json_case("cube baumslag lattice 3,3,0 k=8 independent",
          ["cube", "--group", "baumslag-tf.json", "--lattice", "3,3,0", "--k", "8", "--seed", "7"], 0,
          "cube-output.schema.json", lambda d: d["report"]["independent"] and d["lattice"] == [3, 3, 0])
json_case("cube torsion demo has verified witness", ["cube", "--group", "lamplighter-z2.json", "--demo", "torsion"], 0,
          "cube-output.schema.json",
          lambda d: not d["report"]["independent"] and d["report"]["witness"] and d["witness_verified"])
rc, _, _ = run("cube", "--group", "g3-baumslag.json", "--N", "3")
expect("cube without --seed exits 1", rc == 1)
rc, _, _ = run("cube", "--group", "missing.json", "--seed", "1")
expect("cube with a missing config exits 1", rc == 1)

# walk
with tempfile.TemporaryDirectory() as tmp:
    a, b, c, d = (os.path.join(tmp, n) for n in ("a.csv", "b.csv", "c.csv", "d.csv"))
    base = ["walk", "--group", "g3-restricted.json", "--n", "100", "--trials", "1", "--seed", "1"]
    rc1, out1, _ = run(*base, "--csv", a)
    rc2, out2, _ = run(*base, "--csv", b)
    with open(a, "rb") as f1, open(b, "rb") as f2:
        bytes_a, bytes_b = f1.read(), f2.read()
    expect("walk CSV is byte-identical across runs", rc1 == rc2 == 0 and bytes_a == bytes_b and out1 == out2)
    expect("walk CSV header", bytes_a.splitlines()[0] == b"seed,n,trial,k_n,delta_increments,fresh_visits,range_distinct")
    threaded = ["walk", "--group", "baumslag-tf.json", "--n", "200,400", "--trials", "12", "--seed", "5"]
    run(*threaded, "--csv", c)
    run(*threaded, "--csv", d, env={"BLAB_THREADS": "3"})
    with open(c, "rb") as f1, open(d, "rb") as f2:
        expect("walk CSV independent of BLAB_THREADS", f1.read() == f2.read())
    rc, _, _ = run(*threaded[:-2])
    expect("walk without --seed exits 1", rc == 1)
    rc, _, _ = run(*threaded, "--csv", d, env={"BLAB_THREADS": "zero"})
    expect("walk with a bad BLAB_THREADS exits 1", rc == 1)
    summary = os.path.join(tmp, "s.csv")
    doc = json_case("walk baumslag lower bound positive",
                    ["walk", "--group", "baumslag-tf.json", "--n", "500,1000", "--trials", "40", "--seed", "1",
                     "--summary-csv", summary], 0, "walk-output.schema.json",
                    lambda d: all(r["lower_bound_rate"] > 0 for r in d["results"]))
    with open(summary) as f:
        lines = f.read().splitlines()
    expect("walk summary CSV header and rows",
           lines[0] == "n,trials,mean_rate,h_nu,lower_bound_rate,range_fraction,endpoint_entropy_mm,normalized_entropy"
           and len(lines) == 3)
    json_case("walk lamp-z2-z2 output", ["walk", "--group", "lamp-z2-z2.json", "--n", "100", "--trials", "5", "--seed", "2"],
              0, "walk-output.schema.json")

# verify
json_case("verify runs all four checks", ["verify"], 0, "verify-output.schema.json",
          lambda d: d["all_passed"] and len(d["checks"]) == 4)
expected = "x^9 + 3*x^6*y^3 + 3*x^6 + 3*x^3*y^6 - 21*x^3*y^3 + 3*x^3 + y^9 + 3*y^6 + 3*y^3 + 1"
json_case("verify --only nine-product prints the polynomial", ["verify", "--only", "nine-product"], 0,
          "verify-output.schema.json", lambda d: d["checks"][0]["detail"]["polynomial"] == expected)
rc, _, _ = run("verify", "--tamper-relation")
expect("verify with a tampered relation exits nonzero", rc != 0)

# blocks
json_case("blocks restricted Baumslag", ["blocks", "--input", "blocks-restricted-baumslag.json"], 0,
          "blocks-output.schema.json",
          lambda d: d["report"]["valid_count"] == 1 and d["report"]["valid_blocks"][0]["lattice_rank"] == 3
          and d["report"]["valid_blocks"][0]["relation"] == "x1 - x2 + 1"
          and not d["report"]["valid_blocks"][0]["generalized_cyclotomic"])
json_case("blocks lamplighter", ["blocks", "--input", "blocks-lamplighter.json"], 0, "blocks-output.schema.json",
          lambda d: d["report"]["valid_count"] == 1 and d["report"]["valid_blocks"][0]["ring"] == "free_laurent"
          and d["report"]["valid_blocks"][0]["relation"] is None)
json_case("blocks diagonal only", ["blocks", "--input", "blocks-diagonal-only.json"], 0, "blocks-output.schema.json",
          lambda d: d["report"]["valid_count"] == 0)
rc, _, _ = run("blocks", "--input", "g3-restricted.json")
expect("blocks on a group config exits 1", rc == 1)
rc, _, _ = run("frobnicate")
expect("unknown subcommand exits 1", rc == 1)

print("%d failure(s)" % len(failures))
sys.exit(1 if failures else 0)
