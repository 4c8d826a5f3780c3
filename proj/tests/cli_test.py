"""End-to-end checks of the tforge executable."""
import json
import os
import re
import subprocess
import sys
import tempfile

import jsonschema

BIN, SCHEMA, RELATIONS = sys.argv[1:4]
schema = json.load(open(SCHEMA))
failures = []


def run(*args, env=None):
    p = subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
    return p.returncode, p.stdout, p.stderr


def expect(name, cond, extra=""):
    print(("ok   " if cond else "FAIL ") + name + (f"  {extra}" if extra and not cond else ""))
    if not cond:
        failures.append(name)


def report(*args, env=None):
    rc, out, err = run("--format", "json", *args, env=env)
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    return rc, doc, err


rc, out, _ = run("basis", "--weight", "5")
expect("basis 5", rc == 0 and "count=5, F_5=5" in out and out.count("t(") == 5)
rc, out, _ = run("basis", "--weight", "7")
expect("basis 7", rc == 0 and out.count("t(") == 13)
rc, out, _ = run("basis", "--weight", "4", "--mzv")
expect("basis mzv", rc == 0 and "t(2,2)\n" in out and "count=1, d_4=1" in out)
expect("basis k<2", run("basis", "--weight", "1")[0] == 2)
expect("unknown flag", run("basis", "--weight", "3", "--bogus")[0] == 2)

rc, out, _ = run("eval", "2", "--digits", "15")
expect("eval t(2)", rc == 0 and "1.233700550136170" in out)
rc, _, err = run("eval", "1,2")
expect("eval non-admissible", rc == 2 and "a_1 >= 2" in err)
rc, out, _ = run("eval", "2,1", "--backend", "oracle", "--cutoff", "100000")
expect("eval oracle", rc == 0 and "0.3292" in out and "cutoff 100000" in out)
rc, _, err = run("eval", "2,1,1", "--time-budget", "0")
expect("precision failure", rc == 3, err)
expect("digits out of range", run("eval", "2", "--digits", "500")[0] == 2)

with tempfile.TemporaryDirectory() as tmp:
    env = dict(os.environ, TFORGE_CACHE=os.path.join(tmp, "cache"))
    rc, doc, err = report("--verbose", "scan", "--weight", "5", "--digits", "60", env=env)
    expect("scan 5 cold", rc == 0 and doc["status"] == "pass" and "backend_calls=8" in err, err)
    rows = {r["target"]: r for r in doc["results"]["rows"]}
    expect("t(5) row", rows["t(5)"]["coefficients"] == ["0/1", "6/1", "0/1", "0/1", "7/1"])
    expect("t(4,1) row", rows["t(4,1)"]["coefficients"] == ["0/1", "-1/1", "4/1", "0/1", "1/2"])
    rc, doc2, err = report("--verbose", "scan", "--weight", "5", "--digits", "60", env=env)
    expect("scan 5 warm cache", rc == 0 and "backend_calls=0 " in err, err)
    expect("warm results identical", doc["results"] == doc2["results"])

    # Text and JSON carry the same numbers.
    rc, text, _ = run("scan", "--weight", "5", "--digits", "60", env=env)
    for row in doc["results"]["rows"]:
        line = next(l for l in text.splitlines() if l.startswith(row["target"] + " "))
        cells = line.split()
        want = [c[:-2] if c.endswith("/1") else c for c in row["coefficients"]]
        expect("text row " + row["target"], cells[1:1 + len(want)] == want, line)
    exps = [str(r["residual"]["residual_exp"]) for r in doc["results"]["rows"]
            if r["residual"]["residual_exp"] is not None]
    expect("text residual exponents", all(f"1e{e}" in text for e in exps))

rc, doc, _ = report("scan", "--weight", "2")
expect("scan 2", rc == 0 and len(doc["results"]["rows"]) == 1)
rc, doc, _ = report("--jobs", "4", "scan", "--weight", "6", "--digits", "60")
expect("scan 6", rc == 0 and len(doc["results"]["rows"]) == 16 and not doc["results"]["misses"])
expect("scan cap", run("scan", "--weight", "11")[0] == 2)
rc, doc, _ = report("scan", "--weight", "6", "--coeff-bound", "3")
expect("scan none-found", rc == 4 and doc["status"] == "none-found" and doc["results"]["misses"])

rc, doc, _ = report("verify-paper")
expect("verify-paper", rc == 0 and doc["status"] == "pass")
rc, text, _ = run("verify-paper")
for c in doc["results"]["checks"]:
    if "data" in c:
        expect("verify text " + c["name"], f"1e{c['data']['residual_exp']}" in text)
rc, doc, _ = report("verify-paper", "--digits", "20")
expect("verify-paper 20", rc == 0 and doc["status"] == "pass")

with tempfile.TemporaryDirectory() as tmp:
    bad = os.path.join(tmp, "rel.json")
    open(bad, "w").write(open(RELATIONS).read().replace('"-3/7"', '"-2/7"', 1))
    rc, doc, _ = report("--relations", bad, "verify-paper")
    failed = [c["name"] for c in doc["results"]["checks"] if not c["pass"]]
    expect("tampered relations", rc == 1 and doc["status"] == "fail" and "Eq.(1) residual" in failed)
    expect("missing relations", run("--relations", os.path.join(tmp, "none.json"), "verify-paper")[0] == 2)

rc, doc, _ = report("eval", "3,2", "--digits", "30")
expect("eval json", re.fullmatch(r"0\.0538549671235447251\d+", doc["results"]["value"]) is not None)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
