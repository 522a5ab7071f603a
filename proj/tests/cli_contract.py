#!/usr/bin/env python3
"""Runs the CLI over the sample graphs: exit codes and JSON schema validity."""

import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
graphs = root / "data" / "graphs"

registry = Registry()
schemas = {}
for path in sorted((root / "docs" / "schemas").glob("*.schema.json")):
    doc = json.loads(path.read_text())
    registry = registry.with_resource(path.name, Resource.from_contents(doc))
    schemas[path.name.split(".")[0]] = doc

failures = []


def run(args, expect_code, schema=None, stderr_has=None):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    label = " ".join(args)
    if proc.returncode != expect_code:
        failures.append(f"{label}: exit {proc.returncode}, expected {expect_code}\n{proc.stderr}")
        return None
    if stderr_has and stderr_has not in proc.stderr:
        failures.append(f"{label}: stderr lacks {stderr_has!r}")
    if schema is None:
        return proc.stdout
    try:
        doc = json.loads(proc.stdout)
    except json.JSONDecodeError as err:
        failures.append(f"{label}: stdout is not JSON ({err})")
        return None
    validator = Draft202012Validator(schemas[schema], registry=registry)
    for err in validator.iter_errors(doc):
        failures.append(f"{label}: {schema} schema: {err.message} at {list(err.path)}")
    return doc


g = lambda name: str(graphs / name)

for sample in sorted(graphs.glob("*.json")):
    if sample.name == "broken.json":
        continue
    run(["analyze", str(sample)], 0, "report")
    run(["export-dot", str(sample)], 0)
    for prop in ["condition-k", "distinct-detours", "no-sources", "row-finite", "pure", "elementary"]:
        proc = subprocess.run([cli, "check", str(sample), prop], capture_output=True, text=True)
        if proc.returncode not in (0, 1):
            failures.append(f"check {sample.name} {prop}: exit {proc.returncode}")
            continue
        doc = json.loads(proc.stdout)
        if doc["holds"] != (proc.returncode == 0):
            failures.append(f"check {sample.name} {prop}: exit code disagrees with verdict")
        validator = Draft202012Validator(schemas["check"], registry=registry)
        failures.extend(f"check {sample.name} {prop}: {e.message}" for e in validator.iter_errors(doc))
    if "tails" not in sample.read_text():
        run(["desingularize", str(sample)], 0, "graph")

report = run(["analyze", g("two_loops.json")], 0, "report")
if report and (report["zStable"]["verdict"], report["zStable"]["provenance"]) != ("yes", "thm-B"):
    failures.append("two_loops: expected zStable yes [thm-B]")
report = run(["analyze", g("line3.json")], 0, "report")
if report and report["pure"] is not False:
    failures.append("line3: expected pure=false")

run(["analyze", g("broken.json")], 2, stderr_has='dangling endpoint "v"')
run(["check", g("broken.json"), "pure"], 2)
run(["export-dot", g("broken.json")], 2)
run(["analyze", g("missing.json")], 2)

run(["check", g("two_loops.json"), "condition-k"], 0, "check")
doc = run(["check", g("one_loop.json"), "condition-k"], 1, "check")
if doc and doc["witness"] != "v":
    failures.append("one_loop condition-k: witness should be v")
doc = run(["check", g("desing_bomega.json"), "z-stable"], 1, "check", stderr_has="conjecturally-yes")
run(["check", g("omega_loop.json"), "z-stable"], 1, "check", stderr_has="conjecturally-yes")
run(["check", g("two_loops.json"), "z-stable"], 0, "check")
run(["check", g("line3.json"), "z-stable"], 1, "check")

dot = run(["export-dot", g("single_edge.json")], 0)
if dot and (dot.count("->") != 1 or '"u";' not in dot or '"v";' not in dot):
    failures.append("single_edge DOT: expected two nodes and one arrow")
dot = run(["export-dot", g("omega_loop.json")], 0)
if dot and ("ω" not in dot or dot.count("->") != 1):
    failures.append("omega_loop DOT: expected one omega-labelled loop")
dot = run(["export-dot", g("desing_bomega.json")], 0)
if dot and "…" not in dot:
    failures.append("tail DOT: expected an ellipsis node")

run(["lpa", "nf", g("two_loops.json"), "s_[e]·s*_[e]"], 0, "lpa")
run(["lpa", "mul", g("single_edge.json"), "s*_[e]", "s_[e]"], 0, "lpa")
run(["lpa", "star", g("single_edge.json"), "2·s_[e]"], 0, "lpa")
run(["lpa", "eq", g("two_loops.json"), "s_[e]·s*_[e] + s_[f]·s*_[f]", "p_[v]"], 0, "lpa")
run(["lpa", "eq", g("two_loops.json"), "s_[e]·s*_[e]", "p_[v]"], 1, "lpa")
run(["lpa", "nf", g("two_loops.json"), "s_[zz]"], 2)
run(["lpa", "mul", g("two_loops.json"), "p_[v]"], 2)

run(["centralizer", g("parallel_pair.json"), "--vertex", "v"], 0, "centralizer")
run(["centralizer", g("single_edge.json"), "--vertex", "v"], 1, "centralizer")
run(["centralizer", g("two_loops.json"), "--vertex", "v"], 2)
run(["centralizer", g("single_edge.json"), "--vertex", "nope"], 2)

run(["series", g("two_loops.json")], 0, "series")
run(["series", g("line3.json")], 0, "series")
run(["series", g("one_loop.json")], 1, "series")

run(["corpus", "--max-vertices", "1", "--max-edges", "2"], 0, "corpus")
run(["corpus", "--max-vertices", "2", "--max-edges", "1", "--allow-omega"], 0, "corpus")
run(["corpus", "--max-vertices", "0"], 2)
run(["analyze", g("two_loops.json"), "--format", "yaml"], 2)

for f in failures:
    print("FAIL:", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
