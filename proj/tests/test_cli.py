#!/usr/bin/env python3
"""End-to-end checks of the command line tool: exit codes, output formats,
provenance stamps, and a few frozen values."""

import csv
import io
import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = []


def run(*args, expect=0):
    r = subprocess.run([BIN, *args], capture_output=True, text=True)
    if r.returncode != expect:
        raise AssertionError(
            f"{args}: exit {r.returncode}, wanted {expect}\n{r.stdout}\n{r.stderr}"
        )
    return r


def check(name, fn):
    try:
        fn()
        print(f"[ok] {name}")
    except Exception as exc:  # noqa: BLE001
        failures.append(name)
        print(f"[FAIL] {name}: {exc}")


def parse_csv(text):
    rows = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.reader(io.StringIO("\n".join(rows))))


def growth_csv():
    r = run("growth", "--q", "2,3", "--radius", "4")
    assert "# dlgraph" in r.stdout
    rows = parse_csv(r.stdout)
    assert rows[0] == ["r", "sphere_size"]
    sizes = [int(row[1]) for row in rows[1:]]
    assert sizes == [1, 5, 16, 50, 146], sizes


def growth_json_and_dump():
    with tempfile.TemporaryDirectory() as tmp:
        dump = os.path.join(tmp, "ball.json")
        out = os.path.join(tmp, "growth.json")
        run("growth", "--q", "2,2", "--radius", "3", "--format", "json",
            "--out", out, "--dump", dump)
        data = json.load(open(out))
        assert data["version"] and data["command"] == "growth"
        assert data["spheres"] == [1, 4, 10, 24]
        graph = json.load(open(dump))
        assert len(graph["vertices"]) == sum(data["spheres"])
        assert len(graph["distances"]) == len(graph["vertices"])
        n = len(graph["vertices"])
        assert all(0 <= a < n and 0 <= b < n for a, b in graph["edges"])
        assert graph["params"] == [2, 2]


def spectrum_json():
    r = run("spectrum", "--q", "2,2,2", "--hmax", "8", "--format", "json")
    data = json.loads(r.stdout)
    assert abs(data["rho"] - 1.0) < 1e-12
    assert abs(data["rho_prime"] + 0.5) < 1e-12
    assert all(-0.5 - 1e-9 <= v <= 1.0 + 1e-9 for v in data["eigenvalues"])


def spectrum_csv_and_eig():
    r = run("spectrum", "--q", "2,3", "--hmax", "5")
    rows = parse_csv(r.stdout)
    assert rows[0] == ["h", "index", "eigenvalue"]
    assert len(rows) > 5
    r2 = run("eig", "--q", "2,3", "--height", "5")
    rows2 = parse_csv(r2.stdout)
    assert len(rows2) == 1 + 4  # header + h-1 eigenvalues
    r3 = run("eig", "--q", "2,3", "--height", "5", "--format", "json", "--vectors")
    data = json.loads(r3.stdout)
    assert len(data["eigenvalues"]) == 4
    assert len(data["eigenvectors"]) == 4
    norm = sum(v * v for v in data["eigenvectors"][0])
    assert abs(norm - 1.0) < 1e-10


def basis_check():
    with tempfile.TemporaryDirectory() as tmp:
        dump = os.path.join(tmp, "basis.json")
        r = run("basis-check", "--q", "2,2", "--depths", "1,2", "--dump", dump)
        data = json.loads(r.stdout)
        assert data["ok"] is True
        assert data["basis_size"] == 6
        fns = json.load(open(dump))["functions"]
        assert len(fns) == 6
        for fn in fns:
            assert {"anchors", "m", "labels", "eigenvalue", "values"} <= set(fn)
            mass = sum(v * v for v in fn["values"].values())
            assert abs(mass - 1.0) < 1e-9


def return_prob():
    r = run("return-prob", "--q", "2,3", "--nmax", "6", "--hmax", "30")
    rows = parse_csv(r.stdout)
    assert rows[0] == ["n", "p_n", "tail_bound"]
    p0, tail0 = float(rows[1][1]), float(rows[1][2])
    assert abs(p0 - (1.0 - tail0)) < 1e-12


def cayley_verify():
    with tempfile.TemporaryDirectory() as tmp:
        dump = os.path.join(tmp, "ball.json")
        r = run("cayley-verify", "--d", "2", "--q", "2", "--radius", "3",
                "--format", "json", "--dump", dump)
        data = json.loads(r.stdout)
        assert data["isomorphic"] is True
        elems = json.load(open(dump))["elements"]
        assert len(elems) == data["group_ball"]
        assert all({"k", "num", "den", "vertex"} <= set(e) for e in elems)
        identities = [e for e in elems if e["k"] == [0] and e["num"] == []]
        assert len(identities) == 1
    r = run("cayley-verify", "--d", "3", "--q", "2", "--radius", "2")
    assert json.loads(r.stdout)["isomorphic"] is True
    r = run("cayley-verify", "--d", "3", "--ring", "fq", "--fields", "2^2", "--radius", "2")
    assert json.loads(r.stdout)["isomorphic"] is True


def presentation_check():
    r = run("presentation-check", "--d", "3", "--q", "2")
    data = json.loads(r.stdout)
    assert data["all_identities"] is True
    assert data["triangle_relators"] == 36


def automaton_check():
    r = run("automaton-check", "--q", "3", "--depth", "16", "--trials", "25")
    assert json.loads(r.stdout)["ok"] is True


def euler():
    r = run("euler", "--q", "2,2,2", "--radius", "1")
    data = json.loads(r.stdout)
    assert data["cells_by_dimension"] == [6, 12, 8]
    assert data["euler_characteristic"] == 2
    assert data["basic"] is True


def simulate_boundary():
    r = run("simulate", "--q", "2,3", "--steps", "600", "--trials", "80",
            "--seed", "2", "--boundary")
    data = json.loads(r.stdout)
    coords = data["coordinates"]
    assert not coords[0]["expected_lower"]
    assert coords[1]["expected_lower"]
    assert coords[1]["stabilized_fraction"] >= 0.9


def simulate_deterministic():
    a = run("simulate", "--q", "2,3", "--steps", "100", "--trials", "5", "--seed", "9")
    b = run("simulate", "--q", "2,3", "--steps", "100", "--trials", "5", "--seed", "9")
    assert a.stdout == b.stdout
    rows = parse_csv(a.stdout)
    assert len(rows) == 1 + 5
    assert "seed=9" in a.stdout


def drift_report():
    r = run("drift", "--q", "2,3", "--steps", "400", "--trials", "400", "--seed", "5")
    data = json.loads(r.stdout)
    assert data["alpha"] == [-0.2, 0.2]
    assert data["alpha_num_sum"] == 0
    for emp, alpha, se in zip(data["empirical"], data["alpha"], data["standard_error"]):
        assert abs(emp - alpha) <= 3.0 * se + 1e-12


def custom_law():
    with tempfile.TemporaryDirectory() as tmp:
        law = os.path.join(tmp, "law.json")
        json.dump(
            [
                {"down": 0, "up": 1, "label": 0, "prob": 0.35},
                {"down": 0, "up": 1, "label": 1, "prob": 0.35},
                {"down": 1, "up": 0, "label": 0, "prob": 0.15},
                {"down": 1, "up": 0, "label": 1, "prob": 0.15},
            ],
            open(law, "w"),
        )
        r = run("drift", "--q", "2,2", "--steps", "200", "--trials", "200",
                "--seed", "3", "--law", law)
        data = json.loads(r.stdout)
        assert abs(data["alpha"][0] - 0.4) < 1e-12


def validation_errors():
    run("growth", "--q", "2", "--radius", "2", expect=2)          # one tree only
    run("growth", "--q", "2,2,2", "--radius", "8", "--cap", "10", expect=2)  # cap guard
    run("nonsense", expect=2)                                      # unknown command
    run("growth", "--q", "2,2", "--radius", "2", "--format", "yaml", expect=2)
    run("basis-check", "--q", "2,2", "--depths", "1", expect=2)    # wrong arity
    run("cayley-verify", "--d", "4", "--q", "4", expect=2)         # no valid ring defaults


def out_file():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "spheres.csv")
        run("growth", "--q", "2,2", "--radius", "2", "--out", path)
        assert open(path).read().startswith("# dlgraph")


for case in [growth_csv, growth_json_and_dump, spectrum_json, spectrum_csv_and_eig,
             basis_check, return_prob, cayley_verify, presentation_check,
             automaton_check, euler, simulate_boundary, simulate_deterministic, drift_report,
             custom_law, validation_errors, out_file]:
    check(case.__name__, case)

if failures:
    print("failed:", ", ".join(failures))
    sys.exit(1)
print("all cli checks passed")
