#!/usr/bin/env python3
"""Smoke test for the gyrodisc_py extension module.

Builds the cdylib if needed, imports it straight from the cargo target
directory, and exercises one call from every corner of the API surface.
Exits nonzero on the first failure.
"""

import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    lib = ROOT / "target" / "debug" / "libgyrodisc_py.so"
    if not lib.exists():
        subprocess.run(
            ["cargo", "build", "-p", "gyrodisc-py"], cwd=ROOT, check=True
        )
    staging = Path(tempfile.mkdtemp(prefix="gyrodisc-smoke-"))
    shutil.copy(lib, staging / "gyrodisc_py.so")
    sys.path.insert(0, str(staging))
    import gyrodisc_py

    return gyrodisc_py


checks = 0


def check(cond, label):
    global checks
    checks += 1
    if not cond:
        print(f"FAIL {label}", file=sys.stderr)
        sys.exit(1)
    print(f"ok   {label}")


def main():
    g = load_module()

    # Einstein velocity-addition of parallel speeds: (.6+.6)/(1+.36).
    z = g.mobius_add(0.6, 0.6)
    check(abs(z - 0.8823529411764706) < 1e-15, "mobius_add collinear value")

    a, b = 0.3 + 0.4j, -0.2 + 0.1j
    check(abs(abs(g.gyration(a, b)) - 1.0) < 1e-14, "gyration is unimodular")
    check(
        abs(g.mobius_add(a, g.mobius_neg(a))) < 1e-15,
        "a (+) (-a) = 0",
    )
    check(
        abs(g.mobius_sub(g.mobius_add(a, b), 0) - g.mobius_add(a, b)) < 1e-15,
        "mobius_sub of zero is identity",
    )
    check(
        abs(g.scalar_mul(2.0, 0.5) - g.mobius_add(0.5, 0.5)) < 1e-15,
        "2 (x) a doubles via addition",
    )
    d = g.gyro_distance(a, b)
    check(0.0 < d < 1.0, "gyro_distance lands in [0, s)")
    check(abs(g.gamma(0.5) - 0.5 / 0.75) < 1e-15, "gamma correction at v=1/2")

    # f and its inverse on the increasing branch left of the pole.
    x = g.f_inverse(g.f_eval(0.25, 0.6), 0.6)
    check(abs(x - 0.25) < 1e-12, "f_inverse undoes f_eval")

    line = g.Gyroline(a, b)
    check(line.s == 1.0, "Gyroline default ball")
    check(line.contains(a) and line.contains(b), "Gyroline through its points")
    car = line.carrier()
    check(car["kind"] in ("diameter", "arc"), "carrier kind")
    p = line.point_at(0.5)
    check(abs(line.param_of(p) - 0.5) < 1e-9, "param_of inverts point_at")
    e1, e2 = line.ideal_endpoints()
    check(
        abs(abs(e1) - 1.0) < 1e-9 and abs(abs(e2) - 1.0) < 1e-9,
        "ideal endpoints on the boundary",
    )
    other = g.Gyroline(0.1 - 0.3j, 0.2 + 0.5j)
    hit = line.intersect(other)
    if hit is not None:
        check(
            line.contains(hit) and other.contains(hit),
            "intersection on both lines",
        )
    check(
        g.collinear([a, p, b]) and not g.collinear([a, b, 0.7 + 0.1j]),
        "collinear predicate",
    )

    t = g.gen_triangle(11)
    rep = g.triangle_menelaus(t["a"], t["b"], t["c"], t["p1"], t["p2"])
    check(rep["deviation"] < 1e-9, "triangle Menelaus deviation")
    check(len(rep["ratios"]) == 3, "triangle report has 3 ratios")

    q = g.gen_quad(7)
    check(g.gen_quad(7) == q, "gen_quad is deterministic")
    check(g.gen_quad(8) != q, "gen_quad varies with the seed")

    worst = 0.0
    for seed in range(20):
        c = g.gen_quad(seed)
        r = g.quad_menelaus(c["a"], c["b"], c["c"], c["d"], c["p1"], c["p2"])
        worst = max(worst, r["deviation"])
    check(worst < 1e-9, f"20-case quad campaign, max dev {worst:.3e}")

    c = g.gen_quad(3)
    full = g.quad_menelaus(c["a"], c["b"], c["c"], c["d"], c["p1"], c["p2"])
    x_, y_, z_, w_ = (
        complex(*cut["point"]) for cut in full["intersections"]
    )
    conv = g.converse_check(c["a"], c["b"], c["c"], c["d"], x_, z_, w_)
    check(abs(conv["y"] - y_) < 1e-9, "converse recovers the dropped cut")
    check(conv["recovery_gap"] < 1e-9, "converse internal agreement")

    tri = g.gen_cevian(5)
    rep = g.transversal(
        tri["a"], tri["b"], tri["c"], tri["d"], tri["p1"], tri["p2"]
    )
    check(rep["deviation"] < 1e-9, "cevian transversal deviation")
    check(len(rep["ratios"]) == 4, "transversal report has 4 ratios")

    scene = (ROOT / "crates/cli/tests/fixtures/quad.gyro").read_text()
    run = g.run_scene(scene)
    check(run["all_passed"], "run_scene on the quad fixture")
    canon = g.scene_canonical(scene)
    check(g.scene_canonical(canon) == canon, "canonical form is a fixed point")
    try:
        g.run_scene("ball 1\npoint A 5 0\n")
        check(False, "bad scene raises")
    except ValueError:
        check(True, "bad scene raises")

    sweep = g.euclidean_limit_sweep(
        [0.4 + 0j, 0.3j, -0.45 + 0j, -0.2 - 0.3j],
        (-0.05 + 0.2j, -0.22 - 0.17j),
        [10.0, 100.0, 1000.0, 10000.0],
    )
    devs = [row["euclidean_deviation"] for row in sweep["rows"]]
    check(all(u > v for u, v in zip(devs, devs[1:])), "limit sweep decreases")
    check(abs(sweep["slope"] + 2.0) < 0.2, f"limit slope {sweep['slope']:.3f}")

    print(f"all {checks} smoke checks passed ({g.__version__})")


if __name__ == "__main__":
    main()
