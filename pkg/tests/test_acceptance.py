"""Acceptance criteria 1-10, one test each; results are echoed in the terminal summary."""
from __future__ import annotations

import json
import os
import subprocess
import sys
import time

from conftest import record
from oracles import expected_horn_image, ind_count
from nervelab import cases, io, models
from nervelab.cat import (
    category_from_generators,
    classical_nerve,
    contractible_groupoid,
    cyclic_group,
    group_as_category,
    identity_functor,
    ordinal,
    FiniteFunctor,
    symmetric_group,
)
from nervelab.nerves import adjunction_check, comparison_maps, hc_nerve, isomorphic_via
from nervelab.qf import (
    SDiagram,
    check_strict_functor,
    compare_lim,
    grothendieck,
    holim_sset,
    is_fibered,
    lim_sset,
    product_projection,
    qf_from_fibered,
)
from nervelab.scat import discrete_scat, group_nerve_scat
from nervelab.sset import (
    boundary_subcomplex,
    horn,
    identity_map,
    pi0,
    standard_simplex,
)


def test_criterion_1_horn_images():
    start = time.perf_counter()
    mismatches, inner_faces = [], set()
    for n in (2, 3, 4):
        for i in range(n + 1):
            for a in range(n + 1):
                for b in range(a + 1, n + 1):
                    h = models.horn_image(n, i, a, b)
                    kind, cells = expected_horn_image(n, i, a, b)
                    if (h.kind, h.cells) != (kind, cells):
                        mismatches.append((n, i, a, b))
                    if 0 < i < n and (a, b) == (0, n):
                        inner_faces.add(h.faces == 2 * n - 3 and h.coordinate == i and h.eps == 1)
                    if i == 0 and (a, b) == (0, n) and (h.coordinate, h.eps) != (1, 0):
                        mismatches.append(("outer", n))
    elapsed = time.perf_counter() - start
    ok = not mismatches and inner_faces == {True} and elapsed < 10
    record(1, ok, f"n=2..4 all (i,a,b) exact; {elapsed:.2f}s")
    assert not mismatches
    assert inner_faces == {True}
    assert elapsed < 10


def test_criterion_2_free_generators():
    counts = [len(models.ind_generators(n)) for n in (1, 2, 3)]
    oracle = [ind_count(n) for n in (1, 2, 3)]
    ok = counts == oracle == [1, 4, 13]
    record(2, ok, f"Ind counts {counts}, oracle {oracle}")
    assert ok


def _adjunction_categories():
    Cc = cases.hc_counterexample_data(1)["C"]
    return [
        ("C (counterexample)", Cc),
        ("BZ/2", discrete_scat(group_as_category(cyclic_group(2)), cap=3)),
        ("BZ/3", discrete_scat(group_as_category(cyclic_group(3)), cap=3)),
        ("BS3", discrete_scat(group_as_category(symmetric_group(3)), cap=3)),
        ("E3", discrete_scat(contractible_groupoid([0, 1, 2]), cap=3)),
        ("[2]", discrete_scat(ordinal(2), cap=3)),
        ("nerve Z/2 hom", group_nerve_scat(cyclic_group(2), cap=3)),
    ]


def test_criterion_3_adjunction():
    start = time.perf_counter()
    failures, checked = [], 0
    for label, C in _adjunction_categories():
        N = hc_nerve(C, 3)
        for n in range(4):
            subs = [("simplex", standard_simplex(n))]
            if n >= 1:
                subs.append(("boundary", boundary_subcomplex(n)))
                subs.extend((f"horn{i}", horn(n, i)) for i in range(n + 1))
            for name, S in subs:
                r = adjunction_check(S, n, C, N)
                checked += 1
                if not r.ok:
                    failures.append((label, n, name, r.failures[:1]))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    record(3, ok, f"{checked} (S, C) pairs elementwise; {elapsed:.1f}s")
    assert not failures
    assert elapsed < 60


def test_criterion_4_counterexample():
    result = cases.scenario_hc_counterexample().run()
    by_name = {c.name: c for c in result.claims}
    fib = by_name["first Kan fibration failure"]
    ok = result.passed and fib.actual == (2, 0)
    extra = [f for f in fib.witness["failures"] if f != (2, 0)]
    record(4, ok, f"weak fibration; first failure {fib.actual}; horn (w02, u01) unfillable; "
                  f"also fails at {extra} (see ledger)")
    assert ok


def test_criterion_5_battery():
    start = time.perf_counter()
    results = [s.run() for s in cases.scenario_fibrant_groupoid_battery(3)]
    kan = [c for r in results for c in r.claims if "Kan" in c.name]
    failed = [r.name for r in results if not r.passed]
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < 300 and all(c.passed for c in kan)
    record(5, ok, f"{len(results)} scenarios, {len(kan)} Kan claims up to dim 3; {elapsed:.1f}s")
    assert not failed
    assert elapsed < 300


def test_criterion_6_comparison_maps():
    problems = []
    discrete_inputs = [("C", cases.hc_counterexample_data(1)["Cc"]), ("[2]", ordinal(2))]
    discrete_inputs += [(label, G) for label, G in cases.battery_groupoids()]
    for label, G in discrete_inputs:
        C = discrete_scat(G, cap=3)
        (N, W, H), p, t = comparison_maps(C, 3)
        if p.check() or t.check():
            problems.append((label, "not simplicial"))
        classical = classical_nerve(G, 3).counts()
        if not (N.value.counts() == W.value.counts() == H.value.counts() == classical):
            problems.append((label, "counts differ from the classical nerve"))
        if not (isomorphic_via(p) and isomorphic_via(t)):
            problems.append((label, "comparison maps not isomorphisms"))
    battery = [c for s in cases.scenario_fibrant_groupoid_battery(3)[:6] for c in s.run().claims
               if c.name.startswith("comparison")]
    if not all(c.passed for c in battery):
        problems.append(("battery", "pi0/pi1"))
    ok = not problems
    record(6, ok, f"{len(discrete_inputs)} discrete inputs coincide with the classical nerve; "
                  f"{len(battery)} groupoids with pi0/pi1 isomorphisms")
    assert not problems


def test_criterion_7_cosimplicial_coherence():
    start = time.perf_counter()
    reports = {fam: models.check_cosimplicial(fam, 4) for fam in ("delta_n", "sc", "wbar")}
    nat = models.check_naturality(4)
    mono = [models.psi_strict_monotone(n) for n in range(1, 5)]
    ok = all(r.ok for r in reports.values()) and nat.ok and mono == [[], [], [], []]
    elapsed = time.perf_counter() - start
    record(7, ok, f"actions n<=4 for three families, tau/pi naturality, psi monotone; {elapsed:.0f}s")
    assert ok


def _quasifibered_inputs():
    B1, B2 = ordinal(1), ordinal(2)
    Z2, Z4 = group_as_category(cyclic_group(2)), group_as_category(cyclic_group(4))
    quot = FiniteFunctor(Z4, Z2, {"*": "*"}, {g: g % 2 for g in Z4.arrows})
    out = [
        ("[1] x BZ/2", product_projection(B1, Z2)),
        ("[2] x E2", product_projection(B2, contractible_groupoid([0, 1]))),
        ("Groth Z4 -> Z2", grothendieck(B1, {0: Z2, 1: Z4},
                                        {(0, 0): identity_functor(Z2), (1, 1): identity_functor(Z4), (0, 1): quot})),
    ]
    # constant diagram with a non-groupoid fiber
    F = ordinal(1)
    out.append(("Groth const [1]", grothendieck(B1, {0: F, 1: F}, {a: identity_functor(F) for a in B1.arrows})))
    # base with a non-identity composite and an object-moving action
    Bv = category_from_generators(["x", "y", "z"], {"f": ("x", "y"), "g": ("y", "z"), "gf": ("x", "z")},
                                  {("g", "f"): "gf"})
    D2 = contractible_groupoid([0, 1])
    swap = FiniteFunctor(D2, D2, {0: 1, 1: 0}, {(a, b): (1 - a, 1 - b) for a, b in D2.arrows})
    vals = {x: D2 for x in Bv.objects}
    acts = {a: identity_functor(D2) for a in Bv.arrows}
    acts["f"] = swap
    acts["gf"] = swap
    assert not check_strict_functor(Bv, vals, acts)
    out.append(("Groth swap over x->y->z", grothendieck(Bv, vals, acts)))
    return out


def test_criterion_8_quasifibered():
    problems, lines = [], []
    for label, p in _quasifibered_inputs():
        assert not p.total.check(), label
        if not is_fibered(p).ok:
            problems.append((label, "not fibered"))
            continue
        Q = qf_from_fibered(p, 2)
        if Q.qf_failures() or Q.functoriality_failures() or Q.forgetful_failures():
            problems.append((label, "QF"))
        cmp = compare_lim(p, 2)
        if not cmp.ok:
            problems.append((label, "LIM", cmp.failures[:2]))
        lines.append(f"{label}:{cmp.objects}/{cmp.arrows}")
    ok = not problems
    record(8, ok, "LIM(p) = lim E for " + ", ".join(lines))
    assert not problems


def test_criterion_9_holim():
    NZ2 = classical_nerve(group_as_category(cyclic_group(2)), 4)
    NZ3 = classical_nerve(group_as_category(cyclic_group(3)), 4)
    problems = []
    for X in (NZ2, NZ3, standard_simplex(1, 4)):
        F = SDiagram(ordinal(0), {0: X}, {(0, 0): identity_map(X)})
        H = holim_sset(F, 2, 2).value
        if any(len(H.simplices(k)) != len(X.simplices(k)) for k in range(3)):
            problems.append(("terminal", X.name))
    pt = standard_simplex(0)
    for B in (ordinal(1), ordinal(2)):
        F = SDiagram(B, {b: pt for b in B.objects}, {a: identity_map(pt) for a in B.arrows})
        H = holim_sset(F, 2, 2).value
        if [len(H.simplices(k)) for k in range(3)] != [1, 1, 1]:
            problems.append(("constant", B.name))
    B1 = ordinal(1)
    F = SDiagram(B1, {0: NZ2, 1: NZ2}, {a: identity_map(NZ2) for a in B1.arrows})
    H = holim_sset(F, 2, 2).value
    L = lim_sset(F, 2)
    if len(pi0(H)) != len(pi0(L)) or len(pi0(H)) != 1:
        problems.append(("[1]-base", len(pi0(H)), len(pi0(L))))
    ok = not problems
    record(9, ok, f"terminal and constant identities in degrees 0..2; [1]-base pi0 {len(pi0(H))} = {len(pi0(L))}")
    assert not problems


COMMANDS = [
    ["horn-image", "--n", "3", "--i", "1", "--a", "0", "--b", "3"],
    ["ind", "--n", "3"],
    ["nerve", "--example", "hc-counterexample-C", "--flavor", "hc", "--dim", "2"],
    ["nerve", "--example", "BZ2", "--flavor", "standard", "--dim", "2"],
    ["nerve", "--example", "BZ2", "--flavor", "wbar", "--dim", "2"],
    ["kan-check", "--example", "horn3-1", "--dim", "2"],
    ["replay-counterexample", "hc-counterexample"],
    ["replay-counterexample", "standard-nerve-gap"],
    ["battery", "--dim", "2"],
    ["qf-check", "--example", "groth-Z4-Z2"],
    ["holim", "--example", "interval-BZ2", "--dimcap", "1"],
    ["adjunction-check", "--example", "BZ3", "--n", "2", "--sub", "horn", "--i", "0"],
]


def _run(argv, out, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    proc = subprocess.run([sys.executable, "-m", "nervelab.cli", *argv, "--output", str(out)],
                          capture_output=True, env=env, check=False)
    return proc.returncode, proc.stdout, out.read_bytes()


def test_criterion_10_determinism_and_round_trip(tmp_path):
    problems, runs = [], {}
    for k, argv in enumerate(COMMANDS):
        runs[k] = _run(argv, tmp_path / f"a{k}.json", 1)
        second = _run(argv, tmp_path / f"b{k}.json", 2)
        if runs[k][0] != 0 or runs[k] != second:
            problems.append(" ".join(argv))
    # a nerve written as sset/v1 reloads to the same canonical text
    doc = json.loads((tmp_path / "a2.json").read_text())
    doc.pop("provenance")
    if io.dumps(io.sset_to_json(io.sset_from_json(doc))) != io.dumps(doc):
        problems.append("sset round trip")
    # the same category fed back through scat/v1 gives identical output
    C = cases.hc_counterexample_data(1)["C"]
    path = tmp_path / "C.json"
    path.write_text(io.dumps(io.scat_to_json(C)))
    via_file = _run(["nerve", str(path), "--flavor", "hc", "--dim", "2"], tmp_path / "f.json", 3)
    if via_file != runs[2]:
        problems.append("scat re-ingest")
    ok = not problems
    record(10, ok, f"{len(COMMANDS)} commands bitwise equal across two runs; round trips stable")
    assert not problems, problems
