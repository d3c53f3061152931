"""Reproducible scenarios: the two nerve counterexamples and the positive groupoid battery."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from . import models
from .cat import (
    FiniteCategory,
    FiniteFunctor,
    category_from_generators,
    contractible_groupoid,
    cyclic_group,
    group_as_category,
    product_category,
    product_group,
    symmetric_group,
)
from .nerves import (
    comparison_maps,
    edge_label,
    fill_horn_hc,
    hc_nerve,
    horn_map_from_faces,
    induced_map,
)
from .scat import (
    SimplicialFunctor,
    discrete_functor,
    discrete_scat,
    enumerate_functors,
    free_scat,
    free_word,
    is_fibrant_groupoid,
    is_weak_fibration,
    pi0_category,
)
from .sset import (
    coface_op,
    induced_pi1,
    is_group_isomorphism,
    is_kan,
    is_kan_fibration,
    monotone_maps,
    pi0,
    pi1_edge_path,
    simplex_to_chain,
)


@dataclass
class Claim:
    name: str
    expected: Any
    check: Callable[[dict], tuple[Any, Any]]  # data -> (actual, witness)


@dataclass
class ClaimResult:
    name: str
    expected: Any
    actual: Any
    passed: bool
    witness: Any = None

    def as_json(self) -> dict:
        return {"claim": self.name, "expected": _plain(self.expected), "actual": _plain(self.actual),
                "passed": self.passed, "witness": _plain(self.witness)}


@dataclass
class Scenario:
    name: str
    builder: Callable[[], dict]
    claims: list[Claim]
    witnesses: dict = field(default_factory=dict)

    def run(self) -> "ScenarioResult":
        data = self.builder()
        results = []
        for c in self.claims:
            actual, witness = c.check(data)
            results.append(ClaimResult(c.name, c.expected, actual, actual == c.expected, witness))
        return ScenarioResult(self.name, results)


@dataclass
class ScenarioResult:
    name: str
    claims: list[ClaimResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def as_json(self) -> dict:
        return {"scenario": self.name, "passed": self.passed, "claims": [c.as_json() for c in self.claims]}


def _plain(x: Any) -> Any:
    """JSON-friendly copy: tuples become lists, dict keys strings."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in sorted(x.items(), key=lambda kv: repr(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return repr(x)


# --------------------------------------------------------------------------
# the homotopy coherent nerve does not preserve strong fibrations


def hc_counterexample_data(up_to: int = 2) -> dict:
    Cc = category_from_generators(
        [0, 1, 2], {"u01": (0, 1), "u12": (1, 2), "u02": (0, 2), "w02": (0, 2)},
        {("u12", "u01"): "u02"}, name="C")
    Dc = category_from_generators(
        [0, 1, 2], {"v01": (0, 1), "v12": (1, 2), "v02": (0, 2)},
        {("v12", "v01"): "v02"}, name="D")
    on_arrows = {"u01": "v01", "u12": "v12", "u02": "v02", "w02": "v02"}
    on_arrows.update({Cc.identities[x]: Dc.identities[x] for x in Cc.objects})
    F = FiniteFunctor(Cc, Dc, {x: x for x in Cc.objects}, on_arrows)
    C, D = discrete_scat(Cc, cap=3), discrete_scat(Dc, cap=3)
    f = discrete_functor(F, C, D)
    NC, ND = hc_nerve(C, up_to), hc_nerve(D, up_to)
    return {"Cc": Cc, "Dc": Dc, "C": C, "D": D, "f": f, "NC": NC, "ND": ND, "p": induced_map(f, NC, ND)}


def _labelled(NC, horn: dict) -> dict:
    return {i: edge_label(NC, s) for i, s in sorted(horn.items())}


def _kan_fibration(data: dict) -> tuple:
    r = is_kan_fibration(data["p"], 2, exhaustive=True)
    data["kan_report"] = r
    return r.first_failure(), {"failures": r.failures, "failing_horns": r.failing_horns}


def _horn_witness(data: dict) -> tuple:
    r = data.get("kan_report") or is_kan_fibration(data["p"], 2, exhaustive=True)
    target = {1: "w02", 2: "u01"}
    found = [w for w in r.witnesses if (w["n"], w["i"]) == (2, 0) and _labelled(data["NC"], w["horn"]) == target]
    if not found:
        return False, None
    NC = data["NC"]
    labels = {edge_label(NC, s): s for s in NC.value.simplices(1) if not s.is_degenerate}
    fill = fill_horn_hc(data["C"], NC, horn_map_from_faces(2, 0, NC, {1: labels["w02"], 2: labels["u01"]}), 2, 0)
    return not fill.found, {"horn": target, "extensions_searched": fill.searched}


def scenario_hc_counterexample() -> Scenario:
    return Scenario(
        "hc-counterexample",
        hc_counterexample_data,
        [
            Claim("weak fibration", True,
                  lambda d: (bool(r := is_weak_fibration(d["f"], 2)), getattr(r, "failures", None))),
            Claim("first Kan fibration failure", (2, 0), _kan_fibration),
            Claim("horn (w02, u01) has no lift", True, _horn_witness),
            Claim("nondegenerate simplices of hc(C)", (3, 4, 1),
                  lambda d: (d["NC"].value.counts(), None)),
        ],
        witnesses={"horn": {1: "w02", 2: "u01"}},
    )


# --------------------------------------------------------------------------
# the standard nerve: free-stage obstruction


def standard_gap_data() -> dict:
    horn_cat = free_scat([0, 1, 2], [("u01", 0, 1, 1), ("u02", 0, 2, 1)], cap=2, name="SC(Lambda^2_0)")
    sc2 = models.sc(2)
    u01 = free_word(sc2, 0, [("f1", coface_op(2, 2))])
    u02 = free_word(sc2, 0, [("f1", coface_op(2, 1)), ("f2", coface_op(2, 1))])
    emb = SimplicialFunctor.from_generators(horn_cat, sc2, {0: 0, 1: 1, 2: 2}, [u01, u02])
    Dg = contractible_groupoid([0, 1, 2])
    D = discrete_scat(Dg, cap=2)
    to_d = enumerate_functors(sc2, D, fixed_objects={0: 0, 1: 1, 2: 2})
    return {"horn": horn_cat, "sc2": sc2, "emb": emb, "Dg": Dg, "D": D, "to_d": to_d}


def _decomposable(C, x: int, y: int, z: int, target, first) -> list:
    """All ``g`` in ``Hom(y, z)_0`` with ``g o first == target``."""
    H = C.hom(y, z) if (y, z) in C.homs else None
    if H is None:
        return []
    return [g for g in H.simplices(0) if C.compose(x, y, z, g, first) == target]


def _horn_obstruction(d: dict) -> tuple:
    C = d["horn"]
    u01 = free_word(C, 0, [("u01", (0, 1))])
    u02 = free_word(C, 0, [("u02", (0, 1))])
    first = C.face_in(0, 1, u01, 1)
    target = C.face_in(0, 2, u02, 1)
    ws = _decomposable(C, 0, 1, 2, target, first)
    return bool(ws), [simplex_to_chain(w) for w in ws]


def _image_decomposes(d: dict) -> tuple:
    T, emb, C = d["sc2"], d["emb"], d["horn"]
    u01 = free_word(C, 0, [("u01", (0, 1))])
    u02 = free_word(C, 0, [("u02", (0, 1))])
    first = T.face_in(0, 1, emb(0, 1, u01), 1)
    target = T.face_in(0, 2, emb(0, 2, u02), 1)
    ws = _decomposable(T, 0, 1, 2, target, first)
    return bool(ws), [simplex_to_chain(w) for w in ws]


def _sc2_words(d: dict) -> tuple:
    T = d["sc2"]
    idx = T.generator_index
    paths = {tuple(g for g, _ in T.factor(0, 2, s)) for s in T.hom(0, 2).simplices(2)}
    count = len(T.hom(0, 2).simplices(2))
    expected = len(list(monotone_maps(2, 2))) ** 2
    return (sorted(paths), count == expected), {"simplices": count, "generator_index": idx}


def _pi0_contractible(d: dict) -> tuple:
    P = pi0_category(d["D"])
    sizes = {(x, y): len(P.hom(x, y)) for x in P.objects for y in P.objects}
    return P.is_groupoid() and set(sizes.values()) == {1} and len(P.objects) == 3, sizes


def scenario_standard_nerve_gap() -> Scenario:
    return Scenario(
        "standard-nerve-gap",
        standard_gap_data,
        [
            Claim("embedding is a functor", [], lambda d: (d["emb"].check(2), None)),
            Claim("maps SC^2 -> D", 1, lambda d: (len(d["to_d"]), None)),
            Claim("d1 u02 decomposes through d1 u01 in the horn", False, _horn_obstruction),
            Claim("image of d1 u02 decomposes in SC^2", True, _image_decomposes),
            Claim("SC^2 Hom(0,2)_2 words", ([(0, 1)], True), _sc2_words),
            Claim("pi0(D) contractible on 3 objects", True, _pi0_contractible),
        ],
    )


# --------------------------------------------------------------------------
# positive battery


def battery_groupoids() -> list[tuple[str, FiniteCategory]]:
    Z2, Z3 = cyclic_group(2), cyclic_group(3)
    return [
        ("BZ/2", group_as_category(Z2)),
        ("BZ/3", group_as_category(Z3)),
        ("BS3", group_as_category(symmetric_group(3))),
        ("B(Z/2xZ/2)", group_as_category(product_group(Z2, Z2))),
        ("BZ/2 x E2", product_category(group_as_category(Z2), contractible_groupoid([0, 1]))),
        ("E2", contractible_groupoid([0, 1])),
    ]


def battery_quotients() -> list[tuple[str, FiniteFunctor]]:
    Z4, Z2 = group_as_category(cyclic_group(4)), group_as_category(cyclic_group(2))
    S3 = symmetric_group(3)
    BS3 = group_as_category(S3)

    def sign(p):
        inv = sum(1 for a in range(3) for b in range(a + 1, 3) if p[a] > p[b])
        return inv % 2

    E2 = contractible_groupoid([0, 1])
    point = contractible_groupoid([0])
    return [
        ("Z/4 -> Z/2", FiniteFunctor(Z4, Z2, {"*": "*"}, {g: g % 2 for g in Z4.arrows})),
        ("S3 -> Z/2", FiniteFunctor(BS3, Z2, {"*": "*"}, {g: sign(g) for g in BS3.arrows})),
        ("Z/2 -> 1", FiniteFunctor(Z2, group_as_category(cyclic_group(1)), {"*": "*"}, {g: 0 for g in Z2.arrows})),
        ("E2 -> 1", FiniteFunctor(E2, point, {0: 0, 1: 0}, {a: (0, 0) for a in E2.arrows})),
    ]


def _groupoid_scenario(label: str, G: FiniteCategory, up_to: int) -> Scenario:
    def build() -> dict:
        C = discrete_scat(G, cap=up_to)
        (N, W, H), p, t = comparison_maps(C, up_to)
        return {"G": G, "C": C, "N": N, "W": W, "H": H, "p": p, "t": t}

    def kan(d):
        r = is_kan(d["H"].value, up_to)
        d["kan"] = r
        return r.ok, r.witness

    def pi1(d):
        H = d["H"].value
        comps = pi0(H)
        orders = [pi1_edge_path(H, c[0], d.get("kan")).order for c in comps]
        return orders, None

    def expected_pi1():
        return [len(G.hom(x, x)) for x in _reps(G)]

    def comparison(d):
        problems = d["p"].check() + d["t"].check()
        if problems:
            return False, problems[:3]
        N, W, H = (d[k].value for k in "NWH")
        same = len(pi0(N)) == len(pi0(W)) == len(pi0(H))
        iso = True
        for base in (c[0] for c in pi0(N)):
            gn, gw, gh = (pi1_edge_path(X, base if X is N else _image(d, X, base)) for X in (N, W, H))
            f1 = induced_pi1(d["p"], gn, gw)
            f2 = induced_pi1(d["t"], gw, gh)
            iso = iso and is_group_isomorphism(f1, gn, gw) and is_group_isomorphism(f2, gw, gh)
        return same and iso, None

    claims = [
        Claim("fibrant groupoid", True, lambda d: (is_fibrant_groupoid(d["C"], up_to), None)),
        Claim("hc nerve is Kan", True, kan),
        Claim("pi1 orders", expected_pi1(), pi1),
        Claim("comparison maps simplicial, pi0/pi1 isomorphisms", True, comparison),
        Claim("three nerves have equal counts", True,
              lambda d: (d["N"].value.counts() == d["W"].value.counts() == d["H"].value.counts(),
                         d["H"].value.counts())),
    ]
    return Scenario(f"battery {label}", build, claims)


def _reps(G: FiniteCategory) -> list:
    seen, out = set(), []
    for x in G.objects:
        if x in seen:
            continue
        out.append(x)
        seen.update(y for y in G.objects if G.isomorphic_objects(x, y))
    return out


def _image(d: dict, X, base):
    """The basepoint of ``X`` matching the vertex ``base`` of the standard nerve."""
    N = d["N"].value
    v = N.cell(base)
    if X is d["W"].value:
        return d["p"](v).nd
    return d["t"](d["p"](v)).nd


def _quotient_scenario(label: str, q: FiniteFunctor, up_to: int) -> Scenario:
    def build() -> dict:
        C, D = discrete_scat(q.source, cap=up_to), discrete_scat(q.target, cap=up_to)
        f = discrete_functor(q, C, D)
        NC, ND = hc_nerve(C, up_to), hc_nerve(D, up_to)
        return {"f": f, "C": C, "D": D, "p": induced_map(f, NC, ND)}

    return Scenario(f"battery {label}", build, [
        Claim("functor well defined", [], lambda d: (q.check(), None)),
        Claim("weak fibration", True, lambda d: (bool(r := is_weak_fibration(d["f"], up_to)), getattr(r, "failures", None))),
        Claim("hc nerve map is a Kan fibration", True,
              lambda d: ((r := is_kan_fibration(d["p"], up_to)).ok, r.witness)),
    ])


def scenario_fibrant_groupoid_battery(up_to: int = 3) -> list[Scenario]:
    out = [_groupoid_scenario(label, G, up_to) for label, G in battery_groupoids()]
    out.extend(_quotient_scenario(label, q, up_to) for label, q in battery_quotients())
    return out


SCENARIOS = {
    "hc-counterexample": scenario_hc_counterexample,
    "standard-nerve-gap": scenario_standard_nerve_gap,
}
