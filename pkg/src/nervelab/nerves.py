"""The three nerves of a simplicial category and the maps between them.

Each nerve is represented: its ``k``-simplices are the simplicial functors
out of the ``k``-th member of a cosimplicial family (``hc`` uses the cube
family, ``standard`` the free family on ``f_i``, ``wbar`` the free family on
``g_i``).  Faces and degeneracies are computed by precomposition with the
cosimplicial structure, never by re-enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from . import models
from .scat import SimplicialCategory, SimplicialFunctor, enumerate_functors
from .sset import (
    Simplex,
    SimplicialMap,
    SimplicialSet,
    codegeneracy_op,
    coface_op,
    compose_ops,
    enumerate_maps,
    nd_simplex,
    simplex_to_chain,
)

FLAVOR_FAMILY = {"hc": "delta_n", "standard": "sc", "wbar": "wbar"}


@dataclass
class NerveResult:
    flavor: str
    category: SimplicialCategory
    value: SimplicialSet
    functors: dict  # nondegenerate cell id -> functor
    normal_form: list  # per degree: functor key -> Simplex
    by_key: list  # per degree: functor key -> functor
    provenance: dict = field(default_factory=dict)

    @property
    def family(self) -> str:
        return FLAVOR_FAMILY[self.flavor]

    def action(self, theta, n: int) -> SimplicialFunctor:
        return models.cosimplicial_action(self.family, theta, n)

    def functor_of(self, s: Simplex) -> SimplicialFunctor:
        """The functor represented by a (possibly degenerate) simplex."""
        F = self.functors[s.nd]
        m = self.value.dim_of[s.nd]
        if s.surj == tuple(range(m + 1)):
            return F
        return self.action(s.surj, m).then(F)

    def simplex_of(self, F: SimplicialFunctor) -> Simplex:
        k = len(F.source.objects) - 1
        return self.normal_form[k][F.key()]

    def simplices_count(self, k: int) -> int:
        return len(self.normal_form[k])


def _build(C: SimplicialCategory, up_to: int, flavor: str) -> NerveResult:
    family = FLAVOR_FAMILY[flavor]
    build = models.FAMILIES[family]
    act = models.ACTIONS[family]
    cells: list[list] = []
    faces: dict = {}
    functors: dict = {}
    normal: list[dict] = []
    by_key: list[dict] = []
    provenance: dict = {}
    for k in range(up_to + 1):
        A = build(k)
        level, norm, keyed = [], {}, {}
        cofaces = [act(coface_op(k, i), k) for i in range(k + 1)] if k else []
        codegs = [act(codegeneracy_op(k - 1, j), k - 1) for j in range(k)] if k else []
        for F in enumerate_functors(A, C):
            key = F.key()
            keyed[key] = F
            if k == 0:
                cid = f"0.{len(level)}"
                level.append(cid)
                norm[key] = nd_simplex(cid, 0)
                functors[cid] = F
                provenance[cid] = key
                continue
            face_keys = [cofaces[i].then(F).key() for i in range(k + 1)]
            fs = tuple(normal[k - 1][fk] for fk in face_keys)
            degenerate = None
            for j in range(k):
                lower = by_key[k - 1][face_keys[j]]
                if codegs[j].then(lower).key() == key:
                    degenerate = (j, fs[j])
                    break
            if degenerate is not None:
                j, base = degenerate
                norm[key] = Simplex(base.nd, compose_ops(base.surj, codegeneracy_op(k - 1, j)))
                continue
            cid = f"{k}.{len(level)}"
            level.append(cid)
            faces[cid] = fs
            norm[key] = nd_simplex(cid, k)
            functors[cid] = F
            provenance[cid] = key
        cells.append(level)
        normal.append(norm)
        by_key.append(keyed)
    X = SimplicialSet(up_to, cells, faces, finite=False, name=f"{flavor}({C.name})")
    return NerveResult(flavor, C, X, functors, normal, by_key, provenance)


def hc_nerve(C: SimplicialCategory, up_to: int) -> NerveResult:
    """Simplices are functors out of the cube categories."""
    return _build(C, up_to, "hc")


def standard_nerve(C: SimplicialCategory, up_to: int) -> NerveResult:
    """Diagonal of the levelwise nerve, represented by the free family on ``f_i``."""
    return _build(C, up_to, "standard")


def wbar_nerve(C: SimplicialCategory, up_to: int) -> NerveResult:
    """Tuples ``x_i`` in ``Hom(c_{i-1}, c_i)`` of degree ``n - i``."""
    return _build(C, up_to, "wbar")


NERVES = {"hc": hc_nerve, "standard": standard_nerve, "wbar": wbar_nerve}


def nerve(C: SimplicialCategory, up_to: int, flavor: str = "hc") -> NerveResult:
    if flavor not in NERVES:
        raise ValueError(f"unknown nerve flavor {flavor!r}")
    return NERVES[flavor](C, up_to)


def string_of(N: NerveResult, s: Simplex) -> tuple:
    """``(objects, images)`` of the functor behind ``s`` in the standard or bar nerve."""
    F = N.functor_of(s)
    return tuple(F.on_objects[x] for x in F.source.objects), F.images()


# --------------------------------------------------------------------------
# direct diagonal cross-check


def check_standard_diagonal(N: NerveResult) -> list[str]:
    """Compare faces of the represented standard nerve with the diagonal formula.

    A ``k``-simplex is a string ``x_1, ..., x_k`` of composable ``k``-simplices;
    ``d_j`` applies the hom face ``d_j`` to every entry, then drops ``x_1``
    (``j = 0``), drops ``x_k`` (``j = k``) or composes ``x_{j+1} x_j``.
    """
    if N.flavor != "standard":
        raise ValueError("diagonal check applies to the standard nerve")
    C = N.category
    out = []
    for k in range(1, N.value.cap + 1):
        for key, F in N.by_key[k].items():
            objs, xs = key
            for j in range(k + 1):
                ys = [C.hom(objs[t], objs[t + 1]).face(xs[t], j) for t in range(k)]
                if j == 0:
                    o2, y2 = objs[1:], ys[1:]
                elif j == k:
                    o2, y2 = objs[:-1], ys[:-1]
                else:
                    merged = C.compose(objs[j - 1], objs[j], objs[j + 1], ys[j], ys[j - 1])
                    o2 = objs[:j] + objs[j + 1:]
                    y2 = ys[:j - 1] + [merged] + ys[j + 1:]
                expected = N.normal_form[k - 1].get((tuple(o2), tuple(y2)))
                got = N.value.apply(N.normal_form[k][key], coface_op(k, j))
                if expected != got:
                    out.append(f"d{j} of {key!r}: diagonal {expected} != represented {got}")
    return out


# --------------------------------------------------------------------------
# maps between nerves


def _precompose_map(source: NerveResult, target: NerveResult, via) -> SimplicialMap:
    """Simplicial map sending a functor ``F`` to ``via(k).then(F)``."""
    assignment = {}
    for cid, F in source.functors.items():
        k = source.value.dim_of[cid]
        G = via(k).then(F)
        assignment[cid] = target.normal_form[k][G.key()]
    return SimplicialMap(source.value, target.value, assignment)


def comparison_maps(C: SimplicialCategory, up_to: int, nerves: dict | None = None):
    """``N(C) -> Wbar(C) -> hc(C)`` by precomposition with ``pi`` and ``tau``."""
    nerves = nerves or {}
    N = nerves.get("standard") or standard_nerve(C, up_to)
    W = nerves.get("wbar") or wbar_nerve(C, up_to)
    H = nerves.get("hc") or hc_nerve(C, up_to)
    p = _precompose_map(N, W, models.pi_map)
    t = _precompose_map(W, H, models.tau)
    return (N, W, H), p, t


def induced_map(f: SimplicialFunctor, NC: NerveResult, ND: NerveResult) -> SimplicialMap:
    """The nerve map induced by postcomposition with ``f``."""
    assignment = {}
    for cid, F in NC.functors.items():
        k = NC.value.dim_of[cid]
        assignment[cid] = ND.normal_form[k][F.then(f).key()]
    return SimplicialMap(NC.value, ND.value, assignment)


def isomorphic_via(m: SimplicialMap) -> bool:
    """A simplicial map bijective on nondegenerate cells in every stored degree."""
    X, Y = m.source, m.target
    for k, cs in enumerate(X.cells):
        imgs = [m.assignment[c] for c in cs]
        if any(s.dim != s.surj[-1] for s in imgs):
            return False
        if len(set(s.nd for s in imgs)) != len(imgs) or len(imgs) != len(Y.cells[k] if k < len(Y.cells) else []):
            return False
    return True


# --------------------------------------------------------------------------
# adjunction


def _functor_from_map(phi: SimplicialMap, sub, N: NerveResult, C: SimplicialCategory) -> SimplicialFunctor:
    """Transport a map ``S -> hc(C)`` to a functor ``Delta_N(S) -> C``."""
    objmap = {}
    for a in sub.objects:
        F = N.functor_of(phi(nd_simplex((a,), 0)))
        objmap[a] = F.on_objects[0]
    images = []
    for g in sub.generators:
        a, b = g.source, g.target
        chain = g.cell
        T = models._piece_support(a, b, chain)
        F = N.functor_of(phi(nd_simplex(T, len(T) - 1)))
        pos = {x: t for t, x in enumerate(T)}
        restricted = tuple(tuple(v[x - a - 1] for x in T[1:-1]) for v in chain)
        images.append(F(pos[a], pos[b], Simplex(restricted, tuple(range(len(chain))))))
    return SimplicialFunctor.from_generators(sub, C, objmap, images)


@dataclass
class AdjunctionReport:
    ok: bool
    maps: int
    functors: int
    failures: list = field(default_factory=list)
    pairing: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def adjunction_check(S: SimplicialSet, n: int, C: SimplicialCategory, N: NerveResult | None = None,
                     restrict_to: SimplicialSet | None = None) -> AdjunctionReport:
    """Match maps ``S -> hc(C)`` with functors ``Delta_N(S) -> C`` elementwise.

    ``S`` is a subcomplex of the standard ``n``-simplex.  With ``restrict_to``
    (a subcomplex of ``S``), naturality under the inclusion is checked too.
    """
    N = N or hc_nerve(C, n)
    sub = models.delta_n_of_subcomplex(S, n)
    maps = enumerate_maps(S, N.value)
    funcs = enumerate_functors(sub, C)
    keys = {F.key(): F for F in funcs}
    failures, pairing, seen = [], [], set()
    for phi in maps:
        G = _functor_from_map(phi, sub, N, C)
        k = G.key()
        if k not in keys:
            failures.append(("not a functor", phi.assignment))
            continue
        if k in seen:
            failures.append(("not injective", phi.assignment))
        seen.add(k)
        pairing.append((phi, keys[k]))
    if len(seen) != len(keys):
        failures.append(("not surjective", len(keys) - len(seen)))
    if restrict_to is not None and not failures:
        small = models.delta_n_of_subcomplex(restrict_to, n)
        pos = [sub.generators.index(g) for g in small.generators]
        for phi, G in pairing:
            psi = SimplicialMap(restrict_to, N.value, {c: phi.assignment[c] for c in restrict_to.all_cells()})
            lhs = _functor_from_map(psi, small, N, C).key()
            img = G.images()
            rhs = (tuple(G.on_objects[a] for a in small.objects), tuple(img[p] for p in pos))
            if lhs != rhs:
                failures.append(("not natural", phi.assignment))
    return AdjunctionReport(not failures, len(maps), len(funcs), failures, pairing)


# --------------------------------------------------------------------------
# horn filling


@dataclass
class FillResult:
    filler: Simplex | None
    searched: int
    functor: SimplicialFunctor | None = None

    @property
    def found(self) -> bool:
        return self.filler is not None


def fill_horn_hc(C: SimplicialCategory, N: NerveResult, horn_map: SimplicialMap, n: int, i: int) -> FillResult:
    """Search all extensions of a horn ``Lambda^n_i -> hc(C)`` to ``Delta^n``.

    The horn is transported to a functor on the sub-category generated by the
    horn, whose generator images are then pinned in an exhaustive search over
    functors out of the full cube category.
    """
    S = horn_map.source
    sub = models.delta_n_of_subcomplex(S, n)
    u = _functor_from_map(horn_map, sub, N, C)
    full = models.delta_n(n)
    fixed = {full.generators.index(g): img for g, img in zip(sub.generators, u.images())}
    lifts = enumerate_functors(full, C, fixed_objects=u.on_objects, fixed_images=fixed)
    for F in lifts:
        s = N.normal_form[n][F.key()]
        if all(N.value.face(s, j) == horn_map(nd_simplex(tuple(t for t in range(n + 1) if t != j), n - 1))
               for j in range(n + 1) if j != i):
            return FillResult(s, len(lifts), F)
    return FillResult(None, len(lifts))


def horn_map_from_faces(n: int, i: int, N: NerveResult, faces: dict[int, Simplex]) -> SimplicialMap:
    """The map ``Lambda^n_i -> N`` with prescribed faces ``d_j`` for ``j != i``."""
    from .sset import horn

    S = horn(n, i)
    assignment = {}
    for c in S.all_cells():
        j = next(t for t in range(n + 1) if t != i and t not in c)
        cell = tuple(t for t in range(n + 1) if t != j)
        assignment[c] = N.value.apply(faces[j], tuple(cell.index(v) for v in c))
    m = SimplicialMap(S, N.value, assignment)
    problems = m.check()
    if problems:
        raise ValueError(f"faces do not form a horn: {problems[0]}")
    return m


def edge_label(N: NerveResult, s: Simplex) -> Hashable:
    """For a 1-simplex: the vertex of ``Hom`` picked by its functor (an arrow for discrete homs)."""
    F = N.functor_of(s)
    img = F.images()
    return simplex_to_chain(img[0])[0] if img else None
