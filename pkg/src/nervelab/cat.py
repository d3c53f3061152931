"""Finite ordinary categories, functors between them and their nerves."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .sset import SimplicialSet, Simplex


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    elements: tuple
    mul: Callable = field(compare=False, repr=False)
    identity: Hashable = None

    def inverse(self, g):
        return next(h for h in self.elements if self.mul(g, h) == self.identity)

    @property
    def abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a in self.elements for b in self.elements)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(f"Z/{n}", tuple(range(n)), lambda a, b: (a + b) % n, 0)


def symmetric_group(n: int) -> FiniteGroup:
    elems = tuple(itertools.permutations(range(n)))
    return FiniteGroup(f"S{n}", elems, lambda a, b: tuple(a[b[i]] for i in range(n)), tuple(range(n)))


def product_group(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    elems = tuple(itertools.product(G.elements, H.elements))
    return FiniteGroup(
        f"{G.name}x{H.name}", elems,
        lambda a, b: (G.mul(a[0], b[0]), H.mul(a[1], b[1])),
        (G.identity, H.identity),
    )


class FiniteCategory:
    """A finite category given by named arrows and a composition table.

    ``compose[(g, f)]`` is ``g o f`` whenever ``target(f) == source(g)``.
    """

    def __init__(self, objects: Iterable, arrows: dict, identities: dict, compose: dict,
                 name: str | None = None):
        self.objects = list(objects)
        self.arrows = dict(arrows)  # name -> (source, target)
        self.identities = dict(identities)
        self.compose_table = dict(compose)
        self.name = name
        self._hom: dict = {}
        for a, (s, t) in self.arrows.items():
            self._hom.setdefault((s, t), []).append(a)

    def __repr__(self) -> str:
        return f"<FiniteCategory {self.name or ''} objects={len(self.objects)} arrows={len(self.arrows)}>"

    def source(self, a):
        return self.arrows[a][0]

    def target(self, a):
        return self.arrows[a][1]

    def hom(self, x, y) -> list:
        return self._hom.get((x, y), [])

    def compose(self, g, f):
        return self.compose_table[(g, f)]

    def is_identity(self, a) -> bool:
        return self.identities[self.source(a)] == a

    def check(self) -> list[str]:
        out = []
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.arrows.get(i) != (x, x):
                out.append(f"bad identity at {x!r}")
        for f, (x, y) in self.arrows.items():
            for g in self.arrows:
                if self.source(g) != y:
                    continue
                h = self.compose_table.get((g, f))
                if h is None or self.arrows.get(h) != (x, self.target(g)):
                    out.append(f"composite {g!r} o {f!r} missing or ill-typed")
            if self.compose_table.get((self.identities[y], f)) != f:
                out.append(f"left unit fails at {f!r}")
            if self.compose_table.get((f, self.identities[x])) != f:
                out.append(f"right unit fails at {f!r}")
        if out:
            return out
        for f in self.arrows:
            for g in self.arrows:
                if self.source(g) != self.target(f):
                    continue
                for h in self.arrows:
                    if self.source(h) != self.target(g):
                        continue
                    if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                        out.append(f"associativity fails at {h!r},{g!r},{f!r}")
        return out

    def inverse(self, f):
        x, y = self.arrows[f]
        for g in self.hom(y, x):
            if self.compose(g, f) == self.identities[x] and self.compose(f, g) == self.identities[y]:
                return g
        return None

    def is_iso(self, f) -> bool:
        return self.inverse(f) is not None

    def is_groupoid(self) -> bool:
        return all(self.is_iso(f) for f in self.arrows)

    def isomorphic_objects(self, x, y) -> bool:
        return any(self.is_iso(f) for f in self.hom(x, y))

    def strings(self, n: int) -> list[tuple]:
        """Composable strings ``(c0, (f1, ..., fn))`` with ``fi: c_{i-1} -> c_i``."""
        out = [(c, ()) for c in self.objects]
        for _ in range(n):
            out = [(c0, fs + (g,)) for c0, fs in out
                   for g in self.arrows if self.source(g) == (self.target(fs[-1]) if fs else c0)]
        return out


@dataclass
class FiniteFunctor:
    source: FiniteCategory
    target: FiniteCategory
    on_objects: dict
    on_arrows: dict

    def check(self) -> list[str]:
        out = []
        S, T = self.source, self.target
        for f, (x, y) in S.arrows.items():
            if T.arrows.get(self.on_arrows.get(f)) != (self.on_objects[x], self.on_objects[y]):
                out.append(f"arrow {f!r} mapped to an ill-typed arrow")
        for x in S.objects:
            if self.on_arrows[S.identities[x]] != T.identities[self.on_objects[x]]:
                out.append(f"identity at {x!r} not preserved")
        for (g, f), h in S.compose_table.items():
            if T.compose(self.on_arrows[g], self.on_arrows[f]) != self.on_arrows[h]:
                out.append(f"composite {g!r} o {f!r} not preserved")
        return out

    def is_fully_faithful(self) -> bool:
        S = self.source
        for x in S.objects:
            for y in S.objects:
                images = [self.on_arrows[f] for f in S.hom(x, y)]
                target = self.target.hom(self.on_objects[x], self.on_objects[y])
                if len(set(images)) != len(images) or set(images) != set(target):
                    return False
        return True

    def is_essentially_surjective(self) -> bool:
        image = {self.on_objects[x] for x in self.source.objects}
        return all(any(self.target.isomorphic_objects(y, z) for y in image) for z in self.target.objects)

    def is_equivalence(self) -> bool:
        return self.is_fully_faithful() and self.is_essentially_surjective()

    def is_isomorphism(self) -> bool:
        return (len(set(self.on_objects.values())) == len(self.source.objects) == len(self.target.objects)
                and len(set(self.on_arrows.values())) == len(self.source.arrows) == len(self.target.arrows))


def identity_functor(C: FiniteCategory) -> FiniteFunctor:
    return FiniteFunctor(C, C, {x: x for x in C.objects}, {f: f for f in C.arrows})


# --------------------------------------------------------------------------
# constructors


def poset_category(elements: Sequence, leq: Callable, name: str | None = None) -> FiniteCategory:
    arrows, ids, comp = {}, {}, {}
    for a in elements:
        for b in elements:
            if leq(a, b):
                arrows[(a, b)] = (a, b)
        ids[a] = (a, a)
    for (a, b) in arrows:
        for (c, d) in arrows:
            if b == c:
                comp[((c, d), (a, b))] = (a, d)
    return FiniteCategory(elements, arrows, ids, comp, name=name)


def ordinal(n: int) -> FiniteCategory:
    """The category ``[n] = {0 < 1 < ... < n}``."""
    return poset_category(list(range(n + 1)), lambda a, b: a <= b, name=f"[{n}]")


def discrete_category(objects: Iterable) -> FiniteCategory:
    objects = list(objects)
    ids = {x: ("id", x) for x in objects}
    return FiniteCategory(objects, {ids[x]: (x, x) for x in objects}, ids,
                          {(ids[x], ids[x]): ids[x] for x in objects}, name="discrete")


def group_as_category(G: FiniteGroup, obj: Hashable = "*") -> FiniteCategory:
    arrows = {g: (obj, obj) for g in G.elements}
    comp = {(g, h): G.mul(g, h) for g in G.elements for h in G.elements}
    return FiniteCategory([obj], arrows, {obj: G.identity}, comp, name=f"B{G.name}")


def contractible_groupoid(objects: Iterable) -> FiniteCategory:
    objects = list(objects)
    arrows = {(a, b): (a, b) for a in objects for b in objects}
    comp = {((b, c), (a, b)): (a, c) for a in objects for b in objects for c in objects}
    return FiniteCategory(objects, arrows, {a: (a, a) for a in objects}, comp, name="contractible")


def category_from_generators(objects: Sequence, arrows: dict, relations: dict,
                             name: str | None = None) -> FiniteCategory:
    """Small helper: identities are added, ``relations[(g, f)] = h`` gives composites.

    All composites of non-identity arrows must be listed explicitly.
    """
    arrows = dict(arrows)
    ids = {x: f"id{x}" for x in objects}
    for x in objects:
        arrows[ids[x]] = (x, x)
    comp = dict(relations)
    for f, (x, y) in arrows.items():
        comp[(ids[y], f)] = f
        comp[(f, ids[x])] = f
    return FiniteCategory(objects, arrows, ids, comp, name=name)


def product_category(C: FiniteCategory, D: FiniteCategory) -> FiniteCategory:
    objects = list(itertools.product(C.objects, D.objects))
    arrows = {(f, g): ((C.source(f), D.source(g)), (C.target(f), D.target(g)))
              for f in C.arrows for g in D.arrows}
    ids = {(x, y): (C.identities[x], D.identities[y]) for x, y in objects}
    comp = {}
    for (g1, f1) in C.compose_table:
        for (g2, f2) in D.compose_table:
            comp[((g1, g2), (f1, f2))] = (C.compose(g1, f1), D.compose(g2, f2))
    return FiniteCategory(objects, arrows, ids, comp, name=f"{C.name}x{D.name}")


# --------------------------------------------------------------------------
# classical nerve


def string_simplex(C: FiniteCategory, c0, fs: Sequence) -> Simplex:
    """Normal form of a composable string (identities become degeneracies)."""
    nd, surj = [], [0]
    for f in fs:
        if C.is_identity(f):
            surj.append(surj[-1])
        else:
            nd.append(f)
            surj.append(surj[-1] + 1)
    return Simplex(tuple(nd) if nd else c0, tuple(surj))


def classical_nerve(C: FiniteCategory, cap: int, name: str | None = None) -> SimplicialSet:
    """Nerve of a finite category; ``k``-cells are strings of non-identity arrows.

    Vertices are the objects themselves, higher cells tuples of arrow names.
    """
    nonid = [f for f in C.arrows if not C.is_identity(f)]
    cells = [list(C.objects)]
    faces = {}
    level = [(f,) for f in nonid]
    for k in range(1, cap + 1):
        cells.append(level)
        for s in level:
            c0 = C.source(s[0])
            fs = []
            for i in range(k + 1):
                if i == 0:
                    fs.append(string_simplex(C, C.target(s[0]), s[1:]))
                elif i == k:
                    fs.append(string_simplex(C, c0, s[:-1]))
                else:
                    merged = s[:i - 1] + (C.compose(s[i], s[i - 1]),) + s[i + 1:]
                    fs.append(string_simplex(C, c0, merged))
            faces[s] = tuple(fs)
        level = [s + (g,) for s in level for g in nonid if C.source(g) == C.target(s[-1])]
    finite = not level
    return SimplicialSet(cap, cells, faces, finite=finite, name=name or f"N({C.name})")


def nerve_simplex_string(C: FiniteCategory, s: Simplex) -> tuple:
    """Inverse of :func:`string_simplex`: the full string ``(c0, fs)``."""
    if s.surj[-1] == 0:
        c0 = s.nd
        return c0, tuple(C.identities[c0] for _ in s.surj[1:])
    fs, c0 = [], C.source(s.nd[0])
    cur = c0
    for t in range(1, len(s.surj)):
        if s.surj[t] == s.surj[t - 1]:
            fs.append(C.identities[cur])
        else:
            f = s.nd[s.surj[t] - 1]
            fs.append(f)
            cur = C.target(f)
    return c0, tuple(fs)
