"""Simplicially enriched categories with finitely many objects.

Hom spaces are :class:`SimplicialSet` values sharing a truncation cap.  A
category may carry a *presentation*: a list of generator cells together with
a ``factor`` routine writing every simplex uniquely as a composite of
operator images of generators.  Functors out of presented categories are then
determined by generator images, which is how functor enumeration stays cheap.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .cat import FiniteCategory, FiniteFunctor, FiniteGroup, classical_nerve, nerve_simplex_string, string_simplex
from .sset import (
    Poset,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    chain_to_simplex,
    empty,
    enumerate_maps,
    induced_pi1,
    is_group_isomorphism,
    is_kan,
    is_kan_fibration,
    nd_simplex,
    nerve_of_poset,
    pair_simplex,
    pi0,
    pi1_edge_path,
    product,
    simplex_to_chain,
    split_pair,
)


@dataclass(frozen=True)
class Generator:
    """A generating cell ``cell`` of ``Hom(source, target)`` in degree ``dim``."""

    source: Hashable
    target: Hashable
    dim: int
    cell: Hashable
    name: Hashable = None


Piece = tuple  # (generator index, monotone operator [k] -> [dim])


class LazyHoms(dict):
    """Hom table whose values are built on first access from ``builders``."""

    def __init__(self, builders: dict):
        super().__init__()
        self._builders = dict(builders)

    def __getitem__(self, key):
        if not dict.__contains__(self, key):
            dict.__setitem__(self, key, self._builders[key]())
        return dict.__getitem__(self, key)

    def get(self, key, default=None):
        return self[key] if key in self._builders else default

    def __contains__(self, key) -> bool:
        return key in self._builders

    def __iter__(self):
        return iter(self._builders)

    def __len__(self) -> int:
        return len(self._builders)

    def keys(self):
        return self._builders.keys()

    def values(self):
        return [self[k] for k in self._builders]

    def items(self):
        return [(k, self[k]) for k in self._builders]


class SimplicialCategory:
    """Objects, hom simplicial sets, a composition rule and identities.

    ``compose(x, y, z, g, f)`` returns ``g o f`` for ``f`` in ``Hom(x, y)`` and
    ``g`` in ``Hom(y, z)`` of equal degree.  Composition tables per degree are
    materialized on demand by :meth:`composition_table`.
    """

    def __init__(self, objects: Iterable, homs: dict, identities: dict, compose: Callable,
                 name: str | None = None, cap: int | None = None):
        self.objects = list(objects)
        self.homs = homs if isinstance(homs, LazyHoms) else dict(homs)
        self.identities = dict(identities)
        self._compose = compose
        self.name = name
        if cap is None:
            caps = [h.cap for h in self.homs.values()]
            cap = min(caps) if caps else 0
        self.cap = cap
        self.generators: list[Generator] | None = None
        self._empty = empty()
        self._empty.cap = self.cap
        self._tables: dict = {}

    def __repr__(self) -> str:
        return f"<SimplicialCategory {self.name or ''} objects={len(self.objects)} cap={self.cap}>"

    # -- basic structure -------------------------------------------------

    def hom(self, x, y) -> SimplicialSet:
        return self.homs.get((x, y), self._empty)

    def identity(self, x, k: int = 0) -> Simplex:
        return Simplex(self.identities[x], (0,) * (k + 1))

    def compose(self, x, y, z, g: Simplex, f: Simplex) -> Simplex:
        return self._compose(x, y, z, g, f)

    def compose_path(self, objs: Sequence, simplices: Sequence[Simplex], k: int) -> Simplex:
        """Composite of ``simplices[j]`` in ``Hom(objs[j], objs[j+1])``."""
        if not simplices:
            return self.identity(objs[0], k)
        acc = simplices[0]
        for j in range(1, len(simplices)):
            acc = self.compose(objs[0], objs[j], objs[j + 1], simplices[j], acc)
        return acc

    def composition_table(self, k: int) -> dict:
        """Explicit table ``(x, y, z, g, f) -> g o f`` in degree ``k``."""
        hit = self._tables.get(k)
        if hit is None:
            hit = {}
            for x, y, z in itertools.product(self.objects, repeat=3):
                for f in self.hom(x, y).simplices(k):
                    for g in self.hom(y, z).simplices(k):
                        hit[(x, y, z, g, f)] = self.compose(x, y, z, g, f)
            self._tables[k] = hit
        return hit

    def apply_in(self, x, y, s: Simplex, op) -> Simplex:
        """The simplicial operator ``op`` applied to ``s`` in ``Hom(x, y)``."""
        return self.hom(x, y).apply(s, op)

    def face_in(self, x, y, s: Simplex, i: int) -> Simplex:
        return self.apply_in(x, y, s, tuple(t for t in range(s.dim + 1) if t != i))

    @property
    def presented(self) -> bool:
        return self.generators is not None

    def factor(self, x, y, s: Simplex) -> list[Piece]:
        raise NotImplementedError("category has no presentation")

    # -- verification ------------------------------------------------------

    def check(self, up_to: int = 1) -> list[str]:
        """Unit, associativity and simplicial naturality, degrees ``<= up_to``."""
        out = []
        objs = self.objects
        for k in range(up_to + 1):
            for x, y in itertools.product(objs, repeat=2):
                H = self.hom(x, y)
                for f in H.simplices(k):
                    if self.compose(x, x, y, f, self.identity(x, k)) != f:
                        out.append(f"right unit fails at {x},{y}")
                    if self.compose(x, y, y, self.identity(y, k), f) != f:
                        out.append(f"left unit fails at {x},{y}")
            for x, y, z in itertools.product(objs, repeat=3):
                for f in self.hom(x, y).simplices(k):
                    for g in self.hom(y, z).simplices(k):
                        gf = self.compose(x, y, z, g, f)
                        Hxz = self.hom(x, z)
                        if gf.dim != k or gf.nd not in Hxz:
                            out.append(f"composite {g} o {f} not in Hom({x},{z})")
                            continue
                        for i in range(k + 1 if k else 0):
                            lhs = Hxz.face(gf, i)
                            rhs = self.compose(x, y, z, self.hom(y, z).face(g, i), self.hom(x, y).face(f, i))
                            if lhs != rhs:
                                out.append(f"d{i} not natural at {g} o {f}")
                        if k < up_to:
                            for j in range(k + 1):
                                lhs = Hxz.degeneracy(gf, j)
                                rhs = self.compose(x, y, z, self.hom(y, z).degeneracy(g, j),
                                                   self.hom(x, y).degeneracy(f, j))
                                if lhs != rhs:
                                    out.append(f"s{j} not natural at {g} o {f}")
                        for w in objs:
                            for h in self.hom(z, w).simplices(k):
                                a = self.compose(x, z, w, h, gf)
                                b = self.compose(x, y, w, self.compose(y, z, w, h, g), f)
                                if a != b:
                                    out.append(f"associativity fails at {h},{g},{f}")
        return out


class PosetCategory(SimplicialCategory):
    """A simplicial category whose homs are (subcomplexes of) poset nerves.

    Composition is given on vertices by ``vcomp(x, y, z, g, f)`` and extended
    chainwise, which is automatically simplicial when ``vcomp`` is monotone.
    Hom cells are strictly increasing chains of poset elements.
    """

    def __init__(self, objects: Iterable, homs: dict, identities: dict, vcomp: Callable,
                 name: str | None = None, cap: int | None = None):
        self.vcomp = vcomp
        ids = {x: (e,) for x, e in identities.items()}
        super().__init__(objects, homs, ids, self._chain_compose, name=name, cap=cap)

    def _chain_compose(self, x, y, z, g: Simplex, f: Simplex) -> Simplex:
        gc, fc = simplex_to_chain(g), simplex_to_chain(f)
        return chain_to_simplex(tuple(self.vcomp(x, y, z, b, a) for b, a in zip(gc, fc)))

    def apply_in(self, x, y, s: Simplex, op) -> Simplex:
        chain = simplex_to_chain(s)
        return chain_to_simplex(tuple(chain[t] for t in op))

    def identity_element(self, x):
        return self.identities[x][0]

    def restrict(self, keep: Callable[[Hashable, Hashable, Hashable], bool],
                 objects: Iterable | None = None, name: str | None = None) -> "PosetCategory":
        """Sub-category keeping the hom cells accepted by ``keep(x, y, cell)``.

        The kept cells must form subcomplexes closed under composition; the
        presentation (if any) is inherited on generators that survive.
        """
        objects = list(self.objects if objects is None else objects)
        homs = {}
        for (x, y), H in self.homs.items():
            if x in objects and y in objects:
                cells = [c for c in H.all_cells() if keep(x, y, c)]
                if cells:
                    homs[(x, y)] = H.subcomplex(cells)
        sub = PosetCategory(objects, homs, {x: self.identity_element(x) for x in objects},
                            self.vcomp, name=name, cap=self.cap)
        if self.presented:
            gens = [g for g in self.generators
                    if g.source in objects and g.target in objects and g.cell in sub.hom(g.source, g.target)]
            index = {self.generators.index(g): n for n, g in enumerate(gens)}
            parent = self

            def factor(x, y, s, _parent=parent, _index=index):
                return [(_index[gi], op) for gi, op in _parent.factor(x, y, s)]

            sub.generators = gens
            sub.factor = factor
        sub.parent = self
        return sub


# --------------------------------------------------------------------------
# functors


class SimplicialFunctor:
    """A simplicial functor ``source -> target``.

    Hom maps are evaluated by ``evaluate(x, y, s)``.  Functors out of a
    presented category are compared through their generator images.
    """

    def __init__(self, source: SimplicialCategory, target: SimplicialCategory, on_objects: dict,
                 evaluate: Callable[[Hashable, Hashable, Simplex], Simplex], images: tuple | None = None):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)
        self._evaluate = evaluate
        self._images = images
        self._hom_maps: dict = {}

    def __call__(self, x, y, s: Simplex) -> Simplex:
        if x == y and s.nd == self.source.identities[x]:
            return self.target.identity(self.on_objects[x], s.dim)
        return self._evaluate(x, y, s)

    @classmethod
    def from_generators(cls, source: SimplicialCategory, target: SimplicialCategory, on_objects: dict,
                        images: Sequence[Simplex]) -> "SimplicialFunctor":
        images = tuple(images)

        def evaluate(x, y, s):
            return evaluate_pieces(source, target, on_objects, images, x, y, s)

        return cls(source, target, on_objects, evaluate, images)

    @classmethod
    def from_hom_maps(cls, source: SimplicialCategory, target: SimplicialCategory, on_objects: dict,
                      hom_maps: dict) -> "SimplicialFunctor":
        def evaluate(x, y, s):
            return hom_maps[(x, y)](s)

        F = cls(source, target, on_objects, evaluate)
        F._hom_maps.update(hom_maps)
        return F

    @classmethod
    def from_vertex_map(cls, source: PosetCategory, target: PosetCategory, on_objects: dict,
                        vmap: Callable[[Hashable, Hashable, Hashable], Hashable]) -> "SimplicialFunctor":
        """Functor between poset categories given on hom vertices, extended chainwise."""
        def evaluate(x, y, s):
            return chain_to_simplex(tuple(vmap(x, y, v) for v in simplex_to_chain(s)))

        return cls(source, target, on_objects, evaluate)

    def images(self) -> tuple:
        if self._images is None:
            if not self.source.presented:
                raise ValueError("generator images need a presented source")
            self._images = tuple(self(g.source, g.target, nd_simplex(g.cell, g.dim))
                                 for g in self.source.generators)
        return self._images

    def key(self) -> tuple:
        objs = tuple(self.on_objects[x] for x in self.source.objects)
        if self.source.presented:
            return objs, self.images()
        return objs, tuple(tuple(sorted(self.hom_map(x, y).assignment.items(), key=repr))
                           for (x, y) in sorted(self.source.homs, key=repr))

    def hom_map(self, x, y) -> SimplicialMap:
        hit = self._hom_maps.get((x, y))
        if hit is None:
            H = self.source.hom(x, y)
            T = self.target.hom(self.on_objects[x], self.on_objects[y])
            hit = SimplicialMap(H, T, {c: self(x, y, H.cell(c)) for c in H.all_cells()})
            self._hom_maps[(x, y)] = hit
        return hit

    def then(self, G: "SimplicialFunctor") -> "SimplicialFunctor":
        """The composite ``G o self``."""
        F = self

        def evaluate(x, y, s):
            return G(F.on_objects[x], F.on_objects[y], F(x, y, s))

        return SimplicialFunctor(F.source, G.target, {x: G.on_objects[F.on_objects[x]] for x in F.source.objects},
                                 evaluate)

    def check(self, up_to: int = 1) -> list[str]:
        out = []
        S, T = self.source, self.target
        for x in S.objects:
            if self(x, x, S.identity(x)) != T.identity(self.on_objects[x]):
                out.append(f"identity at {x!r} not preserved")
        for (x, y), H in S.homs.items():
            Tm = T.hom(self.on_objects[x], self.on_objects[y])
            for c in H.all_cells():
                s = H.cell(c)
                img = self(x, y, s)
                if img.dim != s.dim or img.nd not in Tm:
                    out.append(f"cell {c!r} of Hom({x},{y}) has no valid image")
                    continue
                for i in range(s.dim + 1 if s.dim else 0):
                    if self(x, y, H.face(s, i)) != Tm.face(img, i):
                        out.append(f"cell {c!r} of Hom({x},{y}) breaks d{i}")
        for k in range(up_to + 1):
            for x, y, z in itertools.product(S.objects, repeat=3):
                for f in S.hom(x, y).simplices(k):
                    for g in S.hom(y, z).simplices(k):
                        a = self(x, z, S.compose(x, y, z, g, f))
                        fx, fy, fz = (self.on_objects[t] for t in (x, y, z))
                        b = T.compose(fx, fy, fz, self(y, z, g), self(x, y, f))
                        if a != b:
                            out.append(f"composition not preserved at {g} o {f}")
        return out


def identity_functor(C: SimplicialCategory) -> SimplicialFunctor:
    return SimplicialFunctor(C, C, {x: x for x in C.objects}, lambda x, y, s: s)


def evaluate_pieces(source: SimplicialCategory, target: SimplicialCategory, on_objects: dict,
                    images: Sequence[Simplex], x, y, s: Simplex) -> Simplex:
    pieces = source.factor(x, y, s)
    objs, parts = [on_objects[x]], []
    for gi, op in pieces:
        g = source.generators[gi]
        parts.append(target.apply_in(on_objects[g.source], on_objects[g.target], images[gi], op))
        objs.append(on_objects[g.target])
    return target.compose_path(objs, parts, s.dim)


def _generator_constraints(A: SimplicialCategory, gi: int) -> list[tuple[int, list[Piece]] | None]:
    """Per face of generator ``gi``: its factorization, or None when it is a formal face."""
    g = A.generators[gi]
    if g.dim == 0:
        return []
    out = []
    for i in range(g.dim + 1):
        pieces = A.factor(g.source, g.target, A.face_in(g.source, g.target, nd_simplex(g.cell, g.dim), i))
        out.append(None if any(p[0] == gi for p in pieces) else pieces)
    return out


def enumerate_functors(A: SimplicialCategory, C: SimplicialCategory,
                       fixed_objects: dict | None = None,
                       fixed_images: dict[int, Simplex] | None = None,
                       image_filter: Callable[[int, dict, Simplex], bool] | None = None,
                       limit: int | None = None) -> list[SimplicialFunctor]:
    """All simplicial functors ``A -> C`` out of a presented ``A``.

    Objects are assigned in order, then generators by dimension.  Each
    generator image must have the face tuple dictated by the factorizations
    of the generator's faces; formal faces of free generators impose nothing.
    ``fixed_images`` pins generator images, ``image_filter(gi, objmap, img)``
    prunes candidates.
    """
    if not A.presented:
        return _enumerate_functors_generic(A, C, fixed_objects, limit)
    gens = A.generators
    order = sorted(range(len(gens)), key=lambda gi: (gens[gi].dim, gi))
    constraints = {gi: _generator_constraints(A, gi) for gi in order}
    fixed_objects = fixed_objects or {}
    fixed_images = fixed_images or {}
    out: list[SimplicialFunctor] = []
    obj_choices = [[fixed_objects[x]] if x in fixed_objects else C.objects for x in A.objects]
    for combo in itertools.product(*obj_choices):
        objmap = dict(zip(A.objects, combo))
        if any(g.dim > C.hom(objmap[g.source], objmap[g.target]).cap and
               not C.hom(objmap[g.source], objmap[g.target]).finite for g in gens):
            continue
        images: list[Simplex | None] = [None] * len(gens)

        def candidates(gi):
            g = gens[gi]
            H = C.hom(objmap[g.source], objmap[g.target])
            if gi in fixed_images:
                pool = [fixed_images[gi]]
            elif g.dim == 0:
                pool = H.simplices(0)
            else:
                want = []
                free = False
                for pieces in constraints[gi]:
                    if pieces is None:
                        free = True
                        break
                    objs, parts = [objmap[g.source]], []
                    for pj, op in pieces:
                        h = gens[pj]
                        parts.append(C.apply_in(objmap[h.source], objmap[h.target], images[pj], op))
                        objs.append(objmap[h.target])
                    want.append(C.compose_path(objs, parts, g.dim - 1))
                pool = H.simplices(g.dim) if free else H.face_index(g.dim).get(tuple(want), [])
                if gi in fixed_images:
                    pool = [p for p in pool if p == fixed_images[gi]]
            if image_filter is not None:
                pool = [p for p in pool if image_filter(gi, objmap, p)]
            return pool

        def go(pos):
            if limit is not None and len(out) >= limit:
                return
            if pos == len(order):
                out.append(SimplicialFunctor.from_generators(A, C, objmap, list(images)))
                return
            gi = order[pos]
            for cand in candidates(gi):
                images[gi] = cand
                go(pos + 1)
            images[gi] = None

        go(0)
    return out


def _enumerate_functors_generic(A: SimplicialCategory, C: SimplicialCategory, fixed_objects, limit):
    """Fallback for unpresented finite sources: hom maps then composition check."""
    out = []
    fixed_objects = fixed_objects or {}
    pairs = sorted(A.homs, key=repr)
    obj_choices = [[fixed_objects[x]] if x in fixed_objects else C.objects for x in A.objects]
    top = max((h.top_dim for h in A.homs.values()), default=0)
    for combo in itertools.product(*obj_choices):
        objmap = dict(zip(A.objects, combo))
        choices = []
        for (x, y) in pairs:
            fixed = {A.identities[x]: C.identity(objmap[x])} if x == y else None
            choices.append(enumerate_maps(A.hom(x, y), C.hom(objmap[x], objmap[y]), fixed=fixed))
        for maps in itertools.product(*choices):
            F = SimplicialFunctor.from_hom_maps(A, C, objmap, dict(zip(pairs, maps)))
            if not F.check(up_to=top):
                out.append(F)
                if limit is not None and len(out) >= limit:
                    return out
    return out


@dataclass
class RLPReport:
    ok: bool
    squares: int
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def rlp_scat(sub: PosetCategory, B: SimplicialCategory, f: SimplicialFunctor) -> RLPReport:
    """Right lifting of ``f: C -> D`` against the inclusion ``sub -> B``.

    ``sub`` must come from :meth:`PosetCategory.restrict` on the presented ``B``
    with the same objects, so its generators are generators of ``B``.
    """
    C, D = f.source, f.target
    gen_pos = [B.generators.index(g) for g in sub.generators]
    squares = 0
    for v in enumerate_functors(B, D):
        vimg = v.images()
        for u in enumerate_functors(sub, C, fixed_objects=None):
            # f o u must equal v restricted to the sub-category
            if any(f.on_objects[u.on_objects[x]] != v.on_objects[x] for x in sub.objects):
                continue
            uimg = u.images()
            ok = True
            for n, g in enumerate(sub.generators):
                if f(u.on_objects[g.source], u.on_objects[g.target], uimg[n]) != vimg[gen_pos[n]]:
                    ok = False
                    break
            if not ok:
                continue
            squares += 1
            fixed = {gen_pos[n]: uimg[n] for n in range(len(gen_pos))}

            def lifts_over_v(gi, objmap, img, _v=vimg):
                g = B.generators[gi]
                return f(objmap[g.source], objmap[g.target], img) == _v[gi]

            lifts = enumerate_functors(B, C, fixed_objects=dict(u.on_objects), fixed_images=fixed,
                                       image_filter=lifts_over_v, limit=1)
            if not lifts:
                return RLPReport(False, squares, {"top": v, "horn": u})
    return RLPReport(True, squares)


# --------------------------------------------------------------------------
# constructors


def discrete_scat(C: FiniteCategory, cap: int = 3, name: str | None = None) -> PosetCategory:
    """A finite category viewed as a simplicial category with discrete homs."""
    homs = {}
    for x in C.objects:
        for y in C.objects:
            arrows = C.hom(x, y)
            if arrows:
                homs[(x, y)] = nerve_of_poset(Poset(list(arrows), lambda a, b: a == b), cap=cap)
    out = PosetCategory(C.objects, homs, dict(C.identities), lambda x, y, z, g, f: C.compose(g, f),
                        name=name or C.name, cap=cap)
    out.underlying = C
    return out


def group_nerve_scat(G: FiniteGroup, cap: int = 3, obj: Hashable = "*") -> SimplicialCategory:
    """One object with endomorphisms the nerve of an abelian group, composed levelwise."""
    if not G.abelian:
        raise ValueError("levelwise composition on the nerve needs an abelian group")
    from .cat import group_as_category

    BG = group_as_category(G, obj)
    N = classical_nerve(BG, cap, name=f"N({G.name})")

    def comp(x, y, z, g, f):
        _, gs = nerve_simplex_string(BG, g)
        _, fs = nerve_simplex_string(BG, f)
        return string_simplex(BG, obj, tuple(G.mul(a, b) for a, b in zip(gs, fs)))

    return SimplicialCategory([obj], {(obj, obj): N}, {obj: obj}, comp, name=f"sB{G.name}", cap=cap)


def product_scat(C: SimplicialCategory, D: SimplicialCategory, cap: int | None = None) -> SimplicialCategory:
    cap = min(C.cap, D.cap) if cap is None else cap
    objects = list(itertools.product(C.objects, D.objects))
    homs = {}
    for (x, u) in objects:
        for (y, v) in objects:
            if (x, y) in C.homs and (u, v) in D.homs:
                homs[((x, u), (y, v))] = product(C.hom(x, y), D.hom(u, v), cap)
    ids = {(x, u): pair_simplex(C.identity(x), D.identity(u)).nd for x, u in objects}

    def comp(a, b, c, g, f):
        g1, g2 = split_pair(g)
        f1, f2 = split_pair(f)
        return pair_simplex(C.compose(a[0], b[0], c[0], g1, f1), D.compose(a[1], b[1], c[1], g2, f2))

    return SimplicialCategory(objects, homs, ids, comp, name=f"{C.name}x{D.name}", cap=cap)


def free_scat(objects: Sequence, generators: Sequence[tuple], cap: int, max_length: int | None = None,
              name: str | None = None) -> PosetCategory:
    """Free simplicial category on a simplicial graph.

    ``generators`` lists ``(name, source, target, degree)``; each generator is
    a free simplex, so ``Hom(a, b)`` is the disjoint union over paths of the
    products of standard simplices, i.e. the nerve of a poset of pairs
    ``(path, coords)``.  Paths longer than ``max_length`` are omitted and
    composing into them raises ``OverflowError``.
    """
    objects = list(objects)
    gens = [tuple(g) for g in generators]
    deg = {g[0]: g[3] for g in gens}
    out_edges: dict = {}
    for g in gens:
        out_edges.setdefault(g[1], []).append(g)
    bound = max_length if max_length is not None else len(gens) * max(1, len(objects))
    paths: dict = {}
    for a in objects:
        frontier = [((), a)]
        for length in range(bound + 1):
            nxt = []
            for p, end in frontier:
                paths.setdefault((a, end), []).append(p)
                if length < bound:
                    nxt.extend((p + (g[0],), g[2]) for g in out_edges.get(end, []))
            frontier = nxt
        if max_length is None and frontier:
            raise ValueError("graph has cycles; pass max_length")

    def leq(u, v):
        return u[0] == v[0] and all(s <= t for s, t in zip(u[1], v[1]))

    def builder(a, b, ps):
        def build():
            elems = [(p, coords) for p in ps for coords in itertools.product(*(range(deg[e] + 1) for e in p))]
            return nerve_of_poset(Poset(elems, leq), cap=cap, name=f"Hom({a},{b})")
        return build

    homs = LazyHoms({(a, b): builder(a, b, ps) for (a, b), ps in paths.items()})

    def vcomp(x, y, z, g, f):
        if len(f[0]) + len(g[0]) > bound:
            raise OverflowError("composite exceeds the word-length bound")
        return (f[0] + g[0], f[1] + g[1])

    C = PosetCategory(objects, homs, {a: ((), ()) for a in objects}, vcomp, name=name, cap=cap)
    C.generators = [Generator(g[1], g[2], g[3], tuple(((g[0],), (t,)) for t in range(g[3] + 1)), g[0])
                    for g in gens]
    index = {g[0]: n for n, g in enumerate(gens)}
    C.generator_index = index

    def factor(x, y, s):
        chain = simplex_to_chain(s)
        path = chain[0][0]
        return [(index[e], tuple(v[1][j] for v in chain)) for j, e in enumerate(path)]

    C.factor = factor
    C.max_length = bound
    return C


def free_word(C: PosetCategory, x, word: Sequence[tuple]) -> Simplex:
    """The simplex of ``C`` given by a word of ``(generator name, operator)`` pairs, first arrow first."""
    k = len(word[0][1]) - 1 if word else 0
    path = tuple(e for e, _ in word)
    chain = tuple((path, tuple(op[t] for _, op in word)) for t in range(k + 1))
    return chain_to_simplex(chain)


# --------------------------------------------------------------------------
# homotopy-invariant data


def pi0_category(C: SimplicialCategory, spot_check: bool = True) -> FiniteCategory:
    """Path components of homs, with composition through representatives.

    Arrows are named ``(x, y, i)`` where ``i`` indexes the components of
    ``Hom(x, y)`` in canonical order.
    """
    comp_of, reps = {}, {}
    for (x, y), H in C.homs.items():
        for i, comp in enumerate(pi0(H)):
            reps[(x, y, i)] = nd_simplex(comp[0], 0)
            for v in comp:
                comp_of[(x, y, v)] = (x, y, i)
    arrows = {a: (a[0], a[1]) for a in reps}
    ids = {x: comp_of[(x, x, C.identities[x])] for x in C.objects}
    table = {}
    for f, (x, y) in arrows.items():
        for g, (y2, z) in arrows.items():
            if y2 != y:
                continue
            h = C.compose(x, y, z, reps[g], reps[f])
            table[(g, f)] = comp_of[(x, z, h.nd)]
    if spot_check:
        for (x, y), H in C.homs.items():
            for z in C.objects:
                for f in H.nd_cells(0):
                    for g in C.hom(y, z).nd_cells(0):
                        h = C.compose(x, y, z, nd_simplex(g, 0), nd_simplex(f, 0))
                        if comp_of[(x, z, h.nd)] != table[(comp_of[(y, z, g)], comp_of[(x, y, f)])]:
                            raise AssertionError("composition not well defined on components")
    out = FiniteCategory(C.objects, arrows, ids, table, name=f"pi0({C.name})")
    out.component_of = comp_of
    return out


def pi0_functor(F: SimplicialFunctor, P: FiniteCategory | None = None, Q: FiniteCategory | None = None) -> FiniteFunctor:
    P = P or pi0_category(F.source)
    Q = Q or pi0_category(F.target)
    on_arrows = {}
    for a, (x, y) in P.arrows.items():
        rep = nd_simplex(next(v for (s, t, v), c in P.component_of.items() if c == a), 0)
        img = F(x, y, rep)
        on_arrows[a] = Q.component_of[(F.on_objects[x], F.on_objects[y], img.nd)]
    return FiniteFunctor(P, Q, dict(F.on_objects), on_arrows)


@dataclass
class FibrancyReport:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def is_fibrant(C: SimplicialCategory, up_to: int) -> FibrancyReport:
    """Every hom space passes the Kan check through dimension ``up_to``."""
    failures = []
    for pair in sorted(C.homs, key=repr):
        r = is_kan(C.homs[pair], up_to)
        if not r.ok:
            failures.append((pair, r.first_failure(), r.witness))
    return FibrancyReport(not failures, failures)


def is_weak_groupoid(C: SimplicialCategory) -> bool:
    return pi0_category(C).is_groupoid()


def is_fibrant_groupoid(C: SimplicialCategory, up_to: int) -> bool:
    return is_weak_groupoid(C) and bool(is_fibrant(C, up_to))


def is_weak_fibration(F: SimplicialFunctor, up_to: int) -> FibrancyReport:
    """Hom maps are Kan fibrations and homotopy equivalences lift from objects of the source."""
    C, D = F.source, F.target
    failures = []
    for (x, y) in sorted(C.homs, key=repr):
        r = is_kan_fibration(F.hom_map(x, y), up_to)
        if not r.ok:
            failures.append(("hom", (x, y), r.first_failure(), r.witness))
    PC, PD = pi0_category(C), pi0_category(D)
    for x in C.objects:
        fx = F.on_objects[x]
        for z in D.objects:
            for alpha in D.hom(fx, z).nd_cells(0):
                if not PD.is_iso(PD.component_of[(fx, z, alpha)]):
                    continue
                found = False
                for y in C.objects:
                    if F.on_objects[y] != z:
                        continue
                    for a in C.hom(x, y).nd_cells(0):
                        if F(x, y, nd_simplex(a, 0)).nd == alpha and PC.is_iso(PC.component_of[(x, y, a)]):
                            found = True
                            break
                    if found:
                        break
                if not found:
                    failures.append(("equivalence", x, z, alpha))
    return FibrancyReport(not failures, failures)


@dataclass
class EquivalenceCertificate:
    pi0_equivalence: bool
    hom_pi0: bool
    hom_pi1: bool | None
    level: str
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.pi0_equivalence and self.hom_pi0 and self.hom_pi1 is not False


def strong_equivalence_certificate(F: SimplicialFunctor, up_to: int) -> EquivalenceCertificate:
    """Partial certificate: equivalence on components plus hom ``pi_0``/``pi_1`` comparison.

    ``level`` is ``"pi0+pi1"`` when every hom pair was compared on
    fundamental groups, ``"pi0"`` when some hom was not certified Kan, and
    ``"none"`` when a check failed.
    """
    C, D = F.source, F.target
    failures = []
    eq = pi0_functor(F).is_equivalence()
    if not eq:
        failures.append("components: not an equivalence")
    hom_pi0, hom_pi1 = True, True
    for x, y in itertools.product(C.objects, repeat=2):
        fx, fy = F.on_objects[x], F.on_objects[y]
        H, K = C.hom(x, y), D.hom(fx, fy)
        m = F.hom_map(x, y)
        cH, cK = pi0(H), pi0(K)
        where = {v: i for i, comp in enumerate(cK) for v in comp}
        induced = [where[m(nd_simplex(comp[0], 0)).nd] for comp in cH]
        if sorted(induced) != list(range(len(cK))):
            hom_pi0 = False
            failures.append(f"Hom({x},{y}): pi0 not bijective")
            continue
        if up_to < 2:
            hom_pi1 = None if hom_pi1 is not False else False
            continue
        rH, rK = is_kan(H, 2), is_kan(K, 2)
        if not (rH.ok and rK.ok):
            hom_pi1 = None if hom_pi1 is not False else False
            continue
        for comp in cH:
            v = comp[0]
            G1 = pi1_edge_path(H, v, rH)
            G2 = pi1_edge_path(K, m(nd_simplex(v, 0)).nd, rK)
            phi = induced_pi1(m, G1, G2)
            if not is_group_isomorphism(phi, G1, G2):
                hom_pi1 = False
                failures.append(f"Hom({x},{y}) at {v!r}: pi1 not isomorphic")
    ok = eq and hom_pi0 and hom_pi1 is not False
    level = "none" if not ok else ("pi0+pi1" if hom_pi1 else "pi0")
    return EquivalenceCertificate(eq, hom_pi0, hom_pi1, level, failures)


def discrete_functor(F: FiniteFunctor, C: PosetCategory, D: PosetCategory) -> SimplicialFunctor:
    """A functor of finite categories between their discrete simplicial versions."""
    return SimplicialFunctor.from_vertex_map(C, D, dict(F.on_objects), lambda x, y, v: F.on_arrows[v])
