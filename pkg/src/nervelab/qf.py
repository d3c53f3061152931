"""Fibered categories over a finite base, quasifibered diagrams and limits.

A simplex over ``B`` is a pair ``(objs, arrows)`` with ``objs = (alpha(0),
..., alpha(n))`` and ``arrows[k-1]: alpha(k) -> alpha(k-1)``; the arrows
point towards vertex 0.  Restriction along a monotone ``u: [m] -> [n]``
composes the arrows between consecutive image points.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .cat import FiniteCategory, FiniteFunctor
from .sset import (
    chain_to_simplex,
    simplex_to_chain,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    codegeneracy_op,
    coface_op,
    compose_ops,
    enumerate_maps,
    monotone_maps,
    nd_simplex,
    pair_simplex,
    pi0,
    product,
    standard_simplex,
)


@dataclass
class FiberedCategory:
    total: FiniteCategory
    base: FiniteCategory
    projection: FiniteFunctor

    def over(self, b) -> list:
        return [x for x in self.total.objects if self.projection.on_objects[x] == b]

    def arrows_over(self, phi) -> list:
        return [f for f in self.total.arrows if self.projection.on_arrows[f] == phi]

    def vertical(self, x, y) -> list:
        b = self.projection.on_objects[x]
        idb = self.base.identities[b]
        return [f for f in self.total.hom(x, y) if self.projection.on_arrows[f] == idb]


def is_cartesian(p: FiberedCategory, f) -> bool:
    """Composition with ``f: x -> y`` is a bijection from vertical ``z -> x`` to ``z -> y`` over ``p(f)``."""
    E, P = p.total, p.projection
    x, y = E.arrows[f]
    phi = P.on_arrows[f]
    for z in p.over(P.on_objects[x]):
        images = [E.compose(f, h) for h in p.vertical(z, x)]
        over_phi = [g for g in E.hom(z, y) if P.on_arrows[g] == phi]
        if len(set(images)) != len(images) or set(images) != set(over_phi):
            return False
    return True


@dataclass
class FiberedReport:
    ok: bool
    f1_failures: list = field(default_factory=list)
    f2_failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def is_fibered(p: FiberedCategory) -> FiberedReport:
    E, B, P = p.total, p.base, p.projection
    cart = {f for f in E.arrows if is_cartesian(p, f)}
    f1 = []
    for y in E.objects:
        for phi, (b, by) in B.arrows.items():
            if by != P.on_objects[y]:
                continue
            if not any(E.target(f) == y and P.on_arrows[f] == phi for f in cart):
                f1.append((y, phi))
    f2 = []
    for f in sorted(cart, key=repr):
        for g in sorted(cart, key=repr):
            if E.source(g) == E.target(f) and E.compose(g, f) not in cart:
                f2.append((g, f))
    return FiberedReport(not f1 and not f2, f1, f2)


def grothendieck(B: FiniteCategory, values: dict, actions: dict, name: str | None = None) -> FiberedCategory:
    """Total category of a strict functor ``B^op -> Cat``.

    ``values[b]`` is a :class:`FiniteCategory`, ``actions[phi]`` for
    ``phi: b -> c`` a :class:`FiniteFunctor` ``values[c] -> values[b]``.
    Objects are ``(b, x)``, arrows ``(phi, alpha)`` with
    ``alpha: x -> F(phi)(y)`` in ``values[b]``.
    """
    objects = [(b, x) for b in B.objects for x in values[b].objects]
    arrows = {}
    for phi, (b, c) in B.arrows.items():
        Fphi = actions[phi]
        for y in values[c].objects:
            for x in values[b].objects:
                for a in values[b].hom(x, Fphi.on_objects[y]):
                    arrows[(phi, a, y)] = ((b, x), (c, y))
    ids = {(b, x): (B.identities[b], values[b].identities[x], x) for b, x in objects}
    comp = {}
    for f, (src, mid) in arrows.items():
        phi, a, _ = f
        for g, (mid2, tgt) in arrows.items():
            if mid2 != mid:
                continue
            psi, beta, z = g
            b = src[0]
            moved = actions[phi].on_arrows[beta]
            comp[(g, f)] = (B.compose(psi, phi), values[b].compose(moved, a), z)
    E = FiniteCategory(objects, arrows, ids, comp, name=name or "Groth")
    P = FiniteFunctor(E, B, {o: o[0] for o in objects}, {f: f[0] for f in arrows})
    return FiberedCategory(E, B, P)


def check_strict_functor(B: FiniteCategory, values: dict, actions: dict) -> list[str]:
    out = []
    for b in B.objects:
        F = actions[B.identities[b]]
        if any(F.on_objects[x] != x for x in values[b].objects) or any(F.on_arrows[a] != a for a in values[b].arrows):
            out.append(f"identity at {b!r} not preserved")
    for (psi, phi), chi in B.compose_table.items():
        Fphi, Fpsi, Fchi = actions[phi], actions[psi], actions[chi]
        c = B.target(psi)
        for y in values[c].objects:
            if Fphi.on_objects[Fpsi.on_objects[y]] != Fchi.on_objects[y]:
                out.append(f"composite {psi!r} o {phi!r} not preserved")
                break
    return out


def product_projection(B: FiniteCategory, F: FiniteCategory) -> FiberedCategory:
    """``B x F -> B``."""
    from .cat import product_category

    E = product_category(B, F)
    P = FiniteFunctor(E, B, {o: o[0] for o in E.objects}, {a: a[0] for a in E.arrows})
    return FiberedCategory(E, B, P)


# --------------------------------------------------------------------------
# simplices over the base


def simplices_over(B: FiniteCategory, n: int) -> list[tuple]:
    out = [((b,), ()) for b in B.objects]
    for _ in range(n):
        out = [(objs + (B.source(a),), arrows + (a,)) for objs, arrows in out
               for a in B.arrows if B.target(a) == objs[-1]]
    return out


def restrict_simplex(B: FiniteCategory, alpha: tuple, u: Sequence[int]) -> tuple:
    objs, arrows = alpha
    new_objs = tuple(objs[t] for t in u)
    new_arrows = []
    for j in range(1, len(u)):
        lo, hi = u[j - 1], u[j]
        acc = B.identities[objs[hi]]
        for k in range(hi, lo, -1):
            acc = B.compose(arrows[k - 1], acc) if k < hi else arrows[k - 1]
        new_arrows.append(acc)
    return new_objs, tuple(new_arrows)


@dataclass
class SimplexCategory:
    base: FiniteCategory
    n_cap: int
    objects: list
    morphisms: list  # (u, beta, alpha) with beta = alpha o u

    def count(self, n: int) -> int:
        return sum(1 for a in self.objects if len(a[0]) == n + 1)


def simplex_category(B: FiniteCategory, n_cap: int) -> SimplexCategory:
    objects = [a for n in range(n_cap + 1) for a in simplices_over(B, n)]
    morphisms = []
    for alpha in objects:
        n = len(alpha[0]) - 1
        for m in range(n_cap + 1):
            for u in monotone_maps(m, n):
                morphisms.append((u, restrict_simplex(B, alpha, u), alpha))
    return SimplexCategory(B, n_cap, objects, morphisms)


# --------------------------------------------------------------------------
# cartesian liftings


def _compose_chain(E: FiniteCategory, es: Sequence, lo: int, hi: int, x_hi):
    """Composite ``x_hi -> x_lo`` of the structure arrows ``es[k-1]: x_k -> x_{k-1}``."""
    if lo == hi:
        return E.identities[x_hi]
    acc = es[hi - 1]
    for k in range(hi - 1, lo, -1):
        acc = E.compose(es[k - 1], acc)
    return acc


class LiftingCategory(FiniteCategory):
    """Cartesian liftings of a simplex over the base."""

    def __init__(self, p: FiberedCategory, alpha: tuple, cartesian: set | None = None):
        E = p.total
        self.p, self.alpha = p, alpha
        cart = cartesian if cartesian is not None else {f for f in E.arrows if is_cartesian(p, f)}
        cart = [f for f in E.arrows if f in cart]
        objs_b, arrows_b = alpha
        objects = [((x,), ()) for x in p.over(objs_b[0])]
        for k, a in enumerate(arrows_b, start=1):
            objects = [(xs + (E.source(f),), es + (f,)) for xs, es in objects
                       for f in cart if p.projection.on_arrows[f] == a and E.target(f) == xs[-1]]
        arrows, ids, comp = {}, {}, {}
        for o in objects:
            for o2 in objects:
                comps = [p.vertical(o[0][k], o2[0][k]) for k in range(len(objs_b))]
                for hs in itertools.product(*comps):
                    if all(E.compose(o2[1][k - 1], hs[k]) == E.compose(hs[k - 1], o[1][k - 1])
                           for k in range(1, len(objs_b))):
                        arrows[(o, o2, hs)] = (o, o2)
            ids[o] = (o, o, tuple(E.identities[x] for x in o[0]))
        for f, (o, o2) in arrows.items():
            for g, (o3, o4) in arrows.items():
                if o3 == o2:
                    comp[(g, f)] = (o, o4, tuple(E.compose(b, a) for b, a in zip(g[2], f[2])))
        super().__init__(objects, arrows, ids, comp, name=f"E{alpha}")


def fiber_category(p: FiberedCategory, b) -> FiniteCategory:
    E = p.total
    objects = p.over(b)
    arrows = {f: E.arrows[f] for x in objects for y in objects for f in p.vertical(x, y)}
    comp = {(g, f): E.compose(g, f) for f in arrows for g in arrows if E.source(g) == E.target(f)}
    return FiniteCategory(objects, arrows, {x: E.identities[x] for x in objects}, comp, name=f"fiber({b})")


def restriction_functor(p: FiberedCategory, u: Sequence[int], src: LiftingCategory, dst: LiftingCategory) -> FiniteFunctor:
    """``E(alpha) -> E(alpha o u)`` by precomposition."""
    E = p.total

    def on_obj(o):
        xs, es = o
        ys = tuple(xs[t] for t in u)
        fs = tuple(_compose_chain(E, es, u[j - 1], u[j], xs[u[j]]) for j in range(1, len(u)))
        return ys, fs

    on_objects = {o: on_obj(o) for o in src.objects}
    on_arrows = {a: (on_objects[a[0]], on_objects[a[1]], tuple(a[2][t] for t in u)) for a in src.arrows}
    return FiniteFunctor(src, dst, on_objects, on_arrows)


def forgetful(Ea: LiftingCategory, fiber: FiniteCategory) -> FiniteFunctor:
    return FiniteFunctor(Ea, fiber, {o: o[0][0] for o in Ea.objects}, {a: a[2][0] for a in Ea.arrows})


@dataclass
class QuasifiberedDiagram:
    base: FiniteCategory
    n_cap: int
    index: SimplexCategory
    values: dict  # simplex -> FiniteCategory
    fibered: FiberedCategory | None = None
    _actions: dict = field(default_factory=dict, repr=False)

    def action(self, u: Sequence[int], alpha: tuple) -> FiniteFunctor:
        u = tuple(u)
        key = (u, alpha)
        if key not in self._actions:
            beta = restrict_simplex(self.base, alpha, u)
            self._actions[key] = restriction_functor(self.fibered, u, self.values[alpha], self.values[beta])
        return self._actions[key]

    def qf_failures(self) -> list:
        """Maps ``u`` with ``u(0) = 0`` whose action is not an equivalence."""
        return [(u, alpha) for u, beta, alpha in self.index.morphisms
                if u[0] == 0 and not self.action(u, alpha).is_equivalence()]

    def functoriality_failures(self) -> list:
        out = []
        for alpha in self.index.objects:
            n = len(alpha[0]) - 1
            for m in range(self.n_cap + 1):
                for u in monotone_maps(m, n):
                    beta = restrict_simplex(self.base, alpha, u)
                    Fu = self.action(u, alpha)
                    for k in range(self.n_cap + 1):
                        for v in monotone_maps(k, m):
                            Fv = self.action(v, beta)
                            Fuv = self.action(compose_ops(u, v), alpha)
                            for o in self.values[alpha].objects:
                                if Fv.on_objects[Fu.on_objects[o]] != Fuv.on_objects[o]:
                                    out.append((u, v, alpha))
                                    break
                            else:
                                if any(Fv.on_arrows[Fu.on_arrows[a]] != Fuv.on_arrows[a]
                                       for a in self.values[alpha].arrows):
                                    out.append((u, v, alpha))
        return out

    def forgetful_failures(self) -> list:
        out = []
        for alpha in self.index.objects:
            Ea = self.values[alpha]
            fib = fiber_category(self.fibered, alpha[0][0])
            U = forgetful(Ea, fib)
            surj = set(U.on_objects.values()) == set(fib.objects)
            bij = all(
                sorted(U.on_arrows[a] for a in Ea.hom(o, o2)) == sorted(fib.hom(o[0][0], o2[0][0]))
                for o in Ea.objects for o2 in Ea.objects)
            if not (surj and bij):
                out.append(alpha)
        return out


def qf_from_fibered(p: FiberedCategory, n_cap: int) -> QuasifiberedDiagram:
    rep = is_fibered(p)
    if not rep.ok:
        raise ValueError("input is not fibered")
    cart = {f for f in p.total.arrows if is_cartesian(p, f)}
    index = simplex_category(p.base, n_cap)
    values = {alpha: LiftingCategory(p, alpha, cart) for alpha in index.objects}
    return QuasifiberedDiagram(p.base, n_cap, index, values, p)


# --------------------------------------------------------------------------
# limits


def lim_cartesian_sections(p: FiberedCategory) -> FiniteCategory:
    """Sections of ``p`` sending every arrow to a cartesian arrow, and vertical transformations."""
    E, B, P = p.total, p.base, p.projection
    cart = {f for f in E.arrows if is_cartesian(p, f)}
    nonid = [a for a in B.arrows if not B.is_identity(a)]
    sections = []
    for objs in itertools.product(*(p.over(b) for b in B.objects)):
        s_obj = dict(zip(B.objects, objs))
        choices = [[f for f in E.hom(s_obj[B.source(a)], s_obj[B.target(a)]) if P.on_arrows[f] == a and f in cart]
                   for a in nonid]
        for fs in itertools.product(*choices):
            s_arr = dict(zip(nonid, fs))
            for b in B.objects:
                s_arr[B.identities[b]] = E.identities[s_obj[b]]
            if all(E.compose(s_arr[g], s_arr[f]) == s_arr[h] for (g, f), h in B.compose_table.items()):
                sections.append((tuple(s_obj[b] for b in B.objects), tuple(s_arr[a] for a in nonid)))
    arrows, ids, comp = {}, {}, {}
    order = list(B.objects)
    for s in sections:
        for t in sections:
            comps = [p.vertical(s[0][k], t[0][k]) for k in range(len(order))]
            for eta in itertools.product(*comps):
                ok = all(
                    E.compose(t[1][n], eta[order.index(B.source(a))]) == E.compose(eta[order.index(B.target(a))], s[1][n])
                    for n, a in enumerate(nonid))
                if ok:
                    arrows[(s, t, eta)] = (s, t)
        ids[s] = (s, s, tuple(E.identities[x] for x in s[0]))
    for f, (s, t) in arrows.items():
        for g, (t2, u) in arrows.items():
            if t2 == t:
                comp[(g, f)] = (s, u, tuple(E.compose(b, a) for b, a in zip(g[2], f[2])))
    out = FiniteCategory(sections, arrows, ids, comp, name="LIM")
    out.nonidentity = nonid
    return out


def lim_diagram(Q: QuasifiberedDiagram) -> FiniteCategory:
    """Limit of the diagram over the truncated simplex category, by backtracking.

    Objects are compatible families ``alpha -> o_alpha`` (every restriction
    ``u`` carries ``o_alpha`` to ``o_beta``); arrows likewise.
    """
    if Q.n_cap < 2:
        raise ValueError("limits over the truncated index need n_cap >= 2")
    simplices = sorted(Q.index.objects, key=lambda a: len(a[0]))
    incoming: dict = {a: [] for a in simplices}
    rank = {a: n for n, a in enumerate(simplices)}
    for u, beta, alpha in Q.index.morphisms:
        later, earlier = (alpha, beta) if rank[alpha] > rank[beta] else (beta, alpha)
        incoming[later].append((u, beta, alpha))

    def families(kind: str, ends=None) -> list[dict]:
        out, chosen = [], {}

        def pool(alpha):
            V = Q.values[alpha]
            if kind == "obj":
                return V.objects
            s, t = ends
            return V.hom(s[alpha], t[alpha])

        def consistent(alpha):
            for u, beta, gamma in incoming[alpha]:
                if beta not in chosen or gamma not in chosen:
                    continue
                F = Q.action(u, gamma)
                image = F.on_objects[chosen[gamma]] if kind == "obj" else F.on_arrows[chosen[gamma]]
                if image != chosen[beta]:
                    return False
            return True

        def go(pos):
            if pos == len(simplices):
                out.append(dict(chosen))
                return
            alpha = simplices[pos]
            for cand in pool(alpha):
                chosen[alpha] = cand
                if consistent(alpha):
                    go(pos + 1)
            chosen.pop(alpha, None)

        go(0)
        return out

    objs = families("obj")
    keyed = [tuple(o[a] for a in simplices) for o in objs]
    arrows, ids, comp = {}, {}, {}
    for s, ks in zip(objs, keyed):
        for t, kt in zip(objs, keyed):
            for h in families("arr", (s, t)):
                arrows[(ks, kt, tuple(h[a] for a in simplices))] = (ks, kt)
        ids[ks] = (ks, ks, tuple(Q.values[a].identities[s[a]] for a in simplices))
    for f, (s, t) in arrows.items():
        for g, (t2, u) in arrows.items():
            if t2 == t:
                comp[(g, f)] = (s, u, tuple(Q.values[a].compose(y, x) for a, y, x in zip(simplices, g[2], f[2])))
    out = FiniteCategory(keyed, arrows, ids, comp, name="lim E")
    out.index_order = simplices
    return out


@dataclass
class LimComparison:
    ok: bool
    objects: int
    arrows: int
    functor: FiniteFunctor | None = None
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def compare_lim(p: FiberedCategory, n_cap: int = 2) -> LimComparison:
    """The canonical functor ``LIM(p) -> lim E`` and a check that it is an isomorphism."""
    Q = qf_from_fibered(p, n_cap)
    L = lim_cartesian_sections(p)
    M = lim_diagram(Q)
    B, E = p.base, p.total
    order = list(B.objects)
    nonid = L.nonidentity
    simplices = M.index_order

    def section_arrow(s, a):
        if B.is_identity(a):
            return E.identities[s[0][order.index(B.source(a))]]
        return s[1][nonid.index(a)]

    def family(s):
        out = []
        for objs, arrows in simplices:
            xs = tuple(s[0][order.index(b)] for b in objs)
            es = tuple(section_arrow(s, a) for a in arrows)
            out.append((xs, es))
        return tuple(out)

    on_objects = {s: family(s) for s in L.objects}
    failures = []
    on_arrows = {}
    for a, (s, t) in L.arrows.items():
        hs = tuple((fs, ft, tuple(a[2][order.index(b)] for b in alpha[0]))
                   for alpha, fs, ft in zip(simplices, on_objects[s], on_objects[t]))
        img = (on_objects[s], on_objects[t], hs)
        if img not in M.arrows:
            failures.append(("arrow not in limit", a))
        on_arrows[a] = img
    limit_objects = set(M.objects)
    failures.extend(("object not in limit", s) for s, img in on_objects.items() if img not in limit_objects)
    F = FiniteFunctor(L, M, on_objects, on_arrows)
    if not failures:
        failures.extend(F.check())
    iso = not failures and F.is_isomorphism()
    if not iso and not failures:
        failures.append(("not bijective", len(L.objects), len(M.objects), len(L.arrows), len(M.arrows)))
    return LimComparison(iso, len(L.objects), len(L.arrows), F, failures)


# --------------------------------------------------------------------------
# simplicial-set valued diagrams


@dataclass
class SDiagram:
    """A strict functor ``B^op -> sSet``: ``maps[phi]`` goes ``values[c] -> values[b]`` for ``phi: b -> c``."""

    base: FiniteCategory
    values: dict
    maps: dict

    def check(self) -> list[str]:
        out = []
        B = self.base
        for phi, m in self.maps.items():
            b, c = B.arrows[phi]
            if m.source is not self.values[c] or m.target is not self.values[b]:
                out.append(f"map for {phi!r} has wrong ends")
            out.extend(m.check())
        for (psi, phi), chi in B.compose_table.items():
            lhs = self.maps[phi].compose(self.maps[psi])
            if lhs.assignment != self.maps[chi].assignment:
                out.append(f"composite {psi!r} o {phi!r} not preserved")
        return out


def string_key(s: tuple) -> tuple:
    return s


def nondegenerate_strings(B: FiniteCategory, q: int) -> list[tuple]:
    """Strings ``x_0 -> ... -> x_q`` of non-identity arrows, as ``(objects, arrows)``."""
    out = []
    for c0, fs in B.strings(q):
        if any(B.is_identity(f) for f in fs):
            continue
        objs = (c0,) + tuple(B.target(f) for f in fs)
        out.append((objs, fs))
    return out


def string_face(B: FiniteCategory, s: tuple, i: int) -> tuple:
    objs, fs = s
    q = len(fs)
    if i == 0:
        return objs[1:], fs[1:]
    if i == q:
        return objs[:-1], fs[:-1]
    return objs[:i] + objs[i + 1:], fs[:i - 1] + (B.compose(fs[i], fs[i - 1]),) + fs[i + 1:]


def string_degeneracy(B: FiniteCategory, s: tuple, j: int) -> tuple:
    objs, fs = s
    return objs[:j + 1] + objs[j:], fs[:j] + (B.identities[objs[j]],) + fs[j:]


@dataclass
class CosimplicialReplacement:
    """``F~^q`` in simplicial degree ``m``: tuples indexed by all ``q``-strings of ``F(x_0)`` simplices."""

    diagram: SDiagram
    n_cap: int
    strings: list  # per q, all strings (identities allowed)

    def values(self, q: int, m: int) -> list[tuple]:
        D = self.diagram
        pools = [D.values[s[0][0]].simplices(m) for s in self.strings[q]]
        return list(itertools.product(*pools))

    def coface(self, q: int, i: int, element: tuple) -> tuple:
        """``d^i: F~^{q-1} -> F~^q``."""
        D, B = self.diagram, self.diagram.base
        lower = {s: x for s, x in zip(self.strings[q - 1], element)}
        out = []
        for s in self.strings[q]:
            t = string_face(B, s, i)
            x = lower[t]
            if i == 0:
                x = D.maps[s[1][0]](x)
            out.append(x)
        return tuple(out)

    def codegeneracy(self, q: int, j: int, element: tuple) -> tuple:
        """``s^j: F~^{q+1} -> F~^q``."""
        B = self.diagram.base
        upper = {s: x for s, x in zip(self.strings[q + 1], element)}
        return tuple(upper[string_degeneracy(B, s, j)] for s in self.strings[q])

    def identity_failures(self, m: int = 0) -> list:
        """Cosimplicial identities on all elements in simplicial degree ``m``."""
        out = []
        for q in range(1, self.n_cap):
            for e in self.values(q - 1, m):
                for i in range(q + 1):
                    for j in range(i + 1, q + 2):
                        a = self.coface(q + 1, j, self.coface(q, i, e))
                        b = self.coface(q + 1, i, self.coface(q, j - 1, e))
                        if a != b:
                            out.append(("dd", q, i, j))
        for q in range(self.n_cap):
            for e in self.values(q, m):
                for j in range(q + 1):
                    for i in (j, j + 1):
                        if self.codegeneracy(q, j, self.coface(q + 1, i, e)) != e:
                            out.append(("sd", q, i, j))
        return out


def cosimplicial_replacement(F: SDiagram, n_cap: int) -> CosimplicialReplacement:
    B = F.base
    strings = []
    for q in range(n_cap + 1):
        strings.append([((c0,) + tuple(B.target(f) for f in fs), fs) for c0, fs in B.strings(q)])
    return CosimplicialReplacement(F, n_cap, strings)


def _resource_guard(count: int, limit: int) -> None:
    if count > limit:
        raise MemoryError(f"function complex too large ({count} > {limit})")


@dataclass
class HolimResult:
    value: SimplicialSet
    families: dict  # cell id -> {string: SimplicialMap}
    label: str = "n_cap-truncated approximation"


def _effective_string(B: FiniteCategory, t: tuple) -> tuple:
    """Drop identity arrows; returns the remaining string and the collapsing operator."""
    objs, fs = t
    keep_objs, keep_fs, op = [objs[0]], [], [0]
    for k, f in enumerate(fs):
        if B.is_identity(f):
            op.append(op[-1])
        else:
            keep_fs.append(f)
            keep_objs.append(objs[k + 1])
            op.append(op[-1] + 1)
    return (tuple(keep_objs), tuple(keep_fs)), tuple(op)


class _Products:
    """Cached ``Delta^q x Delta^m``."""

    def __init__(self):
        self._cache: dict = {}

    def __call__(self, q: int, m: int) -> SimplicialSet:
        if (q, m) not in self._cache:
            self._cache[(q, m)] = product(standard_simplex(q), standard_simplex(m))
        return self._cache[(q, m)]


def _at(g: SimplicialMap, xs: Sequence, ys: Sequence) -> Simplex:
    """Value of ``g`` on the product simplex with vertex sequences ``xs`` and ``ys``."""
    return g(pair_simplex(chain_to_simplex(xs), chain_to_simplex(ys)))


def _face_constraints(F: SDiagram, s: tuple, P: SimplicialSet, chosen: dict) -> dict:
    B = F.base
    objs, fs = s
    q = len(fs)
    fixed: dict = {}
    if q == 0:
        return fixed
    for i in range(q + 1):
        t_eff, op = _effective_string(B, string_face(B, s, i))
        g = chosen[t_eff]
        for c in P.all_cells():
            x, y = c
            xs = simplex_to_chain(x)
            if i in xs:
                continue
            img = _at(g, [op[v - (v > i)] for v in xs], simplex_to_chain(y))
            if i == 0:
                img = F.maps[fs[0]](img)
            fixed[c] = img
    return fixed


def _families(F: SDiagram, strings: list, prods: _Products, m: int, guard: int) -> list[dict]:
    out: list[dict] = []
    chosen: dict = {}

    def go(pos: int) -> None:
        if pos == len(strings):
            out.append(dict(chosen))
            _resource_guard(len(out), guard)
            return
        s = strings[pos]
        P = prods(len(s[1]), m)
        for g in enumerate_maps(P, F.values[s[0][0]], fixed=_face_constraints(F, s, P, chosen)):
            chosen[s] = g
            go(pos + 1)
        chosen.pop(s, None)

    go(0)
    return out


def _restrict(fam: dict, strings: list, prods: _Products, theta: Sequence[int]) -> dict:
    """Precompose every ``g_s`` with ``id x theta``."""
    k = len(theta) - 1
    out = {}
    for s in strings:
        P = prods(len(s[1]), k)
        g = fam[s]
        out[s] = SimplicialMap(P, g.target, {
            (x, y): _at(g, simplex_to_chain(x), [theta[v] for v in simplex_to_chain(y)])
            for x, y in P.all_cells()})
    return out


def _family_key(fam: dict, strings: list) -> tuple:
    return tuple(fam[s].key() for s in strings)


def holim_sset(F: SDiagram, n_cap: int, dim_cap: int, guard: int = 200000) -> HolimResult:
    """Truncated homotopy limit: compatible families ``g_s: Delta^q x Delta^m -> F(x_0)``.

    One map per string ``s`` of non-identity arrows of length ``q <= n_cap``.
    On the face ``i > 0`` of ``Delta^q`` the map agrees with ``g_{d_i s}``, on
    the face ``0`` with ``F(x_0 -> x_1) o g_{d_0 s}``.  A face string
    containing an identity is read through the matching degeneracy.
    """
    B = F.base
    strings = [s for q in range(n_cap + 1) for s in nondegenerate_strings(B, q)]
    prods = _Products()
    cells: list[list] = []
    faces: dict = {}
    families: dict = {}
    normal: list[dict] = []
    for m in range(dim_cap + 1):
        level, norm = [], {}
        for fam in _families(F, strings, prods, m, guard):
            key = _family_key(fam, strings)
            fs: tuple = ()
            if m:
                face_fams = [_restrict(fam, strings, prods, coface_op(m, i)) for i in range(m + 1)]
                fs = tuple(normal[m - 1][_family_key(f, strings)] for f in face_fams)
                j = next((j for j in range(m)
                          if _family_key(_restrict(face_fams[j], strings, prods, codegeneracy_op(m - 1, j)),
                                         strings) == key), None)
                if j is not None:
                    base = fs[j]
                    norm[key] = Simplex(base.nd, compose_ops(base.surj, codegeneracy_op(m - 1, j)))
                    continue
            cid = f"{m}.{len(level)}"
            if m:
                faces[cid] = fs
            level.append(cid)
            norm[key] = nd_simplex(cid, m)
            families[cid] = fam
        cells.append(level)
        normal.append(norm)
    X = SimplicialSet(dim_cap, cells, faces, finite=False, name="holim")
    return HolimResult(X, families)


def lim_sset(F: SDiagram, dim_cap: int) -> SimplicialSet:
    """The ordinary limit, degreewise: compatible tuples ``(a_b)`` with ``F(phi) a_c = a_b``."""
    B = F.base
    cells, faces, norm = [], {}, []
    for m in range(dim_cap + 1):
        level, nf = [], {}
        pools = [F.values[b].simplices(m) for b in B.objects]
        for tup in itertools.product(*pools):
            a = dict(zip(B.objects, tup))
            if not all(F.maps[phi](a[c]) == a[b] for phi, (b, c) in B.arrows.items()):
                continue
            if m:
                fs = tuple(norm[m - 1][tuple(F.values[b].face(a[b], i) for b in B.objects)] for i in range(m + 1))
                deg = next((j for j in range(m)
                            if tuple(F.values[b].degeneracy(F.values[b].face(a[b], j), j) for b in B.objects) == tup),
                           None)
                if deg is not None:
                    base = fs[deg]
                    nf[tup] = Simplex(base.nd, compose_ops(base.surj, codegeneracy_op(m - 1, deg)))
                    continue
                cid = ("lim", m, len(level))
                faces[cid] = fs
            else:
                cid = ("lim", 0, len(level))
            level.append(cid)
            nf[tup] = nd_simplex(cid, m)
        cells.append(level)
        norm.append(nf)
    return SimplicialSet(dim_cap, cells, faces, finite=False, name="lim")


def pi0_count(X: SimplicialSet) -> int:
    return len(pi0(X))
