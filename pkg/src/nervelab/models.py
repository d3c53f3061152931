"""Cosimplicial families of simplicial categories and their comparison maps.

Three families are modelled, each indexed by ``n``:

* ``delta_n(n)``: objects ``0..n``, ``Hom(a, b)`` the cube on the open
  interval ``(a, b)``; composition puts a 0 at the junction coordinate.
* ``sc(n)``: free on ``f_i: i-1 -> i`` of degree ``n``.
* ``wbar(n)``: free on ``g_i: i-1 -> i`` of degree ``n - i``.

Hom vertices of ``delta_n`` are bit tuples indexed by ``a+1, ..., b-1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Sequence

from .scat import Generator, PosetCategory, SimplicialCategory, SimplicialFunctor, free_scat, free_word
from .sset import (
    Cube,
    Poset,
    Simplex,
    SimplicialSet,
    chain_to_simplex,
    codegeneracy_op,
    coface_op,
    compose_ops,
    cube,
    cube_boundary,
    cube_horn,
    epi_mono,
    identity_op,
    is_monotone,
    monotone_maps,
    nd_simplex,
    nerve_of_poset,
    normalize_tuple,
    quotient_collapse,
    simplex_to_chain,
    smash,
    standard_simplex,
)


# --------------------------------------------------------------------------
# the cube family


def _bits_leq(u: tuple, v: tuple) -> bool:
    return all(s <= t for s, t in zip(u, v))


def _dn_vcomp(a, b, c, g: tuple, f: tuple) -> tuple:
    if a == b:
        return g
    if b == c:
        return f
    return f + (0,) + g


def split_points(a: int, b: int, chain: Sequence[tuple]) -> list[int]:
    """Interior coordinates that are 0 along the whole chain (plus the ends)."""
    last = chain[-1]
    return [a] + [a + 1 + t for t, bit in enumerate(last) if bit == 0] + [b]


def _dn_pieces(a: int, b: int, chain: Sequence[tuple]) -> list[tuple[int, int, tuple]]:
    pts = split_points(a, b, chain)
    return [(p, q, tuple(v[p - a: q - a - 1] for v in chain)) for p, q in zip(pts, pts[1:])]


@lru_cache(maxsize=None)
def delta_n(n: int) -> PosetCategory:
    """The cube category on ``[n]``, presented by its indecomposable cells."""
    homs, ids = {}, {}
    for a in range(n + 1):
        ids[a] = ()
        for b in range(a, n + 1):
            d = max(b - a - 1, 0)
            P = Poset(list(itertools.product((0, 1), repeat=d)), _bits_leq)
            homs[(a, b)] = nerve_of_poset(P, name=f"Hom({a},{b})")
    cap = max(n - 1, 0)
    C = PosetCategory(range(n + 1), homs, ids, _dn_vcomp, name=f"Delta_N^{n}", cap=cap)
    gens = []
    for a in range(n + 1):
        for b in range(a + 1, n + 1):
            H = homs[(a, b)]
            for cell in H.all_cells():
                if all(cell[-1]):
                    gens.append(Generator(a, b, H.dim_of[cell], cell))
    gens.sort(key=lambda g: (g.dim, g.source, g.target, g.cell))
    C.generators = gens
    index = {(g.source, g.target, g.cell): k for k, g in enumerate(gens)}

    def factor(x, y, s):
        out = []
        for p, q, sub in _dn_pieces(x, y, simplex_to_chain(s)):
            piece = chain_to_simplex(sub)
            out.append((index[(p, q, piece.nd)], piece.surj))
        return out

    C.factor = factor
    C.generator_index = index
    return C


def phi(a: int, b: int) -> Simplex:
    """The indecomposable vertex of ``Hom(a, b)``; the identity when ``a == b``."""
    return nd_simplex(((1,) * max(b - a - 1, 0),), 0)


def delta_n_vertex_image(theta: Sequence[int], a: int, b: int, v: tuple) -> tuple:
    zeros = {theta[a + 1 + t] for t, bit in enumerate(v) if bit == 0}
    ta, tb = theta[a], theta[b]
    return tuple(0 if y in zeros else 1 for y in range(ta + 1, tb))


def _check_op(theta: Sequence[int], m: int, n: int) -> tuple:
    theta = tuple(theta)
    if len(theta) != m + 1 or not is_monotone(theta) or (theta and (theta[0] < 0 or theta[-1] > n)):
        raise ValueError(f"{theta!r} is not a monotone map [{m}] -> [{n}]")
    return theta


def delta_n_action(theta: Sequence[int], n: int) -> SimplicialFunctor:
    """``theta_*: delta_n(m) -> delta_n(n)`` for monotone ``theta: [m] -> [n]``."""
    m = len(theta) - 1
    theta = _check_op(theta, m, n)
    return SimplicialFunctor.from_vertex_map(
        delta_n(m), delta_n(n), {a: theta[a] for a in range(m + 1)},
        lambda a, b, v: delta_n_vertex_image(theta, a, b, v),
    )


# --------------------------------------------------------------------------
# free families


@lru_cache(maxsize=None)
def sc(n: int) -> PosetCategory:
    return free_scat(range(n + 1), [(f"f{i}", i - 1, i, n) for i in range(1, n + 1)], cap=n,
                     name=f"SC^{n}")


@lru_cache(maxsize=None)
def wbar(n: int) -> PosetCategory:
    return free_scat(range(n + 1), [(f"g{i}", i - 1, i, n - i) for i in range(1, n + 1)],
                     cap=max(n - 1, 0), name=f"Delta_Wbar^{n}")


def sc_action(theta: Sequence[int], n: int) -> SimplicialFunctor:
    """``f_i`` goes to the composite of ``theta^* f_k`` for ``theta(i-1) < k <= theta(i)``."""
    m = len(theta) - 1
    theta = _check_op(theta, m, n)
    S, T = sc(m), sc(n)
    images = []
    for i in range(1, m + 1):
        word = [(f"f{k}", theta) for k in range(theta[i - 1] + 1, theta[i] + 1)]
        images.append(free_word(T, theta[i - 1], word) if word else T.identity(theta[i - 1], m))
    return SimplicialFunctor.from_generators(S, T, {a: theta[a] for a in range(m + 1)}, images)


def wbar_coface(n: int, i: int) -> SimplicialFunctor:
    """``partial^i: wbar(n-1) -> wbar(n)``."""
    S, T = wbar(n - 1), wbar(n)
    images = []
    for j in range(1, n):
        if j < i:
            word = [(f"g{j}", coface_op(n - j, i - j))]
        elif j == i:
            word = [(f"g{i}", coface_op(n - i, 0)), (f"g{i + 1}", identity_op(n - i - 1))]
        else:
            word = [(f"g{j + 1}", identity_op(n - j - 1))]
        src = j - 1 if j - 1 < i else j
        images.append(free_word(T, src, word))
    theta = coface_op(n, i)
    return SimplicialFunctor.from_generators(S, T, {a: theta[a] for a in range(n)}, images)


def wbar_codegeneracy(n: int, i: int) -> SimplicialFunctor:
    """``sigma^i: wbar(n+1) -> wbar(n)``."""
    S, T = wbar(n + 1), wbar(n)
    theta = codegeneracy_op(n, i)
    images = []
    for j in range(1, n + 2):
        if j <= i:
            images.append(free_word(T, j - 1, [(f"g{j}", codegeneracy_op(n - j, i - j))]))
        elif j == i + 1:
            images.append(T.identity(i, n - i))
        else:
            images.append(free_word(T, j - 2, [(f"g{j - 1}", identity_op(n + 1 - j))]))
    return SimplicialFunctor.from_generators(S, T, {a: theta[a] for a in range(n + 2)}, images)


def elementary_factorization(theta: Sequence[int], n: int) -> list[tuple[str, int, int]]:
    """Write ``theta`` as codegeneracies followed by cofaces.

    Returns steps ``(kind, target_dim, index)`` in application order.
    """
    theta = tuple(theta)
    m = len(theta) - 1
    mono, epi = epi_mono(theta)
    k = len(mono) - 1
    steps = []
    word = [j for j in range(m) if epi[j] == epi[j + 1]]
    dim = m
    for j in reversed(word):
        dim -= 1
        steps.append(("s", dim, j))
    missing = [j for j in range(n + 1) if j not in mono]
    for j in missing:
        k += 1
        steps.append(("d", k, j))
    op = identity_op(m)
    for kind, tdim, j in steps:
        e = codegeneracy_op(tdim, j) if kind == "s" else coface_op(tdim, j)
        op = compose_ops(e, op)
    assert op == theta, (theta, steps)
    return steps


def wbar_action(theta: Sequence[int], n: int) -> SimplicialFunctor:
    """General ``theta_*`` on the free family via the elementary factorization."""
    m = len(theta) - 1
    theta = _check_op(theta, m, n)
    steps = elementary_factorization(theta, n)
    F = None
    for kind, tdim, j in steps:
        E = wbar_codegeneracy(tdim, j) if kind == "s" else wbar_coface(tdim, j)
        F = E if F is None else F.then(E)
    if F is None:
        S = wbar(m)
        return SimplicialFunctor.from_generators(
            S, S, {a: a for a in S.objects},
            [nd_simplex(g.cell, g.dim) for g in S.generators])
    return SimplicialFunctor.from_generators(wbar(m), wbar(n), F.on_objects, F.images())


ACTIONS = {"delta_n": delta_n_action, "sc": sc_action, "wbar": wbar_action}
FAMILIES = {"delta_n": delta_n, "sc": sc, "wbar": wbar}


def cosimplicial_action(family: str, theta: Sequence[int], n: int) -> SimplicialFunctor:
    return ACTIONS[family](theta, n)


# --------------------------------------------------------------------------
# comparison maps


def tau_vertex(n: int, a: int, b: int, v: tuple) -> tuple:
    """Image of a cube vertex in ``wbar(n)``: path ``g_{a+1}..g_b`` with coordinates ``e(j) - j``."""
    if a == b:
        return ((), ())
    zeros = [a + 1 + t for t, bit in enumerate(v) if bit == 0] + [b]
    path = tuple(f"g{j}" for j in range(a + 1, b + 1))
    coords = tuple(min(z for z in zeros if z >= j) - j for j in range(a + 1, b + 1))
    return (path, coords)


def psi(n: int, a: int, b: int) -> tuple:
    return tau_vertex(n, a, b, (1,) * max(b - a - 1, 0))


def _wbar_leq(u: tuple, v: tuple) -> bool:
    return u[0] == v[0] and all(s <= t for s, t in zip(u[1], v[1]))


def tau(n: int) -> SimplicialFunctor:
    """``delta_n(n) -> wbar(n)`` on vertices, verified monotone on every hom."""
    S, T = delta_n(n), wbar(n)
    for a in range(n + 1):
        for b in range(a, n + 1):
            H = S.hom(a, b)
            for c in H.nd_cells(1):
                u, w = (tau_vertex(n, a, b, x) for x in c)
                if not _wbar_leq(u, w):
                    raise AssertionError(f"tau is not monotone on Hom({a},{b})")
    return SimplicialFunctor.from_vertex_map(S, T, {a: a for a in range(n + 1)},
                                             lambda a, b, v: tau_vertex(n, a, b, v))


def psi_strict_monotone(n: int) -> list[tuple[int, int, int]]:
    """Triples ``a < b < c`` where ``psi(b,c) psi(a,b) < psi(a,c)`` fails."""
    T = wbar(n)
    bad = []
    for a, b, c in itertools.combinations(range(n + 1), 3):
        comp = T.vcomp(a, b, c, psi(n, b, c), psi(n, a, b))
        whole = psi(n, a, c)
        if not (_wbar_leq(comp, whole) and comp != whole):
            bad.append((a, b, c))
    return bad


def pi_map(n: int) -> SimplicialFunctor:
    """``wbar(n) -> sc(n)`` sending ``g_i`` to ``d_0^i f_i``."""
    S, T = wbar(n), sc(n)
    images = [free_word(T, i - 1, [(f"f{i}", tuple(range(i, n + 1)))]) for i in range(1, n + 1)]
    return SimplicialFunctor.from_generators(S, T, {a: a for a in range(n + 1)}, images)


def functors_equal(F: SimplicialFunctor, G: SimplicialFunctor) -> bool:
    return F.key() == G.key()


@dataclass
class CoherenceReport:
    ok: bool
    checked: int
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_cosimplicial(family: str, max_n: int) -> CoherenceReport:
    """``action(f o g) == action(f) o action(g)`` for all monotone maps with dims ``<= max_n``,
    plus identities going to identities."""
    act = ACTIONS[family]
    fails, checked = [], 0
    for m in range(max_n + 1):
        ident = act(identity_op(m), m)
        C = FAMILIES[family](m)
        if C.generators and ident.images() != tuple(nd_simplex(g.cell, g.dim) for g in C.generators):
            fails.append(("identity", m))
    for p, m, n in itertools.product(range(max_n + 1), repeat=3):
        for g in monotone_maps(p, m):
            Ag = act(g, m)
            for f in monotone_maps(m, n):
                checked += 1
                lhs = act(compose_ops(f, g), n)
                rhs = Ag.then(act(f, n))
                if not functors_equal(lhs, rhs):
                    fails.append((f, g))
    return CoherenceReport(not fails, checked, fails)


def check_naturality(max_n: int) -> CoherenceReport:
    """Squares ``tau o theta_* = theta_* o tau`` and the same for ``pi``."""
    fails, checked = [], 0
    for m, n in itertools.product(range(max_n + 1), repeat=2):
        for theta in monotone_maps(m, n):
            checked += 2
            lhs = delta_n_action(theta, n).then(tau(n))
            rhs = tau(m).then(wbar_action(theta, n))
            if not functors_equal(lhs, rhs):
                fails.append(("tau", theta))
            lhs = wbar_action(theta, n).then(pi_map(n))
            rhs = pi_map(m).then(sc_action(theta, n))
            if not functors_equal(lhs, rhs):
                fails.append(("pi", theta))
    return CoherenceReport(not fails, checked, fails)


# --------------------------------------------------------------------------
# generators and images of subcomplexes


@dataclass
class IndSet:
    n: int
    generators: list[tuple[int, int, int, Hashable]]

    def __len__(self) -> int:
        return len(self.generators)


def ind_generators(n: int) -> IndSet:
    """Nondegenerate hom cells with no coordinate constantly 0."""
    C = delta_n(n)
    return IndSet(n, [(g.source, g.target, g.dim, g.cell) for g in C.generators])


def _piece_support(p: int, q: int, sub: Sequence[tuple]) -> tuple:
    """Smallest face of the simplex whose image contains an indecomposable piece."""
    first = sub[0]
    return tuple(sorted({p, q} | {p + 1 + t for t, bit in enumerate(first) if bit == 0}))


def in_delta_n_of(S: SimplicialSet, a: int, b: int, chain: Sequence[tuple]) -> bool:
    if a == b:
        return (a,) in S
    return all(_piece_support(p, q, sub) in S for p, q, sub in _dn_pieces(a, b, chain))


def delta_n_of_subcomplex(S: SimplicialSet, n: int) -> PosetCategory:
    """The sub-category of ``delta_n(n)`` generated by the images of the cells of ``S``.

    ``S`` must be a subcomplex of the standard ``n``-simplex (cells are vertex tuples).
    """
    top = standard_simplex(n)
    for c in S.all_cells():
        if c not in top:
            raise ValueError(f"{c!r} is not a cell of the standard {n}-simplex")
    objects = [v[0] for v in S.nd_cells(0)]
    sub = delta_n(n).restrict(lambda a, b, c: in_delta_n_of(S, a, b, c), objects=objects,
                              name=f"Delta_N({S.name})")
    sub.shape = S
    return sub


@dataclass
class HornImage:
    n: int
    i: int
    a: int
    b: int
    kind: str  # "full", "boundary", "horn", "other"
    cells: set
    coordinate: int | None = None
    eps: int | None = None
    faces: int | None = None

    def label(self) -> str:
        if self.kind == "horn":
            return f"cubic horn Π_{{{self.coordinate},{self.eps}}}, {self.faces} faces"
        if self.kind == "boundary":
            return f"cube boundary ∂I, {self.faces} faces"
        return self.kind


def classify_cube_subcomplex(cells: set, a: int, b: int) -> tuple:
    coords = list(range(a + 1, b))
    c: Cube = cube(coords)
    full = set(c.underlying.all_cells())
    if cells == full:
        return "full", None, None, None
    if not coords and not cells:
        return "boundary", None, None, 0
    if coords:
        if cells == set(cube_boundary(c).all_cells()):
            return "boundary", None, None, 2 * len(coords)
        for x in coords:
            for eps in (0, 1):
                if cells == set(cube_horn(c, x, eps).all_cells()):
                    return "horn", x, eps, 2 * len(coords) - 1
    return "other", None, None, None


def horn_image(n: int, i: int, a: int, b: int) -> HornImage:
    if not (0 <= a <= b <= n and 0 <= i <= n):
        raise ValueError("need 0 <= a <= b <= n and 0 <= i <= n")
    from .sset import horn

    S = horn(n, i)
    H = delta_n(n).hom(a, b)
    cells = {c for c in H.all_cells() if in_delta_n_of(S, a, b, c)}
    kind, x, eps, faces = classify_cube_subcomplex(cells, a, b)
    return HornImage(n, i, a, b, kind, cells, x, eps, faces)


# --------------------------------------------------------------------------
# free simplicial monoids on pointed simplicial sets


class FreeMonoidCategory(SimplicialCategory):
    """One object whose endomorphisms form the free simplicial monoid on ``(K, *)``.

    A ``k``-simplex is a word of non-basepoint ``k``-simplices of ``K``; faces
    act letterwise and drop letters that land on the basepoint.  Words longer
    than ``max_length`` are not materialized and composing into them raises.
    """

    def __init__(self, K: SimplicialSet, basepoint: Hashable, cap: int, max_length: int,
                 name: str | None = None):
        self.K, self.basepoint, self.max_length = K, basepoint, max_length
        letters = [[s for s in K.simplices(k) if s.nd != basepoint] for k in range(cap + 1)]
        cells: list[list] = []
        faces = {}
        for k in range(cap + 1):
            level = []
            for length in range(max_length + 1):
                if k == 0 and length == 0:
                    level.append(())
                    continue
                if length == 0:
                    continue
                for word in itertools.product(letters[k], repeat=length):
                    _, sigma = normalize_tuple(word)
                    if sigma == identity_op(k):
                        level.append(tuple(word))
            cells.append(level)
            if k:
                for w in level:
                    faces[w] = tuple(self._word_simplex([K.face(s, i) for s in w], k - 1) for i in range(k + 1))
        E = SimplicialSet(cap, cells, faces, name=f"F({K.name})")
        super().__init__(["*"], {("*", "*"): E}, {"*": ()}, self._concat, name=name, cap=cap)

    def _word_simplex(self, letters: Sequence[Simplex], k: int) -> Simplex:
        kept = [s for s in letters if s.nd != self.basepoint]
        if not kept:
            return Simplex((), (0,) * (k + 1))
        if len(kept) > self.max_length:
            raise OverflowError("word exceeds the length bound")
        parts, sigma = normalize_tuple(kept)
        return Simplex(tuple(parts), sigma)

    def letters(self, s: Simplex) -> list[Simplex]:
        if s.nd == ():
            return []
        return [Simplex(p.nd, compose_ops(p.surj, s.surj)) for p in s.nd]

    def _concat(self, x, y, z, g: Simplex, f: Simplex) -> Simplex:
        return self._word_simplex(self.letters(f) + self.letters(g), g.dim)

    def word_counts(self, k: int) -> int:
        return len(self.hom("*", "*").simplices(k))


def smash_of_circles(count: int, cap: int, with_interval: bool = False) -> tuple[SimplicialSet, Hashable]:
    """``I ^ S^1 ^ ... ^ S^1`` (or without ``I``), pointed; ``I`` is pointed at its vertex 1."""
    from .sset import boundary_subcomplex

    circle = quotient_collapse(standard_simplex(1), boundary_subcomplex(1), name="S^1")
    if with_interval:
        X, x0 = standard_simplex(1, cap), (1,)
    elif count == 0:
        from .sset import discrete

        return discrete(["*", "x"], name="S^0"), "*"
    else:
        X, x0 = circle, circle.basepoint
        count -= 1
    for _ in range(count):
        X = smash(X, circle, x0, circle.basepoint, cap)
        x0 = X.basepoint
    return X, x0


def sphere_model(n: int, cap: int, max_length: int = 3) -> FreeMonoidCategory:
    """Free simplicial monoid on the smash of ``n - 1`` circles."""
    K, base = smash_of_circles(n - 1, cap)
    return FreeMonoidCategory(K, base, cap, max_length, name=f"S({n})")


def disc_model(n: int, cap: int, max_length: int = 3) -> FreeMonoidCategory:
    """Free simplicial monoid on ``I`` smashed with ``n - 2`` circles."""
    K, base = smash_of_circles(n - 2, cap, with_interval=True)
    return FreeMonoidCategory(K, base, cap, max_length, name=f"D({n})")


def free_monoid_word_count(K: SimplicialSet, basepoint: Hashable, k: int, max_length: int) -> int:
    """Oracle: words of length ``<= max_length`` in non-basepoint ``k``-simplices."""
    m = sum(1 for s in K.simplices(k) if s.nd != basepoint)
    return sum(m ** length for length in range(max_length + 1))
