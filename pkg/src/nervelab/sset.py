"""Truncated simplicial sets stored in Eilenberg-Zilber normal form.

A simplicial set keeps only its nondegenerate cells.  Every simplex is a
pair ``(nd, surj)`` where ``nd`` names a nondegenerate cell of dimension
``m`` and ``surj`` is a monotone surjection ``[k] -> [m]`` written as the
tuple of its values.  The degeneracy word of the simplex is read off the
surjection (the positions where it repeats a value).
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, NamedTuple, Sequence


class CapError(ValueError):
    """Raised when an operation needs simplices above the truncation cap."""


class NotKanError(ValueError):
    pass


# --------------------------------------------------------------------------
# simplicial operators: monotone maps [p] -> [q] as tuples of values


def identity_op(k: int) -> tuple[int, ...]:
    return tuple(range(k + 1))


def coface_op(n: int, i: int) -> tuple[int, ...]:
    """The coface map [n-1] -> [n] missing ``i``."""
    return tuple(t if t < i else t + 1 for t in range(n))


def codegeneracy_op(n: int, j: int) -> tuple[int, ...]:
    """The codegeneracy [n+1] -> [n] hitting ``j`` twice."""
    return tuple(t if t <= j else t - 1 for t in range(n + 2))


def compose_ops(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """``a o b`` (apply ``b`` first)."""
    return tuple(a[t] for t in b)


def is_monotone(op: Sequence[int]) -> bool:
    return all(op[t] <= op[t + 1] for t in range(len(op) - 1))


def monotone_maps(p: int, q: int) -> Iterator[tuple[int, ...]]:
    """All monotone maps [p] -> [q] in lexicographic order."""
    return itertools.combinations_with_replacement(range(q + 1), p + 1)


def surjections(k: int, m: int) -> Iterator[tuple[int, ...]]:
    """Monotone surjections [k] -> [m], lexicographic by degeneracy word."""
    for word in itertools.combinations(range(k), k - m):
        yield surj_from_word(word, k)


def degeneracy_word(surj: Sequence[int]) -> tuple[int, ...]:
    """Strictly increasing indices ``i`` with ``surj(i) == surj(i+1)``.

    The word ``(i_1 < ... < i_r)`` stands for ``s_{i_r} ... s_{i_1}``.
    """
    return tuple(j for j in range(len(surj) - 1) if surj[j] == surj[j + 1])


def surj_from_word(word: Iterable[int], k: int) -> tuple[int, ...]:
    word = set(word)
    out, v = [], 0
    for t in range(k + 1):
        if t > 0 and (t - 1) not in word:
            v += 1
        out.append(v)
    return tuple(out)


def epi_mono(op: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Factor a monotone map as ``mono o epi``; returns ``(mono, epi)``."""
    image = sorted(set(op))
    pos = {v: n for n, v in enumerate(image)}
    return tuple(image), tuple(pos[v] for v in op)


class Simplex(NamedTuple):
    """A simplex ``nd . surj`` in normal form."""

    nd: Hashable
    surj: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.surj) - 1

    @property
    def word(self) -> tuple[int, ...]:
        return degeneracy_word(self.surj)

    @property
    def is_degenerate(self) -> bool:
        return len(self.surj) > 0 and self.surj[-1] != len(self.surj) - 1

    @classmethod
    def from_word(cls, nd: Hashable, word: Sequence[int], dim: int) -> "Simplex":
        return cls(nd, surj_from_word(word, dim))


def nd_simplex(nd: Hashable, m: int) -> Simplex:
    return Simplex(nd, identity_op(m))


def chain_to_simplex(chain: Sequence[Hashable]) -> Simplex:
    """Normal form of a (weakly increasing) chain in a poset nerve."""
    nd, surj = [], []
    for v in chain:
        if not nd or nd[-1] != v:
            nd.append(v)
        surj.append(len(nd) - 1)
    return Simplex(tuple(nd), tuple(surj))


def simplex_to_chain(s: Simplex) -> tuple:
    return tuple(s.nd[t] for t in s.surj)


def normalize_tuple(parts: Sequence[Simplex]) -> tuple[tuple[Simplex, ...], tuple[int, ...]]:
    """Split off the common degeneracies of equal-dimension simplices.

    Returns ``(nondegenerate_parts, surj)`` with ``parts[j] = nd_parts[j] . surj``.
    """
    k = parts[0].dim
    common = set(range(k))
    for p in parts:
        common &= set(p.word)
    if not common:
        return tuple(parts), identity_op(k)
    sigma = surj_from_word(common, k)
    reduced = []
    for p in parts:
        tau = [0] * (sigma[-1] + 1)
        for t, v in enumerate(sigma):
            tau[v] = p.surj[t]
        reduced.append(Simplex(p.nd, tuple(tau)))
    return tuple(reduced), sigma


# --------------------------------------------------------------------------


class SimplicialSet:
    """Degreewise-finite simplicial set truncated at dimension ``cap``.

    Parameters
    ----------
    cap : int
        Truncation dimension.  Simplices of degree ``> cap`` are only
        available when ``finite`` is set, i.e. when no nondegenerate cells
        exist above the stored ones.
    cells : sequence of sequences
        Nondegenerate cell identifiers per dimension.
    faces : mapping
        For each cell of dimension ``m >= 1`` the tuple ``(d_0 x, ..., d_m x)``
        of normal-form simplices.
    """

    def __init__(
        self,
        cap: int,
        cells: Sequence[Sequence[Hashable]],
        faces: dict[Hashable, Sequence[Simplex]],
        finite: bool = False,
        name: str | None = None,
    ):
        self.cap = cap
        self.cells = [list(c) for c in cells]
        while self.cells and not self.cells[-1] and len(self.cells) > cap + 1:
            self.cells.pop()
        self.faces = {k: tuple(v) for k, v in faces.items()}
        self.finite = finite
        self.name = name
        self.dim_of: dict[Hashable, int] = {}
        for d, cs in enumerate(self.cells):
            for c in cs:
                if c in self.dim_of:
                    raise ValueError(f"duplicate cell id {c!r}")
                self.dim_of[c] = d
        self.inclusion: SimplicialMap | None = None
        self._nd_face_cache: dict = {}
        self._simplices_cache: dict[int, list[Simplex]] = {}
        self._face_cache: dict = {}
        self._index_cache: dict = {}
        self._horn_index_cache: dict = {}

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<SimplicialSet{label} cap={self.cap} counts={self.counts()}>"

    @property
    def top_dim(self) -> int:
        return len(self.cells) - 1

    def counts(self) -> tuple[int, ...]:
        out = [len(c) for c in self.cells]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    def nd_cells(self, m: int) -> list[Hashable]:
        return self.cells[m] if m < len(self.cells) else []

    def all_cells(self) -> Iterator[Hashable]:
        for cs in self.cells:
            yield from cs

    def __contains__(self, nd: Hashable) -> bool:
        return nd in self.dim_of

    def check_degree(self, k: int) -> None:
        if k > self.cap and not self.finite:
            raise CapError(f"degree {k} exceeds cap {self.cap}")

    # -- simplicial operators ----------------------------------------------

    def cell(self, nd: Hashable) -> Simplex:
        return nd_simplex(nd, self.dim_of[nd])

    def apply(self, s: Simplex, op: Sequence[int]) -> Simplex:
        """The simplex ``s . op`` for a monotone ``op: [p] -> [dim s]``."""
        mono, epi = epi_mono(compose_ops(s.surj, op))
        base = self._nd_face(s.nd, mono)
        return Simplex(base.nd, compose_ops(base.surj, epi))

    def _nd_face(self, nd: Hashable, mono: tuple[int, ...]) -> Simplex:
        key = (nd, mono)
        hit = self._nd_face_cache.get(key)
        if hit is not None:
            return hit
        m = self.dim_of[nd]
        if len(mono) == m + 1:
            out = nd_simplex(nd, m)
        else:
            i = next(t for t in range(m + 1) if t not in mono)
            face = self.faces[nd][i]
            out = self.apply(face, tuple(v if v < i else v - 1 for v in mono))
        self._nd_face_cache[key] = out
        return out

    def face(self, s: Simplex, i: int) -> Simplex:
        key = (s, i)
        hit = self._face_cache.get(key)
        if hit is None:
            hit = self.apply(s, coface_op(s.dim, i))
            self._face_cache[key] = hit
        return hit

    def degeneracy(self, s: Simplex, j: int) -> Simplex:
        return Simplex(s.nd, compose_ops(s.surj, codegeneracy_op(s.dim, j)))

    def vertex(self, s: Simplex, t: int) -> Simplex:
        return self.apply(s, (t,))

    def vertices(self) -> list[Simplex]:
        return [nd_simplex(v, 0) for v in self.nd_cells(0)]

    # -- enumeration ---------------------------------------------------------

    def simplices(self, k: int) -> list[Simplex]:
        """All ``k``-simplices, nondegenerate cells first then by word."""
        hit = self._simplices_cache.get(k)
        if hit is not None:
            return hit
        self.check_degree(k)
        out = []
        for m in range(min(k, self.top_dim) + 1):
            surjs = list(surjections(k, m))
            for nd in self.cells[m]:
                out.extend(Simplex(nd, s) for s in surjs)
        out.sort(key=lambda s: (s.dim - s.surj[-1], ))
        self._simplices_cache[k] = out
        return out

    def face_tuple(self, s: Simplex) -> tuple[Simplex, ...]:
        if s.dim == 0:
            return ()
        return tuple(self.face(s, i) for i in range(s.dim + 1))

    def face_index(self, k: int) -> dict[tuple[Simplex, ...], list[Simplex]]:
        """Map from the full face tuple to the ``k``-simplices having it."""
        hit = self._index_cache.get(k)
        if hit is None:
            hit = defaultdict(list)
            if k == 0:
                hit[()] = list(self.simplices(0))
            else:
                for s in self.simplices(k):
                    hit[self.face_tuple(s)].append(s)
            hit = dict(hit)
            self._index_cache[k] = hit
        return hit

    def horn_index(self, n: int, i: int) -> dict[tuple[Simplex, ...], list[Simplex]]:
        key = (n, i)
        hit = self._horn_index_cache.get(key)
        if hit is None:
            hit = defaultdict(list)
            for s in self.simplices(n):
                hit[tuple(self.face(s, j) for j in range(n + 1) if j != i)].append(s)
            hit = dict(hit)
            self._horn_index_cache[key] = hit
        return hit

    def check(self, up_to: int | None = None) -> list[str]:
        """Verify the simplicial identities on composites within the cap."""
        problems = []
        top = self.top_dim if up_to is None else min(up_to, self.top_dim)
        for m in range(1, top + 1):
            for nd in self.cells[m]:
                fs = self.faces.get(nd)
                if fs is None or len(fs) != m + 1:
                    problems.append(f"{nd!r}: wrong number of faces")
                    continue
                for f in fs:
                    if f.dim != m - 1 or f.nd not in self.dim_of:
                        problems.append(f"{nd!r}: bad face {f!r}")
                    elif f.surj[-1] != self.dim_of[f.nd] or not is_monotone(f.surj):
                        problems.append(f"{nd!r}: face {f!r} not in normal form")
                if problems or m < 2:
                    continue
                x = self.cell(nd)
                for j in range(1, m + 1):
                    for i in range(j):
                        lhs = self.face(self.face(x, j), i)
                        rhs = self.face(self.face(x, i), j - 1)
                        if lhs != rhs:
                            problems.append(f"{nd!r}: d{i}d{j} != d{j - 1}d{i}")
        return problems

    # -- structure -------------------------------------------------------------

    def subcomplex(self, keep: Iterable[Hashable], name: str | None = None) -> "SimplicialSet":
        keep = set(keep)
        for nd in keep:
            for f in self.faces.get(nd, ()):
                if f.nd not in keep:
                    raise ValueError(f"not a subcomplex: face {f.nd!r} of {nd!r} missing")
        cells = [[c for c in cs if c in keep] for cs in self.cells]
        sub = SimplicialSet(
            self.cap, cells, {c: self.faces[c] for c in keep if c in self.faces},
            finite=self.finite, name=name,
        )
        sub.inclusion = SimplicialMap(sub, self, {c: sub.cell(c) for c in keep})
        return sub

    def closure(self, nds: Iterable[Hashable]) -> set:
        out, todo = set(), list(nds)
        while todo:
            nd = todo.pop()
            if nd in out:
                continue
            out.add(nd)
            todo.extend(f.nd for f in self.faces.get(nd, ()))
        return out

    def same_as(self, other: "SimplicialSet") -> bool:
        """Structural equality of cell lists (as sets) and face data."""
        if {c for c in self.all_cells()} != {c for c in other.all_cells()}:
            return False
        return all(self.faces.get(c) == other.faces.get(c) for c in self.all_cells())


@dataclass
class SimplicialMap:
    """A simplicial map given on nondegenerate source cells."""

    source: SimplicialSet
    target: SimplicialSet
    assignment: dict[Hashable, Simplex]

    def __call__(self, s: Simplex) -> Simplex:
        return self.target.apply(self.assignment[s.nd], s.surj)

    def key(self) -> tuple:
        return tuple(self.assignment[c] for c in self.source.all_cells())

    def check(self) -> list[str]:
        problems = []
        for nd in self.source.all_cells():
            img = self.assignment.get(nd)
            m = self.source.dim_of[nd]
            if img is None or img.dim != m:
                problems.append(f"{nd!r}: missing or wrong-dimensional image")
                continue
            for i, f in enumerate(self.source.faces.get(nd, ())):
                if self(f) != self.target.face(img, i):
                    problems.append(f"{nd!r}: does not commute with d{i}")
        return problems

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """``self o other``."""
        return SimplicialMap(
            other.source, self.target,
            {c: self(img) for c, img in other.assignment.items()},
        )


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {c: X.cell(c) for c in X.all_cells()})


# --------------------------------------------------------------------------
# constructors


@dataclass
class Poset:
    elements: list
    leq: Callable[[Any, Any], bool]

    def check(self) -> list[str]:
        out = []
        es = self.elements
        for a in es:
            if not self.leq(a, a):
                out.append(f"not reflexive at {a!r}")
        for a, b in itertools.product(es, es):
            if a != b and self.leq(a, b) and self.leq(b, a):
                out.append(f"not antisymmetric at {a!r}, {b!r}")
        for a, b, c in itertools.product(es, es, es):
            if self.leq(a, b) and self.leq(b, c) and not self.leq(a, c):
                out.append(f"not transitive at {a!r}, {b!r}, {c!r}")
        return out

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)


def _strict_chains(P: Poset, cap: int | None) -> list[list[tuple]]:
    by_dim: list[list[tuple]] = [[(e,) for e in P.elements]]
    while cap is None or len(by_dim) <= cap:
        nxt = [c + (e,) for c in by_dim[-1] for e in P.elements if P.lt(c[-1], e)]
        if not nxt:
            break
        by_dim.append(nxt)
    return by_dim


def nerve_of_poset(P: Poset, cap: int | None = None, name: str | None = None) -> SimplicialSet:
    """Nerve of a finite poset; cell ids are strictly increasing chains."""
    cells = _strict_chains(P, cap)
    faces = {}
    for chains in cells[1:]:
        for c in chains:
            faces[c] = tuple(nd_simplex(c[:i] + c[i + 1:], len(c) - 2) for i in range(len(c)))
    full = cap is None or len(cells) <= cap or not any(
        P.lt(c[-1], e) for c in cells[-1] for e in P.elements
    )
    top = len(cells) - 1
    return SimplicialSet(top if cap is None else cap, cells, faces, finite=full, name=name)


def chain_poset(n: int) -> Poset:
    return Poset(list(range(n + 1)), lambda a, b: a <= b)


def standard_simplex(n: int, cap: int | None = None) -> SimplicialSet:
    """The standard simplex; cells are the increasing tuples of vertices."""
    if cap is not None and n > cap:
        raise CapError("cap too small")
    X = nerve_of_poset(chain_poset(n), name=f"Delta^{n}")
    if cap is not None:
        X.cap = max(cap, n)
    return X


def boundary_subcomplex(n: int) -> SimplicialSet:
    if n < 1:
        raise ValueError("boundary needs n >= 1")
    D = standard_simplex(n)
    top = tuple(range(n + 1))
    return D.subcomplex((c for c in D.all_cells() if c != top), name=f"dDelta^{n}")


def horn(n: int, i: int) -> SimplicialSet:
    """The horn obtained from the boundary by dropping the face opposite ``i``."""
    if n < 1 or not 0 <= i <= n:
        raise ValueError(f"horn index {i} out of range for n={n}")
    D = standard_simplex(n)
    top = tuple(range(n + 1))
    missing = top[:i] + top[i + 1:]
    return D.subcomplex((c for c in D.all_cells() if c not in (top, missing)), name=f"Lambda^{n}_{i}")


def simplex_subcomplex(n: int, kind: str, i: int | None = None) -> SimplicialSet:
    if kind == "simplex":
        return standard_simplex(n)
    if kind == "boundary":
        return boundary_subcomplex(n)
    if kind == "horn":
        return horn(n, i)
    raise ValueError(f"unknown subcomplex kind {kind!r}")


def point() -> SimplicialSet:
    return standard_simplex(0)


def discrete(points: Iterable[Hashable], name: str | None = None) -> SimplicialSet:
    return SimplicialSet(0, [list(points)], {}, finite=True, name=name)


def empty() -> SimplicialSet:
    return SimplicialSet(0, [[]], {}, finite=True, name="empty")


@dataclass
class Cube:
    """The nerve of ``{0,1}^coords``; vertices are bit tuples in coordinate order."""

    coords: tuple
    underlying: SimplicialSet = field(repr=False)

    def axis(self, x) -> int:
        try:
            return self.coords.index(x)
        except ValueError:
            raise ValueError(f"coordinate {x!r} not in {self.coords!r}") from None

    def face_cells(self, x, eps: int) -> set:
        a = self.axis(x)
        return {c for c in self.underlying.all_cells() if all(v[a] == eps for v in c)}


def cube(coords: Iterable, cap: int | None = None) -> Cube:
    coords = tuple(coords)
    elems = list(itertools.product((0, 1), repeat=len(coords)))
    P = Poset(elems, lambda u, v: all(a <= b for a, b in zip(u, v)))
    return Cube(coords, nerve_of_poset(P, cap, name=f"I^{coords}"))


def cube_boundary(c: Cube) -> SimplicialSet:
    keep = set()
    for x in c.coords:
        keep |= c.face_cells(x, 0) | c.face_cells(x, 1)
    return c.underlying.subcomplex(keep, name="boundary")


def cube_horn(c: Cube, x, eps: int) -> SimplicialSet:
    c.axis(x)
    keep = set()
    for y in c.coords:
        for e in (0, 1):
            if (y, e) != (x, eps):
                keep |= c.face_cells(y, e)
    return c.underlying.subcomplex(keep, name=f"Pi_{x},{eps}")


def quotient_collapse(X: SimplicialSet, A: SimplicialSet | Iterable[Hashable], name: str | None = None) -> SimplicialSet:
    """Collapse the subcomplex ``A`` to a single basepoint vertex ``"*"``."""
    keep = set(A.all_cells()) if isinstance(A, SimplicialSet) else set(A)
    if not keep:
        raise ValueError("cannot collapse an empty subcomplex: no canonical basepoint")
    base = "*"
    while base in X.dim_of and base not in keep:
        base += "*"
    cells = [[base]] + [[] for _ in X.cells[1:]]
    for d, cs in enumerate(X.cells):
        cells[d].extend(c for c in cs if c not in keep)

    def fix(s: Simplex) -> Simplex:
        return Simplex(base, (0,) * len(s.surj)) if s.nd in keep else s

    faces = {c: tuple(fix(f) for f in X.faces[c]) for c in X.all_cells() if c not in keep and c in X.faces}
    Q = SimplicialSet(X.cap, cells, faces, finite=X.finite, name=name)
    Q.basepoint = base
    return Q


def product(X: SimplicialSet, Y: SimplicialSet, cap: int | None = None, name: str | None = None) -> SimplicialSet:
    """Levelwise product; cells are pairs of simplices without common degeneracy."""
    if cap is None:
        if not (X.finite and Y.finite):
            raise CapError("product of truncated sets needs an explicit cap")
        cap = X.top_dim + Y.top_dim
    cells: list[list] = []
    faces = {}
    for k in range(cap + 1):
        level = []
        for x in X.simplices(k):
            wx = set(x.word)
            for y in Y.simplices(k):
                if wx.isdisjoint(y.word):
                    level.append((x, y))
        cells.append(level)
        if k:
            for x, y in level:
                faces[(x, y)] = tuple(
                    _pair_simplex(X.face(x, i), Y.face(y, i)) for i in range(k + 1)
                )
    finite = X.finite and Y.finite and cap >= X.top_dim + Y.top_dim
    return SimplicialSet(cap, cells, faces, finite=finite, name=name)


def _pair_simplex(x: Simplex, y: Simplex) -> Simplex:
    (a, b), sigma = normalize_tuple((x, y))
    return Simplex((a, b), sigma)


def pair_simplex(x: Simplex, y: Simplex) -> Simplex:
    """The simplex of a product with components ``x`` and ``y``."""
    return _pair_simplex(x, y)


def split_pair(s: Simplex) -> tuple[Simplex, Simplex]:
    x, y = s.nd
    return Simplex(x.nd, compose_ops(x.surj, s.surj)), Simplex(y.nd, compose_ops(y.surj, s.surj))


def smash(X: SimplicialSet, Y: SimplicialSet, x0: Hashable, y0: Hashable, cap: int,
          name: str | None = None) -> SimplicialSet:
    """Smash product with respect to the basepoint vertices ``x0`` and ``y0``."""
    P = product(X, Y, cap)
    wedge = [c for c in P.all_cells() if c[0].nd == x0 or c[1].nd == y0]
    return quotient_collapse(P, wedge, name=name)


def relabel(X: SimplicialSet, label: Callable[[Hashable], Hashable], name: str | None = None) -> SimplicialSet:
    """Rename cells; ``label`` must be injective."""
    cells = [[label(c) for c in cs] for cs in X.cells]
    faces = {label(c): tuple(Simplex(label(f.nd), f.surj) for f in fs) for c, fs in X.faces.items()}
    return SimplicialSet(X.cap, cells, faces, finite=X.finite, name=name or X.name)


# --------------------------------------------------------------------------
# maps and lifting


def enumerate_maps(S: SimplicialSet, X: SimplicialSet, fixed: dict[Hashable, Simplex] | None = None,
                   limit: int | None = None) -> list[SimplicialMap]:
    """All simplicial maps ``S -> X``, in canonical order.

    Cells of ``S`` are assigned in increasing dimension; a cell's candidates
    are looked up by the tuple of already-determined face images.
    """
    fixed = fixed or {}
    order = list(S.all_cells())
    out: list[SimplicialMap] = []
    assign: dict[Hashable, Simplex] = {}

    def candidates(c):
        m = S.dim_of[c]
        if m == 0:
            cands = X.simplices(0)
        else:
            req = tuple(X.apply(assign[f.nd], f.surj) for f in S.faces[c])
            cands = X.face_index(m).get(req, [])
        if c in fixed:
            return [fixed[c]] if fixed[c] in cands else []
        return cands

    def go(pos):
        if limit is not None and len(out) >= limit:
            return
        if pos == len(order):
            out.append(SimplicialMap(S, X, dict(assign)))
            return
        c = order[pos]
        for x in candidates(c):
            assign[c] = x
            go(pos + 1)
        assign.pop(c, None)

    go(0)
    return out


def horn_tuples(X: SimplicialSet, n: int, i: int) -> Iterator[dict[int, Simplex]]:
    """Compatible families ``(x_j)_{j != i}`` of ``(n-1)``-simplices.

    These are exactly the maps from the horn ``Lambda^n_i`` into ``X``.
    """
    js = [j for j in range(n + 1) if j != i]
    level = X.simplices(n - 1)
    by_face: dict[tuple[int, Simplex], list[Simplex]] = {}
    if n >= 2:
        for x in level:
            for t in range(n):
                by_face.setdefault((t, X.face(x, t)), []).append(x)
    chosen: dict[int, Simplex] = {}

    def go(pos):
        if pos == len(js):
            yield dict(chosen)
            return
        k = js[pos]
        prior = [j for j in js[:pos]]
        if prior and n >= 2:
            j0 = prior[0]
            cands = by_face.get((j0, X.face(chosen[j0], k - 1)), [])
        else:
            cands = level
        for x in cands:
            if all(X.face(x, j) == X.face(chosen[j], k - 1) for j in prior):
                chosen[k] = x
                yield from go(pos + 1)
        chosen.pop(k, None)

    yield from go(0)


@dataclass
class KanReport:
    ok: bool
    checked: list[tuple[int, int]]
    failures: list[tuple[int, int]]
    witness: dict | None = None
    failing_horns: dict[tuple[int, int], int] = field(default_factory=dict)
    witnesses: list[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def first_failure(self) -> tuple[int, int] | None:
        return self.failures[0] if self.failures else None


def _horn_pairs(up_to: int, inner_only: bool, only: tuple[int, int] | None):
    if only is not None:
        return [only]
    pairs = []
    for n in range(1, up_to + 1):
        for i in range(n + 1):
            if inner_only and i in (0, n):
                continue
            pairs.append((n, i))
    return pairs


def is_kan(X: SimplicialSet, up_to: int, inner_only: bool = False,
           only: tuple[int, int] | None = None, exhaustive: bool = False) -> KanReport:
    """Brute-force horn filling for every horn ``Lambda^n_i`` with ``n <= up_to``.

    ``inner_only`` restricts to inner horns (quasicategory check); ``only``
    checks a single ``(n, i)``.  Fillers live in degree ``n``, so ``up_to``
    must not exceed the cap.
    """
    top = only[0] if only else up_to
    if top > X.cap and not X.finite:
        raise CapError("cap too small for the requested horn dimension")
    checked, failures, witness, counts, every = [], [], None, {}, []
    for n, i in _horn_pairs(up_to, inner_only, only):
        checked.append((n, i))
        index = X.horn_index(n, i)
        bad = 0
        for h in horn_tuples(X, n, i):
            if tuple(h[j] for j in sorted(h)) not in index:
                bad += 1
                found = {"n": n, "i": i, "horn": h}
                witness = witness or found
                if not exhaustive:
                    break
                every.append(found)
        if bad:
            failures.append((n, i))
            counts[(n, i)] = bad
    return KanReport(not failures, checked, failures, witness, counts, every)


def is_kan_fibration(p: SimplicialMap, up_to: int, inner_only: bool = False,
                     only: tuple[int, int] | None = None, exhaustive: bool = False) -> KanReport:
    """Right lifting against ``Lambda^n_i -> Delta^n`` for ``n <= up_to``."""
    X, Y = p.source, p.target
    top = only[0] if only else up_to
    for Z in (X, Y):
        if top > Z.cap and not Z.finite:
            raise CapError("cap too small for the requested horn dimension")
    checked, failures, witness, counts, every = [], [], None, {}, []
    for n, i in _horn_pairs(up_to, inner_only, only):
        checked.append((n, i))
        lifts: dict[tuple, set] = defaultdict(set)
        for x in X.simplices(n):
            lifts[tuple(X.face(x, j) for j in range(n + 1) if j != i)].add(p(x))
        y_index = Y.horn_index(n, i)
        bad = 0
        for h in horn_tuples(X, n, i):
            key = tuple(h[j] for j in sorted(h))
            below = tuple(p(x) for x in key)
            have = lifts.get(key, set())
            for y in y_index.get(below, []):
                if y not in have:
                    bad += 1
                    found = {"n": n, "i": i, "horn": h, "base": y}
                    witness = witness or found
                    if exhaustive:
                        every.append(found)
                    break
            if bad and not exhaustive:
                break
        if bad:
            failures.append((n, i))
            counts[(n, i)] = bad
    return KanReport(not failures, checked, failures, witness, counts, every)


# --------------------------------------------------------------------------
# homotopy invariants in low degrees


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def pi0(X: SimplicialSet) -> list[list[Hashable]]:
    """Path components as lists of vertex ids, ordered by first vertex."""
    uf = _UnionFind(X.nd_cells(0))
    for e in X.nd_cells(1):
        d0, d1 = X.faces[e]
        uf.union(d1.nd, d0.nd)
    comps: dict = {}
    for v in X.nd_cells(0):
        comps.setdefault(uf.find(v), []).append(v)
    return list(comps.values())


def component_of(X: SimplicialSet) -> dict[Hashable, int]:
    return {v: n for n, comp in enumerate(pi0(X)) for v in comp}


@dataclass
class Presentation:
    generators: list
    relations: list[list[tuple[Hashable, int]]]

    def __str__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        rels = ", ".join(
            " ".join(f"{g}" if e == 1 else f"{g}^-1" for g, e in r) or "1" for r in self.relations
        )
        return f"< {gens} | {rels} >"


def pi1_presentation(X: SimplicialSet, basepoint: Hashable) -> Presentation:
    """Edge-path presentation of the fundamental group at ``basepoint``.

    Generators are the nondegenerate edges of the component outside a
    spanning tree; every nondegenerate 2-simplex ``s`` contributes the
    relation ``d2(s) d0(s) = d1(s)``.
    """
    comp = next(c for c in pi0(X) if basepoint in c)
    comp_set = set(comp)
    edges = [e for e in X.nd_cells(1) if X.faces[e][1].nd in comp_set]
    tree, seen, frontier = set(), {basepoint}, [basepoint]
    while frontier:
        v = frontier.pop(0)
        for e in edges:
            d0, d1 = X.faces[e][0].nd, X.faces[e][1].nd
            for a, b in ((d1, d0), (d0, d1)):
                if a == v and b not in seen:
                    seen.add(b)
                    tree.add(e)
                    frontier.append(b)
    gens = [e for e in edges if e not in tree]

    def letter(s: Simplex, sign: int):
        if s.is_degenerate or s.nd in tree:
            return []
        return [(s.nd, sign)]

    rels = []
    for t in X.nd_cells(2):
        if X.vertex(X.cell(t), 0).nd not in comp_set:
            continue
        d0, d1, d2 = X.faces[t]
        word = letter(d2, 1) + letter(d0, 1) + letter(d1, -1)
        if word:
            rels.append(word)
    return Presentation(gens, rels)


@dataclass
class FundamentalGroup:
    """Fundamental group of a Kan complex as a finite multiplication table.

    ``elements`` are representative loops, ``table[a][b]`` is the index of
    the class of the loop ``a`` followed by ``b``.
    """

    basepoint: Hashable
    elements: list[Simplex]
    classes: dict[Simplex, int]
    table: list[list[int]]
    identity: int
    presentation: Presentation | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def multiply(self, a: int, b: int) -> int:
        return self.table[a][b]

    def word_equal(self, w1: Sequence[int], w2: Sequence[int]) -> bool:
        def ev(w):
            acc = self.identity
            for x in w:
                acc = self.table[acc][x]
            return acc
        return ev(w1) == ev(w2)


def pi1_edge_path(X: SimplicialSet, basepoint: Hashable, kan_certificate: KanReport | None = None) -> FundamentalGroup:
    """Fundamental group of a Kan complex from loops modulo 2-simplices.

    Without a certificate the Kan condition is checked in degrees 1 and 2;
    inputs failing it raise :class:`NotKanError`.
    """
    if kan_certificate is None:
        kan_certificate = is_kan(X, min(2, X.cap) if not X.finite else 2)
    if not kan_certificate.ok:
        raise NotKanError("pi1 via loops requires a Kan certificate; use pi1_presentation instead")
    v = nd_simplex(basepoint, 0)
    e0 = X.degeneracy(v, 0)
    loops = [e for e in X.simplices(1) if X.face(e, 0) == v and X.face(e, 1) == v]
    uf = _UnionFind(loops)
    triangles = X.simplices(2)
    for t in triangles:
        if X.face(t, 0) == e0:
            a, b = X.face(t, 2), X.face(t, 1)
            if a in uf.parent and b in uf.parent:
                uf.union(a, b)
    reps: dict = {}
    for e in loops:
        reps.setdefault(uf.find(e), e)
    elements = list(reps.values())
    index = {uf.find(e): n for n, e in enumerate(elements)}
    classes = {e: index[uf.find(e)] for e in loops}
    n = len(elements)
    table = [[-1] * n for _ in range(n)]
    for t in triangles:
        a, b, c = X.face(t, 2), X.face(t, 0), X.face(t, 1)
        if a in classes and b in classes and c in classes:
            ia, ib, ic = classes[a], classes[b], classes[c]
            if table[ia][ib] == -1:
                table[ia][ib] = ic
            elif table[ia][ib] != ic:
                raise NotKanError("loop product is not well defined")
    if any(-1 in row for row in table):
        raise NotKanError("missing loop products; horn filling fails")
    return FundamentalGroup(basepoint, elements, classes, table, classes[e0],
                            pi1_presentation(X, basepoint))


def induced_pi1(f: SimplicialMap, G: FundamentalGroup, H: FundamentalGroup) -> list[int]:
    return [H.classes[f(e)] for e in G.elements]


def is_group_isomorphism(phi: Sequence[int], G: FundamentalGroup, H: FundamentalGroup) -> bool:
    if len(set(phi)) != H.order or G.order != H.order:
        return False
    return all(
        phi[G.table[a][b]] == H.table[phi[a]][phi[b]] for a in range(G.order) for b in range(G.order)
    )


def tables_isomorphic(t1: Sequence[Sequence[int]], t2: Sequence[Sequence[int]]) -> bool:
    """Brute-force isomorphism test for small finite group tables."""
    n = len(t1)
    if n != len(t2):
        return False
    for perm in itertools.permutations(range(n)):
        if all(perm[t1[a][b]] == t2[perm[a]][perm[b]] for a in range(n) for b in range(n)):
            return True
    return False
