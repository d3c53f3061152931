"""Brute-force references that share no code with the package."""
from __future__ import annotations

import itertools


def boolean_vertices(m: int) -> list[tuple]:
    return list(itertools.product((0, 1), repeat=m))


def leq(u: tuple, v: tuple) -> bool:
    return all(a <= b for a, b in zip(u, v))


def strict_chains(m: int) -> list[tuple]:
    """All nonempty strictly increasing chains in ``{0,1}^m``."""
    verts = boolean_vertices(m)
    out = []
    frontier = [(v,) for v in verts]
    while frontier:
        out.extend(frontier)
        frontier = [c + (w,) for c in frontier for w in verts if w != c[-1] and leq(c[-1], w)]
    return out


def ind_count(n: int) -> int:
    """Nondegenerate cube simplices over all ``a < b`` with no coordinate constantly 0."""
    total = 0
    for a in range(n + 1):
        for b in range(a + 1, n + 1):
            m = b - a - 1
            total += sum(1 for c in strict_chains(m) if all(c[-1][y] == 1 for y in range(m)))
    return total


def cube_face(m: int, y: int, eps: int) -> set:
    """Cells of the face ``coordinate y == eps`` of ``{0,1}^m`` (``y`` zero-based)."""
    return {c for c in strict_chains(m) if all(v[y] == eps for v in c)}


def expected_horn_image(n: int, i: int, a: int, b: int) -> tuple[str, set]:
    """The classification of the horn image in ``Hom(a, b)``, as a cell set.

    Coordinates of ``Hom(a, b)`` are the vertices ``a < y < b``.  Inner horns
    remove the face ``f_i = 1`` from the boundary of the big cube; the outer
    horns lose the face ``f_1 = 0`` (resp. ``f_{n-1} = 0``) of the big cube and
    keep only the boundary of the cube that avoids vertex ``0`` (resp. ``n``).
    """
    m = b - a - 1
    full = set(strict_chains(m))
    coords = list(range(a + 1, b))

    def union_except(skip):
        cells = set()
        for y in range(m):
            for eps in (0, 1):
                if (coords[y], eps) != skip:
                    cells |= cube_face(m, y, eps)
        return cells

    if (a, b) == (0, n):
        if 0 < i < n:
            return "horn", union_except((i, 1))
        if i == 0:
            return "horn", union_except((1, 0))
        return "horn", union_except((n - 1, 0))
    if i == 0 and (a, b) == (1, n):
        return "boundary", union_except(None)
    if i == n and (a, b) == (0, n - 1):
        return "boundary", union_except(None)
    return "full", full


def strings_count(arrows: dict, objects: list, n: int) -> int:
    """Composable strings of length ``n`` in a category given by ``name -> (source, target)``."""
    ends = {x: 1 for x in objects}
    for _ in range(n):
        nxt = {x: 0 for x in objects}
        for x, c in ends.items():
            for s, t in arrows.values():
                if s == x:
                    nxt[t] += c
        ends = nxt
    return sum(ends.values())


def monotone_count(p: int, q: int) -> int:
    return sum(1 for t in itertools.product(range(q + 1), repeat=p + 1) if list(t) == sorted(t))


def word_count(letters: int, max_length: int) -> int:
    return sum(letters ** k for k in range(max_length + 1))
