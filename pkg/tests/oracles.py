"""Independent brute-force reference implementations used by the tests.

Everything here trades speed for obviousness: explicit enumeration of
permutations, lattice scans over bounding boxes, and exhaustive cyclic-order
search.  The production code must agree with these on small inputs.
"""

from __future__ import annotations

import itertools
from functools import cmp_to_key
from math import factorial, gcd

from refinedcount.floors import FloorDiagram, _poset_elements

Vec = tuple[int, int]


# -- linear extensions -----------------------------------------------------------


def linear_extensions_brute(n: int, pred_sets: list[frozenset[int]]) -> int:
    """Count orderings of 0..n-1 where every element follows its predecessors.

    Straight backtracking: every valid permutation is visited once.
    """
    placed: set[int] = set()

    def rec(k: int) -> int:
        if k == n:
            return 1
        total = 0
        for i in range(n):
            if i not in placed and pred_sets[i] <= placed:
                placed.add(i)
                total += rec(k + 1)
                placed.discard(i)
        return total

    return rec(0)


def markings_count_brute(D: FloorDiagram) -> int:
    """Marking count via explicit extension enumeration, not the downset DP."""
    elements, preds, groups = _poset_elements(D)
    index = {e: i for i, e in enumerate(elements)}
    pred_sets = [frozenset(index[p] for p in preds[e]) for e in elements]
    labeled = linear_extensions_brute(len(elements), pred_sets)
    sym = 1
    for grp in groups:
        sym *= factorial(len(grp))
    assert labeled % sym == 0
    return labeled // sym


def poset_size(D: FloorDiagram) -> int:
    elements, _, _ = _poset_elements(D)
    return len(elements)


# -- lattice point scans ----------------------------------------------------------


def triangle_interior_brute(u1: Vec, u2: Vec) -> int:
    """Interior lattice points of the triangle with rotated edge vectors u1, u2.

    Scans the bounding box and tests each point against the three sides
    exactly (no Pick shortcut).
    """
    def rot(v: Vec) -> Vec:
        return (-v[1], v[0])

    a = (0, 0)
    b = rot(u1)
    c = (b[0] + rot(u2)[0], b[1] + rot(u2)[1])
    verts = [a, b, c]

    def cross(o: Vec, p: Vec, q: Vec) -> int:
        return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])

    orient = cross(a, b, c)
    if orient == 0:
        raise ValueError("degenerate triangle")
    if orient < 0:
        verts = [a, c, b]
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    count = 0
    for x in range(min(xs) + 1, max(xs)):
        for y in range(min(ys) + 1, max(ys)):
            p = (x, y)
            if all(cross(verts[i], verts[(i + 1) % 3], p) > 0 for i in range(3)):
                count += 1
    return count


def polygon_lattice_counts_brute(vertices: list[Vec]) -> tuple[int, int]:
    """(interior, boundary) lattice point counts by scanning the bounding box."""
    n = len(vertices)

    def cross(o: Vec, p: Vec, q: Vec) -> int:
        return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])

    def on_segment(p: Vec, a: Vec, b: Vec) -> bool:
        if cross(a, b, p) != 0:
            return False
        return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and \
            min(a[1], b[1]) <= p[1] <= max(a[1], b[1])

    xs = [v[0] for v in vertices]
    ys = [v[1] for v in vertices]
    interior = boundary = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            p = (x, y)
            if any(on_segment(p, vertices[i], vertices[(i + 1) % n]) for i in range(n)):
                boundary += 1
                continue
            signs = [cross(vertices[i], vertices[(i + 1) % n], p) for i in range(n)]
            if all(s > 0 for s in signs) or all(s < 0 for s in signs):
                interior += 1
    return interior, boundary


# -- cyclic orders ----------------------------------------------------------------


def _half_plane(v: Vec) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(a: Vec, b: Vec) -> int:
    """Compare directions counterclockwise from the positive x-axis; exact."""
    ha, hb = _half_plane(a), _half_plane(b)
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def cyclic_orders_brute(vectors: list[Vec]) -> int:
    """Distinct cyclic arrangements of the multiset that respect the
    counterclockwise circular order of directions."""
    n = len(vectors)
    compatible: set[tuple[Vec, ...]] = set()
    for perm in set(itertools.permutations(vectors)):
        ok = False
        for s in range(n):
            rot = perm[s:] + perm[:s]
            if all(_angle_cmp(rot[i], rot[i + 1]) <= 0 for i in range(n - 1)):
                ok = True
                break
        if ok:
            compatible.add(min(perm[s:] + perm[:s] for s in range(n)))
    return len(compatible)


def random_balanced_vectors(rng, max_len: int = 6, coord: int = 2) -> list[Vec]:
    """A small balanced, plane-spanning multiset of nonzero vectors."""
    while True:
        k = rng.randint(3, max_len)
        vs = []
        for _ in range(k - 1):
            while True:
                v = (rng.randint(-coord, coord), rng.randint(-coord, coord))
                if v != (0, 0):
                    break
            vs.append(v)
        last = (-sum(v[0] for v in vs), -sum(v[1] for v in vs))
        if last == (0, 0):
            continue
        vs.append(last)
        # must span the plane
        if any(vs[0][0] * v[1] - vs[0][1] * v[0] != 0 for v in vs[1:]):
            return vs


def primitive(v: Vec) -> Vec:
    g = gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g)
