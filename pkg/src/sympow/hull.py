"""Exact double description for Newton polyhedra.

The facets of ``P = conv(V) + R^d_{>=0}`` are the extreme rays ``(w, b)`` of
the polar cone ``{w >= 0, w.v - b >= 0 for v in V}``.  All arithmetic is in
Python integers; rays are kept primitive.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

from .errors import ResourceLimit


def _primitive(v: tuple) -> tuple:
    g = 0
    for a in v:
        g = gcd(g, a)
    if g > 1:
        v = tuple(a // g for a in v)
    return v


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def minimal_points(points: Sequence[tuple]) -> list:
    """Drop points that dominate another point componentwise."""
    pts = sorted(set(map(tuple, points)), key=lambda p: (sum(p), p))
    keep: list = []
    for p in pts:
        if not any(all(a <= b for a, b in zip(q, p)) for q in keep):
            keep.append(p)
    return keep


def newton_facets(points: Sequence[tuple], max_dim: int = 8) -> list:
    """Facet inequalities ``w.u >= b`` (integer, primitive) of conv(points) + orthant.

    Coordinate halfspaces ``u_i >= 0`` are always included.  Returns a sorted
    list of ``(w, b)``.
    """
    pts = minimal_points(points)
    if not pts:
        raise ValueError("need at least one point")
    d = len(pts[0])
    if d > max_dim:
        raise ResourceLimit(f"Newton polyhedron in dimension {d} exceeds limit {max_dim}")
    n = d + 1
    # Constraint rows a with a.y >= 0, y = (w, b).
    rows = [tuple(int(i == j) for j in range(n)) for i in range(d)]
    rows += [tuple(p) + (-1,) for p in pts]

    # Initial simplicial cone from the first d + 1 constraints.
    v0 = pts[0]
    rays = [tuple(int(i == j) for j in range(d)) + (v0[i],) for i in range(d)]
    rays.append((0,) * d + (-1,))
    rays = [_primitive(r) for r in rays]
    processed = d + 1

    for k in range(processed, len(rows)):
        a = rows[k]
        vals = [_dot(a, r) for r in rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        neg = [i for i, s in enumerate(vals) if s < 0]
        zero = [i for i, s in enumerate(vals) if s == 0]
        if not neg:
            continue
        active = rows[:k]
        zsets = [frozenset(j for j, row in enumerate(active) if _dot(row, r) == 0) for r in rays]
        new_rays = [rays[i] for i in pos + zero]
        for i in pos:
            for j in neg:
                common = zsets[i] & zsets[j]
                if len(common) < n - 2:
                    continue
                adjacent = True
                for m in range(len(rays)):
                    if m != i and m != j and common <= zsets[m]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                r = tuple(vals[i] * y - vals[j] * x for x, y in zip(rays[i], rays[j]))
                new_rays.append(_primitive(r))
        rays = list(dict.fromkeys(new_rays))
        if len(rays) > 200_000:
            raise ResourceLimit("double description produced too many rays")

    out = set()
    for r in rays:
        w, b = r[:d], r[d]
        if b > 0:
            out.add((w, b))
    for i in range(d):
        out.add((tuple(int(i == j) for j in range(d)), 0))
    return sorted(out, key=lambda h: (h[1] == 0, h[0], h[1]))
