"""
Test surfaces: triangulated polygons built from vertex coordinates, and the
annulus with two marked points on each boundary circle.

Polygon vertices 0..N-1 are numbered clockwise.  Boundary edge (i, i+1) gets
label n+1+i; diagonals are labelled 1..n in sorted order of their vertex
pairs.  Crossing sequences are read off the geometry (where a chord meets
the diagonals), not from the triangle walk.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from importlib import resources
from itertools import combinations

from .surface import (ArcSpec, Triangulation, arc_endpoints, arc_from_json, boundary_component,
                      triangulation_from_json)

Chord = tuple[int, int]


def polygon_triangulations(N: int) -> list[frozenset[Chord]]:
    """All triangulations of the convex N-gon as sets of diagonals."""

    def rec(i: int, j: int) -> list[frozenset[Chord]]:
        # triangulations of the sub-polygon i..j, including chord (i, j) if it is one
        if j - i < 2:
            return [frozenset()]
        out = []
        for k in range(i + 1, j):
            for left in rec(i, k):
                for right in rec(k, j):
                    chords = set(left | right)
                    for c in ((i, k), (k, j)):
                        if c[1] - c[0] > 1:
                            chords.add(c)
                    out.append(frozenset(chords))
        return out

    return sorted(rec(0, N - 1), key=sorted)


@dataclass(frozen=True)
class PolygonTriangulation:
    N: int
    diagonals: tuple[Chord, ...]   # diagonals[l - 1] is the chord with label l
    triangulation: Triangulation

    def label(self, p: int, q: int) -> int:
        p, q = min(p, q), max(p, q)
        if q - p == 1:
            return self.triangulation.n + 1 + p
        if (p, q) == (0, self.N - 1):
            return self.triangulation.n + self.N
        return self.diagonals.index((p, q)) + 1


def polygon(N: int, chords: frozenset[Chord]) -> PolygonTriangulation:
    diags = tuple(sorted(chords))
    n = len(diags)
    edges = set(diags) | {(i, i + 1) for i in range(N - 1)} | {(0, N - 1)}
    tris = []
    for p, q, r in combinations(range(N), 3):
        if {(p, q), (q, r), (p, r)} <= edges:
            tris.append((p, q, r))
    pt = PolygonTriangulation(N, diags, Triangulation(n, N, ()))
    # increasing vertex numbers run clockwise, so (pq, qr, rp) is clockwise
    triangles = tuple((pt.label(p, q), pt.label(q, r), pt.label(r, p)) for p, q, r in tris)
    return PolygonTriangulation(N, diags, Triangulation(n, N, triangles))


def _point(N: int, i: int) -> tuple[float, float]:
    t = -2 * math.pi * i / N
    return math.cos(t), math.sin(t)


def _crosses(a: Chord, b: Chord) -> bool:
    (p, q), (r, s) = sorted(a), sorted(b)
    return (p < r < q < s) or (r < p < s < q)


def _param(N: int, a: Chord, b: Chord) -> float:
    """Where the segment a meets the line through b, as a fraction of a."""
    (x1, y1), (x2, y2) = _point(N, a[0]), _point(N, a[1])
    (x3, y3), (x4, y4) = _point(N, b[0]), _point(N, b[1])
    den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    return ((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)) / den


def polygon_arc(P: PolygonTriangulation, u: int, v: int) -> ArcSpec:
    """Crossing sequence of the chord from vertex u to vertex v."""
    crossed = [c for c in P.diagonals if _crosses((u, v), c)]
    if not crossed:
        raise ValueError(f"chord ({u},{v}) crosses nothing")
    crossed.sort(key=lambda c: _param(P.N, (u, v), c))
    first = crossed[0]
    T = P.triangulation
    lab = P.label(*first)
    # the start triangle has u as a corner and the first crossed diagonal as a side
    start = [j for j in T.triangles_of(lab)
             if P.label(u, first[0]) in T.triangles[j] and P.label(u, first[1]) in T.triangles[j]]
    return ArcSpec(tuple(P.label(*c) for c in crossed), start[0])


def polygon_arcs(P: PolygonTriangulation) -> list[tuple[Chord, ArcSpec]]:
    """Every diagonal not in the triangulation, with its crossing sequence."""
    out = []
    for u, v in combinations(range(P.N), 2):
        if v - u < 2 or (u, v) == (0, P.N - 1) or (u, v) in P.diagonals:
            continue
        out.append(((u, v), polygon_arc(P, u, v)))
    return out


def polygon_corpus(N: int) -> list[tuple[PolygonTriangulation, list[tuple[Chord, ArcSpec]]]]:
    return [(P, polygon_arcs(P)) for P in map(lambda c: polygon(N, c), polygon_triangulations(N))]


# -- the annulus -------------------------------------------------------------

def load(name: str) -> dict:
    return json.loads(resources.files("snakecluster.data").joinpath(name).read_text())


def annulus() -> Triangulation:
    return triangulation_from_json(load("annulus.json"))


def annulus_arc() -> ArcSpec:
    return arc_from_json(load("annulus_arc.json"))


def random_walk_arc(T: Triangulation, d: int, rng: random.Random) -> ArcSpec:
    """
    A random non-backtracking walk of length d through the interior arcs,
    which is a valid crossing sequence by construction.
    """
    while True:
        start = rng.randrange(len(T.triangles))
        sides = [s for s in T.triangles[start] if T.is_interior(s)]
        if not sides:
            continue
        crossings = [rng.choice(sides)]
        cur = T.other_triangle(crossings[0], start)
        ok = True
        while len(crossings) < d:
            nxt = [s for s in T.triangles[cur] if T.is_interior(s) and s != crossings[-1]]
            if not nxt:
                ok = False
                break
            crossings.append(rng.choice(nxt))
            cur = T.other_triangle(crossings[-1], cur)
        if ok:
            return ArcSpec(tuple(crossings), start)


def is_bridging(T: Triangulation, a: ArcSpec) -> bool:
    comp = boundary_component(T)
    s, e = arc_endpoints(T, a)
    return comp[s] != comp[e]


def random_annulus_arcs(count: int = 50, max_d: int = 10, seed: int = 2024) -> list[ArcSpec]:
    """
    Random walks whose ends lie on different boundary circles.  In the
    annulus every such walk is a simple arc; walks returning to the same
    circle are simple only in special cases, so they are left out.
    """
    rng = random.Random(seed)
    T = annulus()
    out: list[ArcSpec] = []
    while len(out) < count:
        a = random_walk_arc(T, rng.randint(1, max_d), rng)
        if is_bridging(T, a):
            out.append(a)
    return out
