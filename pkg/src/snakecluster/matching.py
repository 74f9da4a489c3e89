"""
Perfect matchings of snake graphs and the data attached to them.

A matching is a frozenset of indices into ``G.plain_edges``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .snake import Point, SnakeGraph
from .surface import vertex_of_corner

Matching = frozenset


class MatchingError(RuntimeError):
    """A structural fact about snake graph matchings failed to hold."""


def _tile_plan(G: SnakeGraph):
    """
    Per tile: the edges it owns and the vertices whose last incident edge it
    owns.  After tile k only the two ends of the edge shared with tile k+1
    remain open, which keeps the state space at four.
    """
    owned: list[list[int]] = [[] for _ in range(G.d)]
    last: dict[Point, int] = {}
    for i, e in enumerate(G.plain_edges):
        k = e.tiles[0]
        owned[k - 1].append(i)
        for p in (e.u, e.v):
            last[p] = max(last.get(p, 0), k)
    closing: list[set[Point]] = [set() for _ in range(G.d)]
    for p, k in last.items():
        closing[k - 1].add(p)
    return owned, closing


def _local_choices(G: SnakeGraph, owned: list[int]) -> list[tuple[int, ...]]:
    """All sets of pairwise disjoint owned edges, in increasing bitmask order."""
    out = []
    for mask in range(1 << len(owned)):
        chosen = tuple(owned[b] for b in range(len(owned)) if mask >> b & 1)
        ends = [p for i in chosen for p in (G.edges[i].u, G.edges[i].v)]
        if len(ends) == len(set(ends)):
            out.append(chosen)
    return out


def _run_dp(G: SnakeGraph, collect: bool):
    owned, closing = _tile_plan(G)
    # state: frozenset of covered open vertices -> count or list of (choice-key, edges)
    states: dict = {frozenset(): [((), ())] if collect else 1}
    for k in range(G.d):
        choices = _local_choices(G, owned[k])
        nxt: dict = {}
        for covered, acc in states.items():
            for ci, chosen in enumerate(choices):
                ends = {p for i in chosen for p in (G.edges[i].u, G.edges[i].v)}
                if ends & covered:
                    continue
                now = covered | ends
                if not closing[k] <= now:
                    continue
                key = frozenset(now - closing[k])
                if collect:
                    bucket = nxt.setdefault(key, [])
                    bucket.extend((ck + (ci,), es + chosen) for ck, es in acc)
                else:
                    nxt[key] = nxt.get(key, 0) + acc
        states = nxt
    return states.get(frozenset(), [] if collect else 0)


def enumerate_matchings(G: SnakeGraph) -> list[Matching]:
    """All perfect matchings, ordered by their per-tile local choices."""
    found = sorted(_run_dp(G, collect=True))
    return [frozenset(edges) for _, edges in found]


def count_matchings(G: SnakeGraph) -> int:
    return _run_dp(G, collect=False)


def is_perfect_matching(G: SnakeGraph, M: Iterable[int]) -> bool:
    M = list(M)
    if any(not (0 <= i < G.n_plain) for i in M):
        return False
    ends = [p for i in M for p in (G.edges[i].u, G.edges[i].v)]
    return len(ends) == len(set(ends)) == len(G.vertices)


def weight(G: SnakeGraph, M: Iterable[int]) -> tuple[int, ...]:
    """x-exponent vector of w(M), boundary arcs evaluated at 1."""
    xe = [0] * G.nvars
    for i in M:
        x = G.x_label(G.edges[i].label)
        if x is not None:
            xe[x - 1] += 1
    return tuple(xe)


def y_of_tiles(G: SnakeGraph, tiles: Iterable[int]) -> tuple[int, ...]:
    ye = [0] * G.nvars
    for j in tiles:
        ye[G.crossings[j - 1] - 1] += 1
    return tuple(ye)


@dataclass(frozen=True)
class InducedPath:
    """The walk s -> t alternating matching edges and tile diagonals."""

    matching_edges: tuple[int, ...]   # d+1 edge indices in walking order
    upward: tuple[bool, ...]          # direction on each diagonal, SE -> NW is upward
    vertices: tuple[Point, ...]       # 2d+2 points visited


def induced_path(G: SnakeGraph, M: Matching) -> InducedPath:
    at: dict[Point, int] = {}
    for i in M:
        e = G.edges[i]
        at[e.u] = i
        at[e.v] = i
    cur = G.tiles[0].corner("SW")
    seq, ups, pts = [], [], [cur]
    for t in G.tiles:
        i = at[cur]
        seq.append(i)
        cur = G.edges[i].other(cur)
        pts.append(cur)
        nw, se = t.corner("NW"), t.corner("SE")
        if cur == se:
            ups.append(True)
            cur = nw
        elif cur == nw:
            ups.append(False)
            cur = se
        else:
            raise MatchingError(f"path reaches {cur}, not on the diagonal of tile {t.index}")
        pts.append(cur)
    i = at[cur]
    seq.append(i)
    cur = G.edges[i].other(cur)
    pts.append(cur)
    if cur != G.tiles[-1].corner("NE"):
        raise MatchingError(f"path ends at {cur}, not at the NE corner of the last tile")
    return InducedPath(tuple(seq), tuple(ups), tuple(pts))


def oriented_tiles(G: SnakeGraph, M: Matching) -> list[int]:
    """
    Tiles whose diagonal the induced path crosses in the direction of the
    arc's orientation: downward in tiles of orientation +1, upward in tiles
    of orientation -1.
    """
    path = induced_path(G, M)
    return [t.index for t, up in zip(G.tiles, path.upward) if up == (t.rel_orientation < 0)]


def y_monomial_oriented(G: SnakeGraph, M: Matching) -> tuple[int, ...]:
    return y_of_tiles(G, oriented_tiles(G, M))


def boundary_matchings(G: SnakeGraph, matchings: list[Matching] | None = None) -> tuple[Matching, Matching]:
    """(M_minus, M_plus): the matchings made of boundary edges only."""
    if matchings is None:
        matchings = enumerate_matchings(G)
    outer = [M for M in matchings if all(G.edges[i].boundary for i in M)]
    if len(outer) != 2:
        raise MatchingError(f"expected 2 all-boundary matchings, found {len(outer)}")
    minus = [M for M in outer if not oriented_tiles(G, M)]
    plus = [M for M in outer if len(oriented_tiles(G, M)) == G.d]
    if len(minus) != 1 or len(plus) != 1:
        raise MatchingError("all-boundary matchings do not have trivial and full coefficients")
    return minus[0], plus[0]


def enclosed_tiles(G: SnakeGraph, M: Matching, M_minus: Matching) -> list[int]:
    """
    The tiles J whose union has boundary M_minus (+) M.  Every edge lies in
    one or two tiles, so membership in J is forced tile by tile by any edge
    the tile does not share; shared edges then have to agree.
    """
    diff = set(M) ^ set(M_minus)
    inside: dict[int, bool] = {}
    for i, e in enumerate(G.plain_edges):
        if len(e.tiles) == 1:
            k = e.tiles[0]
            val = i in diff
            if inside.setdefault(k, val) != val:
                raise MatchingError(f"tile {k}: symmetric difference is not a union of tiles")
    for i, e in enumerate(G.plain_edges):
        if len(e.tiles) == 2:
            a, b = e.tiles
            if (inside[a] != inside[b]) != (i in diff):
                raise MatchingError(f"shared edge of tiles {a},{b} disagrees with the symmetric difference")
    return sorted(k for k, v in inside.items() if v)


def y_monomial_symmdiff(G: SnakeGraph, M: Matching, M_minus: Matching) -> tuple[int, ...]:
    return y_of_tiles(G, enclosed_tiles(G, M, M_minus))


def _is_black(p: Point) -> bool:
    # the SW corner of tile 1 is black
    return (p[0] + p[1]) % 2 == 0


def _point_in_polygon(pt: tuple[float, float], poly: list[Point]) -> bool:
    x, y = pt
    inside = False
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        if (y1 > y) != (y2 > y) and x < x1 + (y - y1) * (x2 - x1) / (y2 - y1):
            inside = not inside
    return inside


def contours(G: SnakeGraph, M: Matching, M_minus: Matching) -> list[list[Point]]:
    """
    Directed cycles of the superposition of M and M_minus with the 2-cycles
    removed.  M edges point black -> white, M_minus edges white -> black.
    """
    succ: dict[Point, Point] = {}
    for i in set(M) ^ set(M_minus):
        e = G.edges[i]
        black, white = (e.u, e.v) if _is_black(e.u) else (e.v, e.u)
        if i in M:
            succ[black] = white
        else:
            succ[white] = black
    cycles, seen = [], set()
    for start in sorted(succ):
        if start in seen:
            continue
        cyc, p = [], start
        while p not in seen:
            seen.add(p)
            cyc.append(p)
            p = succ[p]
        if p != start:
            raise MatchingError("superposition is not a union of cycles")
        cycles.append(cyc)
    return cycles


def _signed_area(poly: list[Point]) -> float:
    return sum(x1 * y2 - x2 * y1 for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1])) / 2


def height_function(G: SnakeGraph, M: Matching, M_minus: Matching) -> dict[int, int]:
    """
    Height of each tile: outside every contour it is 0, and crossing into a
    clockwise contour adds 1 (counter-clockwise subtracts 1).
    """
    h = {t.index: 0 for t in G.tiles}
    for cyc in contours(G, M, M_minus):
        step = 1 if _signed_area(cyc) < 0 else -1
        for t in G.tiles:
            cx, cy = t.pos
            if _point_in_polygon((cx + 0.5, cy + 0.5), cyc):
                h[t.index] += step
    return h


@dataclass(frozen=True)
class FoldedPath:
    """Complete path of length 2d+1; even steps are the crossed arcs."""

    labels: tuple[int, ...]        # surface arc labels
    fan_labels: tuple[int, ...]    # the same steps as arcs of the fan polygon
    fan_vertices: tuple[int, ...]  # 2d+2 fan vertices visited


def fold_to_path(G: SnakeGraph, M: Matching) -> FoldedPath:
    """
    Fold the induced path onto the fan polygon.  Each grid vertex of tile k
    is a corner of one of the fan triangles D_{k-1}, D_k, so the walk can be
    replayed on the fan's marked points.
    """
    path = induced_path(G, M)
    labels, fan_labels = [], []
    for k, i in enumerate(path.matching_edges):
        e = G.edges[i]
        labels.append(e.label)
        fan_labels.append(e.fan_label)
        if k < G.d:
            labels.append(G.crossings[k])
            fan_labels.append(k + 1)
    verts = _fan_vertices(G, path)
    return FoldedPath(tuple(labels), tuple(fan_labels), tuple(verts))


# planar clockwise (start, end) of the sides of the two triangles of a tile
_LOWER = {"W": ("SW", "NW"), "D": ("NW", "SE"), "S": ("SE", "SW")}
_UPPER = {"N": ("NW", "NE"), "E": ("NE", "SE"), "D": ("SE", "NW")}


def fan_vertex_map(G: SnakeGraph) -> dict[Point, int]:
    """
    Fan marked point under every grid point.  A side's start in the surface's
    clockwise order is its planar clockwise start in tiles of orientation +1
    and its planar end in tiles of orientation -1.
    """
    fan = G.fan.triangulation
    corner = vertex_of_corner(fan)
    where: dict[Point, int] = {}
    for t in G.tiles:
        k = t.index
        for tri_idx, sides in ((k - 1, _LOWER), (k, _UPPER)):
            tri = fan.triangles[tri_idx]
            for side, (a, b) in sides.items():
                fl = k if side == "D" else t.fan_sides[side]
                start = a if t.rel_orientation > 0 else b
                v = corner[(tri_idx, tri.index(fl))]
                gp = t.corner(start)
                if where.setdefault(gp, v) != v:
                    raise MatchingError(f"grid point {gp} folds onto two fan vertices")
    return where


def _fan_vertices(G: SnakeGraph, path: InducedPath) -> list[int]:
    where = fan_vertex_map(G)
    return [where[p] for p in path.vertices]


@dataclass(frozen=True)
class MatchingInfo:
    edges: tuple[int, ...]
    weight: tuple[int, ...]
    y: tuple[int, ...]
    heights: tuple[int, ...]
    path: tuple[int, ...]


def describe(G: SnakeGraph, M: Matching, M_minus: Matching) -> MatchingInfo:
    h = height_function(G, M, M_minus)
    return MatchingInfo(tuple(sorted(M)), weight(G, M), y_monomial_symmdiff(G, M, M_minus),
                        tuple(h[t.index] for t in G.tiles), fold_to_path(G, M).labels)


__all__ = [
    "Matching", "MatchingError", "enumerate_matchings", "count_matchings", "weight",
    "boundary_matchings", "y_monomial_oriented", "y_monomial_symmdiff", "enclosed_tiles",
    "height_function", "contours", "induced_path", "fold_to_path", "describe",
    "is_perfect_matching", "oriented_tiles", "y_of_tiles", "fan_vertex_map", "MatchingInfo", "InducedPath", "FoldedPath",
]
