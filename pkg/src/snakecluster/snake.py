"""
Snake graphs of arcs.

Tiles are unit squares on the integer grid, tile 1 at the origin, each with
its diagonal running from the NW to the SE corner.  Tile k is the
quadrilateral around the k-th crossed arc: its lower-left triangle is the
triangle the arc leaves, its upper-right triangle the one it enters.  Tile
k+1 sits north or east of tile k, whichever side of tile k carries the
connecting arc.

Labels are placed through the fan polygon of the arc: the chain of
triangles D_0..D_d glued along the crossed arcs, with every arc given its
own label.  A tile of orientation +1 maps the planar clockwise order
(diagonal, N, E) and (diagonal, S, W) onto the clockwise order of the
surface; orientation -1 swaps N<->E and S<->W.  Orientations alternate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .surface import ArcSpec, Triangulation, connecting_arcs, rotate_to, vertex_of_corner

NORTH, EAST = "N", "E"
Point = tuple[int, int]

# corner offsets of each side, in a fixed (u, v) order
_SIDE_ENDS = {
    "S": ((0, 0), (1, 0)),
    "W": ((0, 0), (0, 1)),
    "N": ((0, 1), (1, 1)),
    "E": ((1, 0), (1, 1)),
    "D": ((0, 1), (1, 0)),
}


@dataclass(frozen=True)
class FanPolygon:
    """
    The triangulated (d+3)-gon swept out by an arc.

    Interior arcs are labelled 1..d in crossing order, boundary arcs
    d+1..2d+3.  ``projection`` sends every fan label to the surface label it
    covers.
    """

    triangulation: Triangulation
    projection: dict[int, int]
    start_vertex: int
    end_vertex: int

    @property
    def d(self) -> int:
        return self.triangulation.n

    def arc(self) -> ArcSpec:
        return ArcSpec(tuple(range(1, self.d + 1)), 0)


def fan_polygon(T: Triangulation, a: ArcSpec) -> FanPolygon:
    conn = connecting_arcs(T, a)
    d = a.d
    cross = a.crossings
    projection = {k: cross[k - 1] for k in range(1, d + 1)}
    triangles = []
    next_boundary = d + 1
    for k, tj in enumerate(conn.triangle_chain):
        tri = T.triangles[tj]
        fan_tri = [0, 0, 0]
        known = {}
        if k >= 1:
            known[tri.index(cross[k - 1])] = k
        if k < d:
            known[tri.index(cross[k])] = k + 1
        # rotate so that boundary labels are handed out in clockwise order
        first = min(known)
        order = [(first + p) % 3 for p in range(3)]
        for p in order:
            if p in known:
                fan_tri[p] = known[p]
            else:
                fan_tri[p] = next_boundary
                projection[next_boundary] = tri[p]
                next_boundary += 1
        triangles.append(tuple(fan_tri))
    fan = Triangulation(d, d + 3, tuple(triangles))
    corner = vertex_of_corner(fan)
    p0 = triangles[0].index(1)
    pd = triangles[d].index(d)
    # the corner opposite side p is the start of side p + 2
    return FanPolygon(fan, projection,
                      start_vertex=corner[(0, (p0 + 2) % 3)],
                      end_vertex=corner[(d, (pd + 2) % 3)])


@dataclass(frozen=True)
class Tile:
    index: int
    diagonal: int
    sides: dict[str, int]
    fan_sides: dict[str, int]
    rel_orientation: int
    pos: Point

    def corner(self, name: str) -> Point:
        x, y = self.pos
        return {"SW": (x, y), "SE": (x + 1, y), "NW": (x, y + 1), "NE": (x + 1, y + 1)}[name]


@dataclass(frozen=True)
class Edge:
    u: Point
    v: Point
    label: int
    diagonal: bool
    boundary: bool
    tiles: tuple[int, ...]
    fan_label: int

    def other(self, p: Point) -> Point:
        return self.v if p == self.u else self.u


@dataclass(frozen=True)
class SnakeGraph:
    """
    ``edges`` lists the 3d+1 edges of G first (in tile order), then the d
    diagonals, so ``edges[:n_plain]`` is the graph without diagonals.
    """

    nvars: int
    crossings: tuple[int, ...]
    connecting: tuple[int, ...]
    tiles: tuple[Tile, ...]
    glue_dirs: tuple[str, ...]
    vertices: tuple[Point, ...]
    edges: tuple[Edge, ...]
    fan: FanPolygon

    @property
    def d(self) -> int:
        return len(self.tiles)

    @property
    def n_plain(self) -> int:
        return 3 * self.d + 1

    @property
    def plain_edges(self) -> tuple[Edge, ...]:
        return self.edges[: self.n_plain]

    def diagonal_edge(self, k: int) -> Edge:
        return self.edges[self.n_plain + k - 1]

    def tile_edges(self, k: int) -> list[int]:
        """Indices of the four non-diagonal edges of tile k."""
        return [i for i, e in enumerate(self.plain_edges) if k in e.tiles]

    def x_label(self, label: int) -> int | None:
        """Cluster variable index carried by an arc label (None for boundary)."""
        return label if 1 <= label <= self.nvars else None

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "crossings": list(self.crossings),
            "connecting": list(self.connecting),
            "glue_dirs": list(self.glue_dirs),
            "tiles": [{"index": t.index, "diagonal": t.diagonal, "pos": list(t.pos),
                       "rel_orientation": t.rel_orientation,
                       "sides": {s: t.sides[s] for s in "NESW"}} for t in self.tiles],
            "edges": [{"u": list(e.u), "v": list(e.v), "label": e.label,
                       "diagonal": e.diagonal, "boundary": e.boundary,
                       "tiles": list(e.tiles)} for e in self.edges],
        }


def build_snake(T: Triangulation, a: ArcSpec, mirror: bool = False) -> SnakeGraph:
    """
    Glue the tiles of the arc.  ``mirror`` draws tile 1 with orientation -1,
    which reflects the whole picture in the NE diagonal.
    """
    fan = fan_polygon(T, a)
    ftris = fan.triangulation.triangles
    proj = fan.projection
    d = a.d
    base = -1 if mirror else 1
    conn = [proj[ftris[k][[i for i in range(3) if ftris[k][i] > d][0]]] for k in range(1, d)]

    tiles: list[Tile] = []
    glue: list[str] = []
    pos = (0, 0)
    for k in range(1, d + 1):
        rel = base if k % 2 else -base
        _, s, w = rotate_to(ftris[k - 1], k)
        _, nn, e = rotate_to(ftris[k], k)
        if rel < 0:
            s, w, nn, e = w, s, e, nn
        fan_sides = {"N": nn, "E": e, "S": s, "W": w}
        if k > 1:
            prev = tiles[-1]
            px, py = prev.pos
            if glue[-1] == NORTH:
                pos = (px, py + 1)
                assert fan_sides["S"] == prev.fan_sides["N"]
            else:
                pos = (px + 1, py)
                assert fan_sides["W"] == prev.fan_sides["E"]
        tile = Tile(k, a.crossings[k - 1], {side: proj[f] for side, f in fan_sides.items()},
                    fan_sides, rel, pos)
        tiles.append(tile)
        if k < d:
            # connecting arcs of the fan are the boundary labels d+3 .. 2d+1
            link = d + 2 + k
            if fan_sides["N"] == link:
                glue.append(NORTH)
            elif fan_sides["E"] == link:
                glue.append(EAST)
            else:
                raise AssertionError(f"connecting arc of tile {k} is neither north nor east")

    plain: list[Edge] = []
    for t in tiles:
        k = t.index
        for side in ("S", "W", "N", "E"):
            if k > 1 and side == ("S" if glue[k - 2] == NORTH else "W"):
                continue
            shared = k < d and side == ("N" if glue[k - 1] == NORTH else "E")
            (ux, uy), (vx, vy) = _SIDE_ENDS[side]
            x, y = t.pos
            plain.append(Edge((x + ux, y + uy), (x + vx, y + vy), t.sides[side], False,
                              not shared, (k, k + 1) if shared else (k,), t.fan_sides[side]))
    diags = []
    for t in tiles:
        x, y = t.pos
        diags.append(Edge((x, y + 1), (x + 1, y), t.diagonal, True, False, (t.index,), t.index))
    vertices = sorted({p for e in plain for p in (e.u, e.v)})
    return SnakeGraph(T.n, tuple(a.crossings), tuple(conn), tuple(tiles), tuple(glue),
                      tuple(vertices), tuple(plain + diags), fan)
