import pytest

from snakecluster.snake import build_snake, fan_polygon
from snakecluster.surface import ArcSpec, Triangulation, connecting_arcs, rotate_to, topology, validate
from conftest import corpus

QUAD = Triangulation(1, 4, ((1, 2, 3), (1, 4, 5)))
CORPUS = corpus()


def test_example_snake(T7, a7):
    G = build_snake(T7, a7)
    assert G.d == 6
    assert [t.diagonal for t in G.tiles] == [1, 2, 3, 4, 1, 2]
    shared = [e.label for e in G.plain_edges if len(e.tiles) == 2]
    assert shared == [6, 8, 7, 5, 6]
    assert G.connecting == (6, 8, 7, 5, 6)
    assert len(G.vertices) == 14 and G.n_plain == 19


def test_single_tile():
    G = build_snake(QUAD, ArcSpec((1,), 0))
    assert G.d == 1 and G.glue_dirs == ()
    assert len(G.vertices) == 4 and len(G.plain_edges) == 4
    assert sorted(e.label for e in G.plain_edges) == [2, 3, 4, 5]
    assert all(e.boundary for e in G.plain_edges)


@pytest.mark.parametrize("name,T,a", CORPUS[::7] + CORPUS[-51:])
def test_structure(name, T, a):
    G = build_snake(T, a)
    d = a.d
    assert G.tiles[0].pos == (0, 0)
    for k in range(1, d):
        (x, y), (x2, y2) = G.tiles[k - 1].pos, G.tiles[k].pos
        assert (x2, y2) == ((x, y + 1) if G.glue_dirs[k - 1] == "N" else (x + 1, y))
    assert len(G.vertices) == 2 * (d + 1)
    assert G.n_plain == 3 * d + 1 == len(G.plain_edges)
    conn = connecting_arcs(T, a)
    shared = [e for e in G.plain_edges if len(e.tiles) == 2]
    assert [e.label for e in shared] == conn.connecting
    for k, t in enumerate(G.tiles, start=1):
        assert t.rel_orientation == (1 if k % 2 else -1)
        diag = G.diagonal_edge(k)
        assert (diag.u, diag.v) == (t.corner("NW"), t.corner("SE")) and diag.label == a.crossings[k - 1]
        # the four sides are the quadrilateral around the crossed arc
        lo = T.triangles[conn.triangle_chain[k - 1]]
        hi = T.triangles[conn.triangle_chain[k]]
        quad = sorted(rotate_to(lo, t.diagonal)[1:] + rotate_to(hi, t.diagonal)[1:])
        assert sorted(t.sides.values()) == quad
        assert sorted(G.edges[i].label for i in G.tile_edges(k)) == quad
    # every vertex lies on some edge; edges are unit segments
    for e in G.edges:
        assert abs(e.u[0] - e.v[0]) + abs(e.u[1] - e.v[1]) == (2 if e.diagonal else 1)
    # boundary edges form the outer cycle of length 2d+2
    assert sum(e.boundary for e in G.plain_edges) == 2 * d + 2


@pytest.mark.parametrize("name,T,a", CORPUS[::11])
def test_fan_polygon(name, T, a):
    fan = fan_polygon(T, a)
    F = fan.triangulation
    assert F.n == a.d and F.m == a.d + 3
    assert validate(F) == []
    assert topology(F) == (0, 1, a.d + 3, 0)
    for k in range(1, a.d + 1):
        assert fan.projection[k] == a.crossings[k - 1]
    for j, tri in enumerate(F.triangles):
        assert sorted(fan.projection[s] for s in tri) == sorted(T.triangles[connecting_arcs(T, a).triangle_chain[j]])
    assert fan.start_vertex != fan.end_vertex or a.d == 0


def test_fan_single():
    fan = fan_polygon(QUAD, ArcSpec((1,), 0))
    assert len(fan.triangulation.triangles) == 2
    assert fan.triangulation.n == 1 and fan.triangulation.m == 4


def test_mirror_transposes(T7, a7):
    G = build_snake(T7, a7)
    H = build_snake(T7, a7, mirror=True)
    assert [t.rel_orientation for t in H.tiles] == [-t.rel_orientation for t in G.tiles]
    flipped = {"N": "E", "E": "N"}
    assert H.glue_dirs == tuple(flipped[g] for g in G.glue_dirs)


def test_to_json_roundtrip_shape(T7, a7):
    data = build_snake(T7, a7).to_json()
    assert data["d"] == 6 and len(data["edges"]) == 19 + 6
    assert data["glue_dirs"] == ["E", "E", "N", "N", "E"]
