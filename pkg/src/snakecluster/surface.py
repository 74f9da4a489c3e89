"""
Triangulated unpunctured surfaces, given purely combinatorially.

Arcs are labelled 1..n (interior) and n+1..n+m (boundary).  A triangle is
a triple of arc labels listed in the clockwise cyclic order of the surface
orientation.  Gluing the triangles along equal labels, reversing the edge
direction each time, recovers the oriented surface; :func:`topology` does
exactly that to read off genus, boundary components and marked points.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence


class TriangulationError(ValueError):
    """Malformed triangulation data."""


class LabelError(ValueError):
    """An arc label is out of range or not interior where it must be."""


class ArcError(ValueError):
    """A crossing sequence is not consistent with the triangulation."""

    def __init__(self, msg: str, index: int | None = None):
        super().__init__(msg)
        self.index = index


@dataclass(frozen=True)
class Triangulation:
    n: int
    m: int
    triangles: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "triangles", tuple(tuple(t) for t in self.triangles))

    @property
    def labels(self) -> range:
        return range(1, self.n + self.m + 1)

    def is_interior(self, label: int) -> bool:
        return 1 <= label <= self.n

    def is_boundary(self, label: int) -> bool:
        return self.n < label <= self.n + self.m

    def triangles_of(self, label: int) -> list[int]:
        """Indices of the triangles having ``label`` as a side (with multiplicity)."""
        return [j for j, tri in enumerate(self.triangles) for s in tri if s == label]

    def other_triangle(self, label: int, j: int) -> int:
        """The triangle on the other side of interior arc ``label`` from triangle ``j``."""
        adj = self.triangles_of(label)
        if len(adj) != 2 or j not in adj:
            raise ArcError(f"arc {label} is not an interior side of triangle {j}")
        return adj[1] if adj[0] == j else adj[0]

    def canonical(self) -> tuple:
        """Encoding invariant under rotating triples and reordering the list."""
        return tuple(sorted(_rotate_min(t) for t in self.triangles))

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "triangles": [list(t) for t in self.triangles]}


def _rotate_min(t: Sequence[int]) -> tuple[int, ...]:
    i = t.index(min(t))
    return tuple(t[i:]) + tuple(t[:i])


def rotate_to(t: Sequence[int], label: int) -> tuple[int, int, int]:
    """Cyclically rotate the triple so that it starts with ``label``."""
    i = list(t).index(label)
    return tuple(t[i:]) + tuple(t[:i])


@dataclass(frozen=True)
class ArcSpec:
    """An arc given by the labels it crosses, in order, and its first triangle."""

    crossings: tuple[int, ...]
    start_triangle: int

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))

    @property
    def d(self) -> int:
        return len(self.crossings)

    def to_json(self) -> dict:
        return {"crossings": list(self.crossings), "start_triangle": self.start_triangle}


@dataclass(frozen=True)
class Quadrilateral:
    """
    The quadrilateral around interior arc ``diagonal``.

    ``sides`` are (rho1, sigma1, rho2, sigma2) in clockwise order, so the
    rhos are opposite and the sigmas are opposite.  Before the flip the
    triangle at ``triangles[0]`` reads (diagonal, sigma2, rho1) and the one at
    ``triangles[1]`` reads (diagonal, sigma1, rho2).  The rhos are the sides
    preceding the diagonal in clockwise order, so b_{k,rho} = +1 and the rhos
    go with y_k^+ in the exchange relation.
    """

    diagonal: int
    sides: tuple[int, int, int, int]
    triangles: tuple[int, int]

    @property
    def rho(self) -> tuple[int, int]:
        return self.sides[0], self.sides[2]

    @property
    def sigma(self) -> tuple[int, int]:
        return self.sides[1], self.sides[3]


@dataclass
class Connection:
    connecting: list[int]
    triangle_chain: list[int] = field(default_factory=list)


def validate(T: Triangulation) -> list[str]:
    """All violations of the triangulation invariants; empty means ok."""
    problems = []
    if T.n < 0 or T.m < 1:
        problems.append(f"bad counts n={T.n}, m={T.m}")
    counts: Counter[int] = Counter()
    for j, tri in enumerate(T.triangles):
        if len(tri) != 3:
            problems.append(f"triangle {j}: expected 3 sides, got {len(tri)}")
            continue
        if len(set(tri)) != 3:
            problems.append(f"triangle {j}: repeated side in {list(tri)}")
        for s in tri:
            if not (1 <= s <= T.n + T.m):
                problems.append(f"triangle {j}: label {s} out of range 1..{T.n + T.m}")
            counts[s] += 1
    for label in T.labels:
        want = 2 if T.is_interior(label) else 1
        if counts[label] != want:
            kind = "interior" if want == 2 else "boundary"
            problems.append(f"{kind} arc {label} occurs in {counts[label]} triangles, expected {want}")
    if 3 * len(T.triangles) != 2 * T.n + T.m:
        problems.append(f"Euler count: 3t = {3 * len(T.triangles)} but 2n + m = {2 * T.n + T.m}")
    return problems


def _corners(T: Triangulation) -> tuple[dict, list[tuple[int, int]]]:
    """
    Union the triangle corners glued together in the surface.

    Corner (j, p) of triangle j is the start of side p in clockwise order.
    Returns the corner -> class-representative map and the boundary edges
    as pairs of corner classes.
    """
    parent: dict = {}

    def find(c):
        parent.setdefault(c, c)
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    sides: dict[int, list[tuple[int, int]]] = {}
    for j, tri in enumerate(T.triangles):
        for p, s in enumerate(tri):
            find((j, p))
            sides.setdefault(s, []).append((j, p))
    for label, occ in sides.items():
        if len(occ) == 2:
            (j1, p1), (j2, p2) = occ
            # opposite directions: start of one is the end of the other
            union((j1, p1), (j2, (p2 + 1) % 3))
            union((j1, (p1 + 1) % 3), (j2, p2))
    rep = {c: find(c) for c in list(parent)}
    bnd = []
    for label, occ in sides.items():
        if len(occ) == 1:
            j, p = occ[0]
            bnd.append((rep[(j, p)], rep[(j, (p + 1) % 3)]))
    return rep, bnd


def vertex_of_corner(T: Triangulation) -> dict[tuple[int, int], int]:
    """Map each corner (triangle, side position) to a marked-point id 0..m-1."""
    rep, _ = _corners(T)
    ids = {r: i for i, r in enumerate(sorted(set(rep.values())))}
    return {c: ids[r] for c, r in rep.items()}


def boundary_component(T: Triangulation) -> dict[int, int]:
    """Marked-point id -> index of the boundary component carrying it."""
    corner = vertex_of_corner(T)
    parent: dict[int, int] = {}

    def find(v):
        parent.setdefault(v, v)
        while parent[v] != v:
            v = parent[v]
        return v

    for j, tri in enumerate(T.triangles):
        for p, s in enumerate(tri):
            if T.is_boundary(s):
                u, v = find(corner[(j, p)]), find(corner[(j, (p + 1) % 3)])
                parent[max(u, v)] = min(u, v)
    roots = sorted({find(v) for v in set(corner.values())})
    return {v: roots.index(find(v)) for v in set(corner.values())}


def arc_endpoints(T: Triangulation, a: ArcSpec) -> tuple[int, int]:
    """Marked points where the arc starts and ends (ids as in vertex_of_corner)."""
    chain = connecting_arcs(T, a).triangle_chain
    corner = vertex_of_corner(T)
    first = T.triangles[chain[0]].index(a.crossings[0])
    last = T.triangles[chain[-1]].index(a.crossings[-1])
    # the corner opposite side p is the start of side p + 2
    return corner[(chain[0], (first + 2) % 3)], corner[(chain[-1], (last + 2) % 3)]


class Topology(NamedTuple):
    genus: int
    boundaries: int
    marked: int
    punctures: int


def topology(T: Triangulation) -> Topology:
    """Genus, boundary components, marked points and punctures of the glued surface."""
    problems = validate(T)
    if problems:
        raise TriangulationError("; ".join(problems))
    rep, bnd = _corners(T)
    verts = set(rep.values())
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for a, b in bnd:
        parent[find(a)] = find(b)
    on_boundary = {v for e in bnd for v in e}
    b = len({find(v) for v in on_boundary})
    euler = len(verts) - (T.n + T.m) + len(T.triangles)
    twice_g = 2 - euler - b
    if twice_g % 2:
        raise TriangulationError(f"inconsistent Euler characteristic {euler} with {b} boundaries")
    return Topology(twice_g // 2, b, len(on_boundary), len(verts - on_boundary))


def rank_check(T: Triangulation, genus: int, boundaries: int, marked: int) -> list[str]:
    """Compare T against the rank formula n = 6g + 3b + m - 6; empty means ok."""
    if genus < 0 or boundaries < 1 or marked < 1:
        return [f"invalid surface data g={genus}, b={boundaries}, m={marked}"]
    out = []
    rank = 6 * genus + 3 * boundaries + marked - 6
    if T.n != rank:
        out.append(f"rank mismatch: triangulation has n={T.n}, formula gives {rank}")
    if T.m != marked:
        out.append(f"boundary arcs mismatch: triangulation has m={T.m}, surface has {marked} marked points")
    return out


def b_matrix(T: Triangulation) -> list[list[int]]:
    """
    Signed adjacency matrix of the interior arcs.

    Inside a triangle stored as (a, b, c) clockwise, b follows a clockwise,
    contributing b_ab = -1 and b_ba = +1; boundary sides are ignored.
    """
    n = T.n
    B = [[0] * n for _ in range(n)]
    for tri in T.triangles:
        for p in range(3):
            u, v = tri[p], tri[(p + 1) % 3]
            if T.is_interior(u) and T.is_interior(v):
                B[u - 1][v - 1] -= 1
                B[v - 1][u - 1] += 1
    for i in range(n):
        for j in range(n):
            if B[i][j] != -B[j][i] or abs(B[i][j]) > 2:
                raise TriangulationError(f"non skew-symmetric entry at ({i + 1},{j + 1})")
    return B


def connecting_arcs(T: Triangulation, a: ArcSpec) -> Connection:
    """
    Walk the triangles met by the arc.  Returns the connecting arcs (the third
    side of each intermediate triangle) and the triangle chain D_0..D_d.
    """
    if not a.crossings:
        raise ArcError("arc has no crossings", 0)
    if not (0 <= a.start_triangle < len(T.triangles)):
        raise ArcError(f"start triangle {a.start_triangle} out of range", 0)
    for k, c in enumerate(a.crossings, start=1):
        if not T.is_interior(c):
            raise ArcError(f"crossing {k} is arc {c}, which is not interior", k)
    if a.crossings[0] not in T.triangles[a.start_triangle]:
        raise ArcError(f"start triangle {a.start_triangle} does not contain arc {a.crossings[0]}", 0)
    chain = [a.start_triangle]
    connecting = []
    d = a.d
    for k in range(1, d + 1):
        cur = a.crossings[k - 1]
        nxt = T.other_triangle(cur, chain[-1])
        chain.append(nxt)
        if k < d:
            following = a.crossings[k]
            if following == cur:
                raise ArcError(f"crossings {k} and {k + 1} repeat arc {cur}", k)
            tri = T.triangles[nxt]
            if following not in tri:
                raise ArcError(f"arcs {cur} and {following} share no triangle at step {k}", k)
            (third,) = [s for s in tri if s not in (cur, following)]
            connecting.append(third)
    return Connection(connecting, chain)


def flip(T: Triangulation, k: int) -> tuple[Triangulation, Quadrilateral]:
    """Replace interior arc k by the other diagonal of its quadrilateral (label kept)."""
    if not T.is_interior(k):
        raise LabelError(f"arc {k} is not an interior arc of a triangulation with n={T.n}")
    adj = T.triangles_of(k)
    if len(adj) != 2 or adj[0] == adj[1]:
        raise LabelError(f"arc {k} does not bound two distinct triangles")
    t1, t2 = adj
    _, a, b = rotate_to(T.triangles[t1], k)
    _, c, dd = rotate_to(T.triangles[t2], k)
    tris = list(T.triangles)
    tris[t1] = (k, b, c)
    tris[t2] = (k, dd, a)
    return Triangulation(T.n, T.m, tuple(tris)), Quadrilateral(k, (b, c, dd, a), (t1, t2))


def triangulation_from_json(data: dict) -> Triangulation:
    return Triangulation(int(data["n"]), int(data["m"]),
                         tuple(tuple(int(s) for s in t) for t in data["triangles"]))


def arc_from_json(data: dict) -> ArcSpec:
    return ArcSpec(tuple(int(c) for c in data["crossings"]), int(data["start_triangle"]))
