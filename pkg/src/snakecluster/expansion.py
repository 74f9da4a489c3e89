"""
Cluster variables from snake graphs, summed two ways: over perfect
matchings, and over unions of tiles whose boundary flips M_minus.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .matching import (Matching, MatchingError, enumerate_matchings, oriented_tiles,
                       weight, y_monomial_oriented, y_of_tiles)
from .oracle import Seed
from .poly import (HETEROGENEOUS, LaurentPoly, divide_by_x_monomial, multidegree,
                   substitute_x_ones)
from .snake import SnakeGraph, build_snake
from .surface import ArcSpec, Triangulation, b_matrix, flip


class ExpansionError(RuntimeError):
    """An identity that the expansion must satisfy failed."""


class Term(NamedTuple):
    source: tuple[int, ...]   # matching edges, or the tiles of the subgraph H
    weight: tuple[int, ...]   # x-exponents of the numerator monomial
    y: tuple[int, ...]


@dataclass(frozen=True)
class Expansion:
    laurent: LaurentPoly
    denominator: tuple[int, ...]
    numerator_terms: tuple[Term, ...]

    @property
    def numerator(self) -> LaurentPoly:
        n = self.laurent.nvars
        return sum((LaurentPoly.monomial(n, t.weight, t.y) for t in self.numerator_terms),
                   LaurentPoly.zero(n))


def denominator(T: Triangulation, a: ArcSpec) -> tuple[int, ...]:
    d = [0] * T.n
    for i in a.crossings:
        d[i - 1] += 1
    return tuple(d)


def _assemble(T: Triangulation, a: ArcSpec, terms: list[Term]) -> Expansion:
    den = denominator(T, a)
    num = sum((LaurentPoly.monomial(T.n, t.weight, t.y) for t in terms), LaurentPoly.zero(T.n))
    return Expansion(divide_by_x_monomial(num, den), den, tuple(terms))


def expand(T: Triangulation, a: ArcSpec, G: SnakeGraph | None = None) -> Expansion:
    """Sum of w(M) y(M) over the perfect matchings, over the crossing monomial."""
    G = G or build_snake(T, a)
    terms = [Term(tuple(sorted(M)), weight(G, M), y_monomial_oriented(G, M))
             for M in enumerate_matchings(G)]
    return _assemble(T, a, terms)


def minus_matching(G: SnakeGraph) -> Matching:
    """
    M_minus straight from the boundary cycle: the boundary edges form one
    cycle of length 2d+2, whose two alternating halves are the all-boundary
    matchings, and M_minus is the one meeting no diagonal the oriented way.
    """
    bnd = [i for i, e in enumerate(G.plain_edges) if e.boundary]
    at: dict = {}
    for i in bnd:
        for p in (G.edges[i].u, G.edges[i].v):
            at.setdefault(p, []).append(i)
    if len(bnd) != 2 * G.d + 2 or any(len(v) != 2 for v in at.values()):
        raise MatchingError("boundary edges do not form a single cycle")
    cur, p = bnd[0], G.edges[bnd[0]].u
    halves: tuple[list, list] = ([], [])
    for step in range(len(bnd)):
        halves[step % 2].append(cur)
        p = G.edges[cur].other(p)
        a, b = at[p]
        cur = b if a == cur else a
    found = [frozenset(h) for h in halves if not oriented_tiles(G, frozenset(h))]
    if len(found) != 1:
        raise MatchingError("could not single out M_minus on the boundary")
    return found[0]


def tile_components(tiles: set[int]) -> int:
    """Number of runs of consecutive tiles; consecutive tiles share an edge."""
    return sum(1 for j in tiles if j - 1 not in tiles)


def subgraph_terms(G: SnakeGraph, M_minus: Matching | None = None) -> list[Term]:
    """
    All subgraphs H (unions of tiles) with |E(H) & M_minus| = k + c(H) for k
    tiles and c(H) components, each giving w(boundary(H) xor M_minus) y(H).
    Brute force over the 2^d tile subsets.
    """
    if M_minus is None:
        M_minus = minus_matching(G)
    plain = G.plain_edges
    out = []
    for mask in range(1 << G.d):
        H = {j + 1 for j in range(G.d) if mask >> j & 1}
        in_h = [sum(1 for t in e.tiles if t in H) for e in plain]
        edges_h = {i for i, c in enumerate(in_h) if c}
        if len(edges_h & M_minus) != len(H) + tile_components(H):
            continue
        boundary = {i for i in edges_h if in_h[i] == 1}
        M = boundary ^ M_minus
        out.append(Term(tuple(sorted(H)), weight(G, M), y_of_tiles(G, H)))
    return out


def expand_via_subgraphs(T: Triangulation, a: ArcSpec, G: SnakeGraph | None = None) -> Expansion:
    G = G or build_snake(T, a)
    return _assemble(T, a, subgraph_terms(G))


def f_polynomial(T: Triangulation, a: ArcSpec, check: bool = True) -> LaurentPoly:
    """
    The expansion at x = 1.  With ``check`` it is also summed over the
    subgraphs directly and the two must agree.
    """
    G = build_snake(T, a)
    F = substitute_x_ones(expand(T, a, G).laurent)
    if check:
        direct = sum((LaurentPoly.monomial(T.n, yexp=t.y) for t in subgraph_terms(G)),
                     LaurentPoly.zero(T.n))
        if direct != F:
            raise ExpansionError("F-polynomial differs between matchings and subgraphs")
    return F


def g_vector(T: Triangulation, a: ArcSpec, expansion: Expansion | None = None) -> tuple[int, ...]:
    """
    Degree of w(M_minus) / crossing monomial; checked against the common
    degree of all terms of the expansion.
    """
    G = build_snake(T, a)
    wm = weight(G, minus_matching(G))
    den = denominator(T, a)
    g = tuple(w - d for w, d in zip(wm, den))
    if expansion is None:
        expansion = expand(T, a, G)
    deg = multidegree(expansion.laurent, b_matrix(T))
    if deg is HETEROGENEOUS:
        raise ExpansionError("expansion is not homogeneous")
    if deg != g:
        raise ExpansionError(f"degree {deg} of the expansion differs from g-vector {g}")
    return g


@dataclass(frozen=True)
class ExchangeResult:
    ok: bool
    lhs: LaurentPoly
    rhs: LaurentPoly


def exchange_check(T: Triangulation, k: int) -> ExchangeResult:
    """
    x_k times the expansion of the flipped arc (the arc crossing k once)
    against y+ x_rho1 x_rho2 + y- x_sigma1 x_sigma2, with y+ and y- the
    tropical coefficients of the initial seed.
    """
    _, quad = flip(T, k)
    n = T.n
    arc = ArcSpec((k,), quad.triangles[0])
    lhs = LaurentPoly.x(n, k) * expand(T, arc).laurent

    def xs(labels):
        out = LaurentPoly.const(n)
        for s in labels:
            if T.is_interior(s):
                out = out * LaurentPoly.x(n, s)
        return out

    yplus, yminus = Seed.initial(b_matrix(T)).tropical(k)
    rhs = (LaurentPoly.monomial(n, yexp=yplus) * xs(quad.rho)
           + LaurentPoly.monomial(n, yexp=yminus) * xs(quad.sigma))
    return ExchangeResult(lhs == rhs, lhs, rhs)
