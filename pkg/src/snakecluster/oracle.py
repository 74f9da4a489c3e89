"""
Independent route to cluster variables: seed mutation with principal
coefficients, driven by a flip sequence that turns the arc into an arc of
the triangulation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .poly import LaurentPoly
from .surface import (ArcError, ArcSpec, Quadrilateral, Triangulation, b_matrix,
                      connecting_arcs, flip, rotate_to)


class LaurentViolation(ArithmeticError):
    """A mutation produced a non-Laurent expression."""


def exact_divide(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """
    p / q in Z[x^+-1, y], raising LaurentViolation unless the division is exact.

    Long division along the lex term order, which is a group order on the
    x-part, so the leading term of every remainder is the product of the
    leading terms of the remaining quotient and of q.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n = p.nvars
    qt = list(q.items())
    (lx, ly), lc = qt[-1]
    rem = dict(p.items())
    quotient: dict = {}
    # quotient x-exponents of an exact division stay inside this box
    if rem:
        lo = [min(k[0][i] for k in rem) - max(k[0][i] for k, _ in qt) for i in range(n)]
        hi = [max(k[0][i] for k in rem) - min(k[0][i] for k, _ in qt) for i in range(n)]
    while rem:
        (rx, ry), rc = max(rem.items())
        sx = tuple(a - b for a, b in zip(rx, lx))
        sy = tuple(a - b for a, b in zip(ry, ly))
        if any(e < 0 for e in sy) or rc % lc or any(not lo[i] <= sx[i] <= hi[i] for i in range(n)):
            raise LaurentViolation("division is not exact in the Laurent ring")
        sc = rc // lc
        quotient[(sx, sy)] = sc
        for (ex, ey), c in qt:
            key = (tuple(a + b for a, b in zip(ex, sx)), tuple(a + b for a, b in zip(ey, sy)))
            v = rem.get(key, 0) - c * sc
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return LaurentPoly(n, quotient)


def matrix_mutation(M: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    """Standard mutation of a (possibly rectangular) matrix in column k (0-based)."""
    rows, cols = len(M), len(M[0])
    out = [list(r) for r in M]
    for i in range(rows):
        for j in range(cols):
            if i == k or j == k:
                out[i][j] = -M[i][j]
            else:
                prod = M[i][k] * M[k][j]
                if prod > 0:
                    out[i][j] = M[i][j] + (1 if M[i][k] > 0 else -1) * prod
    return out


@dataclass(frozen=True)
class Seed:
    """
    ``B`` is the exchange matrix of the triangulation; the exchange relation
    in direction k reads row k of ``B``.  ``C[j][i]`` is the exponent of y_j in
    the tropical coefficient i.
    """

    B: tuple[tuple[int, ...], ...]
    cluster: tuple[LaurentPoly, ...]
    C: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.B)

    @classmethod
    def initial(cls, B: Sequence[Sequence[int]]) -> Seed:
        n = len(B)
        return cls(tuple(tuple(r) for r in B),
                   tuple(LaurentPoly.x(n, i) for i in range(1, n + 1)),
                   tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def tropical(self, k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Exponent vectors of (y_k^+, y_k^-) for direction k (1-based)."""
        col = [self.C[j][k - 1] for j in range(self.n)]
        return tuple(max(c, 0) for c in col), tuple(max(-c, 0) for c in col)


def mutate(seed: Seed, k: int) -> Seed:
    n = seed.n
    if not 1 <= k <= n:
        raise ValueError(f"direction {k} out of range 1..{n}")
    row = seed.B[k - 1]
    yplus, yminus = seed.tropical(k)
    plus = LaurentPoly.monomial(n, yexp=yplus)
    minus = LaurentPoly.monomial(n, yexp=yminus)
    for i, b in enumerate(row):
        if b > 0:
            plus = plus * seed.cluster[i] ** b
        elif b < 0:
            minus = minus * seed.cluster[i] ** (-b)
    new_var = exact_divide(plus + minus, seed.cluster[k - 1])
    # extended matrix with columns indexed by exchange directions
    ext = [[seed.B[j][i] for j in range(n)] for i in range(n)] + [list(r) for r in seed.C]
    ext = matrix_mutation(ext, k - 1)
    B = tuple(tuple(ext[j][i] for j in range(n)) for i in range(n))
    cluster = list(seed.cluster)
    cluster[k - 1] = new_var
    return Seed(B, tuple(cluster), tuple(tuple(r) for r in ext[n:]))


def sign_coherent(seed: Seed) -> bool:
    """Every c-vector has entries of one sign (observed, not assumed)."""
    cols = [[seed.C[j][i] for j in range(seed.n)] for i in range(seed.n)]
    return all(all(c >= 0 for c in col) or all(c <= 0 for c in col) for col in cols)


# -- moving the arc along flips -------------------------------------------

N1, N2 = "N1", "N2"


def transport_arcspec(T: Triangulation, a: ArcSpec, quad: Quadrilateral) -> ArcSpec:
    """
    Crossing sequence of the same arc after the flip recorded in ``quad``
    (performed on ``T``).  Each passage of the arc through the quadrilateral
    is replaced by a passage through the new pair of triangles; it crosses
    the new diagonal exactly when its entry and exit lie on different sides
    of it.  An empty result means the arc is the new diagonal itself.
    """
    k = quad.diagonal
    t1, t2 = quad.triangles
    rot = {t1: rotate_to(T.triangles[t1], k), t2: rotate_to(T.triangles[t2], k)}
    rho1, sigma1, rho2, sigma2 = quad.sides
    if rot[t1][1:] != (sigma2, rho1) or rot[t2][1:] != (sigma1, rho2):
        raise ArcError("quadrilateral does not match the triangulation")
    both = frozenset((N1, N2))
    # new triangle(s) touching each side / corner of the old triangles
    side_region = {(t1, 1): {N2}, (t1, 2): {N1}, (t2, 1): {N1}, (t2, 2): {N2}}
    # corner opposite position p in the rotated triple (k, ., .)
    corner_region = {(t1, 0): both, (t1, 1): {N1}, (t1, 2): {N2},
                     (t2, 0): both, (t2, 1): {N2}, (t2, 2): {N1}}

    chain = connecting_arcs(T, a).triangle_chain
    d = a.d
    inq = [t in (t1, t2) for t in chain]
    internal = [inq[p] and inq[p + 1] and a.crossings[p] == k for p in range(d)]

    def side(t, label):
        return side_region[(t, rot[t].index(label))]

    def vertex(t, label):
        return corner_region[(t, rot[t].index(label))]

    out: list[int] = []
    start = a.start_triangle
    p = 0
    while p <= d:
        if inq[p]:
            j = p
            while p < d and internal[p]:
                p += 1
            l = p
            entry = vertex(chain[0], a.crossings[0]) if j == 0 else side(chain[j], a.crossings[j - 1])
            exit_ = vertex(chain[d], a.crossings[d - 1]) if l == d else side(chain[l], a.crossings[l])
            common = set(entry) & set(exit_)
            if common == both:
                if j == 0 and l == d:
                    return ArcSpec((), t1)
                raise ArcError("arc runs between the two ends of the new diagonal mid-way")
            crosses = not common
            if crosses:
                out.append(k)
            if j == 0:
                region = entry if crosses else common
                if len(region) != 1:
                    raise ArcError("ambiguous start after transport")
                start = t1 if next(iter(region)) == N1 else t2
        if p < d and not internal[p]:
            out.append(a.crossings[p])
        p += 1
    return ArcSpec(tuple(out), start)


def _state_key(T: Triangulation, a: ArcSpec) -> tuple:
    start = tuple(rotate_to(T.triangles[a.start_triangle], min(T.triangles[a.start_triangle])))
    return T.canonical(), a.crossings, start


def find_flip_sequence(T: Triangulation, a: ArcSpec, max_depth: int | None = None) -> list[int] | None:
    """
    Iterative deepening over flips of arcs currently crossed by the arc,
    trying the flips that leave fewest crossings first.  Returns the flipped
    labels (the last one becomes the arc) or None if nothing is found within
    ``max_depth`` (default d + 4).
    """
    if not a.crossings:
        return []
    if max_depth is None:
        max_depth = a.d + 4

    def children(T, a):
        out = []
        for k in sorted(set(a.crossings)):
            T2, quad = flip(T, k)
            a2 = transport_arcspec(T, a, quad)
            out.append((a2.d, k, T2, a2))
        out.sort(key=lambda c: (c[0], c[1]))
        return out

    for limit in range(1, max_depth + 1):
        seen: dict[tuple, int] = {}

        def dfs(T, a, depth):
            if not a.crossings:
                return []
            if depth == limit:
                return None
            key = _state_key(T, a)
            if seen.get(key, -1) >= limit - depth:
                return None
            seen[key] = limit - depth
            for _, k, T2, a2 in children(T, a):
                rest = dfs(T2, a2, depth + 1)
                if rest is not None:
                    return [k] + rest
            return None

        found = dfs(T, a, 0)
        if found is not None:
            return found
    return None


class FlipSearchFailed(LookupError):
    pass


def run_flips(T: Triangulation, flips: Sequence[int]) -> tuple[Triangulation, Seed]:
    """Flip and mutate in lockstep, checking the matrices stay equal."""
    seed = Seed.initial(b_matrix(T))
    for k in flips:
        T, _ = flip(T, k)
        seed = mutate(seed, k)
        if [list(r) for r in seed.B] != b_matrix(T):
            raise AssertionError(f"flip {k} and matrix mutation disagree")
    return T, seed


def oracle_expand(T: Triangulation, a: ArcSpec, max_depth: int | None = None) -> LaurentPoly:
    flips = find_flip_sequence(T, a, max_depth)
    if flips is None:
        raise FlipSearchFailed(f"no flip sequence within depth {max_depth or a.d + 4}")
    if not flips:
        raise ValueError("arc without crossings has no slot to read")
    _, seed = run_flips(T, flips)
    return seed.cluster[flips[-1] - 1]
