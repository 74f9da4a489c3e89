"""
Sparse Laurent polynomials in two families of variables.

A term is indexed by a pair ``(xexp, yexp)`` of exponent tuples.  The
x-exponents are arbitrary integers, the y-exponents are nonnegative (the
coefficient variables only ever appear as honest monomials).  Coefficients
are Python ints, so nothing overflows.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

Exp = tuple[int, ...]
Key = tuple[Exp, Exp]


class DimensionError(ValueError):
    pass


class _Heterogeneous:
    """Returned by :func:`multidegree` when terms have different degrees."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "HETEROGENEOUS"

    def __bool__(self):
        return False


HETEROGENEOUS = _Heterogeneous()


class LaurentPoly:
    """Immutable sparse polynomial in x_1..x_n (Laurent) and y_1..y_n."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Key, int] | Iterable[tuple[Key, int]] = ()):
        self.nvars = nvars
        acc: dict[Key, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (xe, ye), c in items:
            xe, ye = tuple(xe), tuple(ye)
            if len(xe) != nvars or len(ye) != nvars:
                raise DimensionError(f"exponent length mismatch, expected {nvars}")
            if any(e < 0 for e in ye):
                raise ValueError(f"negative y-exponent in {ye}")
            acc[(xe, ye)] = acc.get((xe, ye), 0) + c
        self._terms = {k: acc[k] for k in sorted(acc) if acc[k] != 0}
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> LaurentPoly:
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: int = 1) -> LaurentPoly:
        z = (0,) * nvars
        return cls(nvars, {(z, z): c})

    @classmethod
    def monomial(cls, nvars: int, xexp: Sequence[int] | None = None,
                 yexp: Sequence[int] | None = None, coeff: int = 1) -> LaurentPoly:
        xe = tuple(xexp) if xexp is not None else (0,) * nvars
        ye = tuple(yexp) if yexp is not None else (0,) * nvars
        return cls(nvars, {(xe, ye): coeff})

    @classmethod
    def x(cls, nvars: int, i: int, power: int = 1) -> LaurentPoly:
        """The variable x_i (1-based) raised to ``power``."""
        xe = [0] * nvars
        xe[i - 1] = power
        return cls.monomial(nvars, xe)

    @classmethod
    def y(cls, nvars: int, i: int, power: int = 1) -> LaurentPoly:
        ye = [0] * nvars
        ye[i - 1] = power
        return cls.monomial(nvars, yexp=ye)

    # -- access -------------------------------------------------------

    @property
    def terms(self) -> dict[Key, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, xexp: Sequence[int], yexp: Sequence[int]) -> int:
        return self._terms.get((tuple(xexp), tuple(yexp)), 0)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self._terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: LaurentPoly):
        if self.nvars != other.nvars:
            raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other):
        if isinstance(other, int):
            return LaurentPoly.const(self.nvars, other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        return LaurentPoly(self.nvars, list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        acc: dict[Key, int] = {}
        for (xa, ya), ca in self._terms.items():
            for (xb, yb), cb in other._terms.items():
                key = (tuple(a + b for a, b in zip(xa, xb)),
                       tuple(a + b for a, b in zip(ya, yb)))
                acc[key] = acc.get(key, 0) + ca * cb
        return LaurentPoly(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers only exist for monomials; use divide_by_x_monomial")
        result = LaurentPoly.const(self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def __repr__(self):
        return f"LaurentPoly({render(self)})"

    def __str__(self):
        return render(self)


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def divide_by_x_monomial(p: LaurentPoly, d: Sequence[int]) -> LaurentPoly:
    """Divide by x_1^d_1 ... x_n^d_n; exact in the Laurent ring."""
    if len(d) != p.nvars:
        raise DimensionError(f"exponent length {len(d)} != nvars {p.nvars}")
    return LaurentPoly(p.nvars, {(tuple(a - b for a, b in zip(xe, d)), ye): c
                                 for (xe, ye), c in p.items()})


def substitute_x_ones(p: LaurentPoly) -> LaurentPoly:
    z = (0,) * p.nvars
    return LaurentPoly(p.nvars, [((z, ye), c) for (_, ye), c in p.items()])


def evaluate_ones(p: LaurentPoly) -> int:
    """Value at x = y = 1."""
    return sum(c for _, c in p.items())


def multidegree(p: LaurentPoly, B: Sequence[Sequence[int]]):
    """
    Common degree of all terms of ``p`` under deg(x_i) = e_i and
    deg(y_j) = B e_j (the j-th column of ``B``), or ``HETEROGENEOUS``.
    """
    n = p.nvars
    if len(B) != n or any(len(row) != n for row in B):
        raise DimensionError("B must be n x n")
    if p.is_zero():
        raise ValueError("the zero polynomial has no degree")
    degree = None
    for (xe, ye), _ in p.items():
        deg = tuple(xe[i] + sum(ye[j] * B[i][j] for j in range(n)) for i in range(n))
        if degree is None:
            degree = deg
        elif deg != degree:
            return HETEROGENEOUS
    return degree


def split_fraction(p: LaurentPoly) -> tuple[LaurentPoly, tuple[int, ...]]:
    """Write ``p`` as numerator / x^d with d >= 0 minimal (a reduced fraction)."""
    if p.is_zero():
        return p, (0,) * p.nvars
    d = tuple(max(0, -min(xe[i] for (xe, _), _ in p.items())) for i in range(p.nvars))
    num = LaurentPoly(p.nvars, {(tuple(a + b for a, b in zip(xe, d)), ye): c
                                for (xe, ye), c in p.items()})
    return num, d


def _monomial_str(xe: Exp, ye: Exp) -> str:
    parts = []
    for name, exps in (("x", xe), ("y", ye)):
        for i, e in enumerate(exps, start=1):
            if e == 1:
                parts.append(f"{name}{i}")
            elif e != 0:
                parts.append(f"{name}{i}^{e}")
    return "*".join(parts)


def render(p: LaurentPoly) -> str:
    """Canonical text form, e.g. ``x1^-2*x4^2*y1 + 2*x3``."""
    if p.is_zero():
        return "0"
    out = []
    for (xe, ye), c in p.items():
        mono = _monomial_str(xe, ye)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


def monomial_to_json(xe: Exp, ye: Exp, c: int) -> dict:
    return {"coeff": c, "x": list(xe), "y": list(ye)}


def to_json(p: LaurentPoly) -> dict:
    return {"nvars": p.nvars, "terms": [monomial_to_json(xe, ye, c) for (xe, ye), c in p.items()]}


def parse_monomial(text: str, nvars: int) -> LaurentPoly:
    """Parse ``2*x1^-2*y3`` style monomials; used by tests and golden files."""
    text = text.strip()
    coeff = 1
    xe = [0] * nvars
    ye = [0] * nvars
    for factor in text.split("*"):
        factor = factor.strip()
        if not factor:
            continue
        if factor[0] in "xy":
            base, _, power = factor.partition("^")
            idx = int(base[1:])
            exps = xe if base[0] == "x" else ye
            exps[idx - 1] += int(power) if power else 1
        else:
            coeff *= int(factor)
    return LaurentPoly.monomial(nvars, xe, ye, coeff)


def parse(text: str, nvars: int) -> LaurentPoly:
    """Inverse of :func:`render` (sums/differences of monomials)."""
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero(nvars)
    result = LaurentPoly.zero(nvars)
    sign = 1
    for tok in text.replace(" - ", " + -").split(" + "):
        tok = tok.strip()
        sign = 1
        if tok.startswith("-"):
            sign, tok = -1, tok[1:]
        result = result + parse_monomial(tok, nvars) * sign
    return result
