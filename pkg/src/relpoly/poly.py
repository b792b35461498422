"""Exact polynomial arithmetic for connected-set and node reliability work.

Two representations:

* ``IntPoly`` — dense power-basis polynomial with arbitrary-precision
  integer coefficients; the connected set polynomial C(G;x) lives here.
* ``CForm`` — the coefficient vector (c_1, ..., c_n) together with the
  order n; this is the node reliability polynomial written in the basis
  p^k (1-p)^(n-k) and is the canonical exact representation.

All transforms are exact integer/rational arithmetic; nothing here ever
touches floating point.  Root finding happens in :mod:`relpoly.roots`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .connected import connected_counts
from .graph import Graph


class IntPoly:
    """Dense univariate polynomial over Z, index = power, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "IntPoly":
        return cls((0,) * power + (coeff,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == IntPoly((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, complex, mpmath types."""
        result = 0 * x  # zero of the argument's type
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def compose(self, other: "IntPoly") -> "IntPoly":
        """self(other(x)), exact."""
        result = IntPoly()
        for c in reversed(self.coeffs):
            result = result * other + IntPoly((c,))
        return result

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def shift(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"


X = IntPoly((0, 1))
ONE = IntPoly((1,))


@dataclass(frozen=True)
class CForm:
    """NRel(G;p) = sum_k c_k p^k (1-p)^(n-k) held as (n, (c_1..c_n))."""

    n: int
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.c) != self.n:
            raise ValueError("coefficient vector must have length n")

    def coeff(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise IndexError(f"k must be in 1..{self.n}")
        return self.c[k - 1]

    def eval(self, p: Fraction) -> Fraction:
        """Exact evaluation; the sign oracle for all real-root work."""
        p = Fraction(p)
        q = 1 - p
        total = Fraction(0)
        ppow = p
        qpows = [Fraction(1)]
        for _ in range(self.n):
            qpows.append(qpows[-1] * q)
        for k in range(1, self.n + 1):
            total += self.c[k - 1] * ppow * qpows[self.n - k]
            ppow *= p
        return total

    def expand(self) -> IntPoly:
        """Power-basis polynomial in p, by binomial expansion of (1-p)^(n-k)."""
        one_minus = IntPoly((1, -1))
        powers = [ONE]
        for _ in range(self.n):
            powers.append(powers[-1] * one_minus)
        total = IntPoly()
        for k in range(1, self.n + 1):
            ck = self.c[k - 1]
            if ck:
                total = total + (powers[self.n - k] * ck).shift(k)
        return total

    def to_cpoly(self) -> IntPoly:
        """The connected set polynomial sum_k c_k x^k."""
        return IntPoly((0,) + self.c)


def cform_eval(f: CForm, p) -> Fraction:
    return f.eval(Fraction(p))


def cform_expand(f: CForm) -> IntPoly:
    return f.expand()


# ---------------------------------------------------------------------------
# graph -> polynomial bridges

def connected_set_polynomial(g: Graph, budget: int = 10**9) -> IntPoly:
    """C(G;x) = sum_k c_k x^k with constant term 0."""
    cc = connected_counts(g, budget=budget)
    return IntPoly((0,) + cc.counts)


def nrel_cform(g: Graph, budget: int = 10**9) -> CForm:
    cc = connected_counts(g, budget=budget)
    return CForm(cc.n, cc.counts)


# ---------------------------------------------------------------------------
# the two basis transforms (the substitution identities behind
# NRel(G;p) = (1-p)^n C(G; p/(1-p)) and C(G;x) = (1+x)^n NRel(G; x/(1+x)))

def cpoly_to_nrel(cpoly: IntPoly, n: int) -> CForm:
    """Read the c-vector out of a connected set polynomial."""
    if cpoly.degree > n:
        raise ValueError(f"degree {cpoly.degree} exceeds order {n}")
    if cpoly.coeffs and cpoly.coeffs[0] != 0:
        raise ValueError("connected set polynomial must have zero constant term")
    c = list(cpoly.coeffs[1:]) + [0] * (n - max(cpoly.degree, 0))
    return CForm(n, tuple(c[:n]))


def nrel_to_cpoly(f: CForm) -> IntPoly:
    return f.to_cpoly()


def nrel_poly_to_cform(f: IntPoly, n: int) -> CForm:
    """Recover the c-vector from a power-basis NRel polynomial.

    Implements C(G;x) = (1+x)^n NRel(G; x/(1+x)) exactly:
    C = sum_j a_j x^j (1+x)^(n-j) for NRel = sum_j a_j p^j.
    """
    if f.degree > n:
        raise ValueError(f"degree {f.degree} exceeds order {n}")
    if f.coeffs and f.coeffs[0] != 0:
        raise ValueError("node reliability polynomial must vanish at 0")
    one_plus = IntPoly((1, 1))
    powers = [ONE]
    for _ in range(n):
        powers.append(powers[-1] * one_plus)
    total = IntPoly()
    for j, aj in enumerate(f.coeffs):
        if aj:
            total = total + (powers[n - j] * aj).shift(j)
    return cpoly_to_nrel(total, n)


# ---------------------------------------------------------------------------
# closed forms

def path_cpoly(n: int) -> IntPoly:
    """C(P_n;x): c_k = n-k+1.

    Also satisfies the cleared-denominator identity
    (x-1)^2 C(P_n;x) = x^(n+2) - x^2 - n x (x-1).
    """
    if n < 1:
        raise ValueError("path needs at least one node")
    return IntPoly((0,) + tuple(n - k + 1 for k in range(1, n + 1)))


def cycle_cform(n: int) -> CForm:
    """C_n has c_k = n for k < n (k consecutive nodes) and c_n = 1."""
    if n < 3:
        raise ValueError("cycle needs at least three nodes")
    return CForm(n, (n,) * (n - 1) + (1,))


def complete_cpoly(n: int) -> IntPoly:
    """C(K_n;x) = (x+1)^n - 1: every nonempty subset is connected."""
    if n < 1:
        raise ValueError("complete graph needs at least one node")
    return IntPoly((1, 1)) ** n - 1


def lex_product_cpoly(c_g: IntPoly, n_g: int, c_h: IntPoly, n_h: int) -> IntPoly:
    """C(G.H;x) = C(G;(x+1)^n_H - 1) + n_G [C(H;x) - (x+1)^n_H + 1]."""
    inner = IntPoly((1, 1)) ** n_h - 1
    return c_g.compose(inner) + n_g * (c_h - inner)


def apex_join_cpoly(c_g: IntPoly, n: int) -> IntPoly:
    """C(G+v;x) = C(G;x) + x (x+1)^n."""
    if c_g.degree > n:
        raise ValueError(f"degree {c_g.degree} exceeds order {n}")
    return c_g + (IntPoly((1, 1)) ** n).shift(1)


def union_cpoly(parts) -> IntPoly:
    """Connected set polynomial of a disjoint union: the sum of the parts.

    ``parts`` is an iterable of (IntPoly, order) pairs; orders are checked
    against degrees, matching the NRel-side signature.
    """
    total = IntPoly()
    for cp, order in parts:
        if cp.degree > order:
            raise ValueError(f"degree {cp.degree} exceeds declared order {order}")
        total = total + cp
    return total


def union_nrel(parts) -> CForm:
    """NRel of a disjoint union: re-homogenize each part to the total order.

    NRel(G;p) = sum_i (1-p)^(n-n_i) NRel(G_i;p), which in the c-basis is
    exactly zero-padding every part's c-vector to length n and summing.
    """
    parts = list(parts)
    n = sum(f.n for f in parts)
    c = [0] * n
    for f in parts:
        for k in range(f.n):
            c[k] += f.c[k]
    return CForm(n, tuple(c))


def knn_nrel(n: int) -> CForm:
    """NRel(K_{n,n};p) = 2n p (1-p)^(2n-1) + (1 - (1-p)^n)^2, expanded exactly."""
    if n < 1:
        raise ValueError("n must be positive")
    one_minus = IntPoly((1, -1))
    poly = (2 * n) * (one_minus ** (2 * n - 1)).shift(1) + (ONE - one_minus**n) ** 2
    return nrel_poly_to_cform(poly, 2 * n)


def family_fn(n: int) -> IntPoly:
    """f_n(x) = (x-1)^2 C(P_n+v;x); clearing denominators adds a simple root at 1.

    Coefficientwise equal to x(x-1)^2 (x+1)^n + x^(n+2) - x^2 - n x (x-1).
    """
    if n < 1:
        raise ValueError("n must be positive")
    return IntPoly((1, -2, 1)) * apex_join_cpoly(path_cpoly(n), n)


def pnv_cpoly(n: int) -> IntPoly:
    """C(P_n+v;x), the family whose roots trace the limit curve."""
    return apex_join_cpoly(path_cpoly(n), n)


# ---------------------------------------------------------------------------
# serialization: big integers as decimal strings, lowest power first

def poly_to_json(f: IntPoly) -> str:
    return json.dumps({"coeffs": [str(c) for c in f.coeffs]})


def poly_from_json(text: str) -> IntPoly:
    obj = json.loads(text)
    return IntPoly(tuple(int(s) for s in obj["coeffs"]))


def cform_to_json(f: CForm) -> str:
    return json.dumps({"n": f.n, "c": [str(c) for c in f.c]})


def cform_from_json(text: str) -> CForm:
    obj = json.loads(text)
    return CForm(int(obj["n"]), tuple(int(s) for s in obj["c"]))


def binomial(n: int, k: int) -> int:
    return comb(n, k)
