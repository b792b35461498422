"""Complex root finding and exact-sign real-root machinery.

Numeric side: Aberth-Ehrlich simultaneous iteration at a configurable
working precision (bits), started from perturbed-circle initial points and
finished with Newton polishing at doubled precision.  Residuals are
relative: |f(z)| / sum_j |a_j| |z|^j.

Exact side: Sturm sequences over Fraction coefficients count real roots
with no rounding at all, and CForm evaluation gives exact signs for
bisection.  Nonreal-root certification is hybrid — a numeric witness plus
the exact count must agree, otherwise the result is reported inconclusive
rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import mp, mpc, mpf

from .graph import GraphStats
from .poly import CForm, IntPoly, cycle_cform

DEFAULT_PRECISION_BITS = 256
DEFAULT_TOL = 1e-12
DEFAULT_IM_TOL = 1e-8


class RootFindingError(RuntimeError):
    """Aberth iteration failed to meet its residual contract."""


class InconclusiveRootCountError(RuntimeError):
    """Numeric root classification and the exact Sturm count disagree."""


@dataclass
class RootSet:
    """All complex roots of one polynomial, with the residual contract."""

    roots: list
    residuals: list
    precision_bits: int
    tolerance: float
    iterations: int
    clusters: tuple[tuple[int, ...], ...] = ()

    @property
    def degree(self) -> int:
        return len(self.roots)

    def real_roots(self, im_tol: float = DEFAULT_IM_TOL) -> list:
        return [z for z in self.roots if abs(mp.im(z)) <= im_tol]

    def nonreal_roots(self, im_tol: float = DEFAULT_IM_TOL) -> list:
        return [z for z in self.roots if abs(mp.im(z)) > im_tol]


def _horner(coeffs, z):
    acc = mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _horner_pair(coeffs, z):
    """(f(z), f'(z)) in one pass."""
    f = mpc(0)
    df = mpc(0)
    for c in reversed(coeffs):
        df = df * z + f
        f = f * z + c
    return f, df


def _abs_scale(coeffs, z):
    t = abs(z)
    acc = mpf(0)
    for c in reversed(coeffs):
        acc = acc * t + abs(c)
    return acc


def _circle_points(coeffs, d):
    """Perturbed-circle starting points at the geometric-mean radius."""
    radius = (abs(coeffs[0]) / abs(coeffs[-1])) ** (mpf(1) / d)
    two_pi = 2 * mp.pi
    return [
        radius * mp.exp(mpc(0, two_pi * (j + mpf(3) / 8) / d + mpf(1) / 2))
        for j in range(d)
    ]


def _initial_points(scaled, coeffs, d):
    """Candidate start configurations, best first.

    A double-precision companion-matrix solve (when the scaled coefficients
    fit floats) puts the iterates within a few ulps of the answer, so the
    high-precision sweeps only have to contract a short distance; the
    perturbed circle remains as the fallback start.
    """
    starts = []
    try:
        fl = [float(s) for s in scaled]
        if fl[-1] != 0.0 and all(np.isfinite(fl)):
            guess = np.roots(fl[::-1])
            if len(guess) == d and np.all(np.isfinite(guess)):
                pts = [mpc(w.real, w.imag) for w in guess]
                # collapse guard: exactly coincident starts break Aberth sums
                seen = set()
                ok = True
                for w in pts:
                    key = (mp.nstr(mp.re(w), 15), mp.nstr(mp.im(w), 15))
                    if key in seen:
                        ok = False
                        break
                    seen.add(key)
                if ok:
                    starts.append(pts)
    except (OverflowError, ValueError, np.linalg.LinAlgError):
        pass
    starts.append(_circle_points(coeffs, d))
    return starts


def _aberth_sweeps(coeffs, z, precision_bits, max_iter):
    """Run Aberth-Ehrlich until corrections reach the stopping threshold.

    Near multiple roots the iterates limit-cycle at a small residual level
    instead of contracting further, so besides the hard threshold there is
    a stagnation exit: once corrections are already tiny and stop improving
    for a stretch of sweeps, hand over to Newton polishing (the residual
    contract still decides acceptance).
    """
    d = len(z)
    z = list(z)
    stop = mpf(2) ** (-(precision_bits - 24))
    loose_stop = mpf(2) ** (-(precision_bits // 4))
    converged = [False] * d
    best = mpf("inf")
    since_best = 0
    for sweep in range(max_iter):
        max_rel = mpf(0)
        for i in range(d):
            if converged[i]:
                continue
            fi, dfi = _horner_pair(coeffs, z[i])
            if fi == 0:
                converged[i] = True
                continue
            w = mpc(1) if dfi == 0 else fi / dfi
            s = mpc(0)
            for j in range(d):
                if j != i:
                    diff = z[i] - z[j]
                    if diff != 0:
                        s += 1 / diff
            denom = 1 - w * s
            delta = w if denom == 0 else w / denom
            z[i] = z[i] - delta
            rel = abs(delta) / (1 + abs(z[i]))
            if rel <= stop:
                converged[i] = True
            if rel > max_rel:
                max_rel = rel
        if max_rel <= stop:
            return z, sweep + 1
        if max_rel < best * mpf("0.9"):
            best = max_rel
            since_best = 0
        else:
            since_best += 1
        if since_best >= 25 and max_rel <= loose_stop:
            return z, sweep + 1
    raise RootFindingError(
        f"Aberth iteration did not converge after {max_iter} sweeps "
        f"(degree {d}, last correction {mp.nstr(max_rel, 5)})"
    )


def find_roots(
    f: IntPoly,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    tol: float = DEFAULT_TOL,
    max_iter: int = 600,
    cluster_radius: float = 1e-6,
) -> RootSet:
    """All complex roots of ``f`` by Aberth-Ehrlich simultaneous iteration.

    Zero roots are split off exactly first.  After convergence every root
    is Newton-polished at doubled precision and its relative residual is
    checked against ``tol``; roots closer than ``cluster_radius`` (relative)
    to each other are reported as clusters and held to the relaxed bound
    sqrt(tol) instead.  Non-convergence raises, never returns a bad root.
    """
    if not f:
        raise ValueError("cannot find roots of the zero polynomial")
    k0 = next(i for i, c in enumerate(f.coeffs) if c != 0)
    reduced = f.coeffs[k0:]
    d = len(reduced) - 1
    zero_roots = [mpc(0)] * k0
    if d == 0:
        return RootSet(zero_roots, [mpf(0)] * k0, precision_bits, tol, 0)

    # scale by a power of two so coefficient conversion stays exact in spirit
    shift = max(abs(c) for c in reduced).bit_length()
    scaled = [Fraction(c, 1 << shift) for c in reduced]

    iterations = 0
    with mp.workprec(precision_bits):
        coeffs = [mpf(s.numerator) / mpf(s.denominator) for s in scaled]
        starts = _initial_points(scaled, coeffs, d)
        z = None
        last_error = None
        for start in starts:
            try:
                z, iterations = _aberth_sweeps(coeffs, start, precision_bits, max_iter)
                break
            except RootFindingError as exc:
                last_error = exc
        if z is None:
            raise last_error

    with mp.workprec(2 * precision_bits):
        coeffs2 = [mpf(s.numerator) / mpf(s.denominator) for s in scaled]
        polished = []
        for zi in z:
            w = mpc(zi)
            for _ in range(8):
                fi, dfi = _horner_pair(coeffs2, w)
                if dfi == 0 or fi == 0:
                    break
                step = fi / dfi
                w = w - step
                if abs(step) <= mpf(2) ** (-2 * precision_bits + 8) * (1 + abs(w)):
                    break
            polished.append(w)
        residuals = []
        for w in polished:
            scale = _abs_scale(coeffs2, w)
            residuals.append(abs(_horner(coeffs2, w)) / scale if scale > 0 else mpf(0))

        # cluster detection: union of roots within relative cluster_radius
        parent = list(range(d))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i in range(d):
            for j in range(i + 1, d):
                if abs(polished[i] - polished[j]) <= cluster_radius * (
                    1 + abs(polished[i])
                ):
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[ri] = rj
        groups: dict[int, list[int]] = {}
        for i in range(d):
            groups.setdefault(find(i), []).append(i)
        clusters = tuple(
            tuple(sorted(g)) for g in groups.values() if len(g) >= 2
        )
        clustered = {i for g in clusters for i in g}
        relaxed = mpf(tol) ** mpf("0.5")
        for i, res in enumerate(residuals):
            allowed = relaxed if i in clustered else mpf(tol)
            if res > allowed:
                raise RootFindingError(
                    f"root {mp.nstr(polished[i], 10)} has relative residual "
                    f"{mp.nstr(res, 5)} > {mp.nstr(allowed, 5)}"
                )

        # Vieta sanity: a collapsed pair of iterates (two copies of one simple
        # root, another root missed) passes residual checks; the elementary
        # symmetric functions expose it.
        root_sum = mpc(0)
        root_prod = mpc(1)
        for w in polished:
            root_sum += w
            root_prod *= w
        want_sum = -coeffs2[-2] / coeffs2[-1] if d >= 1 else mpc(0)
        want_prod = (-1) ** d * coeffs2[0] / coeffs2[-1]
        sum_scale = 1 + max(abs(root_sum), abs(want_sum))
        prod_scale = 1 + max(abs(root_prod), abs(want_prod))
        if (
            abs(root_sum - want_sum) / sum_scale > mpf(1e-20)
            or abs(root_prod - want_prod) / prod_scale > mpf(1e-20)
        ):
            raise RootFindingError(
                "root multiset fails the Vieta consistency check "
                f"(sum off by {mp.nstr(abs(root_sum - want_sum), 5)}, "
                f"product off by {mp.nstr(abs(root_prod - want_prod), 5)})"
            )

        order = sorted(range(d), key=lambda i: (mp.re(polished[i]), mp.im(polished[i])))
        roots = zero_roots + [polished[i] for i in order]
        residuals = [mpf(0)] * k0 + [residuals[i] for i in order]
        cluster_map = {old: new + k0 for new, old in enumerate(order)}
        clusters = tuple(
            tuple(sorted(cluster_map[i] for i in g)) for g in clusters
        )

    return RootSet(roots, residuals, precision_bits, tol, iterations, clusters)


# ---------------------------------------------------------------------------
# exact real-root counting: Sturm sequences over Fraction coefficients

def _fr_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _fr_divmod(a: list[Fraction], b: list[Fraction]):
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and _fr_trim(r):
        if len(r) < len(b):
            break
        k = len(r) - len(b)
        c = r[-1] / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            r[i + k] -= c * bc
        r.pop()
        _fr_trim(r)
    return _fr_trim(q), _fr_trim(r)


def _fr_normalize(p: list[Fraction]) -> list[Fraction]:
    """Divide by the largest |coefficient| — a positive scalar, sign-safe."""
    if not p:
        return p
    scale = max(abs(c) for c in p)
    return [c / scale for c in p]


def _fr_derivative(p: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(p)][1:]


def _fr_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _fr_normalize(_fr_divmod(a, b)[1])
    return a


def square_free_part(f: IntPoly) -> IntPoly:
    """f / gcd(f, f'): same distinct roots, all simple; primitive over Z."""
    if f.degree < 1:
        return f
    p = [Fraction(c) for c in f.coeffs]
    g = _fr_gcd(_fr_normalize(p), _fr_normalize(_fr_derivative(p)))
    q, r = _fr_divmod(p, g)
    if r:
        raise ArithmeticError("square-free division left a remainder")
    from math import gcd, lcm

    denom = lcm(*(c.denominator for c in q)) if q else 1
    ints = [int(c * denom) for c in q]
    content = 0
    for c in ints:
        content = gcd(content, c)
    if content:
        ints = [c // content for c in ints]
    if ints and ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPoly(ints)


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [_fr_normalize(p), _fr_normalize(_fr_derivative(p))]
    while chain[-1] and len(chain[-1]) > 1:
        rem = _fr_divmod(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(_fr_normalize([-c for c in rem]))
    return [c for c in chain if c]


def _sign_at(p: list[Fraction], x) -> int:
    """Sign of p at x; x is a Fraction, or +-inf passed as the strings below."""
    if x == "+inf":
        v = p[-1]
    elif x == "-inf":
        v = p[-1] * (-1) ** (len(p) - 1)
    else:
        acc = Fraction(0)
        for c in reversed(p):
            acc = acc * x + c
        v = acc
    return (v > 0) - (v < 0)


def _variations(chain, x) -> int:
    signs = [s for s in (_sign_at(p, x) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_real_root_count(f: IntPoly, lo=None, hi=None) -> int:
    """Number of DISTINCT real roots of f in (lo, hi]; None endpoints mean +-inf.

    Works on the square-free part, so multiplicities do not inflate the count.
    """
    g = square_free_part(f)
    if g.degree < 1:
        return 0
    chain = _sturm_chain([Fraction(c) for c in g.coeffs])
    a = "-inf" if lo is None else Fraction(lo)
    b = "+inf" if hi is None else Fraction(hi)
    return _variations(chain, a) - _variations(chain, b)


# ---------------------------------------------------------------------------
# certificates

@dataclass
class NonrealRootCertificate:
    """Hybrid verdict: numeric witness cross-checked by the exact Sturm count."""

    has_nonreal: bool
    witness: object  # mpc or None
    degree: int
    sqfree_degree: int
    sturm_real_count: int
    numeric_nonreal_count: int
    precision_bits: int
    im_tol: float

    def __bool__(self):
        return self.has_nonreal


def has_nonreal_root(
    f: IntPoly,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    tol: float = DEFAULT_TOL,
    im_tol: float = DEFAULT_IM_TOL,
) -> NonrealRootCertificate:
    """Certify whether f has a nonreal root.

    True needs a numeric witness (|Im| > im_tol, conjugate present) and the
    Sturm count strictly below the square-free degree.  False needs all
    numeric roots within im_tol of the axis and Sturm count equal to the
    square-free degree.  Disagreement raises, never guesses.
    """
    rs = find_roots(f, precision_bits=precision_bits, tol=tol)
    nonreal = [z for z in rs.roots if abs(mp.im(z)) > im_tol]
    witness = None
    if nonreal:
        witness = max(nonreal, key=lambda z: abs(mp.im(z)))
        conj = mp.conj(witness)
        has_conj = any(
            abs(z - conj) <= mpf(1e-6) * (1 + abs(z)) for z in rs.roots
        )
        if not has_conj:
            raise InconclusiveRootCountError(
                "nonreal witness lacks a conjugate partner within tolerance"
            )
    g = square_free_part(f)
    count = sturm_real_root_count(f)
    all_real_exact = count == g.degree
    if nonreal and not all_real_exact:
        return NonrealRootCertificate(
            True, witness, f.degree, g.degree, count, len(nonreal),
            precision_bits, im_tol,
        )
    if not nonreal and all_real_exact:
        return NonrealRootCertificate(
            False, None, f.degree, g.degree, count, 0, precision_bits, im_tol,
        )
    raise InconclusiveRootCountError(
        f"numeric nonreal count {len(nonreal)} vs Sturm real count {count} "
        f"of square-free degree {g.degree}"
    )


@dataclass
class NewtonInequalityReport:
    """Exact comparison of (c_(n-1)/c_n)(c_2/c_1) against (n-1)^2."""

    n: int
    lhs: Fraction
    rhs: int
    violated: bool
    stats_identity_ok: bool  # lhs == (n-t) m / n


def newton_inequality_check(f: CForm, st: GraphStats) -> NewtonInequalityReport:
    """Necessary condition for an all-real-rooted C(G;x), checked exactly.

    For a connected graph the left side equals (n-t)m/n, which is below
    (n-1)^2 whenever n >= 3 — hence "violated" certifies a nonreal root.
    """
    n = f.n
    if n < 3:
        raise ValueError("check needs order at least 3")
    if f.c[n - 1] == 0:
        raise ValueError("disconnected input: c_n = 0")
    lhs = Fraction(f.c[n - 2], f.c[n - 1]) * Fraction(f.c[1], f.c[0])
    rhs = (n - 1) ** 2
    identity = lhs == Fraction((st.n - st.cut_nodes) * st.m, st.n)
    return NewtonInequalityReport(n, lhs, rhs, lhs < rhs, identity)


def sign_at(f: CForm, p) -> int:
    """Exact sign of NRel at a rational point: -1, 0, or +1."""
    v = f.eval(Fraction(p))
    return (v > 0) - (v < 0)


def isolate_real_root(f: CForm, lo, hi, width) -> tuple[Fraction, Fraction]:
    """Bisection on exact signs down to an interval of length <= width."""
    lo, hi, width = Fraction(lo), Fraction(hi), Fraction(width)
    s_lo, s_hi = sign_at(f, lo), sign_at(f, hi)
    if s_lo * s_hi >= 0:
        raise ValueError(f"signs at endpoints do not straddle: {s_lo}, {s_hi}")
    while hi - lo > width:
        mid = (lo + hi) / 2
        s_mid = sign_at(f, mid)
        if s_mid == 0:
            return (mid, mid)
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


@dataclass
class CycleRootCertificate:
    """Exact interval certificate for the large real root of an odd cycle."""

    n: int
    cycle_order: int  # 2n+1
    p_lo: int  # 2n^2 - 1
    p_hi: int  # 2n^2
    value_lo: Fraction  # NRel at p_lo, exact (negative)
    value_hi: Fraction  # NRel at p_hi, exact (positive)
    interval: tuple[Fraction, Fraction]
    width: Fraction


def cycle_root_certificate(n: int, width=Fraction(1, 2**20)) -> CycleRootCertificate:
    """NRel(C_{2n+1}) changes sign on (2n^2-1, 2n^2); isolate the root there.

    The endpoint signs are evaluated exactly; a failed sign check would
    falsify the interval claim and raises.
    """
    if n < 2:
        raise ValueError("certificate needs n >= 2")
    order = 2 * n + 1
    f = cycle_cform(order)
    p_lo, p_hi = 2 * n * n - 1, 2 * n * n
    v_lo, v_hi = f.eval(Fraction(p_lo)), f.eval(Fraction(p_hi))
    if not (v_lo < 0 < v_hi):
        raise RuntimeError(
            f"endpoint signs ({v_lo}, {v_hi}) do not bracket a root of C_{order}"
        )
    interval = isolate_real_root(f, p_lo, p_hi, width)
    return CycleRootCertificate(
        n, order, p_lo, p_hi, v_lo, v_hi, interval, Fraction(width)
    )


# ---------------------------------------------------------------------------
# root dumps (the Figures 1-2 reproduction artifacts)

def roots_to_csv_rows(rs: RootSet, label: str) -> list[str]:
    rows = []
    for z, res in zip(rs.roots, rs.residuals):
        rows.append(
            f"{mp.nstr(mp.re(z), 17)},{mp.nstr(mp.im(z), 17)},{mp.nstr(res, 3)},{label}"
        )
    return rows


def roots_to_json_dict(rs: RootSet, label: str) -> dict:
    return {
        "label": label,
        "precision_bits": rs.precision_bits,
        "tolerance": rs.tolerance,
        "iterations": rs.iterations,
        "roots": [
            {
                "re": mp.nstr(mp.re(z), 17),
                "im": mp.nstr(mp.im(z), 17),
                "residual": mp.nstr(res, 3),
            }
            for z, res in zip(rs.roots, rs.residuals)
        ],
        "clusters": [list(c) for c in rs.clusters],
    }
