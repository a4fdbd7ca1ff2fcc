"""Residues in one ring variable of large multivariate integrands.

The denominator is factored over Q in all variables.  Each irreducible factor
``P`` (of positive degree in the integration variable) with multiplicity ``e``
contributes the sum of the residues over its roots ``rho``; that sum is the
trace, in ``Q(others)[rho]/(P)``, of the local coefficient
``[t^(e-1)] N(rho+t) / (M(rho+t) * (P(rho+t)/t)^e)``, where ``N/(M P^e)`` is
the integrand.  Taylor data are reduced mod ``P`` by pseudo-division before
they enter the quotient ring, so only small objects meet field arithmetic.

A requested set of poles is evaluated twice:

* directly and exactly, as the sum over the factors in the set (the fiber
  trace), and
* by the complementary contour, ``-Res_inf - sum over every other factor``,
  after specializing every other variable to random rationals.  The
  unrequested factors include spurious high-degree loci whose exact traces
  are far more expensive than the answer; univariately they are free.

The specialized direct value must equal the complementary one (a
Schwartz-Zippel test of the residue theorem); every comparison is counted.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Sequence

import flint

from ..exact_arith import CTX, QZ, DegenerateConfiguration, MRat


class RouteMismatch(AssertionError):
    """Direct and complementary-contour evaluations of a residue sum differ."""


@dataclass
class RouteStats:
    comparisons: int = 0
    mismatches: int = 0
    failures: list = field(default_factory=list)


_STATS = RouteStats()
_STATS_LOCK = threading.Lock()


def route_stats() -> RouteStats:
    """Counters of dual-route residue evaluations since the last reset."""
    with _STATS_LOCK:
        return RouteStats(_STATS.comparisons, _STATS.mismatches, list(_STATS.failures))


def reset_route_stats() -> None:
    with _STATS_LOCK:
        _STATS.comparisons = 0
        _STATS.mismatches = 0
        _STATS.failures.clear()


_ZERO = CTX.from_dict({})
_ONE = CTX.from_dict({(0,) * CTX.nvars(): 1})


def _const(c):
    return CTX.from_dict({(0,) * CTX.nvars(): c})


def coefficients(p, var: int) -> list:
    """Coefficients of a FLINT polynomial with respect to ``var`` (lowest first)."""
    buckets: dict[int, dict] = {}
    for exps, c in p.to_dict().items():
        e = exps[var]
        buckets.setdefault(e, {})[exps[:var] + (0,) + exps[var + 1 :]] = c
    if not buckets:
        return []
    return [CTX.from_dict(buckets[e]) if e in buckets else _ZERO for e in range(max(buckets) + 1)]


def _pseudo_rem(a: list, P: list) -> tuple[list, object]:
    """``(R, f)`` with ``f * A = R mod P`` and ``deg R < deg P``; ``f`` is a power of ``lc(P)``."""
    d = len(P) - 1
    c = P[-1]
    R = list(a)
    f = _ONE
    if c.is_constant():
        inv = 1 / c.leading_coefficient()
        for i in range(len(R) - 1, d - 1, -1):
            top = R[i]
            if top.is_zero():
                continue
            top = top * inv
            for j in range(d):
                if not P[j].is_zero():
                    R[i - d + j] = R[i - d + j] - top * P[j]
            R[i] = _ZERO
    else:
        for i in range(len(R) - 1, d - 1, -1):
            top = R[i]
            if top.is_zero():
                continue
            for j in range(i):
                R[j] = R[j] * c
            for j in range(d):
                if not P[j].is_zero():
                    R[i - d + j] = R[i - d + j] - top * P[j]
            R[i] = _ZERO
            f = f * c
    R = R[:d] + [_ZERO] * max(0, d - len(R))
    return R, f


class _RootRing:
    """``Q(others)[rho]/(P)`` for one irreducible factor ``P``, fraction-free.

    An element is ``(v, den)``: the class of ``sum v_i rho^i`` divided by the
    polynomial ``den``.  Everything stays in FLINT; ``gcd`` runs once, on the
    final trace.
    """

    def __init__(self, P, var: int):
        self.var = var
        self.P = coefficients(P, var)
        self.d = len(self.P) - 1

    def _rem(self, a: list) -> tuple[list, object]:
        if len(a) <= self.d:
            return list(a) + [_ZERO] * (self.d - len(a)), _ONE
        return _pseudo_rem(a, self.P)

    def reduce(self, poly, den=None) -> tuple[list, object]:
        R, f = self._rem(coefficients(poly, self.var))
        return R, f if den is None else f * den

    def mul(self, a, b):
        (u, du), (v, dv) = a, b
        prod = [_ZERO] * (len(u) + len(v) - 1)
        for i, x in enumerate(u):
            if x.is_zero():
                continue
            for j, y in enumerate(v):
                if not y.is_zero():
                    prod[i + j] = prod[i + j] + x * y
        R, f = self._rem(prod)
        return R, du * dv * f

    @staticmethod
    def add(a, b):
        (u, du), (v, dv) = a, b
        if du == dv:
            return [x + y for x, y in zip(u, v)], du
        return [x * dv + y * du for x, y in zip(u, v)], du * dv

    @staticmethod
    def neg(a):
        return [-x for x in a[0]], a[1]

    def inverse(self, a):
        """Cramer on the multiplication matrix of the numerator."""
        u, du = a
        d = self.d
        # column j is cols[j] / scale[j], the class of u * rho^j
        cols, scale = [], []
        R, f = self._rem(list(u))
        cols.append(R)
        scale.append(f)
        for j in range(1, d):
            R, f = self._rem([_ZERO] + cols[-1])
            cols.append(R)
            scale.append(scale[-1] * f)
        M = [[cols[j][i] for j in range(d)] for i in range(d)]
        cof = [(-1) ** j * _det([row[:j] + row[j + 1 :] for row in M[1:]]) for j in range(d)]
        det = sum((M[0][j] * cof[j] for j in range(d)), _ZERO)
        if det.is_zero():
            raise ZeroDivisionError("element is not invertible modulo the factor")
        return [du * cof[j] * scale[j] for j in range(d)], det

    def power_traces(self) -> list[MRat]:
        """``Tr(rho^i)`` for ``i < d`` by Newton's identities."""
        c = [MRat(x) for x in self.P]
        lc = c[-1]
        a = [x / lc for x in c]
        d = self.d
        p = [MRat(d)]
        for k in range(1, d):
            acc = MRat(k) * a[d - k]
            for j in range(1, k):
                acc = acc + a[d - j] * p[k - j]
            p.append(-acc)
        return p

    def trace(self, a) -> MRat:
        u, du = a
        tr = self.power_traces()
        num, den = _ZERO, _ONE
        for x, t in zip(u, tr):
            if x.is_zero() or t.is_zero():
                continue
            if t.den == den:
                num = num + x * t.num
            else:
                num, den = num * t.den + x * t.num * den, den * t.den
        return MRat(num, du * den)


def _det(M: list) -> object:
    """Fraction-free (Bareiss) determinant of a square matrix of FLINT polynomials."""
    n = len(M)
    if n == 0:
        return _ONE
    A = [list(r) for r in M]
    sign, prev = 1, _ONE
    for k in range(n - 1):
        if A[k][k].is_zero():
            for i in range(k + 1, n):
                if not A[i][k].is_zero():
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return _ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return A[n - 1][n - 1] if sign > 0 else -A[n - 1][n - 1]


def _factor_sum(num, cof, P, e: int, var: int) -> MRat:
    """Sum of ``Res_{var = rho} num/(cof * P^e)`` over the roots of the irreducible ``P``."""
    ring = _RootRing(P, var)

    def taylor(poly, n: int) -> list:
        out, cur = [], poly
        for i in range(n):
            out.append(ring.reduce(cur, _const(factorial(i))))
            if i + 1 < n:
                cur = cur.derivative(var)
        return out

    def series_mul(A: list, B: list) -> list:
        out = []
        for k in range(e):
            acc = None
            for i in range(k + 1):
                t = ring.mul(A[i], B[k - i])
                acc = t if acc is None else ring.add(acc, t)
            out.append(acc)
        return out

    n_t = taylor(num, e)
    # P(rho + t)/t = sum_{i >= 1} P^(i)(rho)/i! t^(i-1)
    q_t = taylor(P, e + 1)[1:]
    D = taylor(cof, e)
    for _ in range(e):
        D = series_mul(D, q_t)
    if all(x.is_zero() for x in D[0][0]):
        raise DegenerateConfiguration("factor of the denominator is not a pole of the stated order")
    inv = ring.inverse(D[0])
    c: list = []
    for k in range(e):
        acc = n_t[k]
        for j in range(1, k + 1):
            acc = ring.add(acc, ring.neg(ring.mul(D[j], c[k - j])))
        c.append(ring.mul(acc, inv))
    return ring.trace(c[e - 1])


def _univariate(p, var: int, point: dict) -> flint.fmpq_poly:
    q = p.subs(point) if point else p
    out = [flint.fmpq(0)] * (q.degrees()[var] + 1) if not q.is_zero() else []
    for exps, c in q.to_dict().items():
        out[exps[var]] = c
    return flint.fmpq_poly(out)


def _residue_at_infinity(n: flint.fmpq_poly, m: flint.fmpq_poly) -> flint.fmpq:
    """``Res_inf n/m`` for univariate polynomials over Q."""
    dn, dm = n.degree(), m.degree()
    k = 1 - dm + dn  # Res_inf = -[s^k] of n_rev/m_rev
    if k < 0:
        return flint.fmpq(0)
    nr = [n[dn - i] for i in range(dn + 1)]
    mr = [m[dm - i] for i in range(dm + 1)]
    q: list = []
    for i in range(k + 1):
        acc = nr[i] if i < len(nr) else flint.fmpq(0)
        for j in range(max(0, i - len(mr) + 1), i):
            acc = acc - q[j] * mr[i - j]
        q.append(acc / mr[0])
    return -q[k]


def _sum_over(n: flint.fmpq_poly, s: flint.fmpq_poly, o: flint.fmpq_poly) -> flint.fmpq:
    """Residues of ``n/(s*o)`` summed over the roots of ``o``, for coprime ``s`` and ``o``."""
    d = o.degree()
    if d < 1:
        return flint.fmpq(0)
    g, inv, _ = s.xgcd(o)
    B = ((n % o) * inv) % o
    return B[d - 1] / o[d]


# spectator values for the complementary contour
SAMPLE_HEIGHT = 10**6
SAMPLE_ATTEMPTS = 12


def _complement_check(F: MRat, var: int, sel, direct: MRat, rng: random.Random) -> bool:
    """Residue theorem for ``F`` at a random rational specialization of every other variable.

    The selected part comes from the exact ``direct`` value; the rest is
    ``-Res_inf`` minus the residues at the unselected roots, all computed
    after specialization.
    """
    num, den = F.num, F.den
    spect = sorted(
        v for v in range(CTX.nvars()) if v != var and (num.degrees()[v] or den.degrees()[v] or direct.den.degrees()[v] or direct.num.degrees()[v])
    )
    for _ in range(SAMPLE_ATTEMPTS):
        point = {v: flint.fmpq(rng.randint(-SAMPLE_HEIGHT, SAMPLE_HEIGHT), rng.randint(1, SAMPLE_HEIGHT)) for v in spect}
        D = _univariate(den, var, point)
        S = _univariate(sel, var, point)
        if D.degree() != den.degrees()[var] or S.degree() != sel.degrees()[var]:
            continue
        dd = direct.den.subs(point) if point else direct.den
        if dd.is_zero():
            continue
        O = D // S
        if O * S != D or O.gcd(S).degree() > 0:
            continue
        N = _univariate(num, var, point)
        other = _sum_over(N, S, O)
        flipped = -(_residue_at_infinity(N, D) + other)
        dn = direct.num.subs(point) if point else direct.num
        return dn == dd * CTX.from_dict({(0,) * CTX.nvars(): flipped})
    raise DegenerateConfiguration("no admissible specialization for the complementary contour")


def residue_sum(
    F: MRat,
    var: int,
    selected: Callable[[object], bool],
    tag: str = "",
) -> MRat:
    """``sum`` of the ``var``-residues of ``F`` at the roots of the denominator factors chosen by ``selected``.

    ``selected`` receives each irreducible factor (a FLINT polynomial of
    positive degree in ``var``).  The sum is computed exactly over the chosen
    factors and checked against the complementary contour at a random
    specialization; a disagreement raises :class:`RouteMismatch`.
    """
    num, den = F.num, F.den
    if num.is_zero():
        return QZ.zero
    _, facs = den.factor()
    direct = QZ.zero
    sel = _ONE
    for P, e in facs:
        if P.degrees()[var] == 0 or not selected(P):
            continue
        cof = den / (P**e)
        direct = direct + _factor_sum(num, cof, P, e, var)
        sel = sel * P**e
    with _STATS_LOCK:
        seed = _STATS.comparisons
    ok = _complement_check(F, var, sel, direct, random.Random(0x5EC ^ seed))
    with _STATS_LOCK:
        _STATS.comparisons += 1
        if not ok:
            _STATS.mismatches += 1
            _STATS.failures.append(tag)
    if not ok:
        raise RouteMismatch(f"direct and complementary residue sums differ ({tag})")
    return direct


def _divides(a, b) -> bool:
    return divmod(b, a)[1].is_zero()


def in_set(points: Sequence, fiber=None) -> Callable[[object], bool]:
    """Selector for slot points ``r = z_j`` (FLINT generators) and the roots of ``fiber``."""
    from ..exact_arith import GENS, IR

    lin = [GENS[IR] - z for z in points]

    def sel(P) -> bool:
        for l in lin:
            if P == l or P == -l:
                return True
        return fiber is not None and _divides(P, fiber)

    return sel
