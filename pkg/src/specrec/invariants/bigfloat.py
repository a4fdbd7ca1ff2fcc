"""Big-float correlators in the basis of pole differentials at the branch points.

``omega_{g,n}`` is stored as a tensor of coefficients on

    xi_{i,k}(z) = dz / (z - a_i)^(k+2),   k >= 0,

one index pair per variable.  The branch points ``a_i`` are numerical roots,
the involution comes from Lagrange inversion of a square-root coordinate,
and every residue is a coefficient extraction.  This path shares only the
curve data and the generic series container with the exact engine.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable

import mpmath

from ..curve import SpectralCurve, UnsupportedCurve
from ..exact_arith import LaurentSeries, Poly

DEFAULT_PRECISION = 256


class MPComplexField:
    """Complex big floats as a coefficient field; only exact zeros count as zero."""

    zero = mpmath.mpc(0)
    one = mpmath.mpc(1)

    def __call__(self, v: Any):
        if isinstance(v, Fraction):
            return mpmath.mpc(mpmath.mpf(v.numerator) / v.denominator)
        return mpmath.mpc(v)

    @staticmethod
    def is_zero(v: Any) -> bool:
        return v == 0


CC = MPComplexField()


def _series(coeffs: list, prec: int, val: int = 0) -> LaurentSeries:
    return LaurentSeries(CC, val, coeffs, prec)


def _mono(e: int, prec: int, c: Any = 1) -> LaurentSeries:
    return LaurentSeries(CC, e, [CC(c)] + [CC.zero] * max(0, prec - e - 1), prec)


def _taylor(p: Poly, a, n: int) -> list:
    """Coefficients of ``p(a + t)`` up to ``t^(n-1)``."""
    out: list = []
    for coef in reversed(p.coeffs):
        new = [CC.zero] * (len(out) + 1)
        for i, b in enumerate(out):
            new[i] += b * a
            new[i + 1] += b
        new[0] += CC(coef)
        out = new
    out = out[:n]
    return out + [CC.zero] * (n - len(out))


def _rational_series(f, a, prec: int) -> list:
    """Taylor coefficients of a rational function at the regular point ``a``."""
    num = _series(_taylor(f.num, a, prec), prec)
    den = _series(_taylor(f.den, a, prec), prec)
    s = num * den.inverse()
    return [s[e] for e in range(prec)]


class _Branch:
    """Local data at one numerical branch point."""

    def __init__(self, curve: SpectralCurve, a, order: int):
        self.a = a
        self.order = order
        x = _rational_series(curve.x, a, order + 3)
        x[1] = CC.zero  # a is a zero of dx
        self.x = x
        self.y = _rational_series(curve.y, a, order + 2)
        self.t = _mono(1, order)
        self.sigma = self._involution(order)
        self.dsigma = self.sigma.derivative()

    def _involution(self, n: int) -> LaurentSeries:
        """sigma with x(a + sigma) = x(a + t) and sigma = -t + O(t^2), to O(t^n)."""
        x = self.x
        # x(a+t) - x(a) = x2 t^2 (1 + phi(t));  zeta = t sqrt(1 + phi) flips sign under sigma
        m = n + 1
        phi = [CC.zero] + [x[k + 2] / x[2] for k in range(1, m)]
        h = [CC.one] + [CC.zero] * (m - 1)
        for k in range(1, m):
            acc = phi[k]
            for i in range(1, k):
                acc -= h[i] * h[k - i]
            h[k] = acc / 2
        hs = _series(h, m)
        zeta = hs.shift(1)  # val 1, prec m + 1
        # Lagrange: [u^k] zeta^{-1}(u) = (1/k) [t^{k-1}] h^{-k}
        hinv = hs.inverse()
        eta = [CC.zero]
        pw = _mono(0, m)
        for k in range(1, m):
            pw = pw * hinv
            eta.append(pw[k - 1] / k)
        w = -zeta
        # Horner for eta(w)
        acc = _mono(0, n, eta[-1]) if len(eta) > 1 else _mono(0, n, 0)
        for k in range(len(eta) - 2, -1, -1):
            acc = (acc * w).truncate(n) + eta[k]
        return acc.truncate(n)


class BigFloatEngine:
    """Pole-basis recursion for one curve at a fixed binary precision."""

    def __init__(self, curve: SpectralCurve, precision: int = DEFAULT_PRECISION):
        self.curve = curve
        self.precision = precision
        self._memo: dict = {}
        if curve.dx.num.gcd(curve.dy.num).degree > 0:
            raise UnsupportedCurve("pole-basis backend needs dy != 0 at the zeros of dx")
        with self._ctx():
            pts = []
            for pack in curve.branch_points_x:
                pts.extend(pack.point.numeric_roots(precision + 32))
            self.points = [mpmath.mpc(p) for p in pts]

    def _ctx(self):
        return mpmath.workprec(self.precision + 32)

    @staticmethod
    def pole_bound(g: int, n: int) -> int:
        """Maximal pole order of ``omega_{g,n}`` at a branch point, in each variable."""
        if (g, n) == (0, 2):
            return 0  # B(z, w) is regular at z = a for a spectator w
        return 6 * g + 2 * n - 4

    def omega(self, g: int, n: int) -> dict[tuple, Any]:
        """Coefficients of ``omega_{g,n}`` (stable) keyed by ((slot, branch, k), ...)."""
        if 2 * g - 2 + n < 1:
            raise ValueError("pole-basis coefficients exist for stable (g, n) only")
        key = (g, n)
        if key not in self._memo:
            with self._ctx():
                self._memo[key] = self._compute(g, n)
        return self._memo[key]

    def _compute(self, g: int, n: int) -> dict[tuple, Any]:
        J = list(range(1, n))
        pb = self.pole_bound
        bound = 0
        if g >= 1:
            # B(z, sigma z) has a double pole on the diagonal
            bound = 2 if (g - 1, n + 1) == (0, 2) else 2 * pb(g - 1, n + 1)
        prods = []
        for h in range(g + 1):
            for m in range(n):
                for I in combinations(J, m):
                    rest = tuple(j for j in J if j not in I)
                    if (h, m) == (0, 0) or (g - h, len(rest)) == (0, 0):
                        continue  # omega_{0,1} = 0
                    prods.append((h, I, rest))
                    bound = max(bound, pb(h, 1 + m) + pb(g - h, 1 + len(rest)))
        P = bound + 2
        out: dict[tuple, Any] = defaultdict(lambda: CC.zero)
        for i, a in enumerate(self.points):
            br = _Branch(self.curve, a, 2 * P + 6)
            rec: dict[tuple, LaurentSeries] = {}
            if g >= 1:
                _acc(rec, self._pair(br, i, g - 1, n + 1, P))
            for h, I, rest in prods:
                A = self._single(br, i, h, (0,) + I, False, P)
                B = self._single(br, i, g - h, (0,) + rest, True, P)
                _acc(rec, _tensor_mul(A, B))
            for kk, ks in self._kernel(br, i, bound + 1, P).items():
                for rk, rs in rec.items():
                    c = (ks * rs).residue()
                    if c != 0:
                        out[tuple(sorted(kk + rk))] += c
        return dict(out)

    def _xi(self, br: _Branch, i: int, j: int, k: int, via_sigma: bool, P: int) -> LaurentSeries:
        """``xi_{j,k}`` at ``a_i + t``, or at ``a_i + sigma(t)`` times ``sigma'``."""
        inner = br.sigma if via_sigma else br.t
        if j != i:
            inner = inner + (self.points[i] - self.points[j])
        s = inner.inverse() ** (k + 2)
        if via_sigma:
            s = s * br.dsigma
        return s.truncate(P)

    def _single(self, br, i, h, positions, via_sigma, P) -> dict[tuple, LaurentSeries]:
        """A correlator with its first variable at the branch point and the rest symbolic."""
        n = len(positions)
        if (h, n) == (0, 2):
            # B(z, w) = sum_k (k+1) (z - a)^k xi_{i,k}(w)
            base = br.sigma if via_sigma else br.t
            ds = br.dsigma if via_sigma else _mono(0, P)
            out = {}
            pw = _mono(0, P)
            for k in range(P):
                out[((positions[1], i, k),)] = (pw * ds * (k + 1)).truncate(P)
                pw = (pw * base).truncate(P)
            return out
        out: dict[tuple, LaurentSeries] = {}
        cache: dict = {}
        for key, c in self.omega(h, n).items():
            (_, j, k) = key[0]
            if (j, k) not in cache:
                cache[(j, k)] = self._xi(br, i, j, k, via_sigma, P)
            rest = tuple((positions[p], jj, kk) for (p, jj, kk) in key[1:])
            _add_to(out, rest, cache[(j, k)] * c)
        return out

    def _pair(self, br, i, g, n, P) -> dict[tuple, LaurentSeries]:
        """``omega_{g,n}(z, sigma z, J) dsigma`` with J in slots 1..n-2."""
        if (g, n) == (0, 2):
            d = br.t - br.sigma
            return {(): (d**2).inverse().truncate(P) * br.dsigma}
        out: dict[tuple, LaurentSeries] = {}
        cache: dict = {}
        for key, c in self.omega(g, n).items():
            (_, j0, k0), (_, j1, k1) = key[0], key[1]
            for jk, via in (((j0, k0), False), ((j1, k1), True)):
                if (jk, via) not in cache:
                    cache[(jk, via)] = self._xi(br, i, jk[0], jk[1], via, P)
            s = cache[((j0, k0), False)] * cache[((j1, k1), True)]
            rest = tuple((p - 1, jj, kk) for (p, jj, kk) in key[2:])
            _add_to(out, rest, s * c)
        return out

    def _kernel(self, br: _Branch, i: int, mmax: int, P: int) -> dict[tuple, LaurentSeries]:
        """``dS_{z,sigma z}(z0) / (2 (y(z) - y(sigma z)) dx(z))`` on the basis ``xi_{i,m-1}(z0)``."""
        n = br.order
        dy = LaurentSeries(CC, n, [], n)
        sp, tp = _mono(0, n), _mono(0, n)
        for k in range(1, min(len(br.y), n)):
            sp, tp = (sp * br.sigma).truncate(n), (tp * br.t).truncate(n)
            if br.y[k] != 0:
                dy = dy + (tp - sp) * br.y[k]
        dx = _series([CC.zero] + [k * br.x[k] for k in range(2, n + 1)], n)
        q = (dy * dx * 2).inverse()
        out = {}
        sp, tp = _mono(0, n), _mono(0, n)
        for m in range(1, mmax + 1):
            sp, tp = (sp * br.sigma).truncate(n), (tp * br.t).truncate(n)
            out[((0, i, m - 1),)] = ((tp - sp) * q).truncate(P)
        return out

    # -- values

    def evaluate(self, g: int, n: int, points: Iterable[Any]) -> Any:
        """Coefficient of ``omega_{g,n}`` at the given z-values."""
        with self._ctx():
            zs = [CC(Fraction(p)) if isinstance(p, (int, Fraction)) else CC(p) for p in points]
            total = CC.zero
            for key, c in self.omega(g, n).items():
                term = c
                for p, j, k in key:
                    term = term / (zs[p] - self.points[j]) ** (k + 2)
                total += term
            return total

    def free_energy(self, g: int) -> Any:
        if g < 2:
            raise ValueError("free energies are provided for g >= 2 only")
        with self._ctx():
            coeffs = self.omega(g, 1)
            kmax = max((key[0][2] for key in coeffs), default=0)
            total = CC.zero
            for i, a in enumerate(self.points):
                br = _Branch(self.curve, a, kmax + 4)
                ydx = _series(br.y, kmax + 2) * _series([k * br.x[k] for k in range(1, kmax + 3)], kmax + 2)
                for key, c in coeffs.items():
                    (_, j, k) = key[0]
                    if j == i:
                        # Res t^-(k+2) Phi(t) = Phi_{k+1} = (y x')_k / (k + 1)
                        total += c * ydx[k] / (k + 1)
            return total / (2 - 2 * g)


def _add_to(d: dict, key, s: LaurentSeries) -> None:
    d[key] = d[key] + s if key in d else s


def _acc(dst: dict, src: dict) -> None:
    for k, s in src.items():
        _add_to(dst, k, s)


def _tensor_mul(A: dict, B: dict) -> dict:
    out: dict = {}
    for ka, sa in A.items():
        for kb, sb in B.items():
            _add_to(out, tuple(sorted(ka + kb)), sa * sb)
    return out


def bigfloat_free_energy(curve: SpectralCurve, g: int, precision: int = DEFAULT_PRECISION) -> Any:
    """Complex big-float value of ``F_g`` (the imaginary part is rounding noise)."""
    return BigFloatEngine(curve, precision).free_energy(g)
