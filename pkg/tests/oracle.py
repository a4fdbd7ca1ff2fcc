"""Independent sympy computations used as test oracles.

Only curves whose x has degree two are handled here: the deck involution
is then global and rational, so the kernel can be written down directly.
"""

from __future__ import annotations

import sympy as sp

z, w = sp.symbols("z w")
Z = sp.symbols("z0:8")


def to_sympy(expr) -> sp.Expr:
    """An MRat or RationalFunction string, in the package's grammar, as a sympy expression."""
    names = {f"z{i}": Z[i] for i in range(8)}
    names.update(z=z, X=sp.Symbol("X"), Y=sp.Symbol("Y"))
    return sp.sympify(str(expr).replace("^", "**"), locals=names)


def involution(x):
    """The other preimage of x(z) for a degree-two x."""
    s = sp.Symbol("s")
    sols = sp.solve(sp.together(x.subs(z, s) - x), s)
    other = [r for r in sols if sp.simplify(r - z) != 0]
    assert len(other) == 1
    return sp.simplify(other[0])


def branch_points(x):
    return sp.solve(sp.numer(sp.together(sp.diff(x, z))), z)


def B(a, b):
    return 1 / (a - b) ** 2


class EO:
    """Genus 0 and 1 correlators of a degree-two x by the residue formula."""

    def __init__(self, x, y):
        self.x, self.y = x, y
        self.sig = involution(x)
        self.dsig = sp.diff(self.sig, z)
        self.a = branch_points(x)

    def kernel(self, p):
        s = self.sig
        dS = 1 / (p - z) - 1 / (p - s)
        return dS / (2 * (self.y - self.y.subs(z, s)) * sp.diff(self.x, z))

    def _res(self, f):
        return sum(sp.residue(sp.together(f), z, a) for a in self.a)

    def w11(self, p):
        s = self.sig
        return sp.simplify(self._res(self.kernel(p) * B(z, s) * self.dsig))

    def w03(self, p, q, r):
        s = self.sig
        f = self.kernel(p) * self.dsig * (B(z, q) * B(s, r) + B(z, r) * B(s, q))
        return sp.simplify(self._res(f))


def res_infinity(f):
    """Residue of f(z) dz at infinity."""
    return sp.residue(sp.together(-f.subs(z, 1 / w) / w**2), w, 0)
