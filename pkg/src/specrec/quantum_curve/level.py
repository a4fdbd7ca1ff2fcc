"""Level-g corrections to the classical curve from fiber sums of correlators.

The base point ``p^0`` is the symbolic variable ``z0``; the other points of
its x-fiber are the roots ``r_1 .. r_d`` of the fiber polynomial and are
represented by a tower of quotient fields ``L_i = L_{i-1}[r_i]/(q_i)`` with
``q_i = q_{i-1} / (r - r_{i-1})``.  Sums over the fiber are symmetric in the
roots, so averaged traces bring them back down to ``Q(z0, Y)``; a second
trace over ``Q(X)[z]/(x(z) - X)`` reads off each coefficient as a function
of ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from ..curve import SpectralCurve, bergman, fiber_poly_symbolic
from ..exact_arith import GENS, IR, IX, IY, QQ, QZ, VAR_NAMES, MRat, Poly, QElem, QuotientField, slot
from ..invariants import Differential, omega
from ..symmetry_checks import CheckReport
from ..symmetry_checks.report import verdict

Corrections = Mapping[tuple[int, int], Differential]


def set_partitions(items: list) -> Iterator[list[list]]:
    """Every partition of ``items`` into nonempty blocks, blocks in order of first element."""
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[head]] + part
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1 :]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for tail in _compositions(total - first, parts - 1):
            yield (first,) + tail


# ------------------------------------------------------------------ the fiber tower


def _embed(L: QuotientField, c):
    """``c`` from any lower level (or ``Q(z0, Y)``) as an element of ``L``."""
    if isinstance(c, QElem) and c.parent is L:
        return c
    if L.base is QZ:
        return L(c)
    return QElem(Poly((_embed(L.base, c),), L.base), L)


class FiberTower:
    """The other sheets of ``z0`` in the x-fiber as generators of nested quotient fields."""

    def __init__(self, curve: SpectralCurve):
        self.curve = curve
        self.d = curve.d2
        base = slot(0)
        q = fiber_poly_symbolic(curve, "x", slot(1), base)
        poly = MRat(q).as_univariate(slot(1)).num
        self.levels: list[QuotientField] = []
        for i in range(self.d):
            L = QuotientField(poly)  # raises on a repeated sheet
            self.levels.append(L)
            if i + 1 < self.d:
                lifted = Poly([_embed(L, c) for c in poly.coeffs], L)
                poly = lifted.exact_div(Poly((-L.gen, L.one), L))

    def sheet(self, j: int) -> int:
        """Ring variable of sheet ``j`` (0 is the base point)."""
        return slot(j)

    def evaluate(self, f: MRat, level: int | None = None):
        """``f(z0, Y, r_1 .. r_m)`` in ``L_m``; sheet ``j`` is the variable ``slot(j)``."""
        m = self.d if level is None else level
        if m == 0:
            return f
        L = self.levels[m - 1]
        v = slot(m)
        if v not in f.variables():
            return _embed(L, self.evaluate(f, m - 1))
        rf = f.as_univariate(v)
        num = self._horner(rf.num, m)
        den = self._horner(rf.den, m)
        return num / den

    def _horner(self, p: Poly, m: int):
        L = self.levels[m - 1]
        acc = L.zero
        for c in reversed(p.coeffs):
            acc = acc * L.gen + _embed(L, self.evaluate(c, m - 1))
        return acc

    def descend(self, value) -> MRat:
        """Average trace of a top-level element that is symmetric in the roots."""
        for L in reversed(self.levels):
            if isinstance(value, QElem) and value.parent is L:
                value = L.trace(value) / L.degree
        return value


def function_of_x(curve: SpectralCurve, c: MRat) -> MRat:
    """``R(X)`` with ``c(z0) = R(x(z0))``; raises if ``c`` is not constant on x-fibers."""
    if slot(0) not in c.variables():
        return c
    z = slot(0)
    X = MRat(GENS[IX])
    num_x = MRat.from_univariate(curve.x.num, z).as_univariate(z).num
    den_x = MRat.from_univariate(curve.x.den, z).as_univariate(z).num
    n = max(num_x.degree, den_x.degree)
    coeffs = [num_x[i] - X * den_x[i] for i in range(n + 1)]
    L = QuotientField(Poly(coeffs, QZ), check=False)
    rf = c.as_univariate(z)
    val = _poly_at(rf.num, L) / _poly_at(rf.den, L)
    R = L.trace(val) / L.degree
    if R.substitute({IX: curve.x_in(z)}) != c:
        raise ArithmeticError("coefficient is not a function of x")
    return R


def _poly_at(p: Poly, L: QuotientField):
    acc = L.zero
    for c in reversed(p.coeffs):
        acc = acc * L.gen + L(c)
    return acc


# ------------------------------------------------------------------ the level-g sum


def _tilde_W(curve: SpectralCurve, g: int, sheets: list[int], corrections: Corrections) -> MRat:
    """``(-1)^n omega_{g,n}(p^J) / prod dx``, and ``Y - y(p)`` for the one-point genus-zero block.

    The sign makes each block a cumulant of the ``Y - y(p^j)``: the
    correlators correct ``y dx``, which enters with a minus sign.
    """
    n = len(sheets)
    if (g, n) == (0, 1):
        return MRat(GENS[IY]) - curve.y_in(sheets[0])
    if (g, n) in corrections:
        w = corrections[(g, n)].placed(sheets)
    elif (g, n) == (0, 2):
        w = bergman(*sheets)
    else:
        w = omega(curve, g, n).placed(sheets)
    for s in sheets:
        w = w / curve.dx_in(s)
    return -w if n % 2 else w


def fiber_sum(curve: SpectralCurve, g: int, corrections: Corrections | None = None,
              tower: FiberTower | None = None) -> MRat:
    """The partition sum over the whole x-fiber of ``z0``, without the leading prefactor.

    A function of ``z0`` and ``Y``.
    """
    corrections = dict(corrections or {})
    tower = tower or FiberTower(curve)
    K = list(range(curve.d2 + 1))
    top = tower.levels[-1] if tower.levels else None
    total = top.zero if top is not None else QZ.zero
    for part in set_partitions(K):
        excess = g - sum(len(J) - 1 for J in part)
        if excess < 0:
            continue
        for gs in _compositions(excess, len(part)):
            term = top.one if top is not None else QZ.one
            for gl, J in zip(gs, part):
                f = _tilde_W(curve, gl, [tower.sheet(j) for j in J], corrections)
                term = term * tower.evaluate(f)
            total = total + term
    return tower.descend(total)


def leading_coefficient(curve: SpectralCurve) -> MRat:
    """``E_{d2+1}(X)``, the coefficient of the top power of ``Y`` in the classical polynomial."""
    E = curve.E(MRat(GENS[IX]), MRat(GENS[IY]))
    return E.as_univariate(IY).num.lc


@dataclass
class QuantumCurveLevel:
    g: int
    coefficients: MRat  # polynomial part, in X and Y
    defect: MRat  # proper part of each Y-coefficient, in X and Y
    curve: SpectralCurve = field(repr=False)
    y_coefficients: list[MRat] = field(default_factory=list, repr=False)  # full rational coefficients in X

    @property
    def full(self) -> MRat:
        return self.coefficients + self.defect

    def degrees(self) -> tuple[int, int]:
        """(degree in X, degree in Y) of the polynomial part; ``(-1, -1)`` when it is zero."""
        return _degrees(self.coefficients)


def _degrees(e: MRat) -> tuple[int, int]:
    if e.is_zero():
        return -1, -1
    dx = max((int(m[IX]) for m in e.num.to_dict()), default=0)
    dy = max((int(m[IY]) for m in e.num.to_dict()), default=0)
    return dx, dy


def _split_poly(R: MRat) -> tuple[MRat, MRat]:
    """Polynomial and proper parts of a rational function of ``X``."""
    rf = R.as_univariate(IX)
    q, r = divmod(rf.num, rf.den)
    poly = MRat.from_univariate_over_field(q, IX)
    rem = MRat.from_univariate_over_field(r, IX) / MRat.from_univariate_over_field(rf.den, IX)
    return poly, rem


def build_quantum_level(curve: SpectralCurve, g: int, corrections: Corrections | None = None) -> QuantumCurveLevel:
    """``E^(g)(X, Y)`` split into its polynomial part and its non-polynomial defect.

    ``corrections`` replaces individual correlators, keyed by ``(g, n)``;
    it exists for sensitivity tests.
    """
    if g < 0:
        raise ValueError("g must be nonnegative")
    S = fiber_sum(curve, g, corrections)
    lead = leading_coefficient(curve).substitute({IX: curve.x_in(slot(0))})
    S = S * lead
    Y = MRat(GENS[IY])
    ys = S.as_univariate(IY)
    if ys.den.degree > 0:
        raise ArithmeticError("fiber sum is not polynomial in Y")
    den = ys.den.lc
    poly, rem = QZ.zero, QZ.zero
    full = []
    for k, c in enumerate(ys.num.coeffs):
        R = function_of_x(curve, c / den)
        full.append(R)
        a, b = _split_poly(R)
        poly = poly + a * Y**k
        rem = rem + b * Y**k
    return QuantumCurveLevel(g, poly, rem, curve, full)


def holomorphic_combination(level: QuantumCurveLevel) -> MRat:
    """``E^(g)(x(z), y(z)) dx / E_y(x(z), y(z))`` as the coefficient of ``dz`` in slot 0."""
    c = level.curve
    z = slot(0)
    X, Y = MRat(GENS[IX]), MRat(GENS[IY])
    Ey = c.E(X, Y).derivative(IY)
    on = {IX: c.x_in(z), IY: c.y_in(z)}
    return level.full.substitute(on) * c.dx_in(z) / Ey.substitute(on)


def top_coefficients(level: QuantumCurveLevel, count: int = 2) -> list[MRat]:
    """The coefficients of ``Y^{d2+1}`` down to ``Y^{d2+2-count}``."""
    top = level.curve.d2 + 1
    return [level.y_coefficients[k] if k < len(level.y_coefficients) else QZ.zero
            for k in range(top, top - count, -1)]


def check_polynomiality(level: QuantumCurveLevel) -> CheckReport:
    """Zero defect, and degrees in X and Y within those of the classical polynomial."""
    c = level.curve
    bx, by = c.d1 + 1, c.d2 + 1
    dx, dy = level.degrees()
    ok_defect = level.defect.is_zero()
    ok_deg = dx <= bx and dy <= by
    ok = ok_defect and ok_deg
    witness = None
    if not ok:
        witness = {"defect": str(level.defect), "degrees": [dx, dy], "bounds": [bx, by]}
    return CheckReport(
        "quantum-polynomiality", c.name or repr(c), {"g": level.g}, verdict(ok), witness,
        details={"E_g": str(level.coefficients), "degrees": [dx, dy], "bounds": [bx, by]},
    )




def node_polynomial(curve: SpectralCurve) -> Poly:
    """Monic squarefree polynomial in ``z`` vanishing where another point has the same ``(x, y)``.

    Its roots are the preimages of the nodes of the plane curve ``E = 0``.
    """
    qx = fiber_poly_symbolic(curve, "x", IR, slot(0))
    qy = fiber_poly_symbolic(curve, "y", IR, slot(0))
    res = MRat(qx.resultant(qy, VAR_NAMES[IR]))
    p = univariate_poly(res).squarefree_part()
    # points over the poles of x and y meet at infinity, not at a node
    poles = curve.x.den * curve.y.den
    p = p.exact_div(p.gcd(poles))
    return p.monic() if p.degree > 0 else Poly((QQ.one,), QQ)


def univariate_poly(e: MRat) -> Poly:
    rf = e.as_univariate(slot(0))
    return Poly([c.constant_value() for c in rf.num.coeffs], QQ)
