"""Triangular recursion for the mixed correlators ``h_{k,l}^{(g)}`` and ``W_{k,l}^{(g)}``.

Slot layouts (coefficients of ``dz`` in every form variable):

* ``W`` of type (k, l): ``[p_1 .. p_k, q_1 .. q_l]``;
* ``h`` of type (k, l): ``[p, q, p_1 .. p_k, q_1 .. q_l]``, scalar in ``p`` and ``q``.

Schedule: outer induction on the second index ``l``.  At fixed ``l`` every
``W_{., l}`` comes first (its bracket only uses data with second index
``l - 1``), then the ``h_{., l}`` in increasing ``2g + k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from ..curve import SpectralCurve, bergman, fiber_poly_symbolic
from ..exact_arith import GENS, IR, QZ, MRat, slot
from ..invariants import Differential, omega, table_for
from .residues import in_set, residue_sum

COMPLEXITY_BOUND = 6



class ComplexityBoundExceeded(ValueError):
    """Target beyond the supported bound ``2g + k + l``."""


class ScheduleViolation(RuntimeError):
    """A right-hand side was needed before the schedule produced it."""


@dataclass(frozen=True, order=True)
class MixedKey:
    kind: str  # "W" or "h"
    g: int
    k: int
    l: int

    def __post_init__(self):
        if self.kind not in ("W", "h"):
            raise ValueError("kind must be 'W' or 'h'")
        if min(self.g, self.k, self.l) < 0:
            raise ValueError("indices must be nonnegative")
        if self.kind == "W" and self.k + self.l == 0:
            raise ValueError("W needs at least one variable")

    @property
    def weight(self) -> int:
        return 2 * self.g + self.k + self.l

    @property
    def arity(self) -> int:
        return self.k + self.l + (2 if self.kind == "h" else 0)

    def __str__(self) -> str:
        return f"{self.kind}[{self.g}; {self.k}, {self.l}]"


@dataclass(frozen=True)
class MixedCorrelator:
    key: MixedKey
    form: Differential


# --------------------------------------------------------------- dependency graph


def is_seed(key: MixedKey) -> bool:
    """Entries given by initial conditions rather than by the recursion."""
    if key.kind == "W":
        return key.l == 0 or (key.g, key.k, key.l) in ((0, 0, 1), (0, 0, 2))
    return (key.g, key.k, key.l) == (0, 0, 0)


def _bracket_keys(g: int, k: int, l: int) -> Iterator[tuple[MixedKey, MixedKey | None]]:
    """Factor pairs of the common bracket for targets with indices (g, k, l)."""
    if g >= 1:
        yield MixedKey("h", g - 1, k + 1, l), None
    for h in range(g + 1):
        for i in range(k + 1):
            for j in range(l + 1):
                if (h, i, j) == (0, 0, 0):
                    continue  # W_{1,0}^{(0)} = 0
                yield MixedKey("W", h, i + 1, j), MixedKey("h", g - h, k - i, l - j)


def dependencies(key: MixedKey) -> set[MixedKey]:
    if is_seed(key):
        return set()
    if key.kind == "W":
        g, k, l = key.g, key.k, key.l - 1
    else:
        g, k, l = key.g, key.k, key.l
    out: set[MixedKey] = set()
    for a, b in _bracket_keys(g, k, l):
        out.add(a)
        if b is not None:
            out.add(b)
    return out


def _order(key: MixedKey) -> tuple:
    """Position in the documented schedule."""
    return (key.l, 0 if key.kind == "W" else 1, key.weight, key.g, key.k)


def schedule(target: MixedKey) -> list[MixedKey]:
    """Every non-seed entry the target needs, in schedule order; asserts the order is causal."""
    seen: set[MixedKey] = set()
    state: dict[MixedKey, int] = {}

    def visit(k: MixedKey):
        st = state.get(k)
        if st == 1:
            raise ScheduleViolation(f"dependency cycle through {k}")
        if st == 2:
            return
        state[k] = 1
        for d in dependencies(k):
            visit(d)
        state[k] = 2
        seen.add(k)

    visit(target)
    order = sorted((k for k in seen if not is_seed(k)), key=_order)
    pos = {k: i for i, k in enumerate(order)}
    for k in order:
        for d in dependencies(k):
            if not is_seed(d) and pos[d] >= pos[k]:
                raise ScheduleViolation(f"{d} is scheduled after {k}, which needs it")
    return order


def check_bound(g: int, k: int, l: int) -> None:
    if 2 * g + k + l > COMPLEXITY_BOUND:
        raise ComplexityBoundExceeded(f"2g+k+l = {2 * g + k + l} exceeds {COMPLEXITY_BOUND}")


# --------------------------------------------------------------- evaluation


class _Solver:
    def __init__(self, curve: SpectralCurve):
        self.curve = curve
        self.table = table_for(curve, "mixed")
        self._fiber: dict[int, object] = {}

    def seed(self, key: MixedKey) -> Differential:
        if key.kind == "h":
            return Differential(2, MRat(1))
        if key.l == 0:
            return omega(self.curve, key.g, key.k)
        if key.l == 1:
            return Differential.zero(1)  # W_{0,1}^{(0)}
        return Differential(2, bergman(slot(0), slot(1)))  # W_{0,2}^{(0)} = B

    def get(self, key: MixedKey) -> Differential:
        if is_seed(key):
            return self.seed(key)
        hit = self.table.get(key)
        if hit is None:
            raise ScheduleViolation(f"{key} requested before it was computed")
        return hit

    def solve(self, target: MixedKey) -> Differential:
        if is_seed(target):
            return self.seed(target)
        for key in schedule(target):
            if key not in self.table:
                self.table.put(key, self._compute(key))
        return self.table[target]

    def fiber_poly(self, q: int):
        """FLINT polynomial in ``r`` whose roots are the companions of ``z_q`` in the y-fiber."""
        hit = self._fiber.get(q)
        if hit is None:
            hit = fiber_poly_symbolic(self.curve, "y", IR, q)
            self._fiber[q] = hit
        return hit

    def bracket(self, g: int, k: int, l: int, p_slots: list[int], q_slot: int, ql_slots: list[int]) -> MRat:
        """The common bracket of both recursions as a function of ``r``."""
        total = QZ.zero
        if g >= 1:
            hh = self.get(MixedKey("h", g - 1, k + 1, l))
            total = total + hh.placed([IR, q_slot, IR] + p_slots + ql_slots)
        K, L = range(k), range(l)
        for h in range(g + 1):
            for i in range(k + 1):
                for j in range(l + 1):
                    if (h, i, j) == (0, 0, 0):
                        continue
                    W = self.get(MixedKey("W", h, i + 1, j))
                    if W.is_zero():
                        continue
                    hr = self.get(MixedKey("h", g - h, k - i, l - j))
                    for I in combinations(K, i):
                        KI = [p_slots[a] for a in K if a not in I]
                        for J in combinations(L, j):
                            LJ = [ql_slots[b] for b in L if b not in J]
                            w = W.placed([IR] + [p_slots[a] for a in I] + [ql_slots[b] for b in J])
                            total = total + w * hr.placed([IR, q_slot] + KI + LJ)
        return total

    def _compute(self, key: MixedKey) -> Differential:
        c = self.curve
        if key.kind == "h":
            g, k, l = key.g, key.k, key.l
            p, q = slot(0), slot(1)
            pk = [slot(2 + a) for a in range(k)]
            ql = [slot(2 + k + b) for b in range(l)]
            br = self.bracket(g, k, l, pk, q, ql)
            F = br / ((c.x_in(p) - c.x_in(IR)) * (c.y_in(IR) - c.y_in(q)))
            res = residue_sum(F, IR, in_set([GENS[v] for v in [p] + pk], self.fiber_poly(q)), str(key))
            return Differential(key.arity, res)
        g, k, l = key.g, key.k, key.l - 1
        pk = [slot(a) for a in range(k)]
        ql = [slot(k + b) for b in range(l)]
        q = slot(k + l)
        br = self.bracket(g, k, l, pk, q, ql)
        F = br * c.dy_in(q) / (c.y_in(IR) - c.y_in(q))
        res = residue_sum(F, IR, in_set([GENS[v] for v in pk], self.fiber_poly(q)), str(key))
        return Differential(key.arity, res)


_SOLVERS: dict = {}


def _solver(curve: SpectralCurve) -> _Solver:
    s = _SOLVERS.get(curve.key())
    if s is None:
        s = _SOLVERS[curve.key()] = _Solver(curve)
    return s


def mixed_W(curve: SpectralCurve, g: int, k: int, l: int) -> MixedCorrelator:
    """``W_{k,l}^{(g)}(p_1..p_k | q_1..q_l)``; the column ``l = 0`` is ``omega_{g,k}``."""
    key = MixedKey("W", g, k, l)
    check_bound(g, k, l)
    return MixedCorrelator(key, _solver(curve).solve(key))


def mixed_h(curve: SpectralCurve, g: int, k: int, l: int) -> MixedCorrelator:
    """``h_{k,l}^{(g)}(p, q; p_1..p_k | q_1..q_l)``."""
    key = MixedKey("h", g, k, l)
    check_bound(g, k, l)
    return MixedCorrelator(key, _solver(curve).solve(key))
