"""Exact rational linear programming, fractional block sensitivity, approximate degree."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

import numpy as np

from .combinatorial import SUBCUBE_CAP, certificate_profile, minimal_sensitive_blocks
from .core import BoolFun, check_cap, popcount

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
_REACHED = "reached"


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass
class LinearProgram:
    """``max``/``min`` of ``objective . x`` subject to rows and variable bounds.

    ``lower[j] is None`` means unbounded below; ``upper[j] is None`` means
    unbounded above. Rows are ``(coeffs, rel, rhs)`` with ``rel`` one of
    ``"<="``, ``">="``, ``"=="``.
    """

    objective: list
    sense: str = "max"
    rows: list = field(default_factory=list)
    lower: list | None = None
    upper: list | None = None

    def __post_init__(self):
        n = len(self.objective)
        self.objective = [_frac(c) for c in self.objective]
        if self.lower is None:
            self.lower = [Fraction(0)] * n
        if self.upper is None:
            self.upper = [None] * n
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense {self.sense!r}")
        for row in self.rows:
            self._check_row(row)

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def _check_row(self, row) -> None:
        coeffs, rel, _ = row
        if len(coeffs) != self.num_vars:
            raise ValueError(f"row width {len(coeffs)} != {self.num_vars}")
        if rel not in ("<=", ">=", "=="):
            raise ValueError(f"relation {rel!r}")

    def add_row(self, coeffs: Sequence, rel: str, rhs) -> None:
        row = ([_frac(c) for c in coeffs], rel, _frac(rhs))
        self._check_row(row)
        self.rows.append(row)

    def dump(self) -> str:
        """Plain-text listing, one line per row; for debugging only."""
        out = [f"{self.sense} " + " ".join(str(c) for c in self.objective)]
        for coeffs, rel, rhs in self.rows:
            out.append(" ".join(str(c) for c in coeffs) + f" {rel} {rhs}")
        for j, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            out.append(f"bound y{j} {'-inf' if lo is None else lo} {'inf' if hi is None else hi}")
        return "\n".join(out) + "\n"


@dataclass
class LPResult:
    status: str
    optimum: Fraction | None = None
    assignment: list | None = None
    pivots: int = 0


class _Tableau:
    """Integer-preserving (Edmonds/Bareiss) simplex tableau.

    Every stored entry is an integer; the true value is ``entry / den``.
    """

    def __init__(self, rows: np.ndarray, basis: list[int]):
        self.T = rows
        self.den = 1
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, c: int) -> None:
        T = self.T
        p = T[r, c]
        prow = T[r].copy()
        col = T[:, c].copy()
        T *= p
        T -= np.outer(col, prow)
        T //= self.den
        T[r] = prow
        self.den = p
        if p < 0:
            T *= -1
            self.den = -p
        self.basis[r] = c
        self.pivots += 1

    def run(self, obj_row: int, ncols: int, nrows: int, stop_at=None) -> str:
        """Bland's rule on objective row ``obj_row`` over columns ``< ncols``."""
        T = self.T
        rhs = T.shape[1] - 1
        while True:
            if stop_at is not None and Fraction(T[obj_row, rhs], self.den) >= stop_at:
                return _REACHED
            enter = next((j for j in range(ncols) if T[obj_row, j] < 0), None)
            if enter is None:
                return OPTIMAL
            leave = None
            for i in range(nrows):
                a = T[i, enter]
                if a > 0:
                    if leave is None:
                        leave = i
                        continue
                    # compare T[i,rhs]/a with T[leave,rhs]/T[leave,enter]
                    lhs = T[i, rhs] * T[leave, enter]
                    cur = T[leave, rhs] * a
                    if lhs < cur or (lhs == cur and self.basis[i] < self.basis[leave]):
                        leave = i
            if leave is None:
                return UNBOUNDED
            self.pivot(leave, enter)


def _standardize(lp: LinearProgram):
    """Map every original variable onto non-negative standard columns."""
    cols = 0
    maps = []  # per original var: (offset, [(col, coef)])
    extra_rows = []
    for lo, hi in zip(lp.lower, lp.upper):
        if lo is not None:
            maps.append((_frac(lo), [(cols, 1)]))
            if hi is not None:
                extra_rows.append(({cols: Fraction(1)}, "<=", _frac(hi) - _frac(lo)))
            cols += 1
        elif hi is not None:
            maps.append((_frac(hi), [(cols, -1)]))
            cols += 1
        else:
            maps.append((Fraction(0), [(cols, 1), (cols + 1, -1)]))
            cols += 2
    rows = []
    for coeffs, rel, rhs in lp.rows:
        row = {}
        b = _frac(rhs)
        for j, a in enumerate(coeffs):
            if a == 0:
                continue
            off, parts = maps[j]
            b -= a * off
            for col, s in parts:
                row[col] = row.get(col, Fraction(0)) + a * s
        rows.append((row, rel, b))
    rows.extend(extra_rows)
    sign = 1 if lp.sense == "max" else -1
    obj = {}
    const = Fraction(0)
    for j, c in enumerate(lp.objective):
        off, parts = maps[j]
        const += c * off
        for col, s in parts:
            obj[col] = obj.get(col, Fraction(0)) + sign * c * s
    return cols, maps, rows, obj, const


def _integer_row(coeffs: dict, b: Fraction) -> tuple[dict, int]:
    den = lcm(*(v.denominator for v in coeffs.values()), b.denominator) if coeffs else b.denominator
    return {k: int(v * den) for k, v in coeffs.items()}, int(b * den)


def solve_exact(lp: LinearProgram, stop_at=None) -> LPResult:
    """Two-phase simplex in exact integer/rational arithmetic with Bland's rule.

    ``stop_at`` (internal use) ends phase 2 as soon as the objective reaches
    that value; the result then has status ``"reached"``.
    """
    ncols, maps, rows, obj, const = _standardize(lp)
    m = len(rows)
    norm = []
    n_slack = 0
    n_art = 0
    for coeffs, rel, b in rows:
        coeffs, b = _integer_row(coeffs, b)
        if rel == ">=":
            coeffs, b, rel = {k: -v for k, v in coeffs.items()}, -b, "<="
        if rel == "<=":
            if b >= 0:
                norm.append((coeffs, b, 1, False))  # +slack, slack basic
            else:
                norm.append(({k: -v for k, v in coeffs.items()}, -b, -1, True))  # -surplus, artificial
            n_slack += 1
        else:
            if b < 0:
                coeffs, b = {k: -v for k, v in coeffs.items()}, -b
            norm.append((coeffs, b, 0, True))
        n_art += norm[-1][3]
    width = ncols + n_slack + n_art + 1
    T = np.zeros((m + 2, width), dtype=object)
    T[:] = 0
    basis = []
    s_col = ncols
    a_col = ncols + n_slack
    art_rows = []
    for i, (coeffs, b, slack_sign, art) in enumerate(norm):
        for k, v in coeffs.items():
            T[i, k] = v
        T[i, -1] = b
        if slack_sign:
            T[i, s_col] = slack_sign
            if not art:
                basis.append(s_col)
            s_col += 1
        if art:
            T[i, a_col] = 1
            basis.append(a_col)
            art_rows.append(i)
            a_col += 1
    zrow, wrow = m, m + 1
    if obj:
        oden = lcm(*(v.denominator for v in obj.values()))
    else:
        oden = 1
    for k, v in obj.items():
        T[zrow, k] = -int(v * oden)
    for i in art_rows:
        T[wrow, : ncols + n_slack] -= T[i, : ncols + n_slack]
        T[wrow, -1] -= T[i, -1]
    tab = _Tableau(T, basis)
    art_start = ncols + n_slack
    if art_rows:
        status = tab.run(wrow, art_start, m)
        if status != OPTIMAL:  # phase 1 is bounded; defensive
            raise AssertionError("phase 1 did not terminate optimally")
        if tab.T[wrow, -1] != 0:
            return LPResult(INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out of the basis; drop redundant rows
        keep = []
        for i in range(m):
            if tab.basis[i] >= art_start:
                j = next((j for j in range(art_start) if tab.T[i, j] != 0), None)
                if j is None:
                    continue
                tab.pivot(i, j)
            keep.append(i)
        T = tab.T[keep + [zrow]][:, list(range(art_start)) + [width - 1]]
        den = tab.den
        tab = _Tableau(np.ascontiguousarray(T), [tab.basis[i] for i in keep])
        tab.den = den
        m = len(keep)
        zrow = m
    else:
        T = tab.T[: m + 1][:, list(range(art_start)) + [width - 1]]
        den = tab.den
        tab = _Tableau(np.ascontiguousarray(T), tab.basis)
        tab.den = den
    stop = None
    if stop_at is not None:
        s = 1 if lp.sense == "max" else -1
        stop = (s * (_frac(stop_at) - const)) * oden
    status = tab.run(zrow, art_start, m, stop_at=stop)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=tab.pivots)
    den = tab.den
    values = [Fraction(0)] * ncols
    for i, bv in enumerate(tab.basis):
        if bv < ncols:
            values[bv] = Fraction(tab.T[i, -1], den)
    assignment = []
    for off, parts in maps:
        assignment.append(off + sum(s * values[c] for c, s in parts))
    optimum = sum(c * v for c, v in zip(lp.objective, assignment))
    return LPResult(status, optimum, assignment, tab.pivots)


def check_feasible(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    for j, v in enumerate(x):
        lo, hi = lp.lower[j], lp.upper[j]
        if lo is not None and v < lo:
            return False
        if hi is not None and v > hi:
            return False
    for coeffs, rel, rhs in lp.rows:
        s = sum(a * v for a, v in zip(coeffs, x))
        if rel == "<=" and s > rhs or rel == ">=" and s < rhs or rel == "==" and s != rhs:
            return False
    return True


def packing_lp(blocks: Sequence[int], n: int) -> LinearProgram:
    """Fractional packing: maximise the block weights, unit load per variable."""
    lp = LinearProgram([1] * len(blocks), "max", upper=[Fraction(1)] * len(blocks))
    for i in range(n):
        coeffs = [1 if (b >> i) & 1 else 0 for b in blocks]
        if any(coeffs):
            lp.add_row(coeffs, "<=", 1)
    return lp


def fbs_at(f: BoolFun, x: int, blocks: Sequence[int] | None = None) -> Fraction:
    if blocks is None:
        blocks = minimal_sensitive_blocks(f, x)
    if not blocks:
        return Fraction(0)
    res = solve_exact(packing_lp(blocks, f.n))
    assert res.status == OPTIMAL
    return res.optimum


def fractional_block_sensitivity(f: BoolFun, b: int | None = None) -> tuple[Fraction, int | None]:
    """``fbs(f)`` (or over ``f^{-1}(b)``) with witness input.

    Inputs are scanned in decreasing ``C(f, x)``, which bounds ``fbs(f, x)``.
    """
    if f.n == 0:
        return Fraction(0), None
    upper = certificate_profile(f) if f.n <= SUBCUBE_CAP else np.full(f.size, f.n)
    keys = upper.astype(np.int64)
    if b is not None:
        keys = np.where(f.table == b, keys, -1)
    order = np.lexsort((np.arange(f.size), -keys))
    best, arg = Fraction(-1), None
    for x in order:
        x = int(x)
        if keys[x] < 0 or keys[x] <= best:
            break
        v = fbs_at(f, x)
        if v > best:
            best, arg = v, x
    if arg is None:
        return Fraction(0), None
    return best, arg


def monomials(n: int, d: int) -> list[int]:
    """Masks of all monomials of degree at most ``d``, by degree then variables."""
    out = []
    for k in range(d + 1):
        for vs in combinations(range(n), k):
            m = 0
            for v in vs:
                m |= 1 << v
            out.append(m)
    return out


def approximation_lp(f: BoolFun, d: int) -> LinearProgram:
    """Uniform approximation by degree-``d`` polynomials.

    Variables: monomial coefficients (free) and a slack ``u = 1 - error``;
    the optimum ``u*`` gives the best error ``1 - u*``. The origin is
    feasible, so no phase 1 is needed.
    """
    mons = monomials(f.n, d)
    nv = len(mons) + 1
    lp = LinearProgram([0] * len(mons) + [1], "max",
                       lower=[None] * len(mons) + [Fraction(0)])
    for x in range(f.size):
        ev = [1 if m & x == m else 0 for m in mons]
        fx = int(f.table[x])
        lp.add_row(ev + [1], "<=", fx + 1)
        lp.add_row([-e for e in ev] + [1], "<=", 1 - fx)
    assert lp.num_vars == nv
    return lp


def best_approximation_error(f: BoolFun, d: int) -> Fraction:
    res = solve_exact(approximation_lp(f, d))
    assert res.status == OPTIMAL
    return 1 - res.optimum


def approx_degree(f: BoolFun, eps=Fraction(1, 3), cap: int = 8) -> int:
    """Least ``d`` admitting a degree-``d`` polynomial within ``eps`` of ``f``.

    Ascending exact scan; ``d = deg(f)`` is feasible with ``f``'s own
    polynomial, so only ``d < deg(f)`` are tested by LP.
    """
    from .algebraic import degree

    check_cap(f.n, cap, "approximate degree")
    eps = _frac(eps)
    top = degree(f)
    for d in range(top):
        res = solve_exact(approximation_lp(f, d), stop_at=1 - eps)
        if res.status == _REACHED or (res.status == OPTIMAL and res.optimum >= 1 - eps):
            return d
    return top
