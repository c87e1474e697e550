"""Decision-tree depth by memoised minimax, unambiguous certificates by partition search."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .combinatorial import Certificate, certificate_profile, subcube_codes
from .core import BoolFun, BudgetExceeded, Restriction, check_cap, popcount

DT_CAP = 12
UC_CAP = 6


def _cofactor(table: np.ndarray, pos: int, b: int) -> np.ndarray:
    return table.reshape(-1, 2, 1 << pos)[:, b, :].ravel()


class DecisionTreeSolver:
    """Memo keyed by ``(free variables, packed table)``; reusable across calls."""

    def __init__(self, max_states: int = 5_000_000):
        self.memo: dict = {}
        self.max_states = max_states

    def depth(self, variables: tuple[int, ...], table: np.ndarray) -> tuple[int, int | None]:
        if table.min() == table.max():
            return 0, None
        key = (variables, np.packbits(table).tobytes())
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if len(self.memo) >= self.max_states:
            raise BudgetExceeded(f"decision-tree memo exceeded {self.max_states} states")
        best, arg = len(variables) + 1, None
        for pos, var in enumerate(variables):
            rest = variables[:pos] + variables[pos + 1:]
            worst = 0
            for b in (0, 1):
                d, _ = self.depth(rest, _cofactor(table, pos, b))
                worst = max(worst, d)
                if worst + 1 >= best:
                    break
            if worst + 1 < best:
                best, arg = worst + 1, var
        self.memo[key] = (best, arg)
        return best, arg


def dt_depth(f: BoolFun, max_states: int = 5_000_000) -> tuple[int, int | None]:
    """``D(f)`` and the lowest-index optimal first query (``None`` for constants)."""
    check_cap(f.n, DT_CAP, "decision-tree depth")
    return DecisionTreeSolver(max_states).depth(tuple(range(f.n)), f.table)


@dataclass(frozen=True)
class UnambiguousCover:
    value: int
    parts: tuple[Certificate, ...]

    @property
    def width(self) -> int:
        return max((p.size for p in self.parts), default=0)

    def check(self, f: BoolFun) -> bool:
        """Each part a certificate, parts pairwise inconsistent, every ``b``-input covered."""
        from .core import expansion_indices

        covered = np.zeros(f.size, dtype=np.int64)
        for p in self.parts:
            if p.value != self.value or not p.check(f):
                return False
            covered[expansion_indices(p.assignment)] += 1
        target = f.table == self.value
        return bool(np.all(covered[target] == 1) and np.all(covered[~target] == 0))


def _cube_restriction(digits: tuple[int, ...]) -> Restriction:
    return Restriction(tuple(None if d == 2 else d for d in digits))


def _cube_catalogue(f: BoolFun, b: int):
    """Every ``b``-monochromatic subcube as (fixed count, order key, point mask, digits)."""
    n = f.n
    codes = subcube_codes(f)
    out = []
    for flat in np.flatnonzero(codes.reshape(-1) == b):
        rev = np.unravel_index(int(flat), (3,) * n)
        digits = tuple(int(d) for d in rev[::-1])  # digits[i] is variable i
        free = [i for i, d in enumerate(digits) if d == 2]
        base = sum(1 << i for i, d in enumerate(digits) if d == 1)
        pts = 0
        for r in range(1 << len(free)):
            idx = base
            for j, v in enumerate(free):
                if (r >> j) & 1:
                    idx |= 1 << v
            pts |= 1 << idx
        out.append((n - len(free), digits, pts))
    out.sort(key=lambda c: (c[0], c[1]))
    return out


def uc_value(f: BoolFun, b: int, budget: int = 2_000_000) -> tuple[int, UnambiguousCover]:
    """``UC_b(f)`` with a witness partition of ``f^{-1}(b)`` into ``b``-subcubes.

    Iterative deepening on the width bound, starting at ``C_b(f)``; the DFS
    always covers the lowest-index uncovered ``b``-input next.
    """
    check_cap(f.n, UC_CAP, "unambiguous certificates")
    targets = [int(x) for x in np.flatnonzero(f.table == b)]
    if not targets:
        return 0, UnambiguousCover(b, ())
    prof = certificate_profile(f)
    start = int(prof[f.table == b].max())
    cubes = _cube_catalogue(f, b)
    by_point: dict[int, list] = {x: [] for x in targets}
    for c in cubes:
        pts = c[2]
        for x in targets:
            if (pts >> x) & 1:
                by_point[x].append(c)
    full = 0
    for x in targets:
        full |= 1 << x
    nodes = 0

    def search(u: int):
        nonlocal nodes
        chosen: list = []
        dead: set[int] = set()

        def rec(covered: int) -> bool:
            nonlocal nodes
            if covered == full:
                return True
            if covered in dead:
                return False
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"UC search exceeded {budget} nodes")
            rem = full & ~covered
            x = (rem & -rem).bit_length() - 1
            for c in by_point[x]:
                if c[0] > u:
                    break
                if c[2] & covered:
                    continue
                chosen.append(c)
                if rec(covered | c[2]):
                    return True
                chosen.pop()
            dead.add(covered)
            return False

        return list(chosen) if rec(0) else None

    for u in range(start, f.n + 1):
        parts = search(u)
        if parts is not None:
            certs = tuple(Certificate(_cube_restriction(c[1]), b) for c in parts)
            cover = UnambiguousCover(b, certs)
            return cover.width, cover
    raise AssertionError("full-point partition always exists")


def uc_measures(f: BoolFun) -> dict[str, int]:
    u0, _ = uc_value(f, 0)
    u1, _ = uc_value(f, 1)
    return {"UC0": u0, "UC1": u1, "UC": max(u0, u1), "UCmin": min(u0, u1)}
