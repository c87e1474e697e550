"""Sensitivity, block sensitivity and certificate complexity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    BoolFun,
    Restriction,
    check_cap,
    index_to_bits,
    mask_to_vars,
    popcount,
)

# 3**n subcube arrays; 3**16 bytes is ~43 MB.
SUBCUBE_CAP = 16
BLOCK_CAP = 20


@dataclass(frozen=True)
class BlockFamily:
    """Disjoint sensitive blocks at ``base`` (blocks are bit masks)."""

    base: int
    blocks: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.blocks)

    def as_sets(self) -> list[tuple[int, ...]]:
        return [mask_to_vars(b) for b in self.blocks]

    def check(self, f: BoolFun) -> bool:
        seen = 0
        fx = f.table[self.base]
        for b in self.blocks:
            if b == 0 or b & seen or f.table[self.base ^ b] == fx:
                return False
            seen |= b
        return True


@dataclass(frozen=True)
class Certificate:
    assignment: Restriction
    value: int

    @property
    def size(self) -> int:
        return self.assignment.size

    def check(self, f: BoolFun) -> bool:
        """Scan the subcube of the assignment; True iff ``f`` is constant ``value`` on it."""
        from .core import expansion_indices

        return bool(np.all(f.table[expansion_indices(self.assignment)] == self.value))


def _flip_indices(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return np.stack([idx ^ (1 << i) for i in range(n)]) if n else np.zeros((0, 1), dtype=np.int64)


def sensitivity_profile(f: BoolFun) -> np.ndarray:
    """``s(f, x)`` for every input ``x`` (indexed like the table)."""
    t = f.table
    out = np.zeros(f.size, dtype=np.int32)
    idx = np.arange(f.size, dtype=np.int64)
    for i in range(f.n):
        out += t != t[idx ^ (1 << i)]
    return out


def sensitivity_at(f: BoolFun, x: int) -> int:
    fx = f.table[x]
    return sum(int(f.table[x ^ (1 << i)] != fx) for i in range(f.n))


def _best(values: np.ndarray, f: BoolFun, b: int | None) -> tuple[int, int | None]:
    if b is not None:
        values = np.where(f.table == b, values, -1)
    if values.size == 0 or values.max() < 0:
        return 0, None
    x = int(np.argmax(values))
    return int(values[x]), x


def sensitivity(f: BoolFun, b: int | None = None) -> tuple[int, int | None]:
    """``s(f)`` (or ``s_b(f)``) with the lowest-index witness input."""
    return _best(sensitivity_profile(f), f, b)


def minimal_sensitive_blocks(f: BoolFun, x: int) -> list[int]:
    """All inclusion-minimal sensitive blocks at ``x``, by size then variable order."""
    check_cap(f.n, BLOCK_CAP, "minimal sensitive blocks")
    n = f.n
    if n == 0:
        return []
    masks = np.arange(1 << n, dtype=np.int64)
    diff = f.table[masks ^ x] != f.table[x]
    if not diff.any():
        return []
    shape = (2,) * n
    # axis n-1-i of the reshaped array is bit i of the mask
    has = diff.reshape(shape).copy()
    for ax in range(n):
        lo = [slice(None)] * n
        hi = [slice(None)] * n
        lo[ax], hi[ax] = 0, 1
        has[tuple(hi)] |= has[tuple(lo)]
    strict = np.zeros(shape, dtype=bool)
    for ax in range(n):
        lo = [slice(None)] * n
        hi = [slice(None)] * n
        lo[ax], hi[ax] = 0, 1
        strict[tuple(hi)] |= has[tuple(lo)]
    minimal = np.flatnonzero(diff & ~strict.ravel())
    return sorted((int(m) for m in minimal), key=_block_key)


def _block_key(m: int) -> tuple:
    return (popcount(m), mask_to_vars(m))


def minimal_blocks_all(f: BoolFun) -> list[list[int]]:
    """Minimal sensitive blocks for every input at once (small ``n`` only)."""
    n = f.n
    check_cap(n, 11, "all-input minimal blocks")
    N = 1 << n
    if n == 0:
        return [[]]
    masks = np.arange(N, dtype=np.int64)
    xs = masks[:, None]
    diff = f.table[xs ^ masks[None, :]] != f.table[xs]
    shape = (N,) + (2,) * n
    has = diff.reshape(shape).copy()
    strict = np.zeros(shape, dtype=bool)
    for ax in range(1, n + 1):
        lo = [slice(None)] * (n + 1)
        hi = [slice(None)] * (n + 1)
        lo[ax], hi[ax] = 0, 1
        has[tuple(hi)] |= has[tuple(lo)]
    for ax in range(1, n + 1):
        lo = [slice(None)] * (n + 1)
        hi = [slice(None)] * (n + 1)
        lo[ax], hi[ax] = 0, 1
        strict[tuple(hi)] |= has[tuple(lo)]
    minimal = diff & ~strict.reshape(N, N)
    return [sorted((int(m) for m in np.flatnonzero(row)), key=_block_key) for row in minimal]


def max_disjoint_blocks(blocks: Sequence[int], limit: int | None = None) -> list[int]:
    """Exact maximum packing of pairwise disjoint masks.

    Include-first branching in list order, so among maximum packings the one
    found first (lexicographically least by block position) is returned.
    ``limit`` is an optional known upper bound that allows early exit.
    """
    blocks = list(blocks)
    best: list[int] = []
    chosen: list[int] = []
    m = len(blocks)
    if m == 0:
        return []
    minsize = min(popcount(b) for b in blocks)

    def bound(start: int, used: int) -> int:
        union = 0
        cnt = 0
        for b in blocks[start:]:
            if not b & used:
                union |= b
                cnt += 1
        return min(cnt, popcount(union) // minsize)

    def rec(start: int, used: int) -> bool:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
            if limit is not None and len(best) >= limit:
                return True
        if start >= m or len(chosen) + bound(start, used) <= len(best):
            return False
        b = blocks[start]
        if not b & used:
            chosen.append(b)
            if rec(start + 1, used | b):
                return True
            chosen.pop()
        return rec(start + 1, used)

    rec(0, 0)
    return best


def min_hitting_set(blocks: Sequence[int], n: int) -> int:
    """Exact minimum set of variables meeting every mask; returned as a mask.

    Branches on the lowest-index unhit block, trying its variables in
    ascending order; pruned with a greedy disjoint-block lower bound.
    """
    blocks = list(blocks)
    if not blocks:
        return 0
    best = (1 << n) - 1
    best_size = popcount(best) + 1

    def lower(hit: int) -> int:
        used = 0
        cnt = 0
        for b in blocks:
            if not b & hit and not b & used:
                used |= b
                cnt += 1
        return cnt

    def rec(hit: int, size: int) -> None:
        nonlocal best, best_size
        first = next((b for b in blocks if not b & hit), None)
        if first is None:
            if size < best_size:
                best, best_size = hit, size
            return
        if size + lower(hit) >= best_size:
            return
        for v in mask_to_vars(first):
            rec(hit | (1 << v), size + 1)

    rec(0, 0)
    return best


def block_sensitivity_at(f: BoolFun, x: int, blocks: Sequence[int] | None = None,
                         limit: int | None = None) -> tuple[int, BlockFamily]:
    if blocks is None:
        blocks = minimal_sensitive_blocks(f, x)
    packing = max_disjoint_blocks(blocks, limit)
    return len(packing), BlockFamily(x, tuple(packing))


def certificate_at(f: BoolFun, x: int, blocks: Sequence[int] | None = None) -> tuple[int, Certificate]:
    """``C(f, x)`` as a minimum hitting set of the minimal sensitive blocks at ``x``."""
    if blocks is None:
        blocks = minimal_sensitive_blocks(f, x)
    hit = min_hitting_set(blocks, f.n)
    bits = index_to_bits(x, f.n)
    rho = Restriction(tuple(bits[i] if (hit >> i) & 1 else None for i in range(f.n)))
    return popcount(hit), Certificate(rho, int(f.table[x]))


def subcube_codes(f: BoolFun) -> np.ndarray:
    """Colour of every subcube: 0 / 1 if ``f`` is constant on it, 2 if mixed.

    Returned array has shape ``(3,) * n``; axis ``n-1-i`` indexes variable
    ``i`` with digit 0, 1 or 2 (= star).
    """
    n = f.n
    check_cap(n, SUBCUBE_CAP, "subcube transform")
    codes = f.table.reshape((2,) * n).copy() if n else f.table.copy().reshape(())
    for ax in range(n):
        a = np.take(codes, 0, axis=ax)
        b = np.take(codes, 1, axis=ax)
        star = np.where(a == b, a, 2).astype(np.uint8)
        codes = np.concatenate([codes, np.expand_dims(star, ax)], axis=ax)
    return codes


def certificate_profile(f: BoolFun) -> np.ndarray:
    """``C(f, x)`` for every input via the largest monochromatic subcube through ``x``.

    Independent of the hitting-set route: no sensitive blocks are involved.
    """
    n = f.n
    if n == 0:
        return np.zeros(1, dtype=np.int32)
    codes = subcube_codes(f)
    stars = np.zeros((3,) * n, dtype=np.int8)
    for ax in range(n):
        shape = [1] * n
        shape[ax] = 3
        stars = stars + (np.arange(3) == 2).astype(np.int8).reshape(shape)
    best = np.where(codes != 2, stars, np.int8(-1)).astype(np.int8)
    for ax in range(n):
        s0 = [slice(None)] * n
        s1 = [slice(None)] * n
        s2 = [slice(None)] * n
        s0[ax], s1[ax], s2[ax] = slice(0, 1), slice(1, 2), slice(2, 3)
        up = best[tuple(s2)]
        np.maximum(best[tuple(s0)], up, out=best[tuple(s0)])
        np.maximum(best[tuple(s1)], up, out=best[tuple(s1)])
    points = best[(slice(0, 2),) * n].reshape(-1)
    return (n - points).astype(np.int32)


def certificate_complexity(f: BoolFun, b: int | None = None) -> tuple[int, int | None, Certificate | None]:
    """``C(f)`` or ``C_b(f)`` with witness input and a minimum certificate there.

    Values for all inputs come from :func:`certificate_profile` when the
    arity allows it; the certificate at the witness is rebuilt by the
    hitting-set search and must agree.
    """
    if f.n <= SUBCUBE_CAP:
        prof = certificate_profile(f)
    else:
        prof = np.array([certificate_at(f, x)[0] for x in range(f.size)])
    value, x = _best(prof, f, b)
    if x is None:
        return 0, None, None
    c, cert = certificate_at(f, x)
    if c != value:
        raise AssertionError(f"certificate routes disagree at x={x}: {c} vs {value}")
    return value, x, cert


def _search_order(f: BoolFun, b: int | None, upper: np.ndarray) -> np.ndarray:
    keys = upper.astype(np.int64)
    if b is not None:
        keys = np.where(f.table == b, keys, -1)
    order = np.lexsort((np.arange(f.size), -keys))
    return order[keys[order] >= 0]


def block_sensitivity(f: BoolFun, b: int | None = None) -> tuple[int, BlockFamily | None]:
    """``bs(f)`` or ``bs_b(f)``.

    Inputs are visited in decreasing order of ``C(f, x)`` (an upper bound on
    ``bs(f, x)``) and the scan stops once no remaining input can win.
    """
    if f.n == 0:
        return 0, None
    upper = certificate_profile(f) if f.n <= SUBCUBE_CAP else np.full(f.size, f.n)
    best, fam = -1, None
    for x in _search_order(f, b, upper):
        x = int(x)
        if upper[x] <= best:
            break
        v, family = block_sensitivity_at(f, x, limit=int(upper[x]))
        if v > best:
            best, fam = v, family
    if fam is None:
        return 0, None
    return best, fam
