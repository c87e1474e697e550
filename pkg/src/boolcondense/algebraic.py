"""Exact multilinear degree and spectral sensitivity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import BoolFun, check_cap, mask_to_vars, popcount

SPECTRAL_CAP = 14


class ConvergenceError(RuntimeError):
    """Power iteration hit its iteration cap."""


@dataclass(frozen=True)
class MultilinearPoly:
    n: int
    coefficients: dict  # monomial mask -> Fraction

    @property
    def degree(self) -> int:
        return max((popcount(m) for m in self.coefficients), default=0)

    def __call__(self, x: int) -> Fraction:
        return sum((c for m, c in self.coefficients.items() if m & x == m), Fraction(0))

    def monomials_of_degree(self, d: int) -> list[int]:
        return sorted((m for m in self.coefficients if popcount(m) == d), key=mask_to_vars)

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for m in sorted(self.coefficients, key=lambda m: (popcount(m), mask_to_vars(m))):
            c = self.coefficients[m]
            mono = "*".join(f"x{v + 1}" for v in mask_to_vars(m))
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def mobius_coefficients(f: BoolFun) -> np.ndarray:
    """Integer coefficient of every monomial, indexed by monomial mask.

    Coefficient of ``S`` is the alternating sum of ``f(1_T)`` over ``T`` in ``S``.
    """
    a = f.table.astype(np.int64)
    n = f.n
    if n == 0:
        return a.copy()
    a = a.reshape((2,) * n).copy()
    for ax in range(n):
        lo = [slice(None)] * n
        hi = [slice(None)] * n
        lo[ax], hi[ax] = 0, 1
        a[tuple(hi)] -= a[tuple(lo)]
    return a.reshape(-1)


def mobius(f: BoolFun) -> MultilinearPoly:
    coeffs = mobius_coefficients(f)
    nz = np.flatnonzero(coeffs)
    return MultilinearPoly(f.n, {int(m): Fraction(int(coeffs[m])) for m in nz})


def degree(f: BoolFun) -> int:
    coeffs = mobius_coefficients(f)
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        return 0
    return max(popcount(int(m)) for m in nz)


def sensitivity_edges(f: BoolFun) -> np.ndarray:
    """``edges[i, x]`` is True iff flipping variable ``i`` at ``x`` changes ``f``."""
    idx = np.arange(f.size, dtype=np.int64)
    t = f.table
    if f.n == 0:
        return np.zeros((0, 1), dtype=bool)
    return np.stack([t != t[idx ^ (1 << i)] for i in range(f.n)])


def _components(edges: np.ndarray) -> tuple[int, np.ndarray]:
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    size = edges.shape[1]
    idx = np.arange(size, dtype=np.int64)
    rows = np.concatenate([idx[edges[i]] for i in range(edges.shape[0])])
    cols = np.concatenate([idx[edges[i]] ^ (1 << i) for i in range(edges.shape[0])])
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(size, size))
    return connected_components(graph, directed=False)


def _power(nbrs: np.ndarray, tol: float, max_iter: int, rng: np.random.Generator) -> float:
    """Top eigenvalue of one connected component; ``nbrs[i, u]`` is the local
    neighbour of ``u`` across variable ``i`` or ``-1``."""
    size = nbrs.shape[1]
    present = nbrs >= 0
    safe = np.where(present, nbrs, 0)

    def apply(v):
        return np.where(present, v[safe], 0.0).sum(axis=0)

    v = np.ones(size) + 1e-3 * rng.standard_normal(size)
    v /= np.linalg.norm(v)
    for _ in range(max_iter):
        w = apply(apply(v))
        mu = float(v @ w)
        resid = float(np.linalg.norm(w - mu * v))
        if mu > 0 and resid / (2.0 * np.sqrt(mu)) < tol:
            return float(np.sqrt(mu))
        v = w / np.linalg.norm(w)
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")


def spectral_sensitivity(f: BoolFun, tol: float = 1e-9, max_iter: int = 10**6,
                         seed: int = 0) -> float:
    """Largest adjacency eigenvalue of the sensitivity graph, matrix-free.

    Runs per connected component, so near-equal tops of different
    components do not slow convergence. The graph is bipartite, so
    ``+lambda`` and ``-lambda`` tie in modulus; iteration runs on ``A @ A``
    and reports ``sqrt`` of its Rayleigh quotient, stopping when the
    residual bound on ``lambda`` drops below ``tol``. Components whose
    maximum degree cannot beat the current best are skipped.
    """
    check_cap(f.n, SPECTRAL_CAP, "spectral sensitivity")
    edges = sensitivity_edges(f)
    if not edges.any():
        return 0.0
    rng = np.random.default_rng(seed)
    count, labels = _components(edges)
    deg = edges.sum(axis=0)
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    groups = np.split(order, bounds)
    groups.sort(key=lambda g: (-int(deg[g].max()), int(g[0])))
    local = np.full(f.size, -1, dtype=np.int64)
    best = 0.0
    for g in groups:
        if g.size < 2 or deg[g].max() <= best:
            continue
        local[g] = np.arange(g.size)
        nbrs = np.stack([np.where(edges[i, g], local[g ^ (1 << i)], -1) for i in range(f.n)])
        best = max(best, _power(nbrs, tol, max_iter, rng))
        local[g] = -1
    return best


def adjacency_matrix(f: BoolFun) -> np.ndarray:
    """Dense sensitivity-graph adjacency; for cross-checks at small ``n``."""
    check_cap(f.n, 12, "dense adjacency")
    edges = sensitivity_edges(f)
    A = np.zeros((f.size, f.size))
    idx = np.arange(f.size)
    for i in range(f.n):
        A[idx[edges[i]], idx[edges[i]] ^ (1 << i)] = 1.0
    return A
