"""Condensation restrictions, restriction search, and the measure-relation checker."""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, isqrt
from typing import Any

import numpy as np

from . import dt
from .algebraic import mobius
from .combinatorial import block_sensitivity, sensitivity
from .core import BoolFun, BudgetExceeded, Restriction, mask_to_vars, restrict
from .measures import canonical, measure

POSITIVE_MEASURES = ("bs", "fbs", "C", "UCmin", "UC1", "UC", "D", "adeg", "lambda")
DEGREE_FAMILY = ("UCmin", "UC1", "UC", "D", "adeg")


def ceil_sqrt(v) -> int:
    """Smallest integer ``r >= 0`` with ``r*r >= v`` (exact for ints and fractions)."""
    v = Fraction(v) if not isinstance(v, float) else v
    if isinstance(v, float):
        r = isqrt(int(v))
        while r * r < v:
            r += 1
        return r
    r = isqrt(v.numerator // v.denominator)
    while r * r < v:
        r += 1
    return r


@dataclass(frozen=True)
class CondensationResult:
    measure: str
    original: Any
    rho: Restriction
    restricted: Any
    construction: str
    target: Any = None
    guaranteed: Any = None
    notes: tuple = field(default=())

    @property
    def stars(self) -> int:
        return self.rho.star_count

    def as_dict(self) -> dict:
        from .measures import to_json_value

        return {
            "measure": self.measure,
            "original": to_json_value(self.original),
            "restriction": str(self.rho),
            "restricted": to_json_value(self.restricted),
            "stars": self.stars,
            "construction": self.construction,
            "target": to_json_value(self.target),
            "guaranteed": to_json_value(self.guaranteed),
            "notes": list(self.notes),
        }


def condense_by_sensitivity(f: BoolFun, k: int) -> CondensationResult:
    """Star ``k`` sensitive variables (lowest first) of a max-sensitivity input."""
    s, a = sensitivity(f)
    if not 0 <= k <= s:
        raise ValueError(f"k={k} outside [0, s(f)={s}]")
    if a is None:
        a = 0
    sens = [i for i in range(f.n) if f.table[a] != f.table[a ^ (1 << i)]][:k]
    rho = Restriction.from_stars(f.n, sens, a)
    return CondensationResult("s", s, rho, measure("s", restrict(f, rho)), "sensitivity", target=k)


def condense_by_degree(f: BoolFun, k: int) -> CondensationResult:
    """Keep a top monomial alive.

    A degree-``k`` monomial is starred with everything else 0; otherwise
    the lowest monomial of the next present degree ``d`` keeps ``k`` of its
    variables free and sets the other ``d - k`` to 1.
    """
    poly = mobius(f)
    d_f = poly.degree
    if not 0 <= k <= d_f:
        raise ValueError(f"k={k} outside [0, deg(f)={d_f}]")
    exact = poly.monomials_of_degree(k)
    if exact:
        stars, ones = mask_to_vars(exact[0]), ()
    else:
        d = min(d for d in range(k + 1, d_f + 1) if poly.monomials_of_degree(d))
        vs = mask_to_vars(poly.monomials_of_degree(d)[0])
        stars, ones = vs[:k], vs[k:]
    base = [1 if i in ones else 0 for i in range(f.n)]
    rho = Restriction.from_stars(f.n, stars, base)
    return CondensationResult("deg", d_f, rho, measure("deg", restrict(f, rho)), "degree", target=k)


def condense_by_blocks(f: BoolFun, t: int) -> CondensationResult:
    """Star the first ``t`` blocks of a maximum disjoint packing, fix the rest to its input."""
    bs, fam = block_sensitivity(f)
    if not 0 <= t <= bs:
        raise ValueError(f"t={t} outside [0, bs(f)={bs}]")
    base = fam.base if fam is not None else 0
    stars = [v for b in (fam.blocks[:t] if fam else ()) for v in mask_to_vars(b)]
    rho = Restriction.from_stars(f.n, stars, base)
    return CondensationResult("bs", bs, rho, measure("bs", restrict(f, rho)), "blocks", target=t)


def choose_branch(name: str, value, s: int, deg: int) -> str:
    """Which construction the case split picks for measure ``name`` with value ``value``."""
    r = ceil_sqrt(value)
    if s >= r:
        return "sensitivity"
    if name in DEGREE_FAMILY and deg >= r:
        return "degree"
    return "blocks"


def condense_positive(f: BoolFun, name: str) -> CondensationResult:
    """Restriction whose ``name``-value is at least ``ceil(sqrt(name(f)))``.

    Case split: sensitivity if ``s(f)^2 >= M(f)``; for the degree family
    degree if ``deg(f)^2 >= M(f)``; otherwise blocks with ``t = ceil(sqrt(M(f)))``.
    ``guaranteed`` is the lower bound the chosen branch proves for the
    restricted value (``None`` for ``adeg`` and ``lambda``, where only the
    inner equality is exact).
    """
    name = canonical(name)
    if name not in POSITIVE_MEASURES:
        raise ValueError(f"condensation not supported for {name!r}")
    value = measure(name, f)
    if f.is_constant():
        rho = Restriction(tuple([0] * f.n))
        return CondensationResult(name, value, rho, measure(name, restrict(f, rho)), "constant",
                                  target=0, guaranteed=0)
    r = ceil_sqrt(value)
    s = measure("s", f)
    d = measure("deg", f)
    notes = []
    tag = choose_branch(name, value, s, d)
    if tag == "sensitivity":
        inner = condense_by_sensitivity(f, s)
        exact = ("s", s)
    elif tag == "degree":
        inner = condense_by_degree(f, d)
        exact = ("deg", d)
    else:
        inner = condense_by_blocks(f, r)
        exact = ("bs", r)
    if inner.restricted != exact[1] and tag != "blocks":
        raise AssertionError(f"{tag} branch: {exact[0]}(f|rho)={inner.restricted}, expected {exact[1]}")
    if tag == "blocks" and inner.restricted < r:
        raise AssertionError(f"blocks branch: bs(f|rho)={inner.restricted} < {r}")
    notes.append(f"{exact[0]}(f|rho)={inner.restricted}")
    if name in ("adeg", "lambda"):
        guaranteed = None
    elif name in ("UCmin", "UC1") and tag == "blocks":
        guaranteed = Fraction(r + 1, 2)
    else:
        guaranteed = r
    restricted = measure(name, restrict(f, inner.rho))
    return CondensationResult(name, value, inner.rho, restricted, tag, target=r,
                              guaranteed=guaranteed, notes=tuple(notes))


# ------------------------------------------------------------ restriction search

@dataclass(frozen=True)
class SearchResult:
    best: Any
    rho: Restriction | None
    examined: int


def _rho_key(rho: Restriction) -> str:
    return str(rho)


def _better(value, rho, best, best_rho) -> bool:
    if best_rho is None or value > best:
        return True
    return value == best and _rho_key(rho) < _rho_key(best_rho)


def exhaustive_restrictions(n: int, stars: int):
    for star_set in combinations(range(n), stars):
        rest = [i for i in range(n) if i not in star_set]
        for bits in product((0, 1), repeat=len(rest)):
            vals = [None] * n
            for i, b in zip(rest, bits):
                vals[i] = b
            yield Restriction(tuple(vals))


def sampled_restrictions(n: int, stars: int, samples: int, seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        star_set = set(int(i) for i in rng.choice(n, size=stars, replace=False))
        bits = rng.integers(0, 2, size=n)
        yield Restriction(tuple(None if i in star_set else int(bits[i]) for i in range(n)))


def _evaluate_chunk(args):
    table, n, name, rhos = args
    f = BoolFun(n, table)
    cache: dict[bytes, Any] = {}
    out = []
    for text in rhos:
        g = restrict(f, Restriction.parse(text))
        key = g.table.tobytes()
        if key not in cache:
            cache[key] = measure(name, g)
        out.append(cache[key])
    return out


def restricted_values(f: BoolFun, name: str, rhos: list[Restriction], threads: int = 1) -> list:
    """``name(f|rho)`` for each ``rho``; identical subfunctions are evaluated once per shard."""
    name = canonical(name)
    texts = [str(r) for r in rhos]
    if threads <= 1 or len(texts) < 2 * threads:
        return _evaluate_chunk((f.table, f.n, name, texts))
    size = -(-len(texts) // threads)
    chunks = [(f.table, f.n, name, texts[i:i + size]) for i in range(0, len(texts), size)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_evaluate_chunk, chunks))
    return [v for part in parts for v in part]


def search_restrictions(f: BoolFun, name: str, stars: int, mode: str = "exhaustive",
                        samples: int = 10_000, seed: int = 0, budget: int = 1_000_000,
                        threads: int | None = None) -> SearchResult:
    """Largest ``name(f|rho)`` over restrictions with exactly ``stars`` stars.

    Ties go to the lexicographically least restriction string, so the
    result does not depend on ``threads``.
    """
    if not 0 <= stars <= f.n:
        raise ValueError(f"stars={stars} outside [0, {f.n}]")
    if threads is None:
        threads = int(os.environ.get("BOOLCONDENSE_THREADS", "1"))
    if mode == "exhaustive":
        total = comb(f.n, stars) << (f.n - stars)
        if total > budget:
            raise BudgetExceeded(f"{total} restrictions exceed budget {budget}")
        rhos = list(exhaustive_restrictions(f.n, stars))
    elif mode == "sampled":
        rhos = list(sampled_restrictions(f.n, stars, samples, seed))
    else:
        raise ValueError(f"unknown search mode {mode!r}")
    values = restricted_values(f, name, rhos, threads)
    best, best_rho = None, None
    for v, rho in zip(values, rhos):
        if _better(v, rho, best, best_rho):
            best, best_rho = v, rho
    return SearchResult(best if best is not None else 0, best_rho, len(rhos))


# ---------------------------------------------------------------- laws

LAMBDA_SLACK = 1e-6


class SoftRelationWarning(UserWarning):
    """A relation with an unproven constant failed; reported, never a violation."""


def all_measures(f: BoolFun, include_uc: bool) -> dict[str, Any]:
    names = ["s", "bs", "fbs", "C", "D", "deg", "adeg", "lambda"]
    out = {k: measure(k, f) for k in names}
    if include_uc:
        out.update(dt.uc_measures(f))
    return out


def laws_check(f: BoolFun, include_uc: bool | None = None) -> list[str]:
    """Relations between the measures that fail on ``f`` (expected: none)."""
    if include_uc is None:
        include_uc = f.n <= 4
    m = all_measures(f, include_uc)
    s, bs, fbs, C, D, deg, adeg, lam = (m[k] for k in ("s", "bs", "fbs", "C", "D", "deg", "adeg", "lambda"))
    eps = LAMBDA_SLACK
    rel = [
        ("s <= bs", s <= bs),
        ("bs <= fbs", bs <= fbs),
        ("fbs <= C", fbs <= C),
        ("C <= bs*s", C <= bs * s),
        ("bs <= C", bs <= C),
        ("D <= deg*bs", D <= deg * bs),
        ("lambda <= s", lam <= s + eps),
        ("s <= lambda^2", s <= lam * lam + eps),
        ("deg <= lambda^2", deg <= lam * lam + eps),
        ("adeg <= deg", adeg <= deg),
        ("deg <= D", deg <= D),
    ]
    if include_uc:
        uc, uc1, ucmin = m["UC"], m["UC1"], m["UCmin"]
        rel += [
            ("deg <= UCmin", deg <= ucmin),
            ("UCmin <= UC1", ucmin <= uc1),
            ("UC1 <= UC", uc1 <= uc),
            ("UC <= D", uc <= D),
            ("C <= UC", C <= uc),
        ]
        if not f.is_constant():
            rel.append(("fbs <= 2*UCmin - 1", fbs <= 2 * ucmin - 1))
    if bs > 3 * adeg * adeg:
        warnings.warn(f"bs={bs} > 3*adeg^2={3 * adeg * adeg}", SoftRelationWarning, stacklevel=2)
    return [name for name, ok in rel if not ok]


def restriction_monotone(f: BoolFun, rho: Restriction, names=("s", "bs", "C", "deg")) -> list[str]:
    """Measures that grew under ``rho`` (expected: none)."""
    g = restrict(f, rho)
    return [k for k in names if measure(k, g) > measure(k, f)]

