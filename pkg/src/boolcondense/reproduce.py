"""Desk-scale golden checks, shared by the CLI and the demos."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log2

import numpy as np

from . import cheatsheet as cs
from .condense import ceil_sqrt, condense_positive
from .core import random_function
from .measures import measure
from .zoo import mod_rubinstein, tribes

# frozen regression constants for query counts
SCALING_C1 = 3
SCALING_C2 = 2
RESTRICTED_C3 = 4


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _golden(f, expected: dict) -> list[Check]:
    out = []
    for name, want in expected.items():
        got = measure(name, f)
        out.append(Check(f"{f.name} {name}", got == want, f"got {got}, expected {want}"))
    return out


def modrub_golden() -> list[Check]:
    f = mod_rubinstein(4)
    return _golden(f, {"bs": 8, "fbs": Fraction(8), "C": 8, "C0": 8, "C1": 4, "bs0": 8, "bs1": 4})


def tribes_golden() -> list[Check]:
    return _golden(tribes(4), {"C0": 4, "C1": 2, "D": 8})


def adversary_run(params: cs.CsParams) -> tuple[int, int | None, bool, int]:
    """Plain algorithm against the adversary.

    Returns (queries, commit step, both values open before commit, output).
    """
    adv = cs.CsAdversary(params, check=True)
    bit, tr = cs.cs_algorithm(params, adv.oracle())
    commit = adv.committed_at
    before = adv.history if commit is None else adv.history[:commit - 1]
    return tr.count, commit, all(len(h) == 2 for h in before), bit


def cheatsheet_adversary(k: int = 4, t: int = 8) -> list[Check]:
    p = cs.CsParams(k, t)
    count, commit, open_before, _ = adversary_run(p)
    return [
        Check("adversary query count >= t", count >= t, f"{count} queries, t={t}"),
        Check("adversary commits no earlier than t", commit is None or commit >= t, f"commit at {commit}"),
        Check("both values reachable before commit", open_before, "exact completion check after every answer"),
    ]


def scaling_bound(k: int, t: int) -> float:
    return SCALING_C1 * t * log2(k) + SCALING_C2 * k * log2(k) * log2(t)


def cheatsheet_scaling(samples: int = 100, seed: int = 0) -> list[Check]:
    out = []
    for k, t in ((4, 8), (4, 16), (16, 64)):
        p = cs.CsParams(k, t)
        rng = np.random.default_rng(seed)
        worst, agree = 0, 0
        n = samples if k == 4 else max(1, samples // 4)
        for _ in range(n):
            X = cs.random_cs_input(p, rng)
            o = cs.BitOracle(X)
            bit, _ = cs.cs_algorithm(p, o)
            agree += bit == cs.cs_evaluate(p, X)
            worst = max(worst, o.count)
        bound = scaling_bound(k, t)
        out.append(Check(f"plain algorithm k={k} t={t}", agree == n and worst <= bound,
                         f"{agree}/{n} agree, max {worst} queries <= {bound:g}"))
    return out


def cheatsheet_restricted(pairs: int = 100, seed: int = 0, k: int = 4, t: int = 8, c: float = 8.0) -> list[Check]:
    p = cs.CsParams(k, t)
    rng = np.random.default_rng(seed)
    stars = int(cs.star_budget(p, c))
    worst, agree = 0, 0
    for _ in range(pairs):
        X = cs.random_cs_input(p, rng)
        rho = cs.random_restriction(p, X, stars, rng)
        o = cs.BitOracle(X)
        bit, _ = cs.cs_restricted_algorithm(p, rho, o, c=c)
        agree += bit == cs.restricted_evaluate(p, rho, [X[i] for i in rho.stars])
        worst = max(worst, o.count)
    bound = RESTRICTED_C3 * k * log2(k) ** 2
    return [Check(f"restricted algorithm k={k} t={t} stars={stars}", agree == pairs and worst <= bound,
                  f"{agree}/{pairs} agree, max {worst} queries <= {bound:g}")]


def condensation_sweep(count: int = 200, n: int = 8, seed: int = 0) -> list[Check]:
    out = []
    for name in ("bs", "fbs", "C"):
        fails = 0
        for i in range(count):
            f = random_function(n, seed + i)
            r = condense_positive(f, name)
            s = measure("s", f)
            cap = max(r.original, ceil_sqrt(r.original) * s)
            if r.restricted < ceil_sqrt(r.original) or r.stars > cap:
                fails += 1
        out.append(Check(f"condensation {name} over {count} functions", fails == 0, f"{fails} failures"))
    return out


TARGETS = {
    "thm-modrub": modrub_golden,
    "prop-tribes": tribes_golden,
    "lemma-cs-lb": cheatsheet_adversary,
    "lemma-cs-ub": cheatsheet_scaling,
    "lemma-cs-restricted": cheatsheet_restricted,
    "thm-positive": condensation_sweep,
}
