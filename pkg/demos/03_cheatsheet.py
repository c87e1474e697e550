"""
Cheat-sheet Tribes: query counts
================================

"""

from math import log2

import numpy as np

from boolcondense import cheatsheet as cs
from boolcondense.reproduce import SCALING_C1, SCALING_C2

p = cs.CsParams(4, 8)
print("variables:", p.total_vars, "address:", p.address_vars, "cells:", p.t, "x", p.cell_vars)

# one structured input, evaluated directly and by the query algorithm
rng = np.random.default_rng(0)
X = cs.random_cs_input(p, rng, "valid")
oracle = cs.BitOracle(X)
bit, tr = cs.cs_algorithm(p, oracle)
print("value", cs.cs_evaluate(p, X), "algorithm", bit, "queries", tr.count)
print(tr.dump().splitlines()[:5], "...")

# the adversary keeps both values reachable until the last query
adv = cs.CsAdversary(p, check=True)
bit, tr = cs.cs_algorithm(p, adv.oracle())
print("adversary:", tr.count, "queries, value fixed after answer", adv.committed_at)

#######################
# scaling as CSV rows
#######################

print("k,t,max_queries,bound")
for k, t in ((4, 8), (4, 16), (4, 32), (16, 16), (16, 64)):
    q = cs.CsParams(k, t)
    worst = 0
    for i in range(30):
        o = cs.BitOracle(cs.random_cs_input(q, rng))
        cs.cs_algorithm(q, o)
        worst = max(worst, o.count)
    bound = SCALING_C1 * t * log2(k) + SCALING_C2 * k * log2(k) * log2(t)
    print(f"{k},{t},{worst},{bound:g}")

# restricted algorithm: most positions fixed, 128 free
X = cs.random_cs_input(p, rng)
rho = cs.random_restriction(p, X, int(cs.star_budget(p)), rng)
log = []
bit, tr = cs.cs_restricted_algorithm(p, rho, cs.BitOracle(X), log=log)
print("restricted:", bit, "queries", tr.count)
print("\n".join(log))
