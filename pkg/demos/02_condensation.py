"""
Condensing a measure onto few free variables
============================================

"""

from collections import Counter

from boolcondense.condense import condense_positive, sampled_restrictions, search_restrictions
from boolcondense.core import random_function, restrict
from boolcondense.measures import measure
from boolcondense.zoo import mod_rubinstein

# constructive route on a random 8-variable function; random functions are
# usually fully sensitive somewhere, so the sensitivity branch fires
f = random_function(8, 3)
for name in ("bs", "fbs", "C", "D"):
    r = condense_positive(f, name)
    print(f"{name:>3}: {r.original} -> {r.restricted} on {r.stars} stars via {r.construction}, rho={r.rho}")

# the same on modified Rubinstein: a single sensitive input already keeps C intact
g = mod_rubinstein(4)
r = condense_positive(g, "C")
print("modrub C:", r.original, "->", r.restricted, "stars", r.stars)

###################
# brute-force view
###################

# how much C survives when only 8 of the 16 variables stay free?
res = search_restrictions(g, "C", 8, mode="sampled", samples=2000, seed=7)
print("best C(f|rho) with 8 stars:", res.best, "at", res.rho)

# histogram of restricted C over the sample
vals = Counter(measure("C", restrict(g, rho)) for rho in sampled_restrictions(16, 8, 2000, 7))
print(sorted(vals.items()))
