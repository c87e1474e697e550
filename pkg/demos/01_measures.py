"""
Complexity measures on a few classic functions
==============================================

"""

from boolcondense import measure
from boolcondense.zoo import AND, OR, XOR, mod_rubinstein, tribes

# small gates first: every measure agrees on OR, AND and XOR
for f in (OR(4), AND(4), XOR(4)):
    row = {m: measure(m, f) for m in ("s", "bs", "fbs", "C", "D", "deg")}
    print(f.name, row)

# Tribes on 8 variables: 2 ANDs of width 2
f = tribes(4)
print("tribes k=4", {m: measure(m, f) for m in ("C0", "C1", "D")})

#####################
# modified Rubinstein
#####################

# every copy accepts exactly one run of two adjacent ones, so flipping a pair
# inside any copy of the all-zero input is a sensitive block
g = mod_rubinstein(4)
for m in ("s", "bs", "bs0", "bs1", "fbs", "C", "C0", "C1"):
    print(f"{m:>4} = {measure(m, g)}")

# the sensitivity jump: s(f) = bs(f) = 8 while deg(f) = 16 = n
print("deg =", measure("deg", g))
