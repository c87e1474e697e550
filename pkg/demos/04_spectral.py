"""
Spectral sensitivity against sensitivity and degree
===================================================

"""

import numpy as np

from boolcondense.algebraic import degree, spectral_sensitivity
from boolcondense.combinatorial import sensitivity
from boolcondense.core import random_function
from boolcondense.zoo import OR, XOR

# closed forms: sqrt(n) for OR, n for XOR
for n in range(2, 9):
    print(n, spectral_sensitivity(OR(n)), np.sqrt(n), spectral_sensitivity(XOR(n)))

# lambda <= s <= lambda^2 and deg <= lambda^2 on random functions
rows = []
for seed in range(200):
    f = random_function(6, seed)
    lam = spectral_sensitivity(f)
    rows.append((lam, sensitivity(f)[0], degree(f)))
rows = np.array(rows)
print("min s - lambda:", (rows[:, 1] - rows[:, 0]).min())
print("min lambda^2 - deg:", (rows[:, 0] ** 2 - rows[:, 2]).min())
