"""Named functions: gates, composition, (modified) Rubinstein, Tribes."""

from __future__ import annotations

import re
from math import isqrt

import numpy as np

from .combinatorial import Certificate
from .core import BoolFun, Restriction, TABLE_CAP, check_cap, index_to_bits


def _root(k: int) -> int:
    r = isqrt(k)
    if k < 1 or r * r != k:
        raise ValueError(f"k={k} is not a positive perfect square")
    return r


def _popcounts(n: int) -> np.ndarray:
    check_cap(n, TABLE_CAP)
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        out += (idx >> i) & 1
    return out


def OR(n: int) -> BoolFun:
    return BoolFun(n, _popcounts(n) > 0, name=f"or{n}")


def AND(n: int) -> BoolFun:
    return BoolFun(n, _popcounts(n) == n, name=f"and{n}")


def XOR(n: int) -> BoolFun:
    return BoolFun(n, _popcounts(n) % 2, name=f"xor{n}")


def identity() -> BoolFun:
    return BoolFun(1, [0, 1], name="id")


def constant(n: int, value: int) -> BoolFun:
    return BoolFun.constant(n, value)


def compose(f: BoolFun, g: BoolFun) -> BoolFun:
    """``f(g(x_1), ..., g(x_n))``; block ``i`` holds variables ``i*m .. i*m+m-1``."""
    n, m = f.n, g.n
    check_cap(n * m, TABLE_CAP, "composition")
    idx = np.arange(1 << (n * m), dtype=np.int64)
    inner = np.zeros_like(idx)
    mask = (1 << m) - 1
    for i in range(n):
        inner |= g.table[(idx >> (i * m)) & mask].astype(np.int64) << i
    name = f"{f.name}∘{g.name}" if f.name and g.name else None
    return BoolFun(n * m, f.table[inner], name=name)


def run_gadget(k: int, run: int) -> BoolFun:
    """1 iff the input is exactly one non-wrapping run of ``run`` ones."""
    check_cap(k, TABLE_CAP)
    accepted = np.zeros(1 << k, dtype=np.uint8)
    block = (1 << run) - 1
    for start in range(k - run + 1):
        accepted[block << start] = 1
    return BoolFun(k, accepted, name=f"run{run}of{k}")


def mod_rubinstein_gadget(k: int) -> BoolFun:
    return run_gadget(k, _root(k))


def mod_rubinstein(k: int) -> BoolFun:
    _root(k)
    f = compose(OR(k), mod_rubinstein_gadget(k))
    f.name = f"modrub(k={k})"
    return f


def rubinstein(k: int) -> BoolFun:
    _root(k)
    f = compose(OR(k), run_gadget(k, 2))
    f.name = f"rub(k={k})"
    return f


def tribes(k: int) -> BoolFun:
    r = _root(k)
    f = compose(OR(k), AND(r))
    f.name = f"tribes(k={k})"
    return f


def _gadget_certificate(y: tuple[int, ...], r: int) -> dict[int, int]:
    """Structural 0-certificate for one copy of the run gadget (local positions)."""
    k = len(y)
    ones = [i for i, b in enumerate(y) if b]
    for a in range(len(ones)):
        for b in range(len(ones) - 1, a, -1):
            if ones[b] - ones[a] >= r:
                return {ones[a]: 1, ones[b]: 1}
    for i in ones:
        for j in range(i + 1, k):
            if y[j] == 0:
                for l in range(j + 1, k):
                    if y[l] == 1:
                        return {i: 1, j: 0, l: 1}
                break
    if ones:
        # a single run of length < r
        start, length = ones[0], len(ones)
        if start > 0 and start + length < k:
            return {start - 1: 0, start: 1, start + length: 0}
        if start > 0:
            return {start - 1: 0, start: 1}
        return {length - 1: 1, length: 0}
    return {p: 0 for p in range(r - 1, k, r)}


def mod_rubinstein_certify(k: int, x) -> Certificate:
    """Certificate for ``mod_rubinstein(k)`` at ``x`` built from the case analysis.

    1-inputs: the full pattern of the lowest satisfied copy.  0-inputs: per
    copy, two far-apart ones, a 1-0-1 triple, the boundary bits of a short
    run, or one zero in every window of ``sqrt(k)`` positions.
    """
    r = _root(k)
    n = k * k
    if isinstance(x, (int, np.integer)):
        if not 0 <= x < 1 << n:
            raise ValueError(f"input index {x} out of range for k={k}")
        x = index_to_bits(int(x), n)
    x = tuple(int(b) for b in x)
    if len(x) != n:
        raise ValueError(f"input has {len(x)} bits, expected {n}")
    copies = [x[i * k:(i + 1) * k] for i in range(k)]

    def accepted(y):
        ones = [i for i, b in enumerate(y) if b]
        return len(ones) == r and ones[-1] - ones[0] == r - 1

    fixed: dict[int, int] = {}
    sat = next((i for i, y in enumerate(copies) if accepted(y)), None)
    if sat is not None:
        for p, b in enumerate(copies[sat]):
            fixed[sat * k + p] = b
        value = 1
    else:
        for i, y in enumerate(copies):
            for p, b in _gadget_certificate(y, r).items():
                fixed[i * k + p] = b
        value = 0
    rho = Restriction(tuple(fixed.get(p) for p in range(n)))
    return Certificate(rho, value)


_GATES = {"or": OR, "and": AND, "xor": XOR}


def _small(token: str) -> BoolFun:
    m = re.fullmatch(r"(or|and|xor|const0|const1|id)(\d*)", token)
    if not m:
        raise ValueError(f"unknown function token {token!r}")
    kind, ar = m.groups()
    if kind == "id":
        return identity()
    if not ar:
        raise ValueError(f"{token!r} needs an arity")
    if kind.startswith("const"):
        return constant(int(ar), int(kind[-1]))
    return _GATES[kind](int(ar))


def parse_spec(text: str) -> BoolFun:
    """Build a function from its textual form.

    ``modrub:k=4``, ``rub:k=4``, ``tribes:k=4``, ``or:n=3``, ``xor:n=4``,
    ``const0:n=3``, ``compose:or2,and2``.
    """
    text = text.strip()
    name, _, rest = text.partition(":")
    name = name.lower()
    if name == "compose":
        parts = [p.strip() for p in rest.split(",") if p.strip()]
        if len(parts) < 2:
            raise ValueError("compose needs at least two functions")
        fs = [_small(p) for p in parts]
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = compose(g, out)
        out.name = text
        return out
    params = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValueError(f"bad parameter {item!r}")
        params[key.strip()] = int(val)
    if name in ("modrub", "rub", "tribes"):
        k = params.get("k")
        if k is None:
            raise ValueError(f"{name} needs k=")
        f = {"modrub": mod_rubinstein, "rub": rubinstein, "tribes": tribes}[name](k)
    elif name in ("or", "and", "xor", "const0", "const1"):
        n = params.get("n")
        if n is None:
            raise ValueError(f"{name} needs n=")
        f = _small(f"{name}{n}")
    else:
        raise ValueError(f"unknown function family {name!r}")
    f.name = text
    return f
