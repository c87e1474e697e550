"""Truth-table Boolean functions, restrictions and the table file format.

Conventions shared by every module in the package:

* variables are numbered ``0 .. n-1`` internally; variable ``i`` is
  ``x_{i+1}`` in one-based notation;
* variable ``i`` is bit ``i`` of a table index, so ``x_1`` is the
  least-significant bit;
* inputs written as bit strings list ``x_1`` first (``"10"`` means
  ``x_1 = 1, x_2 = 0``, i.e. index 1).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

TABLE_CAP = int(os.environ.get("BOOLCONDENSE_TABLE_CAP", "24"))

STAR = None


class ArityError(ValueError):
    """Input or restriction does not match the arity of the function."""


class CapExceeded(ValueError):
    """Requested arity is above the configured limit of an operation."""


class TableFormatError(ValueError):
    """Malformed truth-table file."""


class BudgetExceeded(RuntimeError):
    """A search ran past its node / memory budget."""


def check_cap(n: int, cap: int, what: str = "truth table") -> None:
    if n < 0:
        raise ArityError(f"negative arity {n}")
    if n > cap:
        raise CapExceeded(f"{what}: arity {n} exceeds cap {cap}")


def bits_to_index(bits: Sequence[int] | str) -> int:
    idx = 0
    for i, b in enumerate(bits):
        b = int(b)
        if b not in (0, 1):
            raise ValueError(f"bit {b!r} is not 0/1")
        idx |= b << i
    return idx


def index_to_bits(idx: int, n: int) -> tuple[int, ...]:
    return tuple((idx >> i) & 1 for i in range(n))


def popcount(m: int) -> int:
    return bin(m).count("1")


def mask_to_vars(m: int) -> tuple[int, ...]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def vars_to_mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


class BoolFun:
    """An ``n``-variable Boolean function stored as a full truth table.

    The table is a read-only ``uint8`` array of length ``2**n`` holding 0/1.
    """

    __slots__ = ("n", "table", "name")

    def __init__(self, n: int, table, name: str | None = None, cap: int | None = None):
        check_cap(n, TABLE_CAP if cap is None else cap)
        arr = np.asarray(table)
        if arr.dtype == bool:
            arr = arr.astype(np.uint8)
        arr = np.ascontiguousarray(arr, dtype=np.uint8).ravel()
        if arr.size != 1 << n:
            raise ArityError(f"table length {arr.size} != 2**{n}")
        if arr.size and arr.max() > 1:
            raise ValueError("table entries must be 0/1")
        arr.setflags(write=False)
        self.n = n
        self.table = arr
        self.name = name

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[tuple[int, ...]], int], name=None) -> "BoolFun":
        tab = [int(bool(fn(index_to_bits(i, n)))) for i in range(1 << n)]
        return cls(n, tab, name=name)

    @classmethod
    def from_string(cls, bits: str, name=None) -> "BoolFun":
        size = len(bits)
        n = size.bit_length() - 1
        if size == 0 or 1 << n != size:
            raise ArityError(f"table length {size} is not a power of two")
        return cls(n, [int(c) for c in bits], name=name)

    @classmethod
    def constant(cls, n: int, value: int) -> "BoolFun":
        return cls(n, np.full(1 << n, int(value), dtype=np.uint8), name=f"const{int(value)}")

    def __call__(self, x) -> int:
        return evaluate(self, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoolFun):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.n, self.table.tobytes()))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        if self.n <= 5:
            return f"BoolFun({self.n},{label} {self.bitstring()})"
        return f"BoolFun({self.n},{label} ones={int(self.table.sum())})"

    def bitstring(self) -> str:
        return "".join("01"[b] for b in self.table)

    def packed(self) -> bytes:
        return np.packbits(self.table, bitorder="little").tobytes()

    @property
    def size(self) -> int:
        return 1 << self.n

    def is_constant(self) -> bool:
        return bool(self.table.min() == self.table.max())

    def ones(self) -> np.ndarray:
        return np.flatnonzero(self.table)

    def negate(self) -> "BoolFun":
        return BoolFun(self.n, 1 - self.table)


def evaluate(f: BoolFun, x) -> int:
    """Value of ``f`` at ``x`` (a table index or a bit sequence, ``x_1`` first)."""
    if isinstance(x, (int, np.integer)):
        if not 0 <= x < f.size:
            raise ArityError(f"index {x} out of range for arity {f.n}")
        return int(f.table[x])
    if len(x) != f.n:
        raise ArityError(f"input has {len(x)} bits, function has arity {f.n}")
    return int(f.table[bits_to_index(x)])


@dataclass(frozen=True)
class Restriction:
    """Partial assignment over ``{0, 1, *}``; ``None`` marks a star."""

    values: tuple

    def __post_init__(self):
        vals = tuple(None if v is None else int(v) for v in self.values)
        for v in vals:
            if v not in (None, 0, 1):
                raise ValueError(f"restriction entry {v!r}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def parse(cls, text: str) -> "Restriction":
        table = {"0": 0, "1": 1, "*": None}
        try:
            return cls(tuple(table[c] for c in text.strip()))
        except KeyError as exc:
            raise ValueError(f"bad restriction character {exc}") from None

    @classmethod
    def all_stars(cls, n: int) -> "Restriction":
        return cls((None,) * n)

    @classmethod
    def from_stars(cls, n: int, stars: Iterable[int], base: int | Sequence[int]) -> "Restriction":
        """Stars on ``stars``, every other variable copied from ``base``."""
        if isinstance(base, (int, np.integer)):
            base = index_to_bits(int(base), n)
        star_set = set(stars)
        return cls(tuple(None if i in star_set else int(base[i]) for i in range(n)))

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return "".join("*" if v is None else str(v) for v in self.values)

    @property
    def star_count(self) -> int:
        return sum(v is None for v in self.values)

    @property
    def size(self) -> int:
        return len(self.values) - self.star_count

    @property
    def stars(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v is None)

    @property
    def fixed_mask(self) -> int:
        return vars_to_mask(i for i, v in enumerate(self.values) if v is not None)

    @property
    def ones_mask(self) -> int:
        return vars_to_mask(i for i, v in enumerate(self.values) if v == 1)

    def consistent(self, x) -> bool:
        if isinstance(x, (int, np.integer)):
            x = index_to_bits(int(x), len(self.values))
        if len(x) != len(self.values):
            raise ArityError("input length differs from restriction length")
        return all(v is None or v == int(b) for v, b in zip(self.values, x))

    def compose(self, inner: "Restriction") -> "Restriction":
        """Restriction equivalent to applying ``self`` then ``inner``.

        ``inner`` ranges over the stars of ``self`` in ascending order.
        """
        stars = self.stars
        if len(inner) != len(stars):
            raise ArityError(f"inner restriction has length {len(inner)}, expected {len(stars)}")
        vals = list(self.values)
        for pos, v in zip(stars, inner.values):
            vals[pos] = v
        return Restriction(tuple(vals))

    def expand_index(self, reduced: int) -> int:
        """Full table index for a reduced input of the restricted function."""
        idx = self.ones_mask
        for j, pos in enumerate(self.stars):
            if (reduced >> j) & 1:
                idx |= 1 << pos
        return idx


def expansion_indices(rho: Restriction) -> np.ndarray:
    """Full-table indices of every reduced input, in reduced-index order."""
    k = rho.star_count
    idx = np.full(1 << k, rho.ones_mask, dtype=np.int64)
    reduced = np.arange(1 << k, dtype=np.int64)
    for j, pos in enumerate(rho.stars):
        idx |= ((reduced >> j) & 1) << pos
    return idx


def restrict(f: BoolFun, rho: Restriction) -> BoolFun:
    """``f|rho`` on the stars of ``rho``, free variables kept in ascending order."""
    if len(rho) != f.n:
        raise ArityError(f"restriction length {len(rho)} != arity {f.n}")
    return BoolFun(rho.star_count, f.table[expansion_indices(rho)])


def random_function(n: int, seed: int, cap: int | None = None) -> BoolFun:
    check_cap(n, TABLE_CAP if cap is None else cap)
    rng = np.random.default_rng(seed)
    return BoolFun(n, rng.integers(0, 2, size=1 << n, dtype=np.uint8), name=f"random(n={n},seed={seed})")


def read_table(path) -> BoolFun:
    """Parse the two-line table format: decimal arity, then ``2**n`` bits."""
    text = Path(path).read_text()
    return parse_table(text)


def parse_table(text: str) -> BoolFun:
    lines = text.split("\n")
    if len(lines) < 2:
        raise TableFormatError("expected two lines")
    head = lines[0].strip()
    if not head.isdigit():
        raise TableFormatError(f"malformed header {lines[0]!r}")
    n = int(head)
    bits = lines[1]
    if bits.strip() != bits or any(c not in "01" for c in bits):
        raise TableFormatError("table line must contain only 0/1 characters")
    if len(bits) != 1 << n:
        raise TableFormatError(f"length {len(bits)} != {1 << n}")
    if any(line.strip() for line in lines[2:]):
        raise TableFormatError("trailing content after table line")
    return BoolFun(n, [int(c) for c in bits])


def format_table(f: BoolFun) -> str:
    return f"{f.n}\n{f.bitstring()}\n"


def write_table(f: BoolFun, path) -> None:
    Path(path).write_text(format_table(f))


@dataclass
class OracleFun:
    """Pointwise access to a function too large to tabulate.

    Every call through :meth:`__call__` increments ``queries``.
    """

    arity: int
    evaluate: Callable[[Sequence[int]], int]
    metadata: dict = field(default_factory=dict)
    queries: int = 0

    def __call__(self, x: Sequence[int]) -> int:
        if len(x) != self.arity:
            raise ArityError(f"input has {len(x)} bits, oracle arity is {self.arity}")
        self.queries += 1
        return int(self.evaluate(x))

    def reset(self) -> None:
        self.queries = 0
