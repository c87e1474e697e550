"""Cheat-sheet Tribes: oracle, query algorithms, and an adversary, with exact query counts.

Bit layout of an input (all indices 0-based):

* address part first: Tribes copy ``i`` (``0 <= i < logt``) occupies
  ``i*N .. i*N+N-1`` where ``N = k*sqrt(k)``; AND block ``j`` of a copy is
  its variables ``j*sqrt(k) .. j*sqrt(k)+sqrt(k)-1``;
* then cells ``Y_0 .. Y_{t-1}``, each holding ``logt`` descriptions of
  ``k`` fields of ``w = ceil(log2 N)`` bits;
* a 0-certificate description stores in field ``j`` the label (``0..N-1``)
  of a zero variable of block ``j``; a 1-certificate description stores the
  index of an all-ones block in its first ``ceil(log2 k)`` bits;
* labels are written most-significant bit first, and ``f(x_1)`` is the
  most-significant bit of the cell address.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from math import ceil, isqrt, log2
from typing import Callable, Iterable

import numpy as np

from .core import OracleFun, Restriction


class StarBudgetError(ValueError):
    """Restriction leaves more free variables than the algorithm allows."""


def _clog2(v: int) -> int:
    return 0 if v <= 1 else ceil(log2(v))


@dataclass(frozen=True)
class CsParams:
    k: int
    t: int

    def __post_init__(self):
        r = isqrt(self.k)
        if self.k < 1 or r * r != self.k:
            raise ValueError(f"k={self.k} is not a perfect square")
        if self.t < 2 or self.t & (self.t - 1):
            raise ValueError(f"t={self.t} is not a power of two >= 2")

    @classmethod
    def default(cls, k: int) -> "CsParams":
        return cls(k, k * isqrt(k))

    @property
    def root(self) -> int:
        return isqrt(self.k)

    @property
    def tribes_vars(self) -> int:
        return self.k * self.root

    @property
    def logt(self) -> int:
        return self.t.bit_length() - 1

    @property
    def label_bits(self) -> int:
        return _clog2(self.tribes_vars)

    @property
    def and_bits(self) -> int:
        return _clog2(self.k)

    @property
    def cell_bits(self) -> int:
        """Bits of one certificate description."""
        return self.k * self.label_bits

    @property
    def cell_vars(self) -> int:
        return self.logt * self.cell_bits

    @property
    def address_vars(self) -> int:
        return self.tribes_vars * self.logt

    @property
    def total_vars(self) -> int:
        return self.address_vars + self.t * self.cell_vars

    def x_var(self, i: int, v: int) -> int:
        return i * self.tribes_vars + v

    def block_vars(self, j: int) -> range:
        return range(j * self.root, (j + 1) * self.root)

    def field_var(self, cell: int, i: int, j: int, bit: int = 0) -> int:
        return (self.address_vars + cell * self.cell_vars + i * self.cell_bits
                + j * self.label_bits + bit)

    def field_range(self, cell: int, i: int, j: int) -> range:
        s = self.field_var(cell, i, j)
        return range(s, s + self.label_bits)

    def and_label_range(self, cell: int, i: int) -> range:
        s = self.field_var(cell, i, 0)
        return range(s, s + self.and_bits)

    def address_bit(self, cell: int, i: int) -> int:
        return (cell >> (self.logt - 1 - i)) & 1

    def in_block(self, label: int, j: int) -> bool:
        return j * self.root <= label < (j + 1) * self.root

    def stage1_bound(self) -> int:
        """Queries for reducing ``t`` cells to one: one AND label, one variable label, one bit each."""
        return (self.t - 1) * (self.and_bits + self.label_bits + 1)

    def stage2_bound(self) -> int:
        per = max(self.and_bits + self.root, self.k * (self.label_bits + 1))
        return self.logt * per


def _label(bits: Iterable[int]) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | int(b)
    return v


def _write_label(X: np.ndarray, positions: range, value: int) -> None:
    w = len(positions)
    for off, pos in enumerate(positions):
        X[pos] = (value >> (w - 1 - off)) & 1


def tribes_value(params: CsParams, x: np.ndarray) -> int:
    r = params.root
    return int(np.any(np.all(np.asarray(x).reshape(params.k, r) == 1, axis=1)))


def description_valid(params: CsParams, X: np.ndarray, cell: int, i: int, b: int) -> bool:
    """Whether description ``i`` of ``cell`` is a valid ``b``-certificate for copy ``i``."""
    base = params.x_var(i, 0)
    if b == 1:
        j = _label(X[p] for p in params.and_label_range(cell, i))
        if j >= params.k:
            return False
        return all(X[base + v] == 1 for v in params.block_vars(j))
    for j in range(params.k):
        lab = _label(X[p] for p in params.field_range(cell, i, j))
        if not params.in_block(lab, j) or X[base + lab] != 0:
            return False
    return True


def cs_address(params: CsParams, X: np.ndarray) -> int:
    N = params.tribes_vars
    ell = 0
    for i in range(params.logt):
        ell = (ell << 1) | tribes_value(params, X[i * N:(i + 1) * N])
    return ell


def cs_evaluate(params: CsParams, X) -> int:
    """Direct evaluation: 1 iff the addressed cell certifies every address copy."""
    X = np.asarray(X, dtype=np.uint8)
    if X.size != params.total_vars:
        raise ValueError(f"input has {X.size} bits, expected {params.total_vars}")
    ell = cs_address(params, X)
    return int(all(description_valid(params, X, ell, i, params.address_bit(ell, i))
                   for i in range(params.logt)))


def cs_function(params: CsParams) -> OracleFun:
    """Pointwise oracle for the full cheat-sheet function."""
    return OracleFun(params.total_vars, lambda X: cs_evaluate(params, X),
                     metadata={"family": "cheatsheet-tribes", "k": params.k, "t": params.t})


@dataclass
class QueryTranscript:
    entries: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def indices(self) -> list[int]:
        return [i for i, _ in self.entries]

    def dump(self) -> str:
        lines = [f"{i} {b}" for i, b in self.entries]
        lines.append(f"count {self.count}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "QueryTranscript":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[-1].startswith("count "):
            raise ValueError("missing trailing count line")
        entries = []
        for ln in lines[:-1]:
            i, b = ln.split()
            entries.append((int(i), int(b)))
        if int(lines[-1].split()[1]) != len(entries):
            raise ValueError("count line disagrees with entries")
        return cls(entries)


class BitOracle:
    """Per-bit query access to a cheat-sheet input.

    Each distinct non-fixed index is charged once; repeated reads and reads
    of positions fixed by a restriction are free.
    """

    def __init__(self, source, fixed: dict | None = None,
                 on_query: Callable[[int, int], None] | None = None):
        if callable(source):
            self._source = source
        else:
            arr = np.asarray(source, dtype=np.uint8)
            self._source = lambda idx: int(arr[idx])
        self.fixed = dict(fixed or {})
        self.known: dict[int, int] = {}
        self.transcript = QueryTranscript()
        self.on_query = on_query

    def set_restriction(self, rho: Restriction) -> None:
        self.fixed = {i: v for i, v in enumerate(rho.values) if v is not None}

    def peek(self, idx: int) -> int | None:
        v = self.fixed.get(idx)
        return self.known.get(idx) if v is None else v

    def read(self, idx: int) -> int:
        v = self.peek(idx)
        if v is not None:
            return v
        v = int(self._source(idx))
        self.known[idx] = v
        self.transcript.entries.append((idx, v))
        if self.on_query is not None:
            self.on_query(idx, v)
        return v

    def read_label(self, positions: range) -> int:
        return _label(self.read(p) for p in positions)

    @property
    def count(self) -> int:
        return self.transcript.count


def discard_one(params: CsParams, ell: int, p: int, oracle: BitOracle) -> tuple[int, QueryTranscript]:
    """Find a cell among ``ell`` and ``p`` that cannot be the valid addressed cell.

    Uses the first address position where the cells differ: reads the
    claimed all-ones block from the cell with bit 1, the claimed zero
    variable of that block from the other cell, then that input bit.
    """
    if ell == p:
        raise ValueError("cells must differ")
    start = oracle.count
    i = next(i for i in range(params.logt) if params.address_bit(ell, i) != params.address_bit(p, i))
    one, zero = (ell, p) if params.address_bit(ell, i) == 1 else (p, ell)
    j = oracle.read_label(params.and_label_range(one, i))
    if j >= params.k:
        out = one
    else:
        lab = oracle.read_label(params.field_range(zero, i, j))
        if not params.in_block(lab, j):
            out = zero
        else:
            out = one if oracle.read(params.x_var(i, lab)) == 0 else zero
    return out, QueryTranscript(oracle.transcript.entries[start:])


def verify_description(params: CsParams, cell: int, i: int, oracle: BitOracle) -> bool:
    """Read description ``i`` of ``cell`` and the input bits it names; stop at the first failure."""
    if params.address_bit(cell, i) == 1:
        j = oracle.read_label(params.and_label_range(cell, i))
        if j >= params.k:
            return False
        return all(oracle.read(params.x_var(i, v)) == 1 for v in params.block_vars(j))
    for j in range(params.k):
        lab = oracle.read_label(params.field_range(cell, i, j))
        if not params.in_block(lab, j) or oracle.read(params.x_var(i, lab)) != 0:
            return False
    return True


def verify_cell(params: CsParams, cell: int, oracle: BitOracle) -> bool:
    return all(verify_description(params, cell, i, oracle) for i in range(params.logt))


def cs_algorithm(params: CsParams, oracle: BitOracle) -> tuple[int, QueryTranscript]:
    """Knock-out tournament over the cells, then full verification of the survivor."""
    champion = 0
    for cell in range(1, params.t):
        loser, _ = discard_one(params, champion, cell, oracle)
        champion = cell if loser == champion else champion
    return int(verify_cell(params, champion, oracle)), oracle.transcript


def star_budget(params: CsParams, c: float = 8.0) -> float:
    return c * params.tribes_vars * log2(params.k) if params.k > 1 else c * params.tribes_vars


@dataclass
class CsRestrictedState:
    alive: set
    zero_cells: list
    live_ands: list


class _Restricted:
    def __init__(self, params: CsParams, oracle: BitOracle, c: float):
        self.p = params
        self.o = oracle
        self.c = c
        self.alive = set(range(params.t))
        self.stage1_queries = 0
        self.log: list[str] = []

    # -- bookkeeping that costs no queries
    def known_label(self, positions: range) -> int | None:
        bits = [self.o.peek(q) for q in positions]
        if any(b is None for b in bits):
            return None
        return _label(bits)

    def known_tribes_value(self, i: int) -> int | None:
        p = self.p
        all_zero_somewhere = True
        for j in range(p.k):
            vals = [self.o.peek(p.x_var(i, v)) for v in p.block_vars(j)]
            if all(v == 1 for v in vals):
                return 1
            if 0 not in vals:
                all_zero_somewhere = False
        return 0 if all_zero_somewhere else None

    def refuted(self, cell: int) -> bool:
        """True when already-known bits show ``cell`` cannot be the valid addressed cell."""
        p = self.p
        for i in range(p.logt):
            b = p.address_bit(cell, i)
            fx = self.known_tribes_value(i)
            if fx is not None and fx != b:
                return True
            if b == 1:
                j = self.known_label(p.and_label_range(cell, i))
                if j is not None and (j >= p.k or any(
                        self.o.peek(p.x_var(i, v)) == 0 for v in p.block_vars(j))):
                    return True
            else:
                for j in range(p.k):
                    lab = self.known_label(p.field_range(cell, i, j))
                    if lab is not None and (not p.in_block(lab, j)
                                            or self.o.peek(p.x_var(i, lab)) == 1):
                        return True
        return False

    def prune(self) -> None:
        self.alive = {cell for cell in self.alive if not self.refuted(cell)}

    # -- one address copy
    def iteration(self, i: int) -> None:
        p = self.p
        self.prune()
        live = [j for j in range(p.k)
                if all(self.o.peek(p.x_var(i, v)) != 0 for v in p.block_vars(j))]
        zero = sorted(c for c in self.alive if p.address_bit(c, i) == 0)
        state = CsRestrictedState(self.alive, zero, live)
        lg = log2(p.k) if p.k > 1 else 1.0
        and_limit = self.c * p.root * lg
        cell_limit = 2 * p.k
        before = self.o.count
        while len(state.live_ands) > and_limit and len(state.zero_cells) > cell_limit:
            if not self._stage1_step(i, state):
                break
        self.stage1_queries += self.o.count - before
        if self.o.count > before:
            self.log.append(f"copy {i}: stage 1 used {self.o.count - before} queries")
        if len(state.live_ands) <= and_limit:
            value = 0
            for j in state.live_ands:
                if all(self.o.read(p.x_var(i, v)) == 1 for v in p.block_vars(j)):
                    value = 1
                    break
            self.alive = {c for c in self.alive if p.address_bit(c, i) == value}
            self.log.append(f"copy {i}: evaluated {len(state.live_ands)} live ANDs -> {value}")
            return
        zero = [c for c in state.zero_cells if c in self.alive]
        if not zero:
            self.log.append(f"copy {i}: no zero cells left")
            return
        champion = zero[0]
        for cell in zero[1:]:
            loser, _ = discard_one(p, champion, cell, self.o)
            self.alive.discard(loser)
            champion = cell if loser == champion else champion
        if verify_description(p, champion, i, self.o):
            self.alive = {champion}
            self.log.append(f"copy {i}: zero certificate of cell {champion} verified")
        else:
            self.alive.discard(champion)
            self.alive = {c for c in self.alive if p.address_bit(c, i) == 1}
            self.log.append(f"copy {i}: zero cells exhausted")

    def _stage1_step(self, i: int, state: CsRestrictedState) -> bool:
        p = self.p
        zero = state.zero_cells
        for j in state.live_ands:
            labels = {}
            for cell in zero:
                lab = self.known_label(p.field_range(cell, i, j))
                if lab is not None:
                    labels[cell] = lab
            if 2 * len(labels) < len(zero):
                continue
            counts = Counter(labels.values())
            lab = min(counts, key=lambda v: (-counts[v], v))
            if not p.in_block(lab, j):
                # such cells are refuted for free
                bad = {c for c, v in labels.items() if not p.in_block(v, j)}
                self.alive -= bad
                state.zero_cells = [c for c in zero if c not in bad]
                return True
            if self.o.read(p.x_var(i, lab)) == 0:
                state.live_ands = [a for a in state.live_ands if a != j]
            else:
                bad = {c for c, v in labels.items() if v == lab}
                self.alive -= bad
                state.zero_cells = [c for c in zero if c not in bad]
            return True
        return False


def cs_restricted_algorithm(params: CsParams, rho: Restriction, oracle: BitOracle,
                            c: float = 8.0, log: list | None = None) -> tuple[int, QueryTranscript]:
    """Query algorithm for the cheat-sheet function under a restriction ``rho``.

    Positions fixed by ``rho`` are read for free. For each address copy it
    narrows down the live ANDs and the cells claiming value 0 until either
    few ANDs remain (evaluate them) or few cells remain (knock out and verify
    one); at most one candidate cell survives and is verified at the end.
    """
    if len(rho) != params.total_vars:
        raise ValueError(f"restriction length {len(rho)} != {params.total_vars}")
    budget = star_budget(params, c)
    if rho.star_count > budget:
        raise StarBudgetError(f"{rho.star_count} free variables exceed budget {budget:g}")
    oracle.set_restriction(rho)
    run = _Restricted(params, oracle, c)
    for i in range(params.logt):
        run.iteration(i)
    run.prune()
    if log is not None:
        log.extend(run.log)
    if not run.alive:
        return 0, oracle.transcript
    (cell,) = run.alive
    return int(verify_cell(params, cell, oracle)), oracle.transcript


# ---------------------------------------------------------------- adversary

def _block_values(partial: dict, vars_: range, extra: dict | None = None) -> set:
    """AND values reachable by completing one block, by enumeration."""
    extra = extra or {}
    free = []
    fixed = []
    for v in vars_:
        b = extra.get(v, partial.get(v))
        if v in extra and v in partial and partial[v] != extra[v]:
            return set()
        (free if b is None else fixed).append(b if b is not None else v)
    out = set()
    for combo in product((0, 1), repeat=len(free)):
        out.add(int(all(b == 1 for b in fixed) and all(combo)))
        if len(out) == 2:
            break
    return out


def tribes_can_be(params: CsParams, partial: dict, value: int, extra: dict | None = None,
                  block_req: dict | None = None) -> bool:
    """Whether some completion of ``partial`` (a var -> bit map for one copy) gives ``value``."""
    block_req = block_req or {}
    sets = []
    for j in range(params.k):
        s = _block_values(partial, params.block_vars(j), extra)
        if j in block_req:
            s &= {block_req[j]}
        if not s:
            return False
        sets.append(s)
    if value == 1:
        return any(1 in s for s in sets)
    return all(0 in s for s in sets)


def _label_completions(known: dict, positions: range) -> list[int]:
    opts = [(known[p],) if p in known else (0, 1) for p in positions]
    return sorted({_label(bits) for bits in product(*opts)})


def achievable_values(params: CsParams, known: dict) -> set:
    """Values of the cheat-sheet function over all completions of ``known``.

    Exact: for every address the copies and descriptions decouple, and each
    copy is decided by enumerating completions of single AND blocks.
    """
    N = params.tribes_vars
    copies = []
    for i in range(params.logt):
        base = params.x_var(i, 0)
        copies.append({v: known[base + v] for v in range(N) if base + v in known})
    out = set()
    for ell in range(params.t):
        all_valid = True
        all_reach = True
        some_invalid = False
        for i in range(params.logt):
            b = params.address_bit(ell, i)
            part = copies[i]
            reach = tribes_can_be(params, part, b)
            if b == 1:
                labels = _label_completions(known, params.and_label_range(ell, i))
                valid = any(j < params.k and tribes_can_be(params, part, 1, block_req={j: 1})
                            for j in labels)
                invalid = any((j >= params.k and reach)
                              or (j < params.k and tribes_can_be(params, part, 1, block_req={j: 0}))
                              for j in labels)
            else:
                valid = True
                invalid = False
                for j in range(params.k):
                    labels = _label_completions(known, params.field_range(ell, i, j))
                    ok = [lab for lab in labels if params.in_block(lab, j)]
                    valid = valid and any(part.get(lab) != 1 for lab in ok)
                    if reach and len(ok) < len(labels):
                        invalid = True
                    if not invalid and any(tribes_can_be(params, part, 0, extra={lab: 1}) for lab in ok):
                        invalid = True
            all_valid = all_valid and valid
            all_reach = all_reach and reach
            some_invalid = some_invalid or (invalid and reach)
        if all_valid:
            out.add(1)
        if all_reach and some_invalid:
            out.add(0)
        if len(out) == 2:
            break
    return out


class CsAdversary:
    """Answers address bits with a Tribes adversary per copy and cell bits with 0.

    The Tribes adversary answers 1 unless that would fix the copy's value,
    then 0, and only commits when both answers would fix it.
    """

    def __init__(self, params: CsParams, check: bool = False):
        self.params = params
        self.known: dict[int, int] = {}
        self.check = check
        self.history: list[set] = []
        self.committed_at: int | None = None

    def _copy_partial(self, i: int) -> dict:
        base = self.params.x_var(i, 0)
        return {v: self.known[base + v] for v in range(self.params.tribes_vars) if base + v in self.known}

    def answer(self, idx: int) -> int:
        p = self.params
        if idx in self.known:
            return self.known[idx]
        if idx < p.address_vars:
            i, v = divmod(idx, p.tribes_vars)
            part = self._copy_partial(i)
            bit = 1
            for b in (1, 0):
                trial = dict(part)
                trial[v] = b
                if tribes_can_be(p, trial, 0) and tribes_can_be(p, trial, 1):
                    bit = b
                    break
        else:
            bit = 0
        self.known[idx] = bit
        if self.check:
            vals = achievable_values(p, self.known)
            self.history.append(vals)
            if len(vals) < 2 and self.committed_at is None:
                self.committed_at = len(self.known)
        return bit

    def oracle(self) -> BitOracle:
        return BitOracle(self.answer)


# ---------------------------------------------------------- input sampling

def random_tribes_input(params: CsParams, rng: np.random.Generator, one_prob: float = 0.5) -> np.ndarray:
    """Random copy input whose value is 1 with probability about ``one_prob``."""
    k, r = params.k, params.root
    q = 1.0 - (1.0 - one_prob) ** (1.0 / k)
    x = np.zeros(params.tribes_vars, dtype=np.uint8)
    for j in range(k):
        if rng.random() < q:
            x[j * r:(j + 1) * r] = 1
        else:
            blk = rng.integers(0, 2, r, dtype=np.uint8)
            blk[rng.integers(r)] = 0
            x[j * r:(j + 1) * r] = blk
    return x


def write_valid_description(params: CsParams, X: np.ndarray, cell: int, i: int,
                            rng: np.random.Generator) -> bool:
    """Fill description ``i`` of ``cell`` with a valid certificate if one exists."""
    base = params.x_var(i, 0)
    x = X[base:base + params.tribes_vars]
    r = params.root
    if params.address_bit(cell, i) == 1:
        full = [j for j in range(params.k) if np.all(x[j * r:(j + 1) * r] == 1)]
        if not full:
            return False
        _write_label(X, params.and_label_range(cell, i), int(rng.choice(full)))
        return True
    for j in range(params.k):
        zeros = [v for v in params.block_vars(j) if x[v] == 0]
        if not zeros:
            return False
        _write_label(X, params.field_range(cell, i, j), int(rng.choice(zeros)))
    return True


def random_cs_input(params: CsParams, rng: np.random.Generator, mode: str | None = None) -> np.ndarray:
    """Structured random input.

    ``mode``: ``"valid"`` (addressed cell fully valid), ``"corrupt"`` (valid,
    then one description field overwritten), ``"decoy"`` (every cell filled
    with certificates for its own address where possible) or ``"garbage"``.
    """
    if mode is None:
        mode = rng.choice(["valid", "corrupt", "decoy", "garbage"])
    X = rng.integers(0, 2, params.total_vars, dtype=np.uint8)
    for i in range(params.logt):
        X[params.x_var(i, 0):params.x_var(i, 0) + params.tribes_vars] = random_tribes_input(params, rng)
    ell = cs_address(params, X)
    if mode == "decoy":
        for cell in range(params.t):
            for i in range(params.logt):
                write_valid_description(params, X, cell, i, rng)
    if mode in ("valid", "corrupt", "decoy"):
        for i in range(params.logt):
            write_valid_description(params, X, ell, i, rng)
    if mode == "corrupt":
        i = int(rng.integers(params.logt))
        j = int(rng.integers(params.k))
        for pos in params.field_range(ell, i, j):
            X[pos] = rng.integers(0, 2)
    return X


def random_restriction(params: CsParams, X: np.ndarray, stars: int, rng: np.random.Generator) -> Restriction:
    """Fix everything to ``X`` except ``stars`` positions, half of them in the address part
    and the addressed cell, the rest anywhere."""
    ell = cs_address(params, X)
    focus = list(range(params.address_vars))
    start = params.address_vars + ell * params.cell_vars
    focus += list(range(start, start + params.cell_vars))
    first = rng.choice(len(focus), size=min(stars // 2, len(focus)), replace=False)
    chosen = {focus[int(a)] for a in first}
    while len(chosen) < stars:
        chosen.add(int(rng.integers(params.total_vars)))
    return Restriction.from_stars(params.total_vars, chosen, X)


def restricted_evaluate(params: CsParams, rho: Restriction, reduced) -> int:
    """Value of the restricted function on a reduced input (stars in ascending order)."""
    X = np.array([0 if v is None else v for v in rho.values], dtype=np.uint8)
    stars = rho.stars
    if len(reduced) != len(stars):
        raise ValueError("reduced input length differs from star count")
    X[list(stars)] = np.asarray(reduced, dtype=np.uint8)
    return cs_evaluate(params, X)


def block_star_restriction(params: CsParams, X: np.ndarray, stars: int, rng: np.random.Generator,
                           copy: int = 0) -> Restriction:
    """Fix everything to ``X`` except whole AND blocks of one address copy (random block order),
    topped up with random positions; keeps many cells alive for the restricted algorithm."""
    chosen: set[int] = set()
    for j in rng.permutation(params.k):
        blk = [params.x_var(copy, v) for v in params.block_vars(int(j))]
        if len(chosen) + len(blk) > stars:
            break
        chosen.update(blk)
    while len(chosen) < stars:
        chosen.add(int(rng.integers(params.total_vars)))
    return Restriction.from_stars(params.total_vars, chosen, X)


def stage1_instance(params: CsParams, rng: np.random.Generator, c: float) -> tuple[np.ndarray, Restriction]:
    """Input and restriction that keep every copy undetermined and most cells unrefuted.

    One variable per starred block is free and the rest of that block is 1;
    copy 0 gets as many starred blocks as the budget allows, every other copy
    one. Cells point their descriptions mostly at the free variables.
    """
    p = params
    budget = int(star_budget(p, c))
    per_copy = [min(p.k, max(1, budget - (p.logt - 1)))] + [1] * (p.logt - 1)
    if sum(per_copy) > budget:
        raise StarBudgetError("budget too small for one free variable per copy")
    X = rng.integers(0, 2, p.total_vars, dtype=np.uint8)
    free: list[dict[int, int]] = []
    chosen: set[int] = set()
    for i in range(p.logt):
        blocks = sorted(int(j) for j in rng.choice(p.k, size=per_copy[i], replace=False))
        fv = {}
        for j in range(p.k):
            vs = [p.x_var(i, v) for v in p.block_vars(j)]
            if j in blocks:
                pick = int(rng.integers(len(vs)))
                X[vs] = 1
                X[vs[pick]] = rng.integers(0, 2)
                fv[j] = p.block_vars(j)[pick]
                chosen.add(vs[pick])
            else:
                X[vs] = rng.integers(0, 2, len(vs))
                X[vs[int(rng.integers(len(vs)))]] = 0
        free.append(fv)
    for cell in range(p.t):
        for i in range(p.logt):
            base = p.x_var(i, 0)
            if p.address_bit(cell, i) == 1:
                j = int(rng.choice(sorted(free[i])))
                _write_label(X, p.and_label_range(cell, i), j)
                continue
            for j in range(p.k):
                if j in free[i] and rng.random() < 0.7:
                    lab = free[i][j]
                else:
                    zeros = [v for v in p.block_vars(j) if X[base + v] == 0]
                    lab = int(rng.choice(zeros)) if zeros else int(rng.choice(list(p.block_vars(j))))
                _write_label(X, p.field_range(cell, i, j), lab)
    return X, Restriction.from_stars(p.total_vars, chosen, X)
