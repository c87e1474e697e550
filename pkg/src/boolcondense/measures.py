"""Name -> measure registry with arity caps and JSON-friendly witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import algebraic, combinatorial, dt, lp
from .core import BoolFun, CapExceeded, TABLE_CAP, index_to_bits


def _bits(f: BoolFun, x) -> str | None:
    if x is None:
        return None
    return "".join(map(str, index_to_bits(int(x), f.n)))


def _sens(b):
    def run(f):
        v, x = combinatorial.sensitivity(f, b)
        return v, {"input": _bits(f, x)}
    return run


def _bs(b):
    def run(f):
        v, fam = combinatorial.block_sensitivity(f, b)
        if fam is None:
            return v, None
        return v, {"input": _bits(f, fam.base), "blocks": [list(s) for s in fam.as_sets()]}
    return run


def _fbs(b):
    def run(f):
        v, x = lp.fractional_block_sensitivity(f, b)
        return v, {"input": _bits(f, x)}
    return run


def _cert(b):
    def run(f):
        v, x, cert = combinatorial.certificate_complexity(f, b)
        if cert is None:
            return v, None
        return v, {"input": _bits(f, x), "certificate": str(cert.assignment)}
    return run


def _uc(key):
    def run(f):
        if key in ("UC0", "UC1"):
            v, cover = dt.uc_value(f, int(key[-1]))
            return v, {"parts": [str(p.assignment) for p in cover.parts]}
        m = dt.uc_measures(f)
        return m[key], None
    return run


def _dt(f):
    v, q = dt.dt_depth(f)
    return v, {"first_query": q}


def _deg(f):
    poly = algebraic.mobius(f)
    top = poly.monomials_of_degree(poly.degree)
    return poly.degree, {"monomial": [v for v in range(f.n) if top and (top[0] >> v) & 1]}


def _adeg(f):
    return lp.approx_degree(f), None


def _lambda(f):
    return algebraic.spectral_sensitivity(f), {"tol": 1e-9}


@dataclass(frozen=True)
class Measure:
    name: str
    run: Callable[[BoolFun], tuple[Any, Any]]
    cap: int

    def __call__(self, f: BoolFun):
        if f.n > self.cap:
            raise CapExceeded(f"measure {self.name}: arity {f.n} exceeds cap {self.cap}")
        return self.run(f)


MEASURES: dict[str, Measure] = {}


def _register(name, run, cap):
    MEASURES[name] = Measure(name, run, cap)


for _b, _suffix in ((None, ""), (0, "0"), (1, "1")):
    _register("s" + _suffix, _sens(_b), TABLE_CAP)
    _register("bs" + _suffix, _bs(_b), combinatorial.SUBCUBE_CAP)
    _register("fbs" + _suffix, _fbs(_b), combinatorial.SUBCUBE_CAP)
    _register("C" + _suffix, _cert(_b), combinatorial.SUBCUBE_CAP)
for _k in ("UC", "UC0", "UC1", "UCmin"):
    _register(_k, _uc(_k), dt.UC_CAP)
_register("D", _dt, dt.DT_CAP)
_register("deg", _deg, TABLE_CAP)
_register("adeg", _adeg, 8)
_register("lambda", _lambda, algebraic.SPECTRAL_CAP)

ALIASES = {"C_0": "C0", "C_1": "C1", "bs_0": "bs0", "bs_1": "bs1", "s_0": "s0", "s_1": "s1",
           "UC_0": "UC0", "UC_1": "UC1", "UC_min": "UCmin", "λ": "lambda", "lam": "lambda"}


def canonical(name: str) -> str:
    name = ALIASES.get(name.strip(), name.strip())
    if name not in MEASURES:
        raise KeyError(f"unknown measure {name!r}; known: {', '.join(MEASURES)}")
    return name


def measure(name: str, f: BoolFun):
    """Value only."""
    return MEASURES[canonical(name)](f)[0]


def measure_with_witness(name: str, f: BoolFun):
    return MEASURES[canonical(name)](f)


def to_json_value(v):
    """Integers stay integers, rationals become ``"p/q"``, floats stay floats."""
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return v
