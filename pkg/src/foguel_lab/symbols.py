"""Fourier-side algebra of scalar L^inf symbols on the unit circle.

A symbol is a coefficient oracle n -> c_n over the integers together with
support bounds, a decay class used for tail estimates, and, when one is
available, a closed-form boundary evaluator t -> value at e^{it}.
Coefficients are indexed so that c_n multiplies z^n = e^{int}; in
particular z-bar lives at index -1.

Two coefficient backends exist: finite symbols store a dict and admit
exact algebra (sums, convolutions, reflections, exact factor division),
while oracle symbols wrap a callable and stay lazy.  All operations are
pure and return new symbols; instances are treated as immutable, which
makes them safe to share across threads.

The reflection ``tilde`` realizes s(z) -> s(z-bar), i.e. c_n -> c_{-n},
and ``star`` the boundary adjoint (complex conjugate function), i.e.
c_n -> conj(c_{-n}).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

import numpy as np

from .verdicts import (
    EXACT_RESIDUAL_TOL,
    FAILS_EXACT,
    FAILS_NUMERIC,
    HOLDS_EXACT,
    HOLDS_NUMERIC,
    INCONCLUSIVE,
    Verdict,
)

TWO_PI = 2.0 * math.pi
NEG_INF = float("-inf")
POS_INF = float("inf")

DECAY_FINITE = "finite"
DECAY_ABS_SUMMABLE = "absolutely_summable"
DECAY_ONE_OVER_N = "one_over_n"
DECAY_UNKNOWN = "unknown"

# Default truncation degree for evaluating oracle symbols without a
# geometric envelope, and hard cap with one.
EVAL_DEGREE = 4096
EVAL_DEGREE_CAP = 8192


class SymbolError(ValueError):
    """Raised when an operation's preconditions on a symbol fail."""


@dataclass(frozen=True)
class Decay:
    """Tail information for a coefficient oracle.

    kind is one of finite / absolutely_summable / one_over_n / unknown.
    For absolutely_summable symbols carrying a geometric envelope,
    |c_n| <= constant * rate**|n|; otherwise constant bounds sum |c_n|
    (0.0 when nothing is claimed).
    """

    kind: str
    constant: float = 0.0
    rate: float | None = None

    def tail_bound(self, m: int) -> float:
        """Bound on sum of |c_n| over |n| > m, inf when not certifiable."""
        if self.kind == DECAY_FINITE:
            return 0.0
        if self.rate is not None and 0 < self.rate < 1:
            return 2.0 * self.constant * self.rate ** (m + 1) / (1.0 - self.rate)
        if self.kind == DECAY_ABS_SUMMABLE and self.constant > 0:
            return self.constant  # summable but with no per-index envelope
        return POS_INF


FINITE = Decay(DECAY_FINITE)


@dataclass
class FourierSymbol:
    """An L^inf(T) symbol as a coefficient oracle plus metadata.

    Exactly one of ``table`` (finite support) and ``oracle`` is set.
    ``exact`` declares whether coefficients are exact values (rationals
    representable in double precision) rather than numerically derived.
    """

    support: tuple[float, float]
    decay: Decay
    table: dict[int, complex] | None = None
    oracle: Callable[[int], complex] | None = None
    closed_form: Callable[[np.ndarray], np.ndarray] | None = None
    exact: bool = True
    label: str = ""
    origin: tuple | None = None  # ("builtin", name, params) for catalog round-trips
    meta: dict = field(default_factory=dict)

    # -- construction -------------------------------------------------

    @staticmethod
    def from_coeffs(coeffs: Mapping[int, complex], label: str = "",
                    exact: bool = True, closed_form=None) -> "FourierSymbol":
        table = {int(n): complex(c) for n, c in coeffs.items() if c != 0}
        if table:
            lo, hi = min(table), max(table)
        else:
            lo = hi = 0
        return FourierSymbol(support=(lo, hi), decay=FINITE, table=table,
                             exact=exact, label=label, closed_form=closed_form)

    @staticmethod
    def from_oracle(fn: Callable[[int], complex], support: tuple[float, float],
                    decay: Decay, closed_form=None, label: str = "",
                    exact: bool = True) -> "FourierSymbol":
        return FourierSymbol(support=support, decay=decay, oracle=fn,
                             closed_form=closed_form, label=label, exact=exact)

    # -- coefficient access -------------------------------------------

    def coeff(self, n: int) -> complex:
        lo, hi = self.support
        if n < lo or n > hi:
            return 0j
        if self.table is not None:
            return self.table.get(n, 0j)
        return complex(self.oracle(n))

    def coeff_array(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients c_lo..c_hi inclusive as a complex vector."""
        if lo > hi:
            return np.zeros(0, dtype=complex)
        out = np.zeros(hi - lo + 1, dtype=complex)
        a = max(lo, self.support[0])
        b = min(hi, self.support[1])
        if a > b:
            return out
        a, b = int(a), int(b)
        if self.table is not None:
            for n, c in self.table.items():
                if lo <= n <= hi:
                    out[n - lo] = c
        else:
            for n in range(a, b + 1):
                out[n - lo] = self.oracle(n)
        return out

    # -- structure ----------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.table is not None

    @property
    def is_zero(self) -> bool:
        return self.table is not None and not self.table

    @property
    def is_analytic(self) -> bool:
        return self.support[0] >= 0

    @property
    def bandwidth(self) -> int:
        """max(|n|) over the support of a finite symbol."""
        if not self.is_finite:
            raise SymbolError("bandwidth is defined for finite symbols only")
        if not self.table:
            return 0
        return max(abs(n) for n in self.table)

    def __repr__(self) -> str:
        tag = self.label or ("finite" if self.is_finite else "oracle")
        return f"FourierSymbol({tag}, support={self.support})"

    # -- evaluation ----------------------------------------------------

    def _eval_degree(self) -> int:
        if self.is_finite:
            return self.bandwidth
        d = self.decay
        if d.rate is not None and 0 < d.rate < 1 and d.constant > 0:
            # choose M with geometric tail below 1e-15
            m = int(math.log(1e-15 * (1 - d.rate) / (2 * d.constant + 1e-300))
                    / math.log(d.rate)) + 1
            return max(8, min(m, EVAL_DEGREE_CAP))
        return EVAL_DEGREE

    def eval(self, t: float) -> complex:
        """Boundary value at e^{it}, t in [0, 2*pi).

        Uses the closed form when present, otherwise a truncated Fourier
        sum; symbols with unknown decay and no closed form are rejected
        because their value is not certifiable.
        """
        if self.closed_form is not None:
            return complex(np.asarray(self.closed_form(np.asarray(t, dtype=float))).item())
        if not (self.is_finite or self.decay.kind == DECAY_ABS_SUMMABLE):
            raise SymbolError("value not certifiable: unknown decay and no closed form")
        m = self._eval_degree()
        lo = int(max(self.support[0], -m))
        hi = int(min(self.support[1], m))
        c = self.coeff_array(lo, hi)
        ns = np.arange(lo, hi + 1)
        return complex(np.sum(c * np.exp(1j * ns * t)))

    def eval_on_grid(self, grid_size: int, offset: float = 0.0) -> np.ndarray:
        """Values at t_j = 2*pi*(j + offset)/grid_size for j = 0..grid_size-1."""
        t = TWO_PI * (np.arange(grid_size) + offset) / grid_size
        if self.closed_form is not None:
            return np.asarray(self.closed_form(t), dtype=complex)
        if not (self.is_finite or self.decay.kind == DECAY_ABS_SUMMABLE):
            raise SymbolError("value not certifiable: unknown decay and no closed form")
        m = min(self._eval_degree(), grid_size // 2 - 1)
        lo = int(max(self.support[0], -m))
        hi = int(min(self.support[1], m))
        if lo > hi:
            return np.zeros(grid_size, dtype=complex)
        c = self.coeff_array(lo, hi)
        ns = np.arange(lo, hi + 1)
        spec = np.zeros(grid_size, dtype=complex)
        np.add.at(spec, ns % grid_size, c * np.exp(1j * ns * TWO_PI * offset / grid_size))
        return np.fft.ifft(spec) * grid_size

    def eval_tail_bound(self) -> float:
        """Error bound attached to truncated-sum evaluation (0 for closed form)."""
        if self.closed_form is not None or self.is_finite:
            return 0.0
        return self.decay.tail_bound(self._eval_degree())


# ---------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------

def _combine_decay(a: Decay, b: Decay) -> Decay:
    kinds = {a.kind, b.kind}
    if DECAY_UNKNOWN in kinds:
        return Decay(DECAY_UNKNOWN)
    if kinds == {DECAY_FINITE}:
        return FINITE
    if DECAY_ONE_OVER_N in kinds:
        return Decay(DECAY_ONE_OVER_N, a.constant + b.constant)
    rate = None
    if a.rate is not None or b.rate is not None:
        ra = a.rate if a.rate is not None else 0.0
        rb = b.rate if b.rate is not None else 0.0
        rate = max(ra, rb) or None
    return Decay(DECAY_ABS_SUMMABLE, a.constant + b.constant, rate)


def add(a: FourierSymbol, b: FourierSymbol) -> FourierSymbol:
    if a.is_finite and b.is_finite:
        out = dict(a.table)
        for n, c in b.table.items():
            out[n] = out.get(n, 0j) + c
        return FourierSymbol.from_coeffs(out, exact=a.exact and b.exact)
    lo = min(a.support[0], b.support[0])
    hi = max(a.support[1], b.support[1])
    cf = None
    if a.closed_form is not None and b.closed_form is not None:
        fa, fb = a.closed_form, b.closed_form
        cf = lambda t: fa(t) + fb(t)
    elif a.closed_form is not None and b.is_finite:
        fa, fb = a.closed_form, _poly_closed_form(b)
        cf = lambda t: fa(t) + fb(t)
    elif b.closed_form is not None and a.is_finite:
        fa, fb = _poly_closed_form(a), b.closed_form
        cf = lambda t: fa(t) + fb(t)
    return FourierSymbol.from_oracle(
        lambda n: a.coeff(n) + b.coeff(n), (lo, hi),
        _combine_decay(a.decay, b.decay), closed_form=cf,
        exact=a.exact and b.exact)


def scale(a: FourierSymbol, lam: complex) -> FourierSymbol:
    lam = complex(lam)
    if a.is_finite:
        return FourierSymbol.from_coeffs({n: lam * c for n, c in a.table.items()},
                                         exact=a.exact)
    cf = None
    if a.closed_form is not None:
        fa = a.closed_form
        cf = lambda t: lam * fa(t)
    d = a.decay
    return FourierSymbol.from_oracle(
        lambda n: lam * a.coeff(n), a.support,
        Decay(d.kind, abs(lam) * d.constant, d.rate), closed_form=cf, exact=a.exact)


def shift_mul(a: FourierSymbol, k: int) -> FourierSymbol:
    """Multiplication by z^k: c_n -> c_{n-k}."""
    if a.is_finite:
        return FourierSymbol.from_coeffs({n + k: c for n, c in a.table.items()},
                                         exact=a.exact)
    cf = None
    if a.closed_form is not None:
        fa = a.closed_form
        cf = lambda t: np.exp(1j * k * np.asarray(t)) * fa(t)
    d = a.decay
    const = d.constant * (d.rate ** (-abs(k)) if d.rate else 1.0)
    return FourierSymbol.from_oracle(
        lambda n: a.coeff(n - k),
        (a.support[0] + k, a.support[1] + k),
        Decay(d.kind, const, d.rate), closed_form=cf, exact=a.exact)


def mul(a: FourierSymbol, b: FourierSymbol, bandwidth: int | None = None) -> FourierSymbol:
    """Pointwise product via Cauchy convolution of coefficients.

    Exact whenever at least one operand has finite support.  For two
    oracle operands both must be absolutely summable; the result is
    truncated to the requested bandwidth (default 64) with the tail
    error declared in meta["mul_tail_error"].
    """
    if a.is_finite and b.is_finite:
        out: dict[int, complex] = {}
        for n, ca in a.table.items():
            for m, cb in b.table.items():
                out[n + m] = out.get(n + m, 0j) + ca * cb
        res = FourierSymbol.from_coeffs(out, exact=a.exact and b.exact)
        return res
    if a.is_finite != b.is_finite:
        fin, orc = (a, b) if a.is_finite else (b, a)
        if orc.decay.kind == DECAY_UNKNOWN:
            raise SymbolError("mul requires known decay on oracle operands")
        items = tuple(fin.table.items())
        lo = orc.support[0] + (min(fin.table) if fin.table else 0)
        hi = orc.support[1] + (max(fin.table) if fin.table else 0)
        cf = None
        if orc.closed_form is not None:
            fo, ff = orc.closed_form, _poly_closed_form(fin)
            cf = lambda t: fo(t) * ff(t)
        d = orc.decay
        amp = sum(abs(c) for c in fin.table.values())
        const = d.constant * amp * ((d.rate ** (-fin.bandwidth)) if d.rate else 1.0)
        return FourierSymbol.from_oracle(
            lambda n: sum(c * orc.coeff(n - k) for k, c in items),
            (lo, hi), Decay(d.kind, const, d.rate), closed_form=cf,
            exact=fin.exact and orc.exact)
    if a.decay.kind != DECAY_ABS_SUMMABLE or b.decay.kind != DECAY_ABS_SUMMABLE:
        raise SymbolError("mul of two oracle symbols requires absolutely summable decay")
    bw = bandwidth if bandwidth is not None else 64
    ta = {n: a.coeff(n) for n in range(-bw, bw + 1)}
    tb = {n: b.coeff(n) for n in range(-bw, bw + 1)}
    out = {}
    for n, ca in ta.items():
        if ca == 0:
            continue
        for m, cb in tb.items():
            if -bw <= n + m <= bw:
                out[n + m] = out.get(n + m, 0j) + ca * cb
    res = FourierSymbol.from_coeffs(out, exact=False)
    res.meta["mul_tail_error"] = (a.decay.tail_bound(bw) * b.decay.constant
                                  + b.decay.tail_bound(bw) * a.decay.constant)
    if a.closed_form is not None and b.closed_form is not None:
        fa, fb = a.closed_form, b.closed_form
        res.closed_form = lambda t: fa(t) * fb(t)
    return res


def algebra(a: FourierSymbol, b: FourierSymbol | None, op: str, **kw) -> FourierSymbol:
    """Dispatcher over the basic operations: add, scale, shift_mul, mul."""
    if op == "add":
        return add(a, b)
    if op == "scale":
        return scale(a, kw["lam"])
    if op == "shift_mul":
        return shift_mul(a, kw["k"])
    if op == "mul":
        return mul(a, b, bandwidth=kw.get("bandwidth"))
    raise SymbolError(f"unknown algebra op {op!r}")


def _poly_closed_form(a: FourierSymbol) -> Callable[[np.ndarray], np.ndarray]:
    items = tuple(a.table.items())

    def cf(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t, dtype=complex)
        for n, c in items:
            out = out + c * np.exp(1j * n * t)
        return out

    return cf


# ---------------------------------------------------------------------
# reflections and projections
# ---------------------------------------------------------------------

def tilde(a: FourierSymbol) -> FourierSymbol:
    """s(z) -> s(z-bar): coefficient reflection c_n -> c_{-n}."""
    if a.is_finite:
        return FourierSymbol.from_coeffs({-n: c for n, c in a.table.items()},
                                         exact=a.exact)
    cf = None
    if a.closed_form is not None:
        fa = a.closed_form
        cf = lambda t: fa((-np.asarray(t, dtype=float)) % TWO_PI)
    d = a.decay
    return FourierSymbol.from_oracle(
        lambda n: a.coeff(-n), (-a.support[1], -a.support[0]), d,
        closed_form=cf, exact=a.exact)


def star(a: FourierSymbol) -> FourierSymbol:
    """Boundary adjoint (conjugate function): c_n -> conj(c_{-n})."""
    if a.is_finite:
        return FourierSymbol.from_coeffs(
            {-n: c.conjugate() for n, c in a.table.items()}, exact=a.exact)
    cf = None
    if a.closed_form is not None:
        fa = a.closed_form
        cf = lambda t: np.conjugate(fa(t))
    return FourierSymbol.from_oracle(
        lambda n: a.coeff(-n).conjugate(), (-a.support[1], -a.support[0]),
        a.decay, closed_form=cf, exact=a.exact)


def conj_coeffs(a: FourierSymbol) -> FourierSymbol:
    """Coefficientwise conjugation c_n -> conj(c_n), i.e. star(tilde(a))."""
    return star(tilde(a))


def riesz_project(a: FourierSymbol, part: str) -> FourierSymbol:
    """Riesz projections: ``plus`` keeps n >= 0, ``minus_strict`` keeps n <= -1.

    The two parts always reassemble the symbol exactly.
    """
    if part not in ("plus", "minus_strict"):
        raise SymbolError(f"unknown Riesz part {part!r}")
    if a.is_finite:
        keep = (lambda n: n >= 0) if part == "plus" else (lambda n: n <= -1)
        return FourierSymbol.from_coeffs({n: c for n, c in a.table.items() if keep(n)},
                                         exact=a.exact)
    lo, hi = a.support
    if part == "plus":
        nlo, nhi = max(lo, 0), hi
        if lo >= 0:
            return replace(a)  # already analytic; keep the closed form
        keep = lambda n: n >= 0
    else:
        nlo, nhi = lo, min(hi, -1)
        if hi <= -1:
            return replace(a)
        keep = lambda n: n <= -1
    if nlo > nhi:
        return FourierSymbol.from_coeffs({})
    d = a.decay
    return FourierSymbol.from_oracle(
        lambda n: a.coeff(n) if keep(n) else 0j, (nlo, nhi),
        Decay(d.kind, d.constant, d.rate), exact=a.exact)


def analytic_derivative(a: FourierSymbol, mode: str) -> FourierSymbol:
    """Derivative maps on analytic symbols.

    f_prime sends c_m -> (m+1) c_{m+1}; zf_prime realizes (z f)' via
    c_m -> (m+1) c_m.  Inputs must have support in [0, inf).
    """
    if mode not in ("f_prime", "zf_prime"):
        raise SymbolError(f"unknown derivative mode {mode!r}")
    if not a.is_analytic:
        raise SymbolError("analytic_derivative requires support in [0, inf)")
    if a.is_finite:
        if mode == "f_prime":
            out = {m - 1: m * c for m, c in a.table.items() if m >= 1}
        else:
            out = {m: (m + 1) * c for m, c in a.table.items()}
        return FourierSymbol.from_coeffs(out, exact=a.exact)
    d = a.decay
    if d.rate is not None and 0 < d.rate < 1:
        rho = math.sqrt(d.rate)
        # (m+1) r^m <= amp * rho^m with amp = sup_m (m+1) rho^m
        amp = max((m + 1) * rho ** m for m in range(0, 200))
        nd = Decay(DECAY_ABS_SUMMABLE, d.constant * amp / max(d.rate, 1e-300), rho)
    elif d.kind == DECAY_FINITE:
        nd = FINITE
    else:
        nd = Decay(DECAY_UNKNOWN)
    if mode == "f_prime":
        fn = lambda n: (n + 1) * a.coeff(n + 1)
        support = (max(a.support[0] - 1, 0), a.support[1] - 1)
    else:
        fn = lambda n: (n + 1) * a.coeff(n)
        support = a.support
    return FourierSymbol.from_oracle(fn, support, nd, exact=a.exact)


# ---------------------------------------------------------------------
# factor membership and quotients
# ---------------------------------------------------------------------

# The four admissible factors; each vanishes simply and only at z = +/-1.
FACTORS: dict[str, dict[int, complex]] = {
    "1-zbar2": {0: 1, -2: -1},
    "z-zbar": {1: 1, -1: -1},
    "zbar-z": {-1: 1, 1: -1},
    "1-z2": {0: 1, 2: -1},
}


@dataclass(frozen=True)
class QuotientConfig:
    """Grid-refinement policy for the numeric membership test."""

    depth: int = 12           # dyadic refinements, grids of 2^d midpoints
    start_depth: int = 4
    tol: float = 0.05         # sup-ratio stabilization tolerance
    r2_cutoff: float = 0.9    # confidence for the blow-up exponent fit
    fail_exponent: float = 0.5
    bandwidth: int = 64       # truncation of the recovered quotient


def _factor_symbol(factor: str) -> FourierSymbol:
    if factor not in FACTORS:
        raise SymbolError(f"unknown factor {factor!r}; expected one of {sorted(FACTORS)}")
    return FourierSymbol.from_coeffs(FACTORS[factor], label=factor)


def _laurent_divide(num: dict[int, complex], den: dict[int, complex]):
    """Exact Laurent-polynomial division; returns (quotient, max |remainder|)."""
    if not num:
        return {}, 0.0
    nlo, nhi = min(num), max(num)
    dlo, dhi = min(den), max(den)
    # shift both to ordinary polynomials in increasing powers
    p = np.zeros(nhi - nlo + 1, dtype=complex)
    for n, c in num.items():
        p[n - nlo] = c
    g = np.zeros(dhi - dlo + 1, dtype=complex)
    for n, c in den.items():
        g[n - dlo] = c
    # long division from the top coefficient
    q = np.zeros(max(len(p) - len(g) + 1, 0), dtype=complex)
    r = p.copy()
    lead = g[-1]
    for k in range(len(q) - 1, -1, -1):
        coef = r[k + len(g) - 1] / lead
        q[k] = coef
        if coef != 0:
            r[k:k + len(g)] -= coef * g
    rem = float(np.abs(r).max()) if len(r) else 0.0
    quot = {k + nlo - dlo: q[k] for k in range(len(q)) if q[k] != 0}
    return quot, rem


def factor_quotient(sym: FourierSymbol, factor: str,
                    cfg: QuotientConfig | None = None):
    """Decide membership of sym in factor * L^inf(T).

    Finite-support symbols take the exact path: all four factors vanish
    simply and exactly at z = +/-1, so membership reduces to the two
    point values sym(1) and sym(-1) and, when they vanish, an exact
    Laurent division produces the quotient.  Oracle symbols fall back to
    |sym/factor| on dyadically refined midpoint grids that avoid
    t in {0, pi}: a stabilizing sup gives holds_numeric together with
    quotient coefficients recovered by an offset DFT, a sup growing with
    a confidently fitted positive exponent gives fails_numeric, anything
    else is inconclusive.

    Returns (quotient or None, verdict).
    """
    cfg = cfg or QuotientConfig()
    fac = _factor_symbol(factor)
    if sym.is_finite:
        scale_ref = max((abs(c) for c in sym.table.values()), default=0.0)
        at_one = sum(sym.table.values())
        at_minus_one = sum(c * (-1) ** (n % 2) for n, c in sym.table.items())
        tol = EXACT_RESIDUAL_TOL * max(1.0, scale_ref)
        ok_status = HOLDS_EXACT if sym.exact else HOLDS_NUMERIC
        bad_status = FAILS_EXACT if sym.exact else FAILS_NUMERIC
        if abs(at_one) > tol or abs(at_minus_one) > tol:
            v = Verdict(bad_status, [("value_at_1", abs(at_one)),
                                     ("value_at_-1", abs(at_minus_one))])
            return None, v
        if sym.is_zero:
            return FourierSymbol.from_coeffs({}), Verdict(ok_status, [("remainder", 0.0)])
        quot, rem = _laurent_divide(sym.table, FACTORS[factor])
        if rem > tol:
            # should not happen once the point values vanish; report honestly
            return None, Verdict(INCONCLUSIVE, [("division_remainder", rem)])
        q = FourierSymbol.from_coeffs(quot, exact=sym.exact)
        return q, Verdict(ok_status, [("remainder", rem)])

    # numeric path
    if sym.closed_form is None and sym.decay.kind not in (DECAY_ABS_SUMMABLE,):
        raise SymbolError("numeric factor test needs a closed form or summable decay")
    sups = []
    depths = list(range(cfg.start_depth, cfg.depth + 1))
    for d in depths:
        grid = 2 ** d
        sv = sym.eval_on_grid(grid, offset=0.5)
        fv = fac.eval_on_grid(grid, offset=0.5)
        sups.append(float(np.abs(sv / fv).max()))
    sups_arr = np.array(sups)
    diag = [(f"sup_depth_{d}", s) for d, s in zip(depths, sups)]
    quart = max(1, (3 * len(sups)) // 4)
    tail = sups_arr[quart - 1:]
    ratios = tail[1:] / np.maximum(tail[:-1], 1e-300)
    if len(ratios) and float(ratios.max()) <= 1.0 + cfg.tol:
        grid = 2 ** cfg.depth
        sv = sym.eval_on_grid(grid, offset=0.5)
        fv = fac.eval_on_grid(grid, offset=0.5)
        q = sv / fv
        c = np.fft.fft(q) / grid
        ns = np.arange(grid)
        ns_signed = np.where(ns <= grid // 2, ns, ns - grid)
        c = c * np.exp(-1j * np.pi * ns_signed / grid)
        bw = min(cfg.bandwidth, grid // 2 - 1)
        coeffs = {}
        for n in range(-bw, bw + 1):
            val = c[n % grid]
            if abs(val) > 1e-14:
                coeffs[n] = complex(val)
        quot = FourierSymbol.from_coeffs(coeffs, exact=False)
        quot.meta["recovered_by"] = f"dft_depth_{cfg.depth}"
        return quot, Verdict(HOLDS_NUMERIC, diag + [("sup", sups[-1])])
    # blow-up exponent: sup ~ spacing^{-alpha}
    log_inv_h = np.log([2 ** d / TWO_PI for d in depths])
    slope, _, r2 = _linfit(log_inv_h, np.log(np.maximum(sups_arr, 1e-300)))
    diag += [("exponent", slope), ("r2", r2)]
    if slope >= cfg.fail_exponent and r2 >= cfg.r2_cutoff:
        return None, Verdict(FAILS_NUMERIC, diag)
    return None, Verdict(INCONCLUSIVE, diag)


def _linfit(x: np.ndarray, y: np.ndarray):
    """Least-squares line fit returning (slope, intercept, r_squared)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(a, y, rcond=None)
    resid = y - (slope * x + intercept)
    total = y - y.mean()
    denom = float(total @ total)
    r2 = 1.0 if denom == 0 else 1.0 - float(resid @ resid) / denom
    return float(slope), float(intercept), r2


# ---------------------------------------------------------------------
# built-in catalog
# ---------------------------------------------------------------------

def _hilbert_symbol() -> FourierSymbol:
    # Boundary function i e^{-it} (pi - t) on [0, 2*pi); its coefficients
    # are 1/(n+1) for every n except n = -1, where the expansion of
    # (pi - t) has no constant term, forcing c_{-1} = 0.
    def coeff(n: int) -> complex:
        if n == -1:
            return 0j
        return complex(1.0 / (n + 1))

    def cf(t):
        t = np.asarray(t, dtype=float) % TWO_PI
        return 1j * np.exp(-1j * t) * (math.pi - t)

    return FourierSymbol.from_oracle(coeff, (NEG_INF, POS_INF),
                                     Decay(DECAY_ONE_OVER_N, 1.0),
                                     closed_form=cf, label="hilbert")


def _cauchy_symbol(alpha: complex) -> FourierSymbol:
    alpha = complex(alpha)
    if abs(alpha) <= 1:
        raise SymbolError("cauchy symbol requires |alpha| > 1")
    r = 1.0 / abs(alpha)

    def coeff(n: int) -> complex:
        if n < 0:
            return 0j
        return alpha ** (-(n + 1))

    def cf(t):
        return 1.0 / (alpha - np.exp(1j * np.asarray(t, dtype=float)))

    return FourierSymbol.from_oracle(coeff, (0, POS_INF),
                                     Decay(DECAY_ABS_SUMMABLE, r, r),
                                     closed_form=cf, label=f"cauchy({alpha})")


def builtin_catalog(name: str, **params) -> FourierSymbol:
    """Built-in symbols: hilbert, cauchy(alpha), laurent_poly(coeffs),
    family_1_minus_zbar2_theta(theta), plus the shorthands zero and one.
    """
    if name == "hilbert":
        sym = _hilbert_symbol()
    elif name == "cauchy":
        sym = _cauchy_symbol(params["alpha"])
    elif name == "laurent_poly":
        sym = FourierSymbol.from_coeffs(params["coeffs"], label="laurent_poly")
    elif name == "family_1_minus_zbar2_theta":
        theta = params["theta"]
        if not isinstance(theta, FourierSymbol):
            theta = FourierSymbol.from_coeffs(theta)
        if not theta.is_analytic:
            raise SymbolError("family parameter theta must be analytic")
        band = FourierSymbol.from_coeffs(FACTORS["1-zbar2"])
        sym = mul(band, tilde(theta))
        sym.label = "family_1_minus_zbar2_theta"
    elif name == "zero":
        sym = FourierSymbol.from_coeffs({}, label="zero")
    elif name == "one":
        sym = FourierSymbol.from_coeffs({0: 1}, label="one")
    else:
        raise SymbolError(f"unknown builtin symbol {name!r}")
    sym.origin = ("builtin", name, _jsonable_params(params))
    return sym


def _jsonable_params(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        if isinstance(v, FourierSymbol):
            out[k] = symbol_to_json(v)
        elif isinstance(v, Mapping):
            out[k] = {str(n): [complex(c).real, complex(c).imag] for n, c in v.items()}
        elif isinstance(v, complex):
            out[k] = [v.real, v.imag]
        else:
            out[k] = v
    return out


def random_laurent_symbol(rng, max_bandwidth: int, analytic: bool = False,
                          density: float = 0.7) -> FourierSymbol:
    """Seeded random Laurent polynomial for property suites.

    Complex Gaussian coefficients on a random subset of indices within
    the bandwidth; at least one coefficient is always present.
    """
    lo = 0 if analytic else -max_bandwidth
    idx = [n for n in range(lo, max_bandwidth + 1) if rng.random() < density]
    if not idx:
        idx = [int(rng.integers(lo, max_bandwidth + 1))]
    coeffs = {n: complex(rng.standard_normal(), rng.standard_normal()) for n in idx}
    return FourierSymbol.from_coeffs(coeffs, label="random")


# ---------------------------------------------------------------------
# symbol files
# ---------------------------------------------------------------------

def symbol_to_json(sym: FourierSymbol, max_degree: int = 256) -> dict:
    """Serialize a symbol.

    Finite symbols dump exactly; catalog symbols round-trip through their
    builtin record; other oracle symbols are truncated at max_degree and
    the cutoff recorded (indices beyond it read as zero).
    """
    if sym.origin is not None and sym.origin[0] == "builtin":
        return {"kind": "builtin", "name": sym.origin[1], "params": sym.origin[2]}
    if sym.is_finite:
        entries = [[n, sym.table[n].real, sym.table[n].imag] for n in sorted(sym.table)]
        return {"kind": "coeffs", "entries": entries}
    lo = int(max(sym.support[0], -max_degree))
    hi = int(min(sym.support[1], max_degree))
    entries = []
    for n in range(lo, hi + 1):
        c = sym.coeff(n)
        if c != 0:
            entries.append([n, c.real, c.imag])
    return {"kind": "coeffs", "entries": entries, "truncated_at": max_degree}


def symbol_from_json(doc: dict) -> FourierSymbol:
    kind = doc.get("kind")
    if kind == "coeffs":
        return FourierSymbol.from_coeffs(
            {int(n): complex(re, im) for n, re, im in doc["entries"]},
            exact="truncated_at" not in doc)
    if kind == "builtin":
        params = dict(doc.get("params") or {})
        if "alpha" in params and isinstance(params["alpha"], list):
            params["alpha"] = complex(*params["alpha"])
        if "coeffs" in params:
            params["coeffs"] = {int(n): complex(*c) for n, c in params["coeffs"].items()}
        if "theta" in params and isinstance(params["theta"], dict):
            params["theta"] = symbol_from_json(params["theta"])
        return builtin_catalog(doc["name"], **params)
    raise SymbolError(f"unknown symbol document kind {kind!r}")


def load_symbol(path: str) -> FourierSymbol:
    with open(path, "r", encoding="utf-8") as fh:
        return symbol_from_json(json.load(fh))


def dump_symbol(sym: FourierSymbol, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(symbol_to_json(sym), fh, indent=1, sort_keys=True)
