"""Norms, growth profiling, and function-class testers.

The testers here grade their conclusions as five-state verdicts because
membership in L^inf-type classes is only semi-decidable at desk scale.
Boundedness of an analytic function is probed through sup norms of its
Fejer (Cesaro) means, membership in BMOA through the norms of the Hankel
sections built from its coefficients (a Nehari-type surrogate: those
sections increase to the Hankel operator norm, which is finite exactly
when the function lies in BMOA), and mean oscillation over dyadic arcs
is kept as an independent diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import sections as sec
from .symbols import FourierSymbol, SymbolError, _linfit
from .verdicts import (
    FAILS_NUMERIC,
    HOLDS_EXACT,
    HOLDS_NUMERIC,
    INCONCLUSIVE,
    Verdict,
)

TWO_PI = 2.0 * math.pi

# Global decision thresholds; every tester accepts overrides.
STABILIZATION_TOL = 0.02
R2_CUTOFF = 0.9

DEFAULT_DEGREES = (16, 32, 64, 128, 256, 512, 1024, 2048)
DEFAULT_SIZES = (8, 16, 32, 64, 128, 256, 512)

GROWTH_BOUNDED = "bounded"
GROWTH_LOG = "log"
GROWTH_POWER = "power"


# ---------------------------------------------------------------------
# operator norm
# ---------------------------------------------------------------------

def op_norm(section) -> float:
    """Largest singular value of a section.

    Full decomposition up to N = 1024; above that a deterministic-start
    power iteration on the normal matrix with Rayleigh-quotient
    convergence tolerance 1e-12, so results are reproducible to 1e-10.
    """
    a = np.asarray(getattr(section, "data", section), dtype=complex)
    if a.size == 0:
        return 0.0
    n = a.shape[0]
    if n <= 1024:
        return float(np.linalg.svd(a, compute_uv=False)[0])
    v = np.ones(n, dtype=complex)
    v[0] += 0.5  # break symmetry deterministically
    v /= np.linalg.norm(v)
    prev = -1.0
    for _ in range(100000):
        w = a.conj().T @ (a @ v)
        nw = np.linalg.norm(w)
        if nw == 0:
            return 0.0
        v = w / nw
        rq = float(np.real(np.vdot(v, a.conj().T @ (a @ v))))
        if abs(rq - prev) <= 1e-12 * max(1.0, abs(rq)):
            return math.sqrt(max(rq, 0.0))
        prev = rq
    return math.sqrt(max(prev, 0.0))


# ---------------------------------------------------------------------
# growth profiling
# ---------------------------------------------------------------------

@dataclass
class GrowthProfile:
    """A sequence (k, value) with a fitted growth class.

    kind is bounded / log / power; alpha carries the fitted exponent
    (slope of log v against log k for power, against log log k for log)
    and r2 its least-squares confidence.
    """

    points: list[tuple[int, float]]
    kind: str
    alpha: float | None
    r2: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def bounded(self) -> bool:
        return self.kind == GROWTH_BOUNDED

    def to_csv(self) -> str:
        lines = ["k,value"]
        lines += [f"{k},{v!r}" for k, v in self.points]
        alpha = "" if self.alpha is None else f"{self.alpha:.6g}"
        lines.append(f"# fit,{self.kind},alpha={alpha},r2={self.r2:.6g}")
        return "\n".join(lines) + "\n"


def growth_profile(values, tol_rel: float = STABILIZATION_TOL,
                   r2_cutoff: float = R2_CUTOFF) -> GrowthProfile:
    """Classify a nonnegative profile as bounded / log / power.

    Bounded is declared when the relative increase over the last
    quartile of points stays below tol_rel, or when successive
    increments over a geometric index grid shrink markedly (ratio well
    below one with a small final step), which is the signature of
    convergence to a finite limit rather than of log growth, whose
    increments stay constant per doubling.  Otherwise log v is fitted
    against log k and against log log k and the better line wins.
    """
    pts = [(int(k), float(v)) for k, v in values]
    if len(pts) < 6:
        raise ValueError("growth_profile needs at least 6 points")
    ks = np.array([k for k, _ in pts], dtype=float)
    vs = np.array([v for _, v in pts], dtype=float)
    if np.any(np.diff(ks) <= 0):
        raise ValueError("profile indices must be strictly increasing")

    scale_ref = max(float(np.abs(vs).max()), 1e-300)
    quart = (3 * len(vs)) // 4
    if quart >= len(vs) - 1:
        quart = len(vs) - 2
    base = max(abs(vs[quart]), 1e-300 * scale_ref)
    rel_increase = (vs[-1] - vs[quart]) / base
    diag = {"last_quartile_increase": float(rel_increase)}
    if rel_increase <= tol_rel:
        return GrowthProfile(pts, GROWTH_BOUNDED, None, 1.0, diag)

    # convergence detector on the increments of the trailing half
    d = np.diff(vs)
    half = d[len(d) // 2:]
    if len(half) >= 3 and np.all(half > 0):
        ratios = half[1:] / half[:-1]
        med = float(np.median(ratios))
        final_step = float(half[-1] / max(vs[-1], 1e-300))
        diag.update({"increment_ratio_median": med, "final_relative_step": final_step})
        if med <= 0.93 and float(ratios.max()) < 1.0 and final_step <= 0.05:
            return GrowthProfile(pts, GROWTH_BOUNDED, None, 1.0, diag)

    mask = vs > 0
    lk = np.log(ks[mask])
    lv = np.log(vs[mask])
    pow_slope, _, pow_r2 = _linfit(lk, lv)
    log_mask = mask & (ks >= 3)
    log_slope, log_r2 = 0.0, -np.inf
    if log_mask.sum() >= 3:
        llk = np.log(np.log(ks[log_mask]))
        log_slope, _, log_r2 = _linfit(llk, np.log(vs[log_mask]))
    diag.update({"power_alpha": pow_slope, "power_r2": pow_r2,
                 "log_beta": log_slope, "log_r2": log_r2})
    if log_r2 > pow_r2:
        return GrowthProfile(pts, GROWTH_LOG, log_slope, log_r2, diag)
    return GrowthProfile(pts, GROWTH_POWER, pow_slope, pow_r2, diag)


def _profile_verdict(profile: GrowthProfile, r2_cutoff: float,
                     slope_min: float = 0.02) -> Verdict:
    """Map a fitted profile to a numeric verdict over its boundedness."""
    diags = [(k, float(v)) for k, v in sorted(profile.diagnostics.items())]
    diags += [(f"value_{k}", v) for k, v in profile.points]
    if profile.bounded:
        return Verdict(HOLDS_NUMERIC, diags)
    if profile.r2 >= r2_cutoff and (profile.alpha or 0.0) > slope_min:
        return Verdict(FAILS_NUMERIC, diags + [("fit_alpha", profile.alpha),
                                               ("fit_r2", profile.r2)])
    return Verdict(INCONCLUSIVE, diags)


# ---------------------------------------------------------------------
# essential sup and oscillation estimates
# ---------------------------------------------------------------------

@dataclass
class RefinementTrace:
    value: float
    trace: list[tuple[int, float]]


def ess_sup_estimate(sym: FourierSymbol, depth: int = 12) -> RefinementTrace:
    """max |sym| over dyadic grids of 2^d points for d up to depth."""
    best = 0.0
    trace = []
    for d in range(3, depth + 1):
        vals = sym.eval_on_grid(2 ** d, offset=0.0)
        best = max(best, float(np.abs(vals).max()))
        trace.append((d, best))
    return RefinementTrace(best, trace)


def bmo_oscillation_estimate(sym: FourierSymbol, depth: int = 8,
                             samples_per_arc: int = 16) -> RefinementTrace:
    """Mean-oscillation sup over dyadic arcs, one generation at a time.

    For each generation g the circle splits into 2^g arcs I and the
    quadrature estimate of (1/m(I)) int_I |f - f_I| dm is computed from
    midpoint samples, with f_I the arc average.  The running sup per
    generation is returned; it is a diagnostic companion to the
    Hankel-section BMOA test, not a decision procedure.
    """
    grid = (2 ** depth) * samples_per_arc
    vals = sym.eval_on_grid(grid, offset=0.5)
    trace = []
    running = 0.0
    for g in range(depth + 1):
        arcs = vals.reshape(2 ** g, grid // 2 ** g)
        means = arcs.mean(axis=1, keepdims=True)
        osc = np.abs(arcs - means).mean(axis=1)
        running = max(running, float(osc.max()))
        trace.append((g, running))
    return RefinementTrace(running, trace)


# ---------------------------------------------------------------------
# class testers
# ---------------------------------------------------------------------

def _require_analytic(sym: FourierSymbol, who: str) -> None:
    if not sym.is_analytic:
        raise SymbolError(f"{who} requires an analytic symbol (support in [0, inf))")


def _fejer_sup(sym: FourierSymbol, degree: int) -> float:
    """Sup norm of the degree-M Fejer mean on a uniform circle grid."""
    grid = max(4096, 4 * degree)
    c = sym.coeff_array(0, degree)
    weights = 1.0 - np.arange(degree + 1) / (degree + 1)
    spec = np.zeros(grid, dtype=complex)
    spec[: degree + 1] = c * weights
    vals = np.fft.ifft(spec) * grid
    return float(np.abs(vals).max())


def hinf_test(sym: FourierSymbol, degrees=None, tol_rel: float = STABILIZATION_TOL,
              r2_cutoff: float = R2_CUTOFF) -> Verdict:
    """Boundedness test for an analytic symbol.

    Polynomials are decided exactly (membership is trivial; the reported
    sup comes from grid refinement).  Otherwise the sup norms of the
    Fejer means at the requested degrees are profiled: Fejer means of a
    bounded function never exceed its sup norm, so a stabilizing profile
    is evidence of membership while confident log or power growth
    refutes it.
    """
    _require_analytic(sym, "hinf_test")
    if sym.is_finite:
        sup = ess_sup_estimate(sym, depth=13).value
        status = HOLDS_EXACT if sym.exact else HOLDS_NUMERIC
        return Verdict(status, [("sup", sup)])
    degrees = tuple(degrees or DEFAULT_DEGREES)
    sups = [(m, _fejer_sup(sym, m)) for m in degrees]
    profile = growth_profile(sups, tol_rel=tol_rel, r2_cutoff=r2_cutoff)
    verdict = _profile_verdict(profile, r2_cutoff)
    verdict.diagnostics.append(("sup", sups[-1][1]))
    return verdict


def bmoa_section_test(sym: FourierSymbol, sizes=None,
                      tol_rel: float = STABILIZATION_TOL,
                      r2_cutoff: float = R2_CUTOFF) -> Verdict:
    """BMOA membership via Hankel-section norm boundedness.

    The sections [c_{i+j}] built from the analytic coefficients increase
    monotonically to the Hankel operator norm; a bounded profile is the
    Nehari-type certificate of membership and a confidently growing one
    refutes it.  Finite symbols are exact: the section at size
    bandwidth+1 already carries the whole (finite rank) operator.
    """
    _require_analytic(sym, "bmoa_section_test")
    if sym.is_finite:
        n = sym.bandwidth + 1
        norm = op_norm(sec.hankel_section(sym, n))
        status = HOLDS_EXACT if sym.exact else HOLDS_NUMERIC
        return Verdict(status, [("hankel_norm", norm)])
    sizes = tuple(sizes or DEFAULT_SIZES)
    norms = [(n, op_norm(sec.hankel_section(sym, n))) for n in sizes]
    profile = growth_profile(norms, tol_rel=tol_rel, r2_cutoff=r2_cutoff)
    verdict = _profile_verdict(profile, r2_cutoff)
    verdict.diagnostics.append(("hankel_norm", norms[-1][1]))
    return verdict


def h2_partial_norm(sym: FourierSymbol, n: int) -> float:
    """sqrt(sum of |c_k|^2 for k = 0..n) for an analytic symbol."""
    _require_analytic(sym, "h2_partial_norm")
    c = sym.coeff_array(0, n)
    return float(np.sqrt(np.sum(np.abs(c) ** 2)))
