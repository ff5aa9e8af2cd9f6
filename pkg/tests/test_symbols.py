import json
import math

import numpy as np
import pytest

from foguel_lab import symbols as sy
from foguel_lab.symbols import FourierSymbol, SymbolError

from conftest import fourier_sum, quadrature_coeff, random_member


# ---------------------------------------------------------------------
# coefficients and evaluation
# ---------------------------------------------------------------------

def test_hilbert_coeffs():
    psi = sy.builtin_catalog("hilbert")
    assert psi.coeff(3) == pytest.approx(0.25)
    assert psi.coeff(-1) == 0
    assert psi.coeff(-4) == pytest.approx(-1.0 / 3.0)


def test_hilbert_coeff_against_quadrature():
    psi = sy.builtin_catalog("hilbert")
    for n in (-4, -2, 0, 3, 7):
        oracle = quadrature_coeff(psi.closed_form, n)
        assert psi.coeff(n) == pytest.approx(oracle, abs=1e-4)


def test_hilbert_matrix_entry_rule():
    psi = sy.builtin_catalog("hilbert")
    for n in range(0, 10001):
        assert psi.coeff(n) == 1.0 / (n + 1)


def test_monomial_coeff():
    z = FourierSymbol.from_coeffs({1: 1})
    assert z.coeff(0) == 0
    assert z.coeff(1) == 1


def test_coeff_zero_outside_support():
    cau = sy.builtin_catalog("cauchy", alpha=2.0)
    assert cau.coeff(-3) == 0
    assert cau.coeff(-100) == 0


def test_eval_hilbert_closed_form():
    psi = sy.builtin_catalog("hilbert")
    assert psi.eval(math.pi) == pytest.approx(0.0)
    assert psi.eval(math.pi / 2) == pytest.approx(math.pi / 2)


def test_eval_two_cos():
    s = FourierSymbol.from_coeffs({1: 1, -1: 1})
    assert s.eval(0.0) == pytest.approx(2.0)


def test_eval_matches_fourier_sum_on_grid(rng):
    # finite symbols: eval equals the explicit Fourier sum at 64 points
    for _ in range(5):
        s = sy.random_laurent_symbol(rng, 6)
        for t in 2 * np.pi * np.arange(64) / 64:
            assert s.eval(t) == pytest.approx(fourier_sum(s, t), abs=1e-12)


def test_eval_rejects_unknown_decay():
    s = FourierSymbol.from_oracle(lambda n: 0.1, (0, float("inf")),
                                  sy.Decay(sy.DECAY_UNKNOWN))
    with pytest.raises(SymbolError):
        s.eval(0.3)


def test_eval_on_grid_matches_pointwise(rng):
    s = sy.random_laurent_symbol(rng, 5)
    grid = s.eval_on_grid(32, offset=0.5)
    for j in (0, 7, 31):
        t = 2 * np.pi * (j + 0.5) / 32
        assert grid[j] == pytest.approx(fourier_sum(s, t), abs=1e-12)


# ---------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------

def test_shift_mul_one_gives_z():
    one = sy.builtin_catalog("one")
    assert sy.shift_mul(one, 1).table == {1: 1}


def test_mul_band_by_one():
    band = FourierSymbol.from_coeffs({0: 1, -2: -1})
    assert sy.mul(band, sy.builtin_catalog("one")).table == {0: 1, -2: -1}


def test_mul_z_minus_zbar_by_zbar():
    a = FourierSymbol.from_coeffs({1: 1, -1: -1})
    b = FourierSymbol.from_coeffs({-1: 1})
    assert sy.mul(a, b).table == {0: 1, -2: -1}


def test_mul_matches_numpy_convolution(rng):
    for _ in range(10):
        a = sy.random_laurent_symbol(rng, 6)
        b = sy.random_laurent_symbol(rng, 4)
        prod = sy.mul(a, b)
        lo = min(a.table) + min(b.table)
        av = a.coeff_array(min(a.table), max(a.table))
        bv = b.coeff_array(min(b.table), max(b.table))
        conv = np.convolve(av, bv)
        for k, c in enumerate(conv):
            assert prod.coeff(lo + k) == pytest.approx(c, abs=1e-12)


def test_mul_rejects_unknown_decay():
    bad = FourierSymbol.from_oracle(lambda n: 0.0, (0, float("inf")),
                                    sy.Decay(sy.DECAY_UNKNOWN))
    cau = sy.builtin_catalog("cauchy", alpha=2.0)
    with pytest.raises(SymbolError):
        sy.mul(bad, cau)


def test_mul_oracle_oracle_truncates_with_declared_tail():
    cau = sy.builtin_catalog("cauchy", alpha=2.0)
    prod = sy.mul(cau, cau, bandwidth=32)
    # (1/(2-z))^2 = sum (n+1) z^n / 2^{n+2}
    for n in range(5):
        assert prod.coeff(n) == pytest.approx((n + 1) / 2.0 ** (n + 2))
    assert prod.meta["mul_tail_error"] < 1e-6


def test_algebra_dispatcher(rng):
    a = sy.random_laurent_symbol(rng, 3)
    assert sy.algebra(a, None, "scale", lam=2.0).coeff(1) == pytest.approx(2 * a.coeff(1))
    assert sy.algebra(a, None, "shift_mul", k=2).coeff(3) == pytest.approx(a.coeff(1))
    with pytest.raises(SymbolError):
        sy.algebra(a, a, "frobnicate")


# ---------------------------------------------------------------------
# reflections
# ---------------------------------------------------------------------

def test_tilde_examples():
    z = FourierSymbol.from_coeffs({1: 1})
    assert sy.tilde(z).table == {-1: 1}
    one = sy.builtin_catalog("one")
    assert sy.tilde(one).table == {0: 1}


def test_tilde_hilbert_reflection():
    psi = sy.builtin_catalog("hilbert")
    ref = sy.tilde(psi)
    for n in (-3, 0, 2, 5):
        assert ref.coeff(n) == psi.coeff(-n)
    assert ref.coeff(-2) == pytest.approx(1.0 / 3.0)  # 1/(1-n) at n = -2


def test_star_examples():
    iz = FourierSymbol.from_coeffs({1: 1j})
    assert sy.star(iz).table == {-1: -1j}
    p = FourierSymbol.from_coeffs({0: 1, 2: 2.5})
    assert sy.star(p).table == {0: 1, -2: 2.5}
    phi = FourierSymbol.from_coeffs({-1: 1, -3: -1})
    assert sy.star(phi).table == {1: 1, 3: -1}


def test_involutions_and_commutation(rng):
    syms = [sy.random_laurent_symbol(rng, 8) for _ in range(5)]
    syms += [sy.builtin_catalog("hilbert"), sy.builtin_catalog("cauchy", alpha=2.0)]
    idx = range(-6, 7)
    for s in syms:
        tt = sy.tilde(sy.tilde(s))
        ss = sy.star(sy.star(s))
        st = sy.star(sy.tilde(s))
        ts = sy.tilde(sy.star(s))
        for n in idx:
            assert tt.coeff(n) == pytest.approx(s.coeff(n), abs=1e-14)
            assert ss.coeff(n) == pytest.approx(s.coeff(n), abs=1e-14)
            assert st.coeff(n) == pytest.approx(ts.coeff(n), abs=1e-14)


def test_tilde_star_closed_forms():
    psi = sy.builtin_catalog("hilbert")
    t = 1.234
    assert sy.tilde(psi).eval(t) == pytest.approx(psi.eval(2 * math.pi - t))
    assert sy.star(psi).eval(t) == pytest.approx(np.conj(psi.eval(t)))


# ---------------------------------------------------------------------
# Riesz projections and derivatives
# ---------------------------------------------------------------------

def test_riesz_hilbert_plus():
    psi = sy.builtin_catalog("hilbert")
    plus = sy.riesz_project(psi, "plus")
    for n in range(6):
        assert plus.coeff(n) == pytest.approx(1.0 / (n + 1))
    assert plus.coeff(-2) == 0


def test_riesz_zbar_plus_is_zero():
    zb = FourierSymbol.from_coeffs({-1: 1})
    assert sy.riesz_project(zb, "plus").is_zero


def test_riesz_partition(rng):
    for _ in range(5):
        s = sy.random_laurent_symbol(rng, 7)
        p = sy.riesz_project(s, "plus")
        m = sy.riesz_project(s, "minus_strict")
        back = sy.add(p, m)
        for n in range(-8, 9):
            assert back.coeff(n) == pytest.approx(s.coeff(n), abs=1e-14)


def test_analytic_derivative_examples():
    psi_plus = sy.riesz_project(sy.builtin_catalog("hilbert"), "plus")
    fp = sy.analytic_derivative(psi_plus, "f_prime")
    for m in range(5):
        assert fp.coeff(m) == pytest.approx((m + 1) / (m + 2))
    one = sy.builtin_catalog("one")
    assert sy.analytic_derivative(one, "f_prime").is_zero
    assert sy.analytic_derivative(one, "zf_prime").table == {0: 1}


def test_analytic_derivative_rejects_nonanalytic():
    zb = FourierSymbol.from_coeffs({-1: 1})
    with pytest.raises(SymbolError):
        sy.analytic_derivative(zb, "f_prime")


# ---------------------------------------------------------------------
# factor membership
# ---------------------------------------------------------------------

def test_factor_quotient_identity_case():
    band = FourierSymbol.from_coeffs({0: 1, -2: -1})
    q, v = sy.factor_quotient(band, "1-zbar2")
    assert v.status == "holds_exact"
    assert q.table == {0: 1}


def test_factor_quotient_one_fails_exact():
    one = sy.builtin_catalog("one")
    q, v = sy.factor_quotient(one, "1-zbar2")
    assert q is None
    assert v.status == "fails_exact"


def test_factor_quotient_division_example():
    s = FourierSymbol.from_coeffs({0: 1, 2: -1})
    q, v = sy.factor_quotient(s, "zbar-z")
    assert v.status == "holds_exact"
    assert q.table == {1: pytest.approx(1)}


def test_factor_quotient_against_sympy(rng):
    sympy = pytest.importorskip("sympy")
    z = sympy.symbols("z")
    for factor, coeffs in sy.FACTORS.items():
        member, quot = random_member(rng, coeffs)
        got, v = sy.factor_quotient(member, factor)
        assert v.status == "holds_exact", factor
        # sympy-side check: member / factor equals the recovered quotient
        member_poly = sum(c * z ** n for n, c in member.table.items())
        got_poly = sum(c * z ** n for n, c in got.table.items())
        fac_poly = sum(c * z ** n for n, c in coeffs.items())
        diff = sympy.simplify(member_poly - fac_poly * got_poly)
        assert abs(complex(diff.subs(z, 0.7 + 0.1j))) < 1e-9


def test_factor_quotient_roundtrip(rng):
    for factor, coeffs in sy.FACTORS.items():
        member, quot = random_member(rng, coeffs)
        got, v = sy.factor_quotient(member, factor)
        assert v.holds
        back = sy.mul(FourierSymbol.from_coeffs(coeffs), got)
        for n in range(-9, 10):
            assert back.coeff(n) == pytest.approx(member.coeff(n), abs=1e-12)


def test_factor_quotient_numeric_nonmember():
    cau = sy.builtin_catalog("cauchy", alpha=2.0)
    q, v = sy.factor_quotient(cau, "1-zbar2")
    assert q is None
    assert v.status == "fails_numeric"
    d = dict(v.diagnostics)
    assert d["exponent"] == pytest.approx(1.0, abs=0.1)
    assert d["r2"] > 0.99


def test_factor_quotient_numeric_member_recovers_quotient():
    cau = sy.builtin_catalog("cauchy", alpha=2.0)
    band = FourierSymbol.from_coeffs({0: 1, -2: -1})
    member = sy.mul(band, cau)
    q, v = sy.factor_quotient(member, "1-zbar2")
    assert v.status == "holds_numeric"
    for n in range(8):
        assert q.coeff(n) == pytest.approx(2.0 ** -(n + 1), abs=1e-10)


def test_factor_quotient_rejects_unevaluable():
    s = FourierSymbol.from_oracle(lambda n: 1.0 / (abs(n) + 1) ** 1.1,
                                  (0, float("inf")), sy.Decay(sy.DECAY_UNKNOWN))
    with pytest.raises(SymbolError):
        sy.factor_quotient(s, "1-zbar2")


# ---------------------------------------------------------------------
# catalog and files
# ---------------------------------------------------------------------

def test_cauchy_examples():
    cau = sy.builtin_catalog("cauchy", alpha=2.0)
    assert cau.coeff(1) == pytest.approx(0.25)
    assert cau.coeff(0) == pytest.approx(0.5)
    with pytest.raises(SymbolError):
        sy.builtin_catalog("cauchy", alpha=0.5)


def test_family_builtin():
    fam = sy.builtin_catalog("family_1_minus_zbar2_theta", theta={1: 1})
    assert fam.table == {-1: 1, -3: -1}


def test_decay_invariant_finite_bounded_support():
    s = sy.random_laurent_symbol(np.random.default_rng(0), 4)
    assert s.decay.kind == sy.DECAY_FINITE
    lo, hi = s.support
    assert math.isfinite(lo) and math.isfinite(hi)
    assert s.coeff(int(hi) + 3) == 0 and s.coeff(int(lo) - 3) == 0


def test_truncated_sum_converges_to_closed_form():
    # partial Fourier sums of the cauchy kernel approach the closed form
    cau = sy.builtin_catalog("cauchy", alpha=2.0)
    t = 0.9
    target = cau.eval(t)
    errs = []
    for m in (4, 8, 16, 32):
        approx = sum(cau.coeff(n) * np.exp(1j * n * t) for n in range(m + 1))
        errs.append(abs(approx - target))
    assert errs[-1] < errs[0]
    assert errs[-1] < 1e-9


def test_symbol_json_roundtrip_coeffs(rng, tmp_path):
    s = sy.random_laurent_symbol(rng, 5)
    path = tmp_path / "sym.json"
    sy.dump_symbol(s, str(path))
    back = sy.load_symbol(str(path))
    assert back.table == s.table


def test_symbol_json_roundtrip_builtin(tmp_path):
    for doc in ({"kind": "builtin", "name": "hilbert", "params": {}},
                {"kind": "builtin", "name": "cauchy", "params": {"alpha": 2.0}}):
        s = sy.symbol_from_json(doc)
        again = sy.symbol_from_json(sy.symbol_to_json(s))
        for n in range(-3, 6):
            assert again.coeff(n) == pytest.approx(s.coeff(n))


def test_symbol_json_unlisted_indices_zero():
    s = sy.symbol_from_json({"kind": "coeffs", "entries": [[2, 1.0, 0.5]]})
    assert s.coeff(2) == 1.0 + 0.5j
    assert s.coeff(1) == 0
