import numpy as np
import pytest

from foguel_lab import sections as sec
from foguel_lab import symbols as sy
from foguel_lab.sections import FoguelCase, OperatorSection, parse_case


def test_toeplitz_of_z_is_shift():
    z = sy.FourierSymbol.from_coeffs({1: 1})
    t = sec.toeplitz_section(z, 5)
    assert np.array_equal(t.data, sec.basic_section("shift", 5).data)


def test_toeplitz_of_one_is_identity():
    t = sec.toeplitz_section(sy.builtin_catalog("one"), 4)
    assert np.array_equal(t.data, np.eye(4))


def test_toeplitz_hilbert_first_row():
    psi = sy.builtin_catalog("hilbert")
    t = sec.toeplitz_section(psi, 3)
    assert t.data[0, :] == pytest.approx([1.0, 0.0, -1.0])


def test_hankel_hilbert_matrix():
    psi = sy.builtin_catalog("hilbert")
    h = sec.hankel_section(psi, 6)
    i = np.arange(6)
    assert h.data == pytest.approx(1.0 / (i[:, None] + i[None, :] + 1))


def test_hankel_of_one_and_z():
    h1 = sec.hankel_section(sy.builtin_catalog("one"), 3).data
    expected = np.zeros((3, 3)); expected[0, 0] = 1
    assert np.array_equal(h1, expected)
    hz = sec.hankel_section(sy.FourierSymbol.from_coeffs({1: 1}), 3).data
    expected = np.zeros((3, 3)); expected[0, 1] = expected[1, 0] = 1
    assert np.array_equal(hz, expected)


def test_toeplitz_constant_diagonals_hankel_constant_antidiagonals(rng):
    s = sy.random_laurent_symbol(rng, 6)
    t = sec.toeplitz_section(s, 12).data
    for off in range(-11, 12):
        d = np.diagonal(t, offset=off)
        assert np.ptp(np.abs(d)) < 1e-15 if len(d) > 1 else True
    h = sec.hankel_section(s, 12).data
    for off in range(-11, 12):
        d = np.diagonal(h[:, ::-1], offset=off)
        if len(d) > 1:
            assert np.ptp(np.abs(d)) < 1e-15


def test_hankel_ignores_negative_coefficients(rng):
    s = sy.random_laurent_symbol(rng, 5)
    perturbed = dict(s.table)
    perturbed[-2] = perturbed.get(-2, 0) + 3.7
    perturbed[-5] = 1.1j
    s2 = sy.FourierSymbol.from_coeffs(perturbed)
    assert np.array_equal(sec.hankel_section(s, 8).data,
                          sec.hankel_section(s2, 8).data)


def test_basic_sections():
    assert np.array_equal(sec.basic_section("diff_shift", 4).data,
                          np.diag([1, 2, 3, 4]).astype(complex))
    n = 6
    s = sec.basic_section("shift", n).data
    st = sec.basic_section("backshift", n).data
    # the composite S*S = I holds on the interior; the product of
    # truncations has a single corner defect at (n-1, n-1)
    assert np.array_equal((st @ s)[: n - 1, : n - 1], np.eye(n - 1))
    pe = sec.basic_section("projection_E", n).data
    assert np.array_equal(s @ st, np.eye(n) - pe)
    d = sec.basic_section("diff", 4).data
    assert d[0, 1] == 1 and d[1, 2] == 2 and d[2, 3] == 3
    with pytest.raises(ValueError):
        sec.basic_section("nope", 3)


def test_foguel_assembly_zero_symbol():
    case = parse_case("t:s,s*")
    f = sec.foguel_section(case, sy.builtin_catalog("zero"), 8)
    assert f.size == 16
    assert np.linalg.norm(f.data, 2) == pytest.approx(1.0)


def test_foguel_assembly_hankel_one():
    case = parse_case("h:s,s")
    f = sec.foguel_section(case, sy.builtin_catalog("one"), 4).data
    off = f[:4, 4:]
    expected = np.zeros((4, 4)); expected[0, 0] = 1
    assert np.array_equal(off, expected)


def test_case_tokens():
    for tok in ("t:s,s*", "h:s*,s", "t:s*,s*", "h:s,s"):
        assert parse_case(tok).token() == tok
    with pytest.raises(ValueError):
        parse_case("x:s,s")
    with pytest.raises(ValueError):
        parse_case("t:s")
    assert parse_case("h:s*,s").external_criterion
    assert not parse_case("t:s*,s").external_criterion


# ---------------------------------------------------------------------
# X_n power blocks
# ---------------------------------------------------------------------

def test_xn_projection_antidiagonal_isometry():
    case = parse_case("h:s,s*")
    one = sy.builtin_catalog("one")
    for n in (1, 3, 6):
        xn = sec.xn_section(case, one, n, 10).data
        # one entry per column on the antidiagonal p + q = n - 1
        expected = np.zeros((10, 10))
        for k in range(n):
            expected[k, n - 1 - k] = 1
        assert np.array_equal(xn, expected)
        assert np.linalg.norm(xn, 2) == pytest.approx(1.0)


def test_xn_n1_is_plain_section(rng):
    s = sy.random_laurent_symbol(rng, 4)
    for tok, builder in (("h:s,s*", sec.hankel_section), ("t:s,s", sec.toeplitz_section)):
        case = parse_case(tok)
        xn = sec.xn_section(case, s, 1, 12)
        assert xn.data == pytest.approx(builder(s, 12).data)


def test_xn_tz_equal_shifts():
    case = parse_case("t:s,s")
    z = sy.FourierSymbol.from_coeffs({1: 1})
    for n in (2, 5, 9):
        xn = sec.xn_section(case, z, n, 16).data
        s = sec.basic_section("shift", 16).data
        assert xn == pytest.approx(n * np.linalg.matrix_power(s, n))
        assert np.linalg.norm(xn, 2) == pytest.approx(n)


def test_xn_rejects_unsupported_pairs():
    case = FoguelCase("s*", "s", "toeplitz")
    with pytest.raises(ValueError):
        sec.xn_section(case, sy.builtin_catalog("one"), 2, 8)


def _padded_power_block(case, s, n, size):
    m = size + n
    f = sec.foguel_section(case, s, m).data
    p = np.linalg.matrix_power(f, n)
    return p[:size, m:m + size]


def test_power_formula_cross_check(rng):
    # the top-right block of the padded Foguel power equals xn_section
    for tok in ("t:s,s*", "h:s,s*", "t:s,s", "h:s,s"):
        case = parse_case(tok)
        for _ in range(6):
            s = sy.random_laurent_symbol(rng, 5)
            for n in (1, 2, 3, 7):
                block = _padded_power_block(case, s, n, 12)
                xn = sec.xn_section(case, s, n, 12).data
                assert np.abs(block - xn).max() <= 1e-12


def test_toeplitz_bracket(rng):
    # backshift * T * shift reproduces T on the leading block
    s = sy.random_laurent_symbol(rng, 5)
    n = 16
    t = sec.toeplitz_section(s, n).data
    sh = sec.basic_section("shift", n).data
    st = sec.basic_section("backshift", n).data
    lhs = st @ t @ sh
    assert np.abs((lhs - t)[: n - 1, : n - 1]).max() < 1e-14


def test_hankel_bracket(rng):
    # backshift * H equals H * shift on the leading block
    s = sy.random_laurent_symbol(rng, 5)
    n = 16
    h = sec.hankel_section(s, n).data
    sh = sec.basic_section("shift", n).data
    st = sec.basic_section("backshift", n).data
    assert np.abs((st @ h - h @ sh)[: n - 1, : n - 1]).max() < 1e-14


# ---------------------------------------------------------------------
# residuals and export
# ---------------------------------------------------------------------

def test_interior_residual_examples():
    n = 8
    s = sec.basic_section("shift", n)
    st = sec.basic_section("backshift", n)
    eye = OperatorSection(np.eye(n))
    assert sec.interior_residual(eye, eye) == 0.0
    # S*S = I on the interior; the truncation corner sits outside margin 1
    assert sec.interior_residual(OperatorSection(st.data @ s.data), eye, 1) == 0.0
    # shift * backshift differs from the identity by a rank-one projection
    assert sec.interior_residual(OperatorSection(s.data @ st.data), eye) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        sec.interior_residual(eye, OperatorSection(np.eye(4)))


def test_csv_export_roundtrip():
    s = sy.FourierSymbol.from_coeffs({0: 1 + 2j, 1: -0.5})
    t = sec.toeplitz_section(s, 3)
    text = t.to_csv()
    rows = [line.split(",") for line in text.strip().splitlines()]
    parsed = np.array([[complex(float(r[2 * j]), float(r[2 * j + 1]))
                        for j in range(3)] for r in rows])
    assert parsed == pytest.approx(t.data)
