"""Exact finite sections of Hardy-space operators and Foguel-type blocks.

A section is the compression of an operator to span{1, z, ..., z^{N-1}}
in the monomial basis, stored densely with the convention
entry (i, j) = <T z^j, z^i>.  With that convention a Toeplitz section is
c_{i-j} (constant on diagonals) and a Hankel section is c_{i+j}
(constant on antidiagonals); both are entrywise exact, which the
``exact_margin`` field records.  Sections obtained by composing
truncations are exact only on an interior block, and the margin
bookkeeping makes norm computations on those blocks certified lower
bounds of the infinite-dimensional quantities.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .symbols import FourierSymbol, SymbolError

SHIFT = "s"
BACKSHIFT = "s*"

KIND_TOEPLITZ = "toeplitz"
KIND_HANKEL = "hankel"


@dataclass
class OperatorSection:
    """N x N complex section with an interior-exactness margin.

    Entries (i, j) with i, j < N - exact_margin agree with the infinite
    operator; margin 0 means every entry is exact.
    """

    data: np.ndarray
    exact_margin: int = 0

    def __post_init__(self) -> None:
        self.data = np.asarray(self.data, dtype=complex)
        if self.data.ndim != 2 or self.data.shape[0] != self.data.shape[1]:
            raise ValueError("section data must be a square matrix")

    @property
    def size(self) -> int:
        return self.data.shape[0]

    def interior(self, margin: int | None = None) -> np.ndarray:
        m = self.exact_margin if margin is None else margin
        k = self.size - m
        return self.data[:k, :k]

    def to_csv(self) -> str:
        """Row-major dump with one "re,im" cell pair per entry."""
        buf = io.StringIO()
        for row in self.data:
            buf.write(",".join(f"{float(v.real)!r},{float(v.imag)!r}" for v in row))
            buf.write("\n")
        return buf.getvalue()


@dataclass(frozen=True)
class FoguelCase:
    """Diagonal pair and off-diagonal kind of a Foguel-type block operator.

    The pair ((s*, s), hankel) is constructible here but its similarity
    characterization is external to this laboratory (only the scalar
    criterion of Aleksandrov-Peller type is wired in), which the
    ``external_criterion`` flag records.
    """

    left: str
    right: str
    kind: str

    def __post_init__(self) -> None:
        if self.left not in (SHIFT, BACKSHIFT) or self.right not in (SHIFT, BACKSHIFT):
            raise ValueError(f"bad diagonal pair ({self.left}, {self.right})")
        if self.kind not in (KIND_TOEPLITZ, KIND_HANKEL):
            raise ValueError(f"bad off-diagonal kind {self.kind!r}")

    @property
    def diag_pair(self) -> tuple[str, str]:
        return (self.left, self.right)

    @property
    def external_criterion(self) -> bool:
        return self.diag_pair == (BACKSHIFT, SHIFT) and self.kind == KIND_HANKEL

    def token(self) -> str:
        return f"{self.kind[0]}:{self.left},{self.right}"

    def __str__(self) -> str:
        return self.token()


def parse_case(token: str) -> FoguelCase:
    """Parse case tokens of the form t:s,s* or h:s*,s."""
    try:
        kind_tok, pair = token.split(":")
        left, right = pair.split(",")
    except ValueError as exc:
        raise ValueError(f"bad case token {token!r}; expected e.g. 't:s,s*'") from exc
    kind = {"t": KIND_TOEPLITZ, "h": KIND_HANKEL}.get(kind_tok)
    if kind is None:
        raise ValueError(f"bad case token {token!r}; kind must be 't' or 'h'")
    return FoguelCase(left, right, kind)


ALL_CASES = tuple(
    FoguelCase(l, r, k)
    for k in (KIND_TOEPLITZ, KIND_HANKEL)
    for l in (SHIFT, BACKSHIFT)
    for r in (SHIFT, BACKSHIFT)
)


# ---------------------------------------------------------------------
# elementary sections
# ---------------------------------------------------------------------

def toeplitz_section(sym: FourierSymbol, n: int) -> OperatorSection:
    """Section of the Toeplitz operator with the given symbol: c_{i-j}."""
    c = sym.coeff_array(-(n - 1), n - 1)
    i = np.arange(n)
    idx = i[:, None] - i[None, :] + (n - 1)
    return OperatorSection(c[idx])


def hankel_section(sym: FourierSymbol, n: int) -> OperatorSection:
    """Section of the Hankel operator with the given symbol: c_{i+j}.

    Only coefficients with nonnegative index enter, so the section is
    insensitive to the strictly anti-analytic part of the symbol.
    """
    c = sym.coeff_array(0, 2 * n - 2)
    i = np.arange(n)
    return OperatorSection(c[i[:, None] + i[None, :]])


def basic_section(kind: str, n: int) -> OperatorSection:
    """Shift, backshift, rank-one projection, flip, and derivative sections.

    diff has entry (j-1, j) = j; diff_shift is the diagonal (j+1), the
    section of differentiation after one shift.  The flip leaves the
    analytic span, so it is represented here only by its action on
    constants (identity), and enters real computations only through the
    Hankel constructor.
    """
    m = np.zeros((n, n), dtype=complex)
    if kind == "shift":
        m[np.arange(1, n), np.arange(n - 1)] = 1
    elif kind == "backshift":
        m[np.arange(n - 1), np.arange(1, n)] = 1
    elif kind == "projection_E":
        m[0, 0] = 1
    elif kind == "flip":
        m[np.arange(n), np.arange(n)] = 1
    elif kind == "diff":
        j = np.arange(1, n)
        m[j - 1, j] = j
    elif kind == "diff_shift":
        m[np.arange(n), np.arange(n)] = np.arange(1, n + 1)
    else:
        raise ValueError(f"unknown basic section kind {kind!r}")
    return OperatorSection(m)


def _diag_section(which: str, n: int) -> np.ndarray:
    return basic_section("shift" if which == SHIFT else "backshift", n).data


def off_diagonal_section(case: FoguelCase, sym: FourierSymbol, n: int) -> OperatorSection:
    builder = toeplitz_section if case.kind == KIND_TOEPLITZ else hankel_section
    return builder(sym, n)


def foguel_section(case: FoguelCase, sym: FourierSymbol, n: int) -> OperatorSection:
    """2N x 2N block section [[Y, X], [0, Z]] for the given case."""
    y = _diag_section(case.left, n)
    z = _diag_section(case.right, n)
    x = off_diagonal_section(case, sym, n).data
    top = np.hstack([y, x])
    bot = np.hstack([np.zeros((n, n), dtype=complex), z])
    return OperatorSection(np.vstack([top, bot]))


# ---------------------------------------------------------------------
# powers: the off-diagonal block X_n
# ---------------------------------------------------------------------

def _coeff_lookup(sym: FourierSymbol, idx: np.ndarray) -> np.ndarray:
    lo = int(idx.min())
    hi = int(idx.max())
    c = sym.coeff_array(lo, hi)
    return c[idx - lo]


def xn_section(case: FoguelCase, sym: FourierSymbol, n: int, size: int) -> OperatorSection:
    """Entrywise-exact section of the n-th power's top-right block.

    For diagonal pair (s, s*) the block is sum_j S^{n-1-j} X S*^j and for
    (s, s) it is sum_j S^{n-1-j} X S^j; entries are assembled directly
    from the coefficient oracle, with index shifts replacing products of
    truncations.  Terms whose row index leaves the analytic range drop;
    column indices beyond the window are served by the oracle, so every
    entry is exact and the section norm is a certified lower bound of
    the true block norm.
    """
    if n < 1:
        raise ValueError("power index n must be >= 1")
    pair = case.diag_pair
    p = np.arange(size)[:, None]
    q = np.arange(size)[None, :]
    if pair == (SHIFT, BACKSHIFT):
        if case.kind == KIND_HANKEL:
            # every surviving term reads the same coefficient c_{p+q-(n-1)}
            idx = p + q - (n - 1)
            j_lo = np.maximum(0, (n - 1) - p)
            j_hi = np.minimum(n - 1, q)
            count = np.maximum(0, j_hi - j_lo + 1)
            data = _coeff_lookup(sym, idx) * count
        else:
            data = np.zeros((size, size), dtype=complex)
            for j in range(n):
                valid = (p >= (n - 1) - j) & (q >= j)
                idx = p - q - (n - 1) + 2 * j
                data += np.where(valid, _coeff_lookup(sym, idx), 0)
    elif pair == (SHIFT, SHIFT):
        if case.kind == KIND_TOEPLITZ:
            idx = p - q - (n - 1)
            count = np.minimum(n, p + 1)
            data = _coeff_lookup(sym, idx) * count
        else:
            data = np.zeros((size, size), dtype=complex)
            for j in range(n):
                valid = p >= (n - 1) - j
                idx = p + q - (n - 1) + 2 * j
                data += np.where(valid, _coeff_lookup(sym, idx), 0)
    else:
        raise ValueError("power block formula is available for (s,s*) and (s,s) only")
    return OperatorSection(data)


# ---------------------------------------------------------------------
# residuals
# ---------------------------------------------------------------------

def interior_residual(a: OperatorSection, b: OperatorSection, margin: int = 0) -> float:
    """Spectral norm of (a - b) restricted to the top-left (N - margin)^2 block."""
    if a.size != b.size:
        raise ValueError(f"size mismatch: {a.size} vs {b.size}")
    if margin >= a.size:
        raise ValueError("margin must be smaller than the section size")
    k = a.size - margin
    d = a.data[:k, :k] - b.data[:k, :k]
    if d.size == 0:
        return 0.0
    return float(np.linalg.svd(d, compute_uv=False)[0])
