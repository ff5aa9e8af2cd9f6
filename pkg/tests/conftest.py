import numpy as np
import pytest

from foguel_lab import symbols as sy


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def quadrature_coeff(closed_form, n, points=200000):
    """Independent coefficient oracle: trapezoid quadrature of
    (1/2pi) int f(e^{it}) e^{-int} dt on a dense uniform grid."""
    t = 2 * np.pi * np.arange(points) / points
    vals = closed_form(t) * np.exp(-1j * n * t)
    return complex(np.mean(vals))


def fourier_sum(sym, t):
    """Direct Fourier sum for finite symbols, bypassing eval()."""
    return sum(c * np.exp(1j * n * t) for n, c in sym.table.items())


def random_member(rng, factor_coeffs, bandwidth=5):
    """A random element of factor * (Laurent polynomials), built by
    convolution on the numpy side (independent of the package mul)."""
    quot = sy.random_laurent_symbol(rng, bandwidth)
    prod = {}
    for n, c in factor_coeffs.items():
        for m, d in quot.table.items():
            prod[n + m] = prod.get(n + m, 0j) + c * d
    return sy.FourierSymbol.from_coeffs(prod), quot
