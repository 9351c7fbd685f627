"""Smoke tests for the python bindings: quick end-to-end sanity only.

The heavy numerical validation lives in the C++ unit and acceptance suites.
"""

import math

import numpy as np
import pytest

import oscillint as osc


@pytest.fixture(scope="module")
def bumps():
    return osc.BumpSet.standard()


def test_bumps_support_and_plateau(bumps):
    assert bumps.phi(0.4) == 0.0
    assert bumps.phi(1.0) > 0.0
    assert bumps.chi(0.1) <= 1.0
    assert bumps.phase(0.5) == pytest.approx(math.pi, abs=1e-15)
    assert bumps.phase(0.5 + 2 * math.pi) == pytest.approx(math.pi, abs=1e-12)
    assert bumps.sphere_phase([1.0, 0.0, 0.0]) == 0.0
    assert bumps.sphere_phase([0.0, 1.0, 0.0]) == 2.0
    assert bumps.cap([0.0, 1.0, 0.0]) == 0.0


def test_symbol_sampling_and_magnitude_invariance(bumps):
    spec_a = osc.SymbolSpec(2, 4.0, bumps)
    spec_b = osc.SymbolSpec(2, 6.0, bumps)
    fa = osc.sample_symbol(spec_a, 2.0, 128)
    fb = osc.sample_symbol(spec_b, 2.0, 128)
    sa, sb = fa.samples(), fb.samples()
    assert sa.shape == (128, 128)
    assert np.allclose(np.abs(sa), np.abs(sb), atol=1e-13)
    assert sa[64, 64] == 0.0  # origin


def test_kernel_fft_parseval(bumps):
    spec = osc.SymbolSpec(2, 4.0, bumps)
    field = osc.sample_symbol(spec, 2.0, 128)
    kernel = osc.kernel_fft(field, 8.0)
    s, k = field.samples(), kernel.samples()
    lhs = np.sum(np.abs(s) ** 2) * field.spacing ** 2
    rhs = np.sum(np.abs(k) ** 2) * kernel.spacing ** 2
    assert lhs == pytest.approx(rhs, rel=1e-10)
    assert kernel.side == "space"


def test_kernel_reduction_matches_fft(bumps):
    lam = 8.0
    spec = osc.SymbolSpec(2, lam, bumps)
    kernel = osc.kernel_fft(osc.sample_symbol(spec, 2.0, 256), 2 * lam)
    reduce = osc.KernelReduction(spec)
    k = kernel.samples()
    n, h = kernel.n, kernel.spacing
    # node at x = 0, y = 8: indices (n/2, n/2 + 8/h)
    i, j = n // 2, n // 2 + int(round(lam / h))
    x = -kernel.half_side + i * h
    y = -kernel.half_side + j * h
    red = reduce(x, y)
    assert abs(k[i, j] - red) / abs(red) < 1e-3


def test_stationary_phase_gaussian():
    lam = 32.0
    exact = math.sqrt(math.pi / complex(0.5, -2 * math.pi * lam))
    lead = osc.stationary_phase_leading(2.0, 0.0, 1.0, lam, 1)
    assert abs(exact - lead) / abs(exact) < 1.0 / lam


def test_sequence_inequality():
    lhs, rhs, ratio = osc.sequence_inequality_check([0, 0, 1.0], 2.0)
    assert ratio == pytest.approx(1.0, abs=1e-12)
    c = osc.sequence_inequality_constant(2.0)
    assert c >= 1.0
    _, _, r2 = osc.sequence_inequality_check([1.0] * 20, 2.0)
    assert r2 <= c


def test_spectrum_norms_and_interpolation():
    s = osc.DyadicSpectrum([0.0, 0.0, 0.5], dim=2)
    l2, sob, bes = osc.norms_from_spectrum(s)
    assert l2 == pytest.approx(0.5)
    assert bes == pytest.approx(4 * 0.5)
    assert sob == pytest.approx(16 * 0.5)
    assert osc.interpolation_check(s) == pytest.approx(1.0, abs=1e-12)


def test_fit_exponent():
    ladder = [(4.0, 16.0), (8.0, 64.0), (16.0, 256.0)]
    slope, _, r2 = osc.fit_exponent(ladder)
    assert slope == pytest.approx(2.0, abs=1e-12)
    assert r2 == pytest.approx(1.0, abs=1e-12)


def test_validation_errors_surface_as_python_exceptions(bumps):
    spec = osc.SymbolSpec(2, 16.0, bumps)
    with pytest.raises(ValueError):
        osc.sample_symbol(spec, 1.0, 512)  # box too small
    with pytest.raises(RuntimeError):
        osc.sample_symbol(spec, 2.0, 64)  # too coarse -> coverage error
