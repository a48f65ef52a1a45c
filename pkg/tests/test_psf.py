import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

import cohfisher as cf
from cohfisher.errors import ValidationError

# Quadrature of the Gaussian momentum density sqrt(2/pi) exp(-2 p^2) (sigma = 1),
# computed with scipy.integrate.quad and frozen here.
C_QUAD = {0.1: 0.9987507809245809, 0.5: 0.9692332344763441}
M_QUAD = {0.1: 0.024968769523114522, 0.5: 0.12115415430954302}
P2C_QUAD = {0.5: 0.22716403933039314}


def momentum_quad(weight, s, sigma=1.0):
    dens = lambda p: np.sqrt(2 / np.pi) * sigma * np.exp(-2 * p**2 * sigma**2)
    return quad(lambda p: weight(p, s) * dens(p), -np.inf, np.inf, epsabs=1e-14, epsrel=1e-13)[0]


def test_quadrature_oracle_reproduces_frozen_values():
    for s, v in C_QUAD.items():
        assert momentum_quad(lambda p, s: np.cos(s * p), s) == pytest.approx(v, abs=1e-13)
    for s, v in M_QUAD.items():
        assert momentum_quad(lambda p, s: p * np.sin(s * p), s) == pytest.approx(v, abs=1e-13)
    assert momentum_quad(lambda p, s: p**2 * np.cos(s * p), 0.5) == pytest.approx(P2C_QUAD[0.5], abs=1e-13)


def test_overlap_examples(gauss):
    assert cf.overlap_c(gauss, 0.0) == 1.0
    assert cf.overlap_c(gauss, 0.5) == pytest.approx(C_QUAD[0.5], abs=1e-12)
    assert cf.overlap_c(gauss, 0.5) == pytest.approx(np.exp(-0.25 / 8), abs=1e-15)
    assert cf.overlap_c(gauss, 0.1) == pytest.approx(C_QUAD[0.1], abs=1e-12)


def test_mom_im_examples(gauss):
    assert cf.mom_im(gauss, 0.0) == 0.0
    assert cf.mom_im(gauss, 0.5) == pytest.approx(M_QUAD[0.5], abs=1e-12)
    assert cf.mom_im(gauss, 0.1) == pytest.approx(M_QUAD[0.1], abs=1e-12)
    h = 1e-4
    fd = -(cf.overlap_c(gauss, 0.1 + h) - cf.overlap_c(gauss, 0.1 - h)) / (2 * h)
    assert cf.mom_im(gauss, 0.1) == pytest.approx(fd, abs=1e-9)


def test_p_variance(gauss, sampled_gauss):
    assert cf.p_variance(gauss) == 0.25
    assert cf.p_variance(cf.gaussian(2.0)) == 0.0625
    assert momentum_quad(lambda p, s: p**2, 0.0, sigma=2.0) == pytest.approx(0.0625, abs=1e-13)
    assert cf.p_variance(sampled_gauss) == pytest.approx(0.25, abs=1e-6)


def test_p2_overlap_examples(gauss):
    assert cf.p2_overlap(gauss, 0.0) == 0.25
    assert cf.p2_overlap(gauss, 0.5) == pytest.approx(P2C_QUAD[0.5], abs=1e-12)
    h = 1e-3
    c = lambda s: cf.overlap_c(gauss, s)
    d2 = (c(2 + h) - 2 * c(2) + c(2 - h)) / h**2
    assert cf.p2_overlap(gauss, 2.0) == pytest.approx(-d2, abs=1e-5)


@pytest.mark.parametrize("kind", ["gaussian", "sampled"])
def test_kernel_derivative_identities(kind, gauss, sampled_gauss):
    psf = gauss if kind == "gaussian" else sampled_gauss
    h = 1e-4
    for s in np.linspace(0.0, 5.0, 26):
        s = float(s)
        # c is even in s, so c(s - h) = c(|s - h|)
        dc = (cf.overlap_c(psf, s + h) - cf.overlap_c(psf, abs(s - h))) / (2 * h)
        assert abs(cf.mom_im(psf, s) + dc) < 1e-6
    h2 = 1e-3
    for s in np.linspace(0.01, 5.0, 26):
        s = float(max(s, h2))
        d2 = (cf.overlap_c(psf, s + h2) - 2 * cf.overlap_c(psf, s) + cf.overlap_c(psf, s - h2)) / h2**2
        assert abs(cf.p2_overlap(psf, s) + d2) < 1e-5


def test_sampled_matches_closed_form(gauss, sampled_gauss):
    s = np.linspace(0, 5, 51)
    for fn in (cf.overlap_c, cf.mom_im, cf.p2_overlap):
        assert np.max(np.abs(fn(gauss, s) - fn(sampled_gauss, s))) < 1e-8
    kg, ks = cf.moment_kernels(gauss, 0.3), cf.moment_kernels(sampled_gauss, 0.3)
    assert ks.omc == pytest.approx(kg.omc, rel=1e-9)
    assert ks.dp2_minus_p2c == pytest.approx(kg.dp2_minus_p2c, rel=1e-9)


def test_kernel_values_at_origin(sampled_gauss):
    for psf in (cf.gaussian(0.7), sampled_gauss):
        k = cf.moment_kernels(psf, 0.0)
        assert k.c == pytest.approx(1.0, abs=1e-14)
        assert k.m == pytest.approx(0.0, abs=1e-14)
        assert k.p2c == pytest.approx(k.dp2, abs=1e-14)
        assert k.omc == pytest.approx(0.0, abs=1e-14)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.0, max_value=1.0), st.floats(min_value=0.3, max_value=3.0))
def test_small_separation_bound(s, sigma):
    psf = cf.gaussian(sigma)
    a = cf.p_variance(psf)
    k = cf.moment_kernels(psf, s / 1.0)
    x = k.s**2 * a
    assert 0.0 <= k.omc <= x / 2 * (1 + x) + 1e-16
    assert abs(k.c) <= 1.0


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.0, max_value=6.0))
def test_stable_complements_agree(s):
    k = cf.moment_kernels(cf.gaussian(), s)
    assert k.omc == pytest.approx(1 - k.c, abs=1e-15)
    assert k.dp2_minus_p2c == pytest.approx(k.dp2 - k.p2c, abs=1e-15)


def test_negative_separation_rejected(gauss):
    with pytest.raises(ValidationError):
        cf.overlap_c(gauss, -0.1)


def test_sampled_validation():
    x = np.linspace(-12, 12, 1024, endpoint=False)
    amp = cf.gaussian().amplitude_at(x)
    with pytest.raises(ValidationError, match="normalized"):
        cf.sampled(x, 2 * amp)
    assert cf.sampled(x, 2 * amp, normalize=True).grid_step == pytest.approx(x[1] - x[0])
    bad_x = x.copy()
    bad_x[10] += 1e-3
    with pytest.raises(ValidationError, match="uniform"):
        cf.sampled(bad_x, amp)
    with pytest.raises(ValidationError, match="mean momentum"):
        cf.sampled(x, amp * np.exp(0.7j * x), normalize=True)
    with pytest.raises(ValidationError):
        cf.gaussian(0.0)


def test_asymmetric_profile_rejected_for_closed_forms():
    x = np.linspace(-12, 12, 2048, endpoint=False)
    dx = x[1] - x[0]
    # momentum density ~ |g(p)|^2 (1 + p)^2: skewed; then recentre to <P> = 0
    amp = np.exp(-(x**2) / 4) * (1 + 0.5j * x)
    p = 2 * np.pi * np.fft.fftfreq(x.size, d=dx)
    w = np.abs(np.fft.fft(amp)) ** 2
    amp = amp * np.exp(-1j * np.dot(p, w) / w.sum() * x)
    prof = cf.sampled(x, amp, normalize=True)
    with pytest.raises(ValidationError, match="not real"):
        cf.check_real_overlap(prof, 0.5)
    with pytest.raises(ValidationError):
        cf.build_scalars(prof, 0.5)


def test_load_profile_two_and_three_columns(tmp_path):
    x = np.linspace(-12, 12, 512, endpoint=False)
    amp = cf.gaussian().amplitude_at(x)
    f2 = tmp_path / "real.txt"
    np.savetxt(f2, np.column_stack([x, amp]), header="position amplitude")
    prof = cf.load_profile(f2)
    assert prof.kind == "sampled"
    assert cf.overlap_c(prof, 0.5) == pytest.approx(cf.overlap_c(cf.gaussian(), 0.5), abs=1e-8)

    f3 = tmp_path / "complex.txt"
    np.savetxt(f3, np.column_stack([x, amp, np.zeros_like(x)]))
    assert cf.p_variance(cf.load_profile(f3)) == pytest.approx(0.25, abs=1e-8)

    f4 = tmp_path / "bad.txt"
    np.savetxt(f4, np.column_stack([x, amp, amp, amp]))
    with pytest.raises(ValidationError, match="columns"):
        cf.load_profile(f4)
