"""Elementary signal profiles and their momentum-space moment kernels.

Every closed-form quantity in the package is built from three overlaps of
the profile with the displacement operator ``exp(isP)``::

    c(s)   = Re <exp(isP)>
    m(s)   = Im <P exp(isP)>
    p2c(s) = Re <P^2 exp(isP)>

together with the momentum variance ``(dP)^2 = <P^2>``. The Gaussian profile
uses the amplitude convention ``psi(x) ~ exp(-x^2 / 4 sigma^2)`` so that
``(dP)^2 = 1 / (4 sigma^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from os import PathLike

import numpy as np

from .errors import ValidationError

__all__ = [
    "PsfModel",
    "MomentKernels",
    "gaussian",
    "sampled",
    "sampled_gaussian",
    "load_profile",
    "overlap_c",
    "mom_im",
    "p_variance",
    "p2_overlap",
    "moment_kernels",
    "check_real_overlap",
]

NORM_TOL = 1e-10
MEAN_P_TOL = 1e-8
SYMMETRY_TOL = 1e-8
GRID_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class PsfModel:
    """Elementary signal profile.

    Build instances with :func:`gaussian`, :func:`sampled`,
    :func:`sampled_gaussian` or :func:`load_profile` rather than directly.
    """

    kind: str
    sigma: float = 1.0
    x: np.ndarray | None = None
    amplitude: np.ndarray | None = None
    grid_step: float | None = None
    # momentum grid and normalized momentum density weights |psi~(p)|^2 dp
    _p: np.ndarray | None = field(default=None, repr=False)
    _w: np.ndarray | None = field(default=None, repr=False)

    @property
    def is_gaussian(self) -> bool:
        return self.kind == "gaussian"

    def amplitude_at(self, x):
        """Analytic amplitude of a Gaussian profile at positions ``x``."""
        if not self.is_gaussian:
            raise ValidationError("analytic amplitude only exists for Gaussian profiles")
        x = np.asarray(x, dtype=float)
        s2 = self.sigma**2
        return (2.0 * np.pi * s2) ** -0.25 * np.exp(-(x**2) / (4.0 * s2))

    def momentum_density(self):
        """Return ``(p, w)``: momentum grid and weights summing to one."""
        if self.is_gaussian:
            raise ValidationError("Gaussian profiles use closed forms, no momentum grid")
        return self._p, self._w


@dataclass(frozen=True)
class MomentKernels:
    """Kernel values at one separation (sigma = length unit of the profile).

    ``omc = 1 - c`` and ``dp2_minus_p2c = dp2 - p2c`` are evaluated without
    cancellation so that the anti-phase channel stays accurate as s -> 0.
    ``anti_gram`` is the Gram determinant ``<u,u><v,v> - <u,v>^2`` of
    ``u = P cos(sP/2)`` and ``v = sin(sP/2)`` under the momentum density; it
    equals ``(2 p2_11 (1 - c) - m^2) / 4``, which cancels to O(s^6).
    """

    s: float
    c: float
    m: float
    p2c: float
    dp2: float
    omc: float
    dp2_minus_p2c: float
    anti_gram: float


def gaussian(sigma: float = 1.0) -> PsfModel:
    if not sigma > 0:
        raise ValidationError(f"sigma must be positive, got {sigma}")
    return PsfModel(kind="gaussian", sigma=float(sigma))


def sampled(x, amplitude, normalize: bool = False) -> PsfModel:
    """Profile given by complex amplitude samples on a uniform grid.

    Raises ValidationError if the grid is not uniform, the amplitude is not
    normalized (unless ``normalize``), or the mean momentum is not zero.
    """
    x = np.asarray(x, dtype=float)
    amp = np.asarray(amplitude, dtype=complex)
    if x.ndim != 1 or x.shape != amp.shape or x.size < 16:
        raise ValidationError("positions and amplitudes must be 1D arrays of equal length >= 16")
    steps = np.diff(x)
    dx = steps.mean()
    if dx <= 0 or np.max(np.abs(steps - dx)) > GRID_RTOL * max(1.0, abs(x).max()):
        raise ValidationError("sampled profile requires a uniform increasing grid")

    norm = np.trapezoid(np.abs(amp) ** 2, dx=dx)
    if normalize:
        amp = amp / np.sqrt(norm)
    elif abs(norm - 1.0) > NORM_TOL:
        raise ValidationError(f"profile is not normalized: sum |psi|^2 dx = {norm!r}")

    n = x.size
    p = 2.0 * np.pi * np.fft.fftfreq(n, d=dx)
    w = np.abs(np.fft.fft(amp)) ** 2 * dx / n
    w = w / w.sum()
    mean_p = float(np.dot(p, w))
    if abs(mean_p) > MEAN_P_TOL:
        raise ValidationError(f"mean momentum must vanish, got <P> = {mean_p:.3e}")
    return PsfModel(kind="sampled", x=x, amplitude=amp, grid_step=float(dx), _p=p, _w=w)


def sampled_gaussian(sigma: float = 1.0, extent: float = 12.0, n: int = 4096) -> PsfModel:
    """Gaussian sampled on ``n`` points spanning ``[-extent, extent) * sigma``."""
    dx = 2.0 * extent * sigma / n
    x = -extent * sigma + dx * np.arange(n)
    return sampled(x, gaussian(sigma).amplitude_at(x), normalize=True)


def load_profile(path: str | PathLike, normalize: bool = False) -> PsfModel:
    """Read ``position real [imag]`` columns (``#`` comments) into a sampled profile."""
    data = np.loadtxt(path, comments="#", ndmin=2)
    if data.shape[1] not in (2, 3):
        raise ValidationError(f"{path}: expected 2 or 3 columns, found {data.shape[1]}")
    amp = data[:, 1].astype(complex)
    if data.shape[1] == 3:
        amp = amp + 1j * data[:, 2]
    return sampled(data[:, 0], amp, normalize=normalize)


def _check_s(s):
    s = np.asarray(s, dtype=float)
    if np.any(s < 0) or not np.all(np.isfinite(s)):
        raise ValidationError("separation must be finite and non-negative")
    return s


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


def _sampled_sum(psf: PsfModel, s, kernel):
    p, w = psf._p, psf._w
    sp = np.multiply.outer(s, p)
    return kernel(sp, p) @ w


def p_variance(psf: PsfModel) -> float:
    """Momentum variance ``(dP)^2``, in units of sigma^-2."""
    if psf.is_gaussian:
        return 0.25 / psf.sigma**2
    p, w = psf._p, psf._w
    return float(np.dot(p**2, w))


def overlap_c(psf: PsfModel, s):
    """Overlap ``Re <exp(isP)>`` of the profile with its displaced copy."""
    s = _check_s(s)
    if psf.is_gaussian:
        return _out(np.exp(-0.5 * s**2 * p_variance(psf)))
    return _out(_sampled_sum(psf, s, lambda sp, p: np.cos(sp)))


def mom_im(psf: PsfModel, s):
    """``Im <P exp(isP)>``; equals ``-dc/ds``."""
    s = _check_s(s)
    if psf.is_gaussian:
        a = p_variance(psf)
        return _out(s * a * np.exp(-0.5 * s**2 * a))
    return _out(_sampled_sum(psf, s, lambda sp, p: p * np.sin(sp)))


def p2_overlap(psf: PsfModel, s):
    """``Re <P^2 exp(isP)>``; equals ``-d^2c/ds^2``."""
    s = _check_s(s)
    if psf.is_gaussian:
        a = p_variance(psf)
        return _out(a * (1.0 - s**2 * a) * np.exp(-0.5 * s**2 * a))
    return _out(_sampled_sum(psf, s, lambda sp, p: p**2 * np.cos(sp)))


def _one_minus_c(psf: PsfModel, s):
    if psf.is_gaussian:
        return -np.expm1(-0.5 * s**2 * p_variance(psf))
    return _sampled_sum(psf, s, lambda sp, p: 2.0 * np.sin(0.5 * sp) ** 2)


def _dp2_minus_p2c(psf: PsfModel, s):
    if psf.is_gaussian:
        a = p_variance(psf)
        return a * -np.expm1(-0.5 * s**2 * a) + a**2 * s**2 * np.exp(-0.5 * s**2 * a)
    return _sampled_sum(psf, s, lambda sp, p: 2.0 * p**2 * np.sin(0.5 * sp) ** 2)


def _sinh_minus_x_scaled(x: float) -> float:
    """``exp(-x) (sinh x - x)``, by series below x = 1."""
    if x >= 1.0:
        return -0.5 * np.expm1(-2.0 * x) - x * np.exp(-x)
    term, total = x, 0.0
    for k in range(1, 12):
        term *= x * x / ((2 * k) * (2 * k + 1))
        total += term
    return float(np.exp(-x) * total)


def _anti_gram(psf: PsfModel, s: float) -> float:
    if psf.is_gaussian:
        a = p_variance(psf)
        return 0.5 * a * _sinh_minus_x_scaled(0.5 * s**2 * a)
    p, w = psf._p, psf._w
    half = 0.5 * s * p
    u, v = p * np.cos(half), np.sin(half)
    uu = np.dot(w, u * u)
    if uu == 0.0:
        return 0.0
    # project v off u before squaring: the two are nearly parallel at small s
    v_perp = v - (np.dot(w, u * v) / uu) * u
    return float(uu * np.dot(w, v_perp * v_perp))


def check_real_overlap(psf: PsfModel, s: float) -> None:
    """Reject sampled profiles whose overlaps are not real at separation ``s``.

    The closed forms need ``Im <exp(isP)> = 0`` (orthogonal superpositions)
    and ``Re <P exp(isP)> = 0`` (no coupling between the two channels).
    Gaussian profiles pass by construction.
    """
    if psf.is_gaussian:
        return
    im_c = _sampled_sum(psf, np.asarray(s, float), lambda sp, p: np.sin(sp))
    re_pc = _sampled_sum(psf, np.asarray(s, float), lambda sp, p: p * np.cos(sp))
    if abs(im_c) > SYMMETRY_TOL or abs(re_pc) > SYMMETRY_TOL:
        raise ValidationError(
            f"profile overlap is not real at s={s}: Im<e^isP>={im_c:.2e}, Re<Pe^isP>={re_pc:.2e}"
        )


def moment_kernels(psf: PsfModel, s: float) -> MomentKernels:
    s_arr = _check_s(s)
    if s_arr.ndim:
        raise ValidationError("moment_kernels takes a scalar separation")
    s = float(s_arr)
    return MomentKernels(
        s=s,
        c=overlap_c(psf, s),
        m=mom_im(psf, s),
        p2c=p2_overlap(psf, s),
        dp2=p_variance(psf),
        omc=float(_one_minus_c(psf, s_arr)),
        dp2_minus_p2c=float(_dp2_minus_p2c(psf, s_arr)),
        anti_gram=_anti_gram(psf, s),
    )
