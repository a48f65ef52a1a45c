"""Brute-force oracle: explicit wavefunctions and density operators on a grid.

Nothing here uses the closed forms of the other modules. States are built
from displaced copies of the sampled profile, density operators are
assembled literally from their preparation recipes, and the QFI is obtained
either from the spectral solution of the SLD equation or from the Bures
fidelity between neighbouring states.

Grid vectors carry a factor ``sqrt(dx)`` so that plain dot products are
position-space integrals. Because every state here has rank <= 2, the
operators are compressed onto the orthonormalized span of the vectors that
build them before any eigendecomposition; ``full_grid=True`` keeps the dense
``N x N`` path for audits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ResolutionError, UnreliableResultError, ValidationError
from .psf import PsfModel

__all__ = [
    "ORACLE_MODELS",
    "GridConfig",
    "GridState",
    "OracleResult",
    "make_grid",
    "assemble_state",
    "qfi_spectral",
    "qfi_bures",
    "qfi_pure_overlap",
    "fidelity",
]

ORACLE_MODELS = ("A", "B", "E", "LS", "TN", "incoherent", "pure1", "pure2")
EPS_SPEC = 1e-12
MAX_EXCLUDED = 0.01


@dataclass(frozen=True)
class GridConfig:
    """Uniform grid on ``[-(extent + s), extent + s)`` with ``n`` points (units of sigma)."""

    n: int = 2048
    extent: float = 12.0


@dataclass(frozen=True, eq=False)
class GridState:
    """Density operator ``rho = V M V^dagger / trace`` on a position grid.

    ``vectors`` holds the columns of ``V`` (shape ``N x k``), ``coeffs`` the
    Hermitian ``k x k`` matrix ``M``. ``raw_trace`` is the trace before
    normalization (the preparation rate for Model B).
    """

    x: np.ndarray
    s: float
    phi: float
    model: str
    psi_plus: np.ndarray
    psi_minus: np.ndarray
    phi1: np.ndarray
    phi2: np.ndarray
    vectors: np.ndarray
    coeffs: np.ndarray
    raw_trace: float

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @cached_property
    def rho(self) -> np.ndarray:
        v = self.vectors
        return (v @ self.coeffs @ v.conj().T) / self.raw_trace

    def compressed(self, basis: np.ndarray) -> np.ndarray:
        """``Q^dagger rho Q`` for an orthonormal basis ``Q`` containing the support."""
        w = basis.conj().T @ self.vectors
        return (w @ self.coeffs @ w.conj().T) / self.raw_trace

    def eigenvalues(self) -> np.ndarray:
        q = orthonormal_basis([self])
        return np.linalg.eigvalsh(_hermitize(self.compressed(q)))[::-1]

    def check(self, intended_trace: float = 1.0) -> None:
        """Trace, hermiticity and positivity checks on the assembled operator."""
        q = orthonormal_basis([self])
        r = self.compressed(q)
        if abs(np.trace(r).real - intended_trace) > 1e-8:
            raise ValidationError(f"trace {np.trace(r).real!r} != {intended_trace}")
        if np.max(np.abs(r - r.conj().T)) > 1e-12:
            raise ValidationError("assembled density operator is not Hermitian")
        if np.linalg.eigvalsh(_hermitize(r)).min() < -1e-10:
            raise ValidationError("assembled density operator has negative eigenvalues")


@dataclass(frozen=True)
class OracleResult:
    qfi: float
    eigenvalues: np.ndarray
    excluded_fraction: float
    basis_size: int


def _hermitize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def _profile_width(psf: PsfModel) -> float:
    if psf.is_gaussian:
        return psf.sigma
    dens = np.abs(psf.amplitude) ** 2 * psf.grid_step
    mean = np.dot(psf.x, dens)
    return float(np.sqrt(np.dot((psf.x - mean) ** 2, dens)))


def make_grid(psf: PsfModel, s: float, grid: GridConfig = GridConfig()) -> np.ndarray:
    """Position grid for states at separations near ``s``.

    Sampled profiles always use their own sample grid. Raises ResolutionError
    unless the step is at most width/16 and the half-range at least
    8 widths plus the separation.
    """
    width = _profile_width(psf)
    if psf.is_gaussian:
        half = (grid.extent + s) * width
        dx = 2.0 * half / grid.n
        x = -half + dx * np.arange(grid.n)
    else:
        x = psf.x
        dx = psf.grid_step
        half = 0.5 * (x[-1] - x[0] + dx)
    if dx > width / 16.0 * (1 + 1e-12):
        raise ResolutionError(f"grid step {dx:.4g} exceeds width/16 = {width / 16:.4g}")
    if half < (8.0 + s) * width * (1 - 1e-12):
        raise ResolutionError(f"grid half-range {half:.4g} is below 8 widths + s = {(8 + s) * width:.4g}")
    return x


def _displaced(psf: PsfModel, x: np.ndarray, shift: float) -> np.ndarray:
    """Samples of ``psi(x + shift) * sqrt(dx)``, i.e. ``exp(i P shift) psi``."""
    dx = x[1] - x[0]
    if psf.is_gaussian:
        amp = psf.amplitude_at(x + shift).astype(complex)
    else:
        if x is not psf.x and not np.array_equal(x, psf.x):
            raise ValidationError("sampled profiles must be evaluated on their own grid")
        p = 2.0 * np.pi * np.fft.fftfreq(x.size, d=dx)
        amp = np.fft.ifft(np.fft.fft(psf.amplitude) * np.exp(1j * p * shift))
    return amp * np.sqrt(dx)


def _weight_p(weights, model: str) -> float:
    p = getattr(weights, "p", weights)
    if p is None or not 0.0 <= float(p) <= 1.0:
        raise ValidationError(f"model {model} needs a weight p in [0, 1], got {p!r}")
    return float(p)


def _gamma(weights) -> complex:
    g_abs = getattr(weights, "gamma_abs", weights)
    g_phase = getattr(weights, "gamma_phase", 0.0)
    if g_abs is None or not 0.0 <= float(g_abs) <= 1.0:
        raise ValidationError(f"|gamma| must lie in [0, 1], got {g_abs!r}")
    return float(g_abs) * np.exp(-1j * float(g_phase))


def assemble_state(
    psf: PsfModel,
    model: str,
    s: float,
    weights=None,
    grid: GridConfig = GridConfig(),
    phi: float = 0.0,
    x: np.ndarray | None = None,
) -> GridState:
    """Build the grid density operator of ``model`` at separation ``s``.

    ``weights`` is a WeightSpec or a bare number (``p``, or ``|gamma|`` for
    TN). Pass ``x`` to reuse a grid across neighbouring separations.
    """
    if s < 0:
        raise ValidationError("separation must be non-negative")
    if x is None:
        x = make_grid(psf, s, grid)
    plus = _displaced(psf, x, s / 2.0)
    minus = _displaced(psf, x, -s / 2.0)
    eph = np.exp(1j * phi)
    phi1 = 0.5 * (plus + eph * minus)
    phi2 = 0.5 * (plus - eph * minus)
    n1 = np.vdot(phi1, phi1).real
    n2 = np.vdot(phi2, phi2).real

    if model == "A":
        p = _weight_p(weights, model)
        vecs, m = [phi1, phi2], np.diag([p / n1, (1 - p) / n2])
    elif model == "B":
        p = _weight_p(weights, model)
        vecs, m = [phi1, phi2], np.diag([p, 1 - p])
    elif model == "E":
        p = _weight_p(weights, model)
        c = p * n1 + (1 - p) * n2
        pbar1, pbar2 = p * n1 / c, (1 - p) * n2 / c
        vecs, m = [phi1, phi2], np.diag([pbar1 / n1, pbar2 / n2])
    elif model == "LS":
        p = _weight_p(weights, model)
        vecs, m = [phi1, plus, minus], np.diag([p / n1, (1 - p) / 2, (1 - p) / 2])
    elif model == "TN":
        g = _gamma(weights)
        vecs, m = [plus, eph * minus], np.array([[1.0, g], [np.conj(g), 1.0]])
    elif model == "incoherent":
        vecs, m = [plus, minus], np.diag([0.5, 0.5])
    elif model == "pure1":
        vecs, m = [phi1], np.array([[1.0 / n1]])
    elif model == "pure2":
        vecs, m = [phi2], np.array([[1.0 / n2]])
    else:
        raise ValidationError(f"unknown oracle model {model!r}; expected one of {ORACLE_MODELS}")

    v = np.column_stack(vecs)
    m = np.asarray(m, dtype=complex)
    raw_trace = float(np.trace(v.conj().T @ v @ m).real)
    if not raw_trace > 0:
        raise ValidationError(f"model {model} has zero trace at s={s}")
    return GridState(
        x=x, s=float(s), phi=float(phi), model=model,
        psi_plus=plus, psi_minus=minus, phi1=phi1, phi2=phi2,
        vectors=v, coeffs=m, raw_trace=raw_trace,
    )


def orthonormal_basis(states, rtol: float = 1e-13) -> np.ndarray:
    """Orthonormal basis (via SVD) of the span of all vectors of ``states``."""
    v = np.column_stack([st.vectors for st in states])
    u, sv, _ = np.linalg.svd(v, full_matrices=False)
    return u[:, sv > rtol * sv[0]]


def _spectral_sum(rho: np.ndarray, drho: np.ndarray, eps: float):
    lam, vec = np.linalg.eigh(_hermitize(rho))
    d = vec.conj().T @ drho @ vec
    mag = np.abs(d) ** 2
    denom = lam[:, None] + lam[None, :]
    keep = denom > eps
    qfi = float(np.sum(2.0 * mag[keep] / denom[keep]))
    total = mag.sum()
    excluded = float(mag[~keep].sum() / total) if total > 0 else 0.0
    return qfi, lam[::-1], excluded


def qfi_spectral(
    psf: PsfModel,
    model: str,
    s: float,
    weights=None,
    grid: GridConfig = GridConfig(),
    phi: float = 0.0,
    ds: float = 1e-4,
    eps: float = EPS_SPEC,
    full_grid: bool = False,
) -> OracleResult:
    """QFI from the eigendecomposition of ``rho(s)`` and a central-difference ``d rho/ds``.

    ``F = sum_{i,j} 2 |<i|d rho|j>|^2 / (l_i + l_j)`` over pairs with
    ``l_i + l_j > eps``. Raises UnreliableResultError if the excluded pairs
    carry more than 1% of ``||d rho||^2``.
    """
    if not 1e-6 <= ds <= 1e-3:
        raise ValidationError(f"ds must lie in [1e-6, 1e-3], got {ds}")
    if s - ds < 0:
        raise ValidationError("qfi_spectral needs s >= ds")
    x = make_grid(psf, s, grid)
    states = [
        assemble_state(psf, model, s + k * ds, weights, phi=phi, x=x) for k in (-1, 0, 1)
    ]
    if full_grid:
        rho_m, rho_0, rho_p = (st.rho for st in states)
        basis_size = x.size
    else:
        q = orthonormal_basis(states)
        rho_m, rho_0, rho_p = (st.compressed(q) for st in states)
        basis_size = q.shape[1]
    drho = _hermitize((rho_p - rho_m) / (2.0 * ds))
    qfi, lam, excluded = _spectral_sum(rho_0, drho, eps)
    if excluded > MAX_EXCLUDED:
        raise UnreliableResultError(
            f"{100 * excluded:.2f}% of |d rho|^2 falls on eigenvalue pairs below eps={eps}"
        )
    return OracleResult(qfi=qfi, eigenvalues=lam, excluded_fraction=excluded, basis_size=basis_size)


def _factor(r: np.ndarray, rtol: float = 1e-14) -> np.ndarray:
    lam, vec = np.linalg.eigh(_hermitize(r))
    keep = lam > rtol * lam.max()
    return vec[:, keep] * np.sqrt(lam[keep])


def fidelity(a: GridState, b: GridState) -> float:
    """Root fidelity ``Tr sqrt(sqrt(rho) sigma sqrt(rho))`` as a nuclear norm of square-root factors."""
    q = orthonormal_basis([a, b])
    fa, fb = _factor(a.compressed(q)), _factor(b.compressed(q))
    return float(np.linalg.svd(fa.conj().T @ fb, compute_uv=False).sum())


def _bures_estimate(states_at, s: float, ds: float) -> float:
    st0 = states_at(s)
    f = fidelity(st0, states_at(s + ds))
    if not 0.0 < f <= 1.0 + 1e-12:
        raise UnreliableResultError(f"root fidelity {f!r} outside (0, 1]")
    return 8.0 * (1.0 - f) / ds**2


def qfi_bures(
    psf: PsfModel,
    model: str,
    s: float,
    weights=None,
    grid: GridConfig = GridConfig(),
    phi: float = 0.0,
    ds: float = 1e-3,
) -> float:
    """QFI from ``8 (1 - sqrt(Fid)) / ds^2`` at ``ds`` and ``ds/2``, Richardson-extrapolated.

    The forward difference has an O(ds) leading error, hence ``2 F(ds/2) - F(ds)``.
    """
    x = make_grid(psf, s + ds, grid)

    def states_at(t):
        return assemble_state(psf, model, t, weights, phi=phi, x=x)

    f_full = _bures_estimate(states_at, s, ds)
    f_half = _bures_estimate(states_at, s, ds / 2.0)
    return 2.0 * f_half - f_full


def qfi_pure_overlap(
    psf: PsfModel, channel: int, s: float, grid: GridConfig = GridConfig(), ds: float = 1e-3
) -> float:
    """Pure-state shortcut ``4 (1 - |<u(s)|u(s+ds)>|^2) / ds^2`` for a normalized superposition."""
    model = {1: "pure1", 2: "pure2"}[channel]
    x = make_grid(psf, s + ds, grid)

    def unit(t):
        st = assemble_state(psf, model, t, x=x)
        v = st.vectors[:, 0]
        return v / np.linalg.norm(v)

    u0 = unit(s)

    def est(h):
        return 4.0 * (1.0 - abs(np.vdot(u0, unit(s + h))) ** 2) / h**2

    return 2.0 * est(ds / 2.0) - est(ds)
