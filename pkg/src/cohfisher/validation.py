"""Oracle-versus-closed-form agreement suite."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .fisher import qfi_rank2
from .models import MODELS, WeightSpec, build_descriptor
from .oracle import GridConfig, make_grid, qfi_bures, qfi_spectral
from .psf import PsfModel, p_variance
from .superposition import build_scalars

__all__ = ["ValidationCase", "ValidationReport", "random_cases", "run_validation", "thread_count"]

DEFAULT_SEED = 20201014
TOL_SPECTRAL = 1e-3
TOL_BURES = 5e-3
TOL_INCOHERENT = 1e-4


def thread_count() -> int:
    """Worker cap from ``COHFISHER_THREADS`` (default: CPU count, at most 8)."""
    env = os.environ.get("COHFISHER_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def pmap(func, items):
    """Ordered parallel map honouring :func:`thread_count`."""
    items = list(items)
    n = min(thread_count(), len(items))
    if n <= 1:
        return [func(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(func, items))


@dataclass(frozen=True)
class ValidationCase:
    index: int
    model: str
    weight: float
    s: float
    phi: float
    closed: float | None
    spectral: float
    bures: float
    rel_spectral: float | None
    rel_bures: float
    passed: bool


@dataclass
class ValidationReport:
    cases: list[ValidationCase]
    incoherent_qfi: float
    incoherent_target: float
    incoherent_passed: bool
    tol_spectral: float = TOL_SPECTRAL
    tol_bures: float = TOL_BURES
    failures: list[ValidationCase] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.incoherent_passed


def _weights(model: str, w: float) -> WeightSpec:
    return WeightSpec(gamma_abs=w) if model == "TN" else WeightSpec(p=w)


def random_cases(n: int = 25, seed: int = DEFAULT_SEED):
    """Seeded ``(model, weight, s)`` tuples; weight is ``p`` or ``|gamma|`` for TN."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        model = MODELS[rng.integers(len(MODELS))]
        weight = rng.uniform(0.0, 0.95) if model == "TN" else rng.uniform(0.05, 0.95)
        s = rng.uniform(0.1, 2.0)
        out.append((model, float(weight), float(s)))
    return out


def _run_case(psf, grid, phi, tol_spectral, tol_bures, index, model, weight, s) -> ValidationCase:
    w = _weights(model, weight)
    oracle_w = WeightSpec(p=w.p, gamma_abs=w.gamma_abs, gamma_phase=0.0)
    spectral = qfi_spectral(psf, model, s, oracle_w, grid=grid, phi=phi).qfi
    bures = qfi_bures(psf, model, s, oracle_w, grid=grid, phi=phi)
    rel_b = abs(bures - spectral) / abs(spectral)
    closed = rel_s = None
    ok = rel_b < tol_bures
    if phi == 0.0:
        closed = qfi_rank2(build_descriptor(model, build_scalars(psf, s), w)).qfi
        rel_s = abs(spectral - closed) / abs(closed)
        ok = ok and rel_s < tol_spectral
    return ValidationCase(index, model, weight, s, phi, closed, spectral, bures, rel_s, rel_b, ok)


def run_validation(
    psf: PsfModel,
    n_cases: int = 25,
    seed: int = DEFAULT_SEED,
    grid: GridConfig = GridConfig(),
    phi: float = 0.0,
    tol_spectral: float = TOL_SPECTRAL,
    tol_bures: float = TOL_BURES,
) -> ValidationReport:
    """Run the seeded agreement suite.

    With ``phi != 0`` the closed forms do not apply and only the spectral and
    Bures oracles are compared. The grid is checked up front so an
    under-resolved configuration fails before any work is done.
    """
    make_grid(psf, 2.0, grid)
    tuples = random_cases(n_cases, seed)

    def work(item):
        i, (model, weight, s) = item
        return _run_case(psf, grid, phi, tol_spectral, tol_bures, i, model, weight, s)

    cases = pmap(work, enumerate(tuples))
    s_ref = 0.5
    inc = qfi_spectral(psf, "incoherent", s_ref, grid=grid).qfi
    target = p_variance(psf)
    return ValidationReport(
        cases=cases,
        incoherent_qfi=inc,
        incoherent_target=target,
        incoherent_passed=abs(inc - target) < TOL_INCOHERENT,
        tol_spectral=tol_spectral,
        tol_bures=tol_bures,
        failures=[c for c in cases if not c.passed],
    )
