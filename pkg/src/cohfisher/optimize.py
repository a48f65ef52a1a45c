"""Weight optimization of the rate-normalized precision for Models B and E."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .fisher import qfi_rank2
from .models import WeightSpec, build_descriptor
from .psf import PsfModel
from .superposition import SuperpositionScalars, build_scalars

__all__ = [
    "Optimum",
    "near_optimal_p_model_b",
    "near_optimal_rate_model_b",
    "near_optimal_weights_model_e",
    "precision_at",
    "golden_section_max",
    "maximize_precision",
]

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
DEFAULT_BRACKET = (1e-6, 1.0 - 1e-6)
PRESCAN_POINTS = 65
FALLBACK_POINTS = 1024


@dataclass(frozen=True)
class Optimum:
    """Maximizer of ``rate * qfi`` over the weight ``p`` at fixed separation.

    ``value_lambda`` is ``rate * f_lambda`` at ``p_star`` (the eigenvalue
    part alone) and ``base_rate_at_opt`` the shared A/B rate ``C`` there,
    which differs from ``rate_at_opt`` for Model E. ``fallback`` is set when the prescan found several local
    maxima and the dense grid scan was used.
    """

    model: str
    s: float
    p_star: float
    value: float
    rate_at_opt: float
    qfi_at_opt: float
    value_lambda: float
    base_rate_at_opt: float
    iterations: int
    converged: bool
    fallback: bool = False


def near_optimal_p_model_b(scalars: SuperpositionScalars) -> float:
    """Approximate maximizer ``sqrt(n2 / c)`` of the Model-B precision."""
    if scalars.s <= 0.0:
        raise ValidationError("near-optimal weight needs s > 0")
    if scalars.c <= 0.0:
        raise ValidationError(f"overlap c = {scalars.c:.3e} <= 0: outside the small-separation regime")
    return math.sqrt(scalars.n2 / scalars.c)


def near_optimal_rate_model_b(scalars: SuperpositionScalars) -> float:
    """Rate ``sqrt(n2 c)`` predicted at :func:`near_optimal_p_model_b`."""
    near_optimal_p_model_b(scalars)
    return math.sqrt(scalars.n2 * scalars.c)


def near_optimal_weights_model_e(scalars: SuperpositionScalars) -> WeightSpec:
    """In-phase branch weighted by the anti-phase norm: ``p = n2``; gives ``C_E = 1/2``."""
    if scalars.s <= 0.0:
        raise ValidationError("near-optimal weights need s > 0")
    return WeightSpec(p=scalars.n2)


def precision_at(scalars: SuperpositionScalars, model: str, p: float) -> float:
    desc = build_descriptor(model, scalars, WeightSpec(p=float(p)))
    return desc.rate * qfi_rank2(desc).qfi


def golden_section_max(f, a: float, b: float, tol: float = 1e-8, max_iter: int = 500):
    """Golden-section search for a maximum of ``f`` on ``[a, b]``.

    Returns ``(x, f(x), iterations, converged)`` where convergence means the
    final bracket is narrower than ``tol``.
    """
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a > tol and it < max_iter:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        it += 1
    x, fx = (c, fc) if fc >= fd else (d, fd)
    return x, fx, it, b - a <= tol


def _logit_grid(lo: float, hi: float, n: int) -> np.ndarray:
    t = np.linspace(math.log(lo / (1 - lo)), math.log(hi / (1 - hi)), n)
    grid = 1.0 / (1.0 + np.exp(-t))
    grid[0], grid[-1] = lo, hi
    return grid


def _local_maxima(values: np.ndarray) -> int:
    inner = values[1:-1]
    return int(np.sum((inner > values[:-2]) & (inner > values[2:])))


def maximize_precision(
    psf: PsfModel,
    s: float,
    model: str = "E",
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    tol: float = 1e-8,
) -> Optimum:
    """Maximize ``rate(p) * qfi(p)`` over ``p`` in ``bracket`` for Model B or E.

    A logit-spaced prescan locates the peak; if it shows more than one local
    maximum a 1024-point scan replaces it. The interval around the best
    sample is then refined by golden-section search. Deterministic.
    """
    model = model.upper()
    if model not in ("B", "E"):
        raise ValidationError(f"optimizer supports Models B and E, not {model}")
    lo, hi = bracket
    if not 0.0 < lo < hi < 1.0:
        raise ValidationError(f"bracket must satisfy 0 < lo < hi < 1, got {bracket}")
    if s <= 0.0:
        raise ValidationError("optimizer needs s > 0")
    sc = build_scalars(psf, s)

    def f(p):
        return precision_at(sc, model, p)

    grid = _logit_grid(lo, hi, PRESCAN_POINTS)
    values = np.array([f(p) for p in grid])
    fallback = _local_maxima(values) > 1
    if fallback:
        grid = _logit_grid(lo, hi, FALLBACK_POINTS)
        values = np.array([f(p) for p in grid])
    i = int(np.argmax(values))
    a, b = float(grid[max(i - 1, 0)]), float(grid[min(i + 1, grid.size - 1)])
    p_star, value, iterations, converged = golden_section_max(f, a, b, tol=tol)
    if values[i] > value:
        p_star, value = float(grid[i]), float(values[i])

    desc = build_descriptor(model, sc, WeightSpec(p=p_star))
    rep = qfi_rank2(desc)
    return Optimum(
        model=model,
        s=float(s),
        p_star=float(p_star),
        value=float(value),
        rate_at_opt=desc.rate,
        qfi_at_opt=rep.qfi,
        value_lambda=desc.rate * rep.f_lambda,
        base_rate_at_opt=desc.base_rate,
        iterations=iterations,
        converged=bool(converged),
        fallback=fallback,
    )
