"""Fisher-information functionals for rank-2 partially coherent states.

Units are sigma^-2 for every Fisher quantity. "Precision" always means the
rate-normalized ``rate * qfi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ContractError, DegenerateChannelError, IndeterminateDivergenceError, ValidationError
from .models import RankTwoDescriptor
from .superposition import EPS_RANK, SuperpositionScalars, qfi_pure

__all__ = [
    "EPS_SLOPE",
    "FisherReport",
    "qfi_rank2",
    "fisher_lambda",
    "fisher_total_unnormalized",
    "fisher_norm_channel",
    "sorting_separation",
    "sorting_centroid",
    "cr_bound",
]

EPS_SLOPE = 1e-9


@dataclass(frozen=True)
class FisherReport:
    """QFI of a rank-2 state split into its eigenvalue and channel parts.

    ``f_channels[i]`` is ``lambda_i * F_i`` with ``F_i`` the pure-state QFI
    of channel ``i+1``; ``qfi = f_lambda + sum(f_channels)``.
    """

    model: str
    qfi: float
    f_lambda: float
    f_channels: tuple[float, float]
    rate: float

    @property
    def precision(self) -> float:
        return self.rate * self.qfi

    def cr_bound(self, n: int = 1) -> float:
        return cr_bound(self, n)


def _eigen_term(desc: RankTwoDescriptor, i: int) -> float | None:
    lam, dlam = desc.lambdas[i], desc.dlambdas[i]
    if lam > EPS_RANK:
        return dlam**2 / lam
    if abs(dlam) <= EPS_SLOPE:
        return 0.0
    return None


def qfi_rank2(desc: RankTwoDescriptor) -> FisherReport:
    """QFI of the rank-2 state described by ``desc``.

    Channels whose eigenvalue is at or below EPS_RANK are dropped. If such an
    eigenvalue still has a slope above EPS_SLOPE, Models B/E fall back to
    the analytic :func:`fisher_lambda`; other models raise
    IndeterminateDivergenceError.
    """
    sc = desc.scalars
    terms = [_eigen_term(desc, i) for i in (0, 1)]
    if None in terms:
        if desc.model not in ("B", "E"):
            raise IndeterminateDivergenceError(
                f"model {desc.model}: vanishing eigenvalue with slope "
                f"{desc.dlambdas} at s={sc.s}; QFI is unbounded"
            )
        f_lam = fisher_lambda(desc)
    else:
        f_lam = terms[0] + terms[1]

    channels = []
    for i, lam in enumerate(desc.lambdas):
        if lam <= EPS_RANK or sc.norm_sq(i + 1) <= EPS_RANK:
            channels.append(0.0)
        else:
            channels.append(lam * qfi_pure(sc, i + 1))
    return FisherReport(
        model=desc.model,
        qfi=f_lam + channels[0] + channels[1],
        f_lambda=f_lam,
        f_channels=(channels[0], channels[1]),
        rate=desc.rate,
    )


def fisher_lambda(desc: RankTwoDescriptor) -> float:
    """Closed-form eigenvalue-modulation term for the Model-B/E state.

    ``m^2 / (1 - c^2) * p (1-p) / (n2 + c p)^2`` with ``1 - c^2`` written as
    ``4 n1 n2`` to keep it accurate at small separation.
    """
    if desc.model not in ("B", "E"):
        raise ContractError(f"fisher_lambda is defined for Models B and E, not {desc.model}")
    p = desc.weights.p
    sc = desc.scalars
    if not 0.0 < p < 1.0:
        raise ValidationError(f"fisher_lambda needs p in (0, 1), got {p}")
    if sc.s <= 0.0:
        raise ValidationError("fisher_lambda needs s > 0")
    trace = sc.n2 + sc.c * p
    return sc.m**2 / (4.0 * sc.n1 * sc.n2) * p * (1.0 - p) / trace**2


def _require(sc: SuperpositionScalars, channel: int) -> float:
    n = sc.norm_sq(channel)
    if n <= EPS_RANK:
        raise DegenerateChannelError(f"channel {channel} has vanishing norm {n:.3e} at s={sc.s}")
    return n


def fisher_total_unnormalized(scalars: SuperpositionScalars, channel: int) -> float:
    """Full information carried by the unnormalized superposition ``Phi_i``.

    ``4 ||dPhi||^2 + (<Phi|dPhi> - <dPhi|Phi>)^2 / ||Phi||^2``; the square of
    the purely imaginary difference is negative.
    """
    n = _require(scalars, channel)
    o = scalars.overlap_deriv(channel)
    diff = o - o.conjugate()
    return 4.0 * scalars.deriv_norm_sq(channel) + (diff * diff).real / n


def fisher_norm_channel(scalars: SuperpositionScalars, channel: int) -> float:
    """Classical Fisher information of the channel strength ``||Phi_i||^2``."""
    n = _require(scalars, channel)
    return scalars.norm_slope(channel) ** 2 / n


def sorting_separation(scalars: SuperpositionScalars) -> tuple[float, float]:
    """Separation information carried by the in-phase and anti-phase channels."""
    return scalars.p2_22, scalars.p2_11


def sorting_centroid(scalars: SuperpositionScalars) -> tuple[float, float]:
    """Centroid information of the in-phase and anti-phase channels."""
    return 4.0 * scalars.p2_11, 4.0 * scalars.p2_22


def cr_bound(report: FisherReport, n: int = 1) -> float:
    """Cramer-Rao variance bound ``1 / (n * rate * qfi)``; ``inf`` at zero precision."""
    if n < 1:
        raise ValidationError(f"repetition count must be >= 1, got {n}")
    h = n * report.precision
    return math.inf if h <= 0.0 else 1.0 / h
