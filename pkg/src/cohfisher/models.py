"""Rank-2 descriptors for the partially coherent preparation models.

All five models produce states diagonal in the basis ``Phi1/||Phi1||``,
``Phi2/||Phi2||``; they differ in how the eigenvalues depend on the
separation and in the preparation rate attached to the state.

* ``A``  - normalized superpositions mixed with fixed weights ``p, 1-p``.
* ``B``  - unnormalized superpositions mixed with weights ``p, 1-p`` and
  renormalized by the trace ``C = p n1 + (1-p) n2``.
* ``E``  - the Model-B state prepared as a Model-A mixture with separation
  dependent weights; same state, rate ``(p n1^2 + (1-p) n2^2) / C``.
* ``LS`` - blend of the normalized in-phase state (weight ``p``) with the
  incoherent mixture (weight ``1-p``).
* ``TN`` - mixture with degree of coherence ``gamma``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateChannelError, ValidationError
from .superposition import EPS_RANK, SuperpositionScalars

__all__ = [
    "MODELS",
    "WeightSpec",
    "RankTwoDescriptor",
    "model_a",
    "model_b",
    "model_e",
    "model_ls",
    "model_tn",
    "incoherent_mixture",
    "build_descriptor",
]

MODELS = ("A", "B", "E", "LS", "TN")


@dataclass(frozen=True)
class WeightSpec:
    """Preparation weights: ``p`` for A/B/E/LS, ``gamma_abs``/``gamma_phase`` for TN."""

    p: float | None = None
    gamma_abs: float = 0.0
    gamma_phase: float = 0.0


@dataclass(frozen=True)
class RankTwoDescriptor:
    """Eigenvalues, their slopes and the preparation rate of a rank-2 state.

    ``rate`` is the rate that multiplies the repetition count for this
    preparation (``C_E`` for Model E). ``base_rate`` is the shared A/B rate
    ``C = p n1 + (1-p) n2`` for A, B and E and equals ``rate`` otherwise.
    ``pure`` marks descriptors in which one eigenvalue is exactly zero.
    """

    model: str
    lambda1: float
    lambda2: float
    dlambda1: float
    dlambda2: float
    rate: float
    drate: float
    scalars: SuperpositionScalars
    weights: WeightSpec
    base_rate: float
    pure: bool = False

    @property
    def lambdas(self) -> tuple[float, float]:
        return (self.lambda1, self.lambda2)

    @property
    def dlambdas(self) -> tuple[float, float]:
        return (self.dlambda1, self.dlambda2)


def _as_weights(w) -> WeightSpec:
    return w if isinstance(w, WeightSpec) else WeightSpec(p=float(w))


def _p(w: WeightSpec) -> float:
    p = w.p
    if p is None:
        raise ValidationError("weight p is required for this model")
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"weight p must lie in [0, 1], got {p}")
    return float(p)


def _require_norm(sc: SuperpositionScalars, channel: int) -> None:
    n = sc.norm_sq(channel)
    if n <= EPS_RANK:
        raise DegenerateChannelError(f"channel {channel} has vanishing norm {n:.3e} at s={sc.s}")


def _amplitude_mixture(sc: SuperpositionScalars, w1: float, w2: float):
    """Eigen data of ``(w1 |Phi1><Phi1| + w2 |Phi2><Phi2|) / trace`` for constant w1, w2."""
    trace = w1 * sc.n1 + w2 * sc.n2
    if trace <= 0.0:
        raise DegenerateChannelError(f"zero-trace mixture at s={sc.s}")
    dtrace = w1 * sc.dn1 + w2 * sc.dn2
    l1 = w1 * sc.n1 / trace
    l2 = w2 * sc.n2 / trace
    dl1 = w1 * (sc.dn1 * trace - sc.n1 * dtrace) / trace**2
    dl2 = w2 * (sc.dn2 * trace - sc.n2 * dtrace) / trace**2
    return l1, l2, dl1, dl2, trace, dtrace


def model_a(scalars: SuperpositionScalars, w) -> RankTwoDescriptor:
    w = _as_weights(w)
    p = _p(w)
    if p > 0.0:
        _require_norm(scalars, 1)
    if p < 1.0:
        _require_norm(scalars, 2)
    rate = p * scalars.n1 + (1.0 - p) * scalars.n2
    drate = p * scalars.dn1 + (1.0 - p) * scalars.dn2
    return RankTwoDescriptor(
        model="A",
        lambda1=p,
        lambda2=1.0 - p,
        dlambda1=0.0,
        dlambda2=0.0,
        rate=rate,
        drate=drate,
        scalars=scalars,
        weights=w,
        base_rate=rate,
        pure=p in (0.0, 1.0),
    )


def model_b(scalars: SuperpositionScalars, w) -> RankTwoDescriptor:
    w = _as_weights(w)
    p = _p(w)
    l1, l2, dl1, dl2, rate, drate = _amplitude_mixture(scalars, p, 1.0 - p)
    return RankTwoDescriptor(
        model="B",
        lambda1=l1,
        lambda2=l2,
        dlambda1=dl1,
        dlambda2=dl2,
        rate=rate,
        drate=drate,
        scalars=scalars,
        weights=w,
        base_rate=rate,
        pure=(l1 == 0.0 or l2 == 0.0),
    )


def model_e(scalars: SuperpositionScalars, w) -> RankTwoDescriptor:
    b = model_b(scalars, w)
    p = b.weights.p
    sc = scalars
    c, dc = b.rate, b.drate
    num = p * sc.n1**2 + (1.0 - p) * sc.n2**2
    dnum = 2.0 * (p * sc.n1 * sc.dn1 + (1.0 - p) * sc.n2 * sc.dn2)
    return RankTwoDescriptor(
        model="E",
        lambda1=b.lambda1,
        lambda2=b.lambda2,
        dlambda1=b.dlambda1,
        dlambda2=b.dlambda2,
        rate=num / c,
        drate=(dnum * c - num * dc) / c**2,
        scalars=sc,
        weights=b.weights,
        base_rate=c,
        pure=b.pure,
    )


def model_ls(scalars: SuperpositionScalars, w) -> RankTwoDescriptor:
    """Coherent/incoherent blend.

    The coherent branch is charged the ancilla projection rate ``n1`` and the
    incoherent branch rate 1, so ``C = p n1 + (1-p)``.
    """
    w = _as_weights(w)
    p = _p(w)
    sc = scalars
    _require_norm(sc, 1)
    q = 1.0 - p
    l2 = q * sc.n2
    rate = p * sc.n1 + q
    return RankTwoDescriptor(
        model="LS",
        lambda1=p + q * sc.n1,
        lambda2=l2,
        dlambda1=q * sc.dn1,
        dlambda2=q * sc.dn2,
        rate=rate,
        drate=p * sc.dn1,
        scalars=sc,
        weights=w,
        base_rate=rate,
        pure=(l2 == 0.0),
    )


def model_tn(scalars: SuperpositionScalars, w) -> RankTwoDescriptor:
    """Degree-of-coherence model; weights ``(1+|g|) n1 : (1-|g|) n2``, rate 1.

    Expanding ``|Psi+><Psi+| + |Psi-><Psi-| + g |Psi+><Psi-| + h.c.`` in the
    superposition basis gives ``2(1+|g|)|Phi1><Phi1| + 2(1-|g|)|Phi2><Phi2|``.
    """
    if not isinstance(w, WeightSpec):
        w = WeightSpec(gamma_abs=float(w))
    g = w.gamma_abs
    if not 0.0 <= g <= 1.0:
        raise ValidationError(f"|gamma| must lie in [0, 1], got {g}")
    if w.gamma_phase != 0.0:
        raise ValidationError("closed-form TN model requires gamma_phase = 0")
    l1, l2, dl1, dl2, _, _ = _amplitude_mixture(scalars, 1.0 + g, 1.0 - g)
    return RankTwoDescriptor(
        model="TN",
        lambda1=l1,
        lambda2=l2,
        dlambda1=dl1,
        dlambda2=dl2,
        rate=1.0,
        drate=0.0,
        scalars=scalars,
        weights=w,
        base_rate=1.0,
        pure=(l1 == 0.0 or l2 == 0.0),
    )


def incoherent_mixture(scalars: SuperpositionScalars) -> RankTwoDescriptor:
    """``(|Psi+><Psi+| + |Psi-><Psi-|)/2``, expressed as the LS model at p = 0."""
    return model_ls(scalars, WeightSpec(p=0.0))


_BUILDERS = {"A": model_a, "B": model_b, "E": model_e, "LS": model_ls, "TN": model_tn}


def build_descriptor(model: str, scalars: SuperpositionScalars, w) -> RankTwoDescriptor:
    try:
        builder = _BUILDERS[model.upper()]
    except KeyError:
        raise ValidationError(f"unknown model {model!r}; expected one of {MODELS}") from None
    return builder(scalars, w)
