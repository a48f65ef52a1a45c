"""Scalar attributes of the in-phase and anti-phase superpositions.

``Phi1 = (Psi+ + Psi-)/2`` and ``Phi2 = (Psi+ - Psi-)/2`` with
``Psi+- = exp(+-isP/2) Psi``. Their separation derivatives are
``dPhi1 = (iP/2) Phi2`` and ``dPhi2 = (iP/2) Phi1``, so every matrix element
needed downstream reduces to the moment kernels of the profile.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateChannelError, ValidationError
from .psf import PsfModel, check_real_overlap, moment_kernels

__all__ = ["EPS_RANK", "SuperpositionScalars", "build_scalars", "qfi_pure"]

EPS_RANK = 1e-12


@dataclass(frozen=True)
class SuperpositionScalars:
    """Norms, norm slopes and momentum matrix elements of Phi1, Phi2 at ``s``.

    ``cross_p`` is ``Im <Phi1|P|Phi2>`` (the element itself is purely
    imaginary). ``gram2`` is ``||dPhi2||^2 ||Phi2||^2 - <Phi2|dPhi2>^2``,
    carried separately because it cancels to O(s^6). ``phi`` is kept for
    bookkeeping and is always 0 here.
    """

    s: float
    n1: float
    n2: float
    dn1: float
    dn2: float
    p2_11: float
    p2_22: float
    cross_p: float
    dp2: float
    c: float
    m: float
    gram2: float = 0.0
    phi: float = 0.0

    def norm_sq(self, channel: int) -> float:
        return _pick(channel, self.n1, self.n2)

    def deriv_norm_sq(self, channel: int) -> float:
        """``||dPhi_i||^2``; note the index swap (dPhi1 lives on Phi2)."""
        return _pick(channel, self.p2_22, self.p2_11) / 4.0

    def overlap_deriv(self, channel: int) -> complex:
        """``<Phi_i|dPhi_i>``, real for real-overlap profiles."""
        return complex(_pick(channel, -self.cross_p, self.cross_p) / 2.0)

    def norm_slope(self, channel: int) -> float:
        return _pick(channel, self.dn1, self.dn2)


def _pick(channel, first, second):
    if channel == 1:
        return first
    if channel == 2:
        return second
    raise ValidationError(f"channel must be 1 or 2, got {channel!r}")


def build_scalars(psf: PsfModel, s: float) -> SuperpositionScalars:
    check_real_overlap(psf, s)
    k = moment_kernels(psf, s)
    return SuperpositionScalars(
        s=k.s,
        n1=1.0 - 0.5 * k.omc,
        n2=0.5 * k.omc,
        dn1=-0.5 * k.m,
        dn2=0.5 * k.m,
        p2_11=k.dp2 - 0.5 * k.dp2_minus_p2c,
        p2_22=0.5 * k.dp2_minus_p2c,
        cross_p=0.5 * k.m,
        dp2=k.dp2,
        c=k.c,
        m=k.m,
        gram2=0.25 * k.anti_gram,
    )


def qfi_pure(scalars: SuperpositionScalars, channel: int) -> float:
    """QFI of the normalized superposition ``Phi_i / ||Phi_i||``.

    Raises DegenerateChannelError when the channel norm is below EPS_RANK;
    the s -> 0 limit of the anti-phase channel is left to the caller.
    """
    n = scalars.norm_sq(channel)
    if n <= EPS_RANK:
        raise DegenerateChannelError(
            f"channel {channel} has vanishing norm {n:.3e} at s={scalars.s}"
        )
    if channel == 2:
        return 4.0 * scalars.gram2 / n**2
    d = scalars.deriv_norm_sq(channel)
    o = scalars.overlap_deriv(channel)
    return 4.0 * (d * n - abs(o) ** 2) / n**2
