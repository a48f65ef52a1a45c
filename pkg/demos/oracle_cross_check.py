"""
Brute-force cross-check of the closed forms
===========================================

The oracle builds every density operator literally on a position grid and
computes the QFI twice: from the spectral solution of the SLD equation and
from the Bures fidelity of neighbouring states. Neither uses the closed
forms, so agreement is a genuine check.
"""

import cohfisher as cf
from cohfisher.oracle import assemble_state, qfi_bures, qfi_spectral
from cohfisher.validation import run_validation

psf = cf.gaussian(1.0)
s = 0.6
cases = [("A", cf.WeightSpec(p=0.3)), ("B", cf.WeightSpec(p=0.3)), ("E", cf.WeightSpec(p=0.3)),
         ("LS", cf.WeightSpec(p=0.4)), ("TN", cf.WeightSpec(gamma_abs=0.5))]

print(f"s = {s}\nmodel   closed form    spectral       Bures     eigenvalues (closed | grid)")
for model, w in cases:
    d = cf.build_descriptor(model, cf.build_scalars(psf, s), w)
    closed = cf.qfi_rank2(d).qfi
    spec = qfi_spectral(psf, model, s, w).qfi
    bures = qfi_bures(psf, model, s, w)
    ev = assemble_state(psf, model, s, w).eigenvalues()[:2]
    print(f"{model:5s} {closed:12.8f} {spec:12.8f} {bures:12.8f}   "
          f"{d.lambda1:.6f} {d.lambda2:.6f} | {ev[0]:.6f} {ev[1]:.6f}")

# The incoherent mixture carries (dP)^2 = 0.25 regardless of separation.
for s in (0.05, 0.5, 2.0):
    print(f"incoherent mixture at s = {s}: {qfi_spectral(psf, 'incoherent', s).qfi:.8f}")

# A non-zero superposition phase is outside the closed forms; only the two
# oracles can be compared there.
w = cf.WeightSpec(p=0.4)
print(f"\nphase 0.3, Model B: spectral {qfi_spectral(psf, 'B', 0.8, w, phi=0.3).qfi:.8f}, "
      f"Bures {qfi_bures(psf, 'B', 0.8, w, phi=0.3):.8f}")

report = run_validation(psf)
print(f"\nseeded suite: {sum(c.passed for c in report.cases)}/{len(report.cases)} cases pass, "
      f"worst spectral error {max(c.rel_spectral for c in report.cases):.1e}")
