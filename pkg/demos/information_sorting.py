"""
Where the separation information lives
======================================

Two displaced copies of a Gaussian signal are recombined into an in-phase
superposition Phi1 and an anti-phase superposition Phi2. This script prints
how the separation information splits between the two channels, and how
much of the anti-phase share is carried by the channel strength alone.
"""

import numpy as np

import cohfisher as cf

psf = cf.gaussian(1.0)
print(f"momentum variance (dP)^2 = {cf.p_variance(psf):.4f}  (incoherent limit)")

# The three moment kernels c, m and <P^2 e^{isP}> feed every closed form.
print("\n   s        c          m        p2c")
for s in (0.0, 0.1, 0.5, 1.0, 2.0):
    k = cf.moment_kernels(psf, s)
    print(f"{s:5.2f}  {k.c:9.6f}  {k.m:9.6f}  {k.p2c:9.6f}")

# F1 + F2 is pinned to (dP)^2 at every separation, and as s -> 0 almost all
# of F2 is the classical information of the anti-phase intensity (F_C).
print("\n   s       F1         F2        F_C      F1_cent   F2_cent")
for s in np.array([0.01, 0.05, 0.2, 0.5, 1.0, 2.0, 3.0, 4.0]):
    sc = cf.build_scalars(psf, s)
    f1, f2 = cf.sorting_separation(sc)
    c1, c2 = cf.sorting_centroid(sc)
    fc = cf.fisher_norm_channel(sc, 2)
    print(f"{s:5.2f}  {f1:9.6f}  {f2:9.6f}  {fc:9.6f}  {c1:8.5f}  {c2:8.5f}")

# Centroid information moves to the anti-phase channel once p2c turns negative.
print("\ncentroid crossover where s^2 (dP)^2 = 1:", 1 / np.sqrt(cf.p_variance(psf)))
