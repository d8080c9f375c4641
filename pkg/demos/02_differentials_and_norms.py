"""
Quadratic and Beltrami differentials
====================================

A quadratic differential conj(psi) dzbar^2 becomes a Beltrami differential
after division by lambda^2.  The map preserves every hyperbolic L^p norm, and
on harmonic Beltrami differentials the sup norm is controlled by the L^2 norm.
"""
import math

import numpy as np

from wpnum import diff, quad
from wpnum.errors import DivergenceError

rng = np.random.default_rng(1)
rule = quad.disk_rule(128, 512)

psi = diff.quadratic_differential(rng.standard_normal(5) + 1j * rng.standard_normal(5))
mu = diff.beltrami_from_quadratic(psi)
for p in (1, 2, math.inf):
    a, b = diff.lp_norm(psi, p, rule), diff.lp_norm(mu, p, rule)
    print(f"p={p}: ||psi|| = {a:.12f}   ||B psi|| = {b:.12f}")

# a constant Beltrami differential has infinite L^2 norm; the guard says so
try:
    diff.lp_norm(diff.Differential(-1, 1, coeffs=[0.5], conjugate=True), 2, rule)
except DivergenceError as exc:
    print("constant Beltrami:", exc)

# sup / L^2 on harmonic Beltramis stays below sqrt(12/pi)
ratios = [m.sup_norm(grid=(64, 128)) / m.l2_norm()
          for m in (diff.random_harmonic(rng, d) for d in range(0, 21, 2))]
print(f"max sup/L2 = {max(ratios):.4f}  (bound {diff.SQRT_12_OVER_PI:.4f})")
