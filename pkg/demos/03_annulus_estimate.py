"""
Laurent series on an annulus
============================

On 1 < |z| < r the weighted norm int (1-|z|^2)^2 |f|^2 dA splits over the
Laurent coefficients with weights 2 pi I_n(r).  It controls the weighted sup
over the smaller annulus 1 < |z| < t through the explicit constant C(r, t).
"""
import math

import numpy as np

from wpnum import annulus, quad

r, t = 2.0, 1.5
print("I_n(2) for n = -5..3:", [round(annulus.moment_I(n, r), 6) for n in range(-5, 4)])

# recover coefficients from samples, then compare the two norms
rng = np.random.default_rng(2)
f = annulus.random_laurent(rng, -6, 6, r)
g, residual, ok = annulus.laurent_coeffs(f, -6, 6, radii=(1.3, 1.7))
print("coefficient recovery residual:", residual)
rule = quad.annulus_rule(r, 64, 256)
q = math.sqrt(quad.integrate(rule, lambda z: (1 - abs(z) ** 2) ** 2 * abs(f(z)) ** 2).real)
print(f"series norm {annulus.weighted_norm_series(g, r):.12f}  quadrature {q:.12f}")

# the estimate: sup / norm against C(r,t) and against the best constant
C = annulus.wulf_constant(r, t)
sharp = annulus.wulf_sharp_constant(r, t)
ext = annulus.extremal_laurent(t, -40, 40, r)
print(f"C(r,t) = {C:.4f}, best constant = {sharp:.4f}, extremal ratio = "
      f"{annulus.sup_weighted(ext, t) / annulus.weighted_norm_series(ext, r):.4f}")
