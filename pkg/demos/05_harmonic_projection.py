"""
Projecting onto harmonic Beltrami differentials
===============================================

Moments M_n = int nu zeta^n dA against the monomials decide everything: the
projection keeps (3/pi) binom(n+3,3) conj(M_n) and the rest of nu is
infinitesimally trivial (all moments zero).
"""
import numpy as np

from wpnum import diff, project

rng = np.random.default_rng(5)
harmonic = diff.random_harmonic(rng, 4).scaled(0.05)
trivial = project.angular_moment_free(3, 1, 0.1)
mu = lambda z: harmonic(z) + trivial(z) + 0.1 * (np.abs(z) ** 2 - 0.5)

h, rest, residuals = project.decompose(mu, N=16)
print("harmonic part recovered:", np.max(np.abs(h.coeffs[:5] - harmonic.coeffs)))
print("largest moment of the remainder:", residuals.max())
print("P(P(mu)) - P(mu):", np.max(np.abs(project.p_project(h, 16).coeffs - h.coeffs)))

# the kernel integral itself, evaluated directly at a point
z = 0.5 + 0.3j
g = project.k_project_series(mu, 16)
print("K(mu)(z) direct vs series:",
      abs(project.k_project_direct(mu, z) - (1 - abs(z) ** 2) ** 2 * g(z)))
