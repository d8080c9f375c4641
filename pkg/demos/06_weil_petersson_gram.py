"""
The Weil-Petersson pairing at the base point
============================================

<mu, nu> = int mu conj(nu) lambda^2 dA.  On mu_n = (1-|z|^2)^2 conj(z^n) the
Gram matrix is diagonal with entries 2 pi / ((n+1)(n+2)(n+3)).
"""
import numpy as np

from wpnum import diff, quad, wp

G = wp.wp_gram(5, quad.disk_rule(64, 256))
print("diagonal:", np.round(np.diag(G.matrix).real, 10))
print("closed form:", np.round(diff.harmonic_weight(np.arange(6)), 10))
print("hermitian:", G.is_hermitian(), " psd:", G.is_psd(), " min eigenvalue:", G.min_eigenvalue())

# pairing of quadratic differentials equals the pairing of their Beltrami images
rng = np.random.default_rng(6)
a = diff.quadratic_differential(rng.standard_normal(4) + 1j * rng.standard_normal(4))
b = diff.quadratic_differential(rng.standard_normal(3) + 1j * rng.standard_normal(3))
print("(a, b) =", wp.wp_inner_quadratic(a, b), " <Ba, Bb> =", wp.wp_inner_quadratic_via_beltrami(a, b))
print(G.to_csv().splitlines()[:3])
