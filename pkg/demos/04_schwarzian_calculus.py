"""
Schwarzian derivatives of power series
======================================

Maps are held as Taylor coefficients, so f''/f' and the Schwarzian are exact
series operations.  The Ahlfors-Weill reflection turns a small Schwarzian S
into a Beltrami differential whose L^2 norm is exactly a quarter of ||S||^2.
"""
import numpy as np

from wpnum import quad, schwarz
from wpnum.schwarz import PowerSeries

koebe = PowerSeries([0] + list(range(1, 25)))
print("S(Koebe) first coefficients:", schwarz.schwarzian(koebe).coeffs[:7].real)

# Moebius post-composition leaves the Schwarzian unchanged
f = PowerSeries([0, 1, 0.2, -0.05j, 0.01] + [0] * 20)
g = schwarz.moebius_compose(2, 1, 0.3j, 1, f)
print("Moebius invariance:", np.max(np.abs(schwarz.schwarzian(g).coeffs - schwarz.schwarzian(f).coeffs)))

# build a map from a prescribed Schwarzian and read it back
S = PowerSeries([0.3, -0.2j, 0.1])
h = schwarz.map_from_schwarzian(S, degree=30)
print("recovered S:", np.round(schwarz.schwarzian(h).coeffs[:4], 14))

sup, bound, ratio = schwarz.nehari_tnt_check(S)
print(f"sup (1-|z|^2)^2|S| = {sup:.5f} <= sqrt(12/pi)||S|| = {bound:.5f}")

lhs, rhs, q = schwarz.aw_l2_identity_quadrature(S, quad.disk_rule(64, 256))
print(f"||mu||^2 = {lhs:.12f},  ||S||^2 / 4 = {rhs:.12f}")
