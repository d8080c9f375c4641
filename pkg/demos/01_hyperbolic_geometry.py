"""
Hyperbolic densities on the disk and the half-plane
===================================================

The disk carries lambda_D(z) = 1/(1-|z|^2), the half-plane lambda_H(w) = 1/Im w.
Pulling lambda_H back along the Cayley map gives exactly twice lambda_D,
while disk automorphisms preserve lambda_D.
"""
import numpy as np

from wpnum import geom

rng = np.random.default_rng(0)
z = 0.9 * np.sqrt(rng.uniform(size=6)) * np.exp(2j * np.pi * rng.uniform(size=6))

# Cayley: i(1+z)/(1-z) sends the disk onto the upper half-plane
pulled = geom.pullback_metric(geom.CAYLEY, geom.HALFPLANE, "disk")
print("Cayley pullback / lambda_D:", np.round(pulled(z) / geom.lambda_disk(z), 14))

# an automorphism moving 0.6i to the origin is an isometry
m = geom.disk_automorphism(0.6j, theta=0.3)
print("automorphism, max change of density:",
      np.max(np.abs(geom.pullback_metric(m, geom.DISK)(z) - geom.lambda_disk(z))))

# chain rule: pulling back twice is pulling back along the composition
h = geom.disk_automorphism(-0.2, 1.0)
once = geom.pullback_metric(m @ h, geom.DISK)
twice = geom.pullback_metric(h, geom.pullback_metric(m, geom.DISK))
print("composition vs nested pullback:", np.max(np.abs(once(z) - twice(z))))
