"""Grid maximisation over polar regions with one local refinement pass."""
from __future__ import annotations

import numpy as np

from .errors import NumericError

DEFAULT_SUP_GRID = (256, 512)


def polar_sup(func, r_lo, r_hi, n_r=256, n_theta=512, refine=True, zooms=5):
    """Approximate ``max |func|`` over ``r_lo <= |z| <= r_hi``.

    ``func`` maps a complex array to a nonnegative real array.  Returns
    ``(value, argmax_point)``.  Refinement zooms ``zooms`` times on a 17x17
    patch around the running argmax, shrinking the patch 8x each time; all
    samples stay inside the radial bounds, so the result never exceeds the
    true supremum.
    """
    radii = np.linspace(r_lo, r_hi, n_r)
    thetas = 2 * np.pi * np.arange(n_theta) / n_theta
    z = radii[:, None] * np.exp(1j * thetas)[None, :]
    vals = np.asarray(func(z), dtype=float)
    if not np.all(np.isfinite(vals)):
        k = np.argwhere(~np.isfinite(vals))[0]
        raise NumericError(f"non-finite value at z={z[tuple(k)]}")
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best, best_z = float(vals[i, j]), complex(z[i, j])
    if not refine or best == 0.0:
        return best, best_z

    dr = (r_hi - r_lo) / max(n_r - 1, 1)
    dt = 2 * np.pi / n_theta
    s = np.linspace(-1.0, 1.0, 17)
    r_c, t_c = abs(best_z), np.angle(best_z)
    for _ in range(zooms):
        rr = np.clip(r_c + dr * s, r_lo, r_hi)
        zz = rr[:, None] * np.exp(1j * (t_c + dt * s))[None, :]
        vv = np.asarray(func(zz), dtype=float)
        a, b = np.unravel_index(int(np.argmax(vv)), vv.shape)
        if vv[a, b] > best:
            best, best_z = float(vv[a, b]), complex(zz[a, b])
            r_c, t_c = abs(best_z), np.angle(best_z)
        dr /= 8
        dt /= 8
    return best, best_z


def power_sum_sup_batch(C, exps, weight, r_lo, r_hi, n_r=128, n_theta=256, zooms=4, patch=17):
    """Column-wise ``max weight(|z|) * |sum_k C[k, b] z**exps[k]|`` over an annulus sector grid.

    ``C`` has shape ``(K, B)``: one coefficient column per function.  After the
    coarse grid each column is refined by ``zooms`` successive ``patch x patch``
    zooms centred on its running argmax; all points stay in ``[r_lo, r_hi]``.
    Returns an array of ``B`` suprema.
    """
    C = np.asarray(C, dtype=complex)
    exps = np.asarray(exps)
    radii = np.linspace(r_lo, r_hi, n_r)
    thetas = 2 * np.pi * np.arange(n_theta) / n_theta
    z = (radii[:, None] * np.exp(1j * thetas)[None, :]).ravel()
    V = z[:, None] ** exps[None, :]
    vals = weight(np.abs(z))[:, None] * np.abs(V @ C)
    if not np.all(np.isfinite(vals)):
        raise NumericError("non-finite value on the sup grid")
    k = np.argmax(vals, axis=0)
    best = vals[k, np.arange(C.shape[1])]
    r_c, t_c = np.abs(z[k]), np.angle(z[k])
    dr = (r_hi - r_lo) / max(n_r - 1, 1)
    dt = 2 * np.pi / n_theta
    s = np.linspace(-1.0, 1.0, patch)
    for _ in range(zooms):
        rr = np.clip(r_c[:, None] + dr * s[None, :], r_lo, r_hi)           # (B, patch)
        tt = t_c[:, None] + dt * s[None, :]
        zp = (rr[:, :, None] * np.exp(1j * tt)[:, None, :]).reshape(C.shape[1], -1)  # (B, P)
        Vp = zp[:, :, None] ** exps[None, None, :]                          # (B, P, K)
        vp = weight(np.abs(zp)) * np.abs(np.einsum("bpk,kb->bp", Vp, C))
        j = np.argmax(vp, axis=1)
        cand = vp[np.arange(C.shape[1]), j]
        better = cand > best
        zj = zp[np.arange(C.shape[1]), j]
        best = np.where(better, cand, best)
        r_c = np.where(better, np.abs(zj), r_c)
        t_c = np.where(better, np.angle(zj), t_c)
        dr *= 2.0 / (patch - 1)
        dt *= 2.0 / (patch - 1)
    return best
