"""The registered verification suite and its JSON report.

Each check returns one record with the fixed fields
``check, value, bound, tol, pass, anchor, runtime_ms``.  The report is a
pure function of ``(seed, config)``: per-trial random streams come from a
counter-based generator keyed by the global seed, and ``runtime_ms`` is
left ``null`` unless timings are requested.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import annulus, diff, geom, project, quad, schwarz, wp

WORKERS_ENV = "WPNUM_WORKERS"


@dataclass(frozen=True)
class Config:
    nr: int = 64
    ntheta: int = 256
    degree: int = 32
    tol_scale: float = 1.0
    seed: int = 42
    trials: int = 1000

    def __post_init__(self):
        if self.nr < 1 or self.ntheta < 4:
            raise ValueError("need nr >= 1 and ntheta >= 4")
        if self.degree < 8:
            raise ValueError("degree must be >= 8")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not (self.tol_scale >= 0 and math.isfinite(self.tol_scale)):
            raise ValueError("tol_scale must be a finite nonnegative number")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")

    @classmethod
    def from_mapping(cls, data: dict) -> "Config":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**data)

    def rule(self) -> quad.QuadratureRule:
        return quad.disk_rule(self.nr, self.ntheta)

    def tol(self, base: float) -> float:
        return base * self.tol_scale


def trial_rng(seed: int, stream: str, k: int) -> np.random.Generator:
    """Generator for trial ``k`` of ``stream``; reproducible in isolation."""
    sid = zlib.crc32(stream.encode())
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, k, sid]))


@dataclass
class Record:
    check: str
    value: object
    bound: object
    tol: float
    passed: bool
    anchor: str
    runtime_ms: float | None = None

    def to_dict(self) -> dict:
        return {"check": self.check, "value": _jsonable(self.value), "bound": _jsonable(self.bound),
                "tol": self.tol, "pass": bool(self.passed), "anchor": self.anchor,
                "runtime_ms": self.runtime_ms}


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


REGISTRY: list = []


def check(anchor: str):
    def deco(fn):
        REGISTRY.append((fn.__name__.removeprefix("check_"), anchor, fn))
        return fn
    return deco


def _err(name, anchor, value, tol):
    return [Record(name, value, 0.0, tol, bool(value <= tol), anchor)]


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


# ----------------------------------------------------------------- geometry

@check("rho_H(T(z)) |T'(z)| = 2 lambda_D(z)")
def check_cayley_factor_two(cfg):
    rng = trial_rng(cfg.seed, "cayley", 0)
    z = 0.95 * np.sqrt(rng.uniform(size=100)) * np.exp(2j * np.pi * rng.uniform(size=100))
    pulled = geom.pullback_metric(geom.CAYLEY, geom.HALFPLANE, "disk")
    e = _rel(pulled(z), 2 * geom.lambda_disk(z))
    return _err("cayley_factor_two", check_cayley_factor_two.anchor, e, cfg.tol(1e-12))


@check("lambda_D(m(z)) |m'(z)| = lambda_D(z)")
def check_disk_automorphism_invariance(cfg):
    worst = 0.0
    for k in range(20):
        rng = trial_rng(cfg.seed, "automorphism", k)
        a = 0.9 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        m = geom.disk_automorphism(a, rng.uniform(0, 2 * np.pi))
        z = 0.9 * np.sqrt(rng.uniform(size=100)) * np.exp(2j * np.pi * rng.uniform(size=100))
        worst = max(worst, _rel(geom.pullback_metric(m, geom.DISK)(z), geom.lambda_disk(z)))
    return _err("disk_automorphism_invariance", check_disk_automorphism_invariance.anchor,
                worst, cfg.tol(1e-12))


# --------------------------------------------------------------------- diff

def _random_quadratic(rng):
    d = int(rng.integers(0, 11))
    return diff.quadratic_differential(rng.standard_normal(d + 1) + 1j * rng.standard_normal(d + 1))


@check("||B(alpha)||_p = ||alpha||_p, p in {1, 2, inf}")
def check_b_isometry(cfg):
    anchor = check_b_isometry.anchor
    rule = cfg.rule()
    fine, finer = quad.disk_rule(128, 512), quad.disk_rule(192, 768)
    exact_err = cross_err = 0.0
    for k in range(50):
        psi = _random_quadratic(trial_rng(cfg.seed, "b_isometry", k))
        mu = diff.beltrami_from_quadratic(psi)
        mu_sampled = diff.Differential(-1, 1, evaluator=mu)
        # same-representation comparisons: p=2 series formula, p=1 and inf on shared nodes
        n2a, n2b = diff.lp_norm(psi, 2, exact=True), diff.lp_norm(mu, 2, exact=True)
        n1a, n1b = diff.lp_norm(psi, 1, fine), diff.lp_norm(mu, 1, fine)
        nia, nib = diff.lp_norm(psi, math.inf), diff.lp_norm(mu, math.inf)
        exact_err = max(exact_err, _rel(n2b, n2a), _rel(n1b, n1a), _rel(nib, nia))
        # independent evaluator on different rules / grids
        q2 = diff.lp_norm(mu_sampled, 2, rule)
        q1 = diff.lp_norm(mu_sampled, 1, finer)
        qi = diff.lp_norm(mu_sampled, math.inf, grid=(200, 400))
        cross_err = max(cross_err, _rel(q2, n2a), _rel(q1, n1a), _rel(qi, nia))
    return (_err("b_isometry_exact", anchor, exact_err, cfg.tol(1e-10))
            + _err("b_isometry_quadrature", anchor, cross_err, cfg.tol(1e-6)))


@check("sup |mu| <= sqrt(12/pi) ||mu||_2 on H_{-1,1}")
def check_h_subset_omega(cfg):
    mus = [diff.random_harmonic(trial_rng(cfg.seed, "h_omega", k),
                                int(trial_rng(cfg.seed, "h_omega_deg", k).integers(0, 21)))
           for k in range(500)]
    ratios = []
    for i in range(0, len(mus), 50):
        chunk = mus[i : i + 50]
        sups = diff.sup_norm_batch(chunk)
        ratios.extend(sups / (diff.SQRT_12_OVER_PI * np.array([m.l2_norm() for m in chunk])))
    worst = float(np.max(ratios))
    return [Record("h_subset_omega", worst, 1.0, 0.0, worst <= 1.0, check_h_subset_omega.anchor)]


@check("||alpha||_{inf,M} <= D_M ||alpha||_2, M = {|z| <= 0.9}")
def check_interior_bound(cfg):
    # any valid D_M is at most the reproducing-kernel value sqrt(3/pi)
    vals = []
    for deg in (4, 8, 16, 32):
        worst = 0.0
        for k in range(10):
            mu = diff.random_harmonic(trial_rng(cfg.seed, f"interior_{deg}", k), deg)
            worst = max(worst, diff.interior_bound_ratio(mu, 0.9, grid=(64, 128)))
        vals.append(worst)
    cap = math.sqrt(3 / math.pi)
    ok = all(math.isfinite(v) and v <= cap for v in vals)
    return [Record("interior_bound", vals, cap, 0.0, ok, check_interior_bound.anchor)]


# ------------------------------------------------------------------ annulus

@check("int_{A_r} (1-|z|^2)^2 |f|^2 dA = 2 pi sum |a_n|^2 I_n(r)")
def check_annulus_norm_identity(cfg):
    rules = {r: quad.annulus_rule(r, 64, 256) for r in (1.5, 2.0, 4.0)}
    worst = 0.0
    for k in range(100):
        r = (1.5, 2.0, 4.0)[k % 3]
        s = annulus.random_laurent(trial_rng(cfg.seed, "annulus_norm", k), -20, 20, r)
        series = annulus.weighted_norm_series(s, r) ** 2
        q = quad.integrate(rules[r], lambda z: (1 - np.abs(z) ** 2) ** 2 * np.abs(s(z)) ** 2).real
        worst = max(worst, _rel(q, series))
    return _err("annulus_norm_identity", check_annulus_norm_identity.anchor, worst, cfg.tol(1e-8))


def wulf_trial(seed: int, r: float, t: float, k: int) -> annulus.LaurentSeries:
    """Trial ``k`` of the estimate ensemble: iid, balanced or extremal (by ``k % 3``)."""
    rng = trial_rng(seed, f"wulf_{r}_{t}", k)
    lo, hi = -int(rng.integers(0, 21)), int(rng.integers(0, 21))
    kind = k % 3
    if kind == 0:
        return annulus.random_laurent(rng, lo, hi, r)
    if kind == 1:
        return annulus.balanced_laurent(rng, lo, hi, r)
    z0 = np.sqrt(rng.uniform(1, t * t)) * np.exp(2j * np.pi * rng.uniform())
    return annulus.extremal_laurent(z0, lo, hi, r)


def wulf_table(seed: int, r: float, t: float, trials: int, chunk: int = 100):
    """Rows ``(trial, sup, norm, bound, ratio)`` for the annulus estimate."""
    C = annulus.wulf_constant(r, t)
    rows = []
    for start in range(0, trials, chunk):
        ks = range(start, min(start + chunk, trials))
        series = [wulf_trial(seed, r, t, k) for k in ks]
        sups = annulus.sup_weighted_batch(series, t)
        for k, s, sup in zip(ks, series, sups):
            norm = annulus.weighted_norm_series(s, r)
            bound = C * norm
            rows.append((k, float(sup), norm, bound, float(sup) / bound))
    return rows


@check("sup_{A_t} (1-|z|^2)^2 |f| <= C(r,t) (int_{A_r} (1-|z|^2)^2 |f|^2)^{1/2}")
def check_wulf_bound(cfg):
    out = []
    for r, t in ((2.0, 1.5), (4.0, 2.0), (1.5, 1.2)):
        rows = wulf_table(cfg.seed, r, t, cfg.trials)
        worst = max(row[4] for row in rows)
        violations = sum(row[4] > 1 for row in rows)
        out.append(Record(f"wulf_bound_r{r:g}_t{t:g}", worst, 1.0, 0.0, violations == 0,
                          check_wulf_bound.anchor))
    return out


@check("(1-|z|^2)^2 |f(z)| <= [pointwise factor](z) * ||f||, z in A_r")
def check_wulf_pointwise(cfg):
    worst = 0.0
    r_vals = (2.0, 4.0, 1.5)
    for i, r in enumerate(r_vals):
        rad = np.linspace(1.0, r, 66)[1:-1]
        th = 2 * np.pi * np.arange(128) / 128
        z = (rad[:, None] * np.exp(1j * th)[None, :]).ravel()
        fac = annulus.wulf_pointwise_factor(z, r)
        for k in range(30):
            s = wulf_trial(cfg.seed, r, (1 + r) / 2, k)
            lhs = (1 - np.abs(z) ** 2) ** 2 * np.abs(s(z))
            worst = max(worst, float(np.max(lhs / (fac * annulus.weighted_norm_series(s, r)))))
    return [Record("wulf_pointwise", worst, 1.0, 0.0, worst <= 1.0, check_wulf_pointwise.anchor)]


@check("sup_{A_t} / ||f||: explicit C(r,t) versus sharp constant; reflected orientation")
def check_wulf_recorded(cfg):
    vals = {}
    for r, t in ((2.0, 1.5), (4.0, 2.0), (1.5, 1.2)):
        sharp = annulus.wulf_sharp_constant(r, t)
        vals[f"r{r:g}_t{t:g}"] = {"explicit": annulus.wulf_constant(r, t), "sharp": sharp}
    # reflected form 1/r < |z| < 1/t: same functions pulled back by z -> 1/conj(z)
    r, t = 2.0, 1.5
    series = [annulus.reflect(wulf_trial(cfg.seed, r, t, k)) for k in range(300)]
    sups = annulus.sup_weighted_batch(series, 1.0, r_inner=1 / t)
    # norm on the reflected annulus with the same weight (1-|z|^2)^2
    qr = quad.annulus_rule(1.0, 64, 256, r_inner=1 / r)
    ratios = []
    for s, sup in zip(series, sups):
        n = math.sqrt(quad.integrate(qr, lambda z: (1 - np.abs(z) ** 2) ** 2 * np.abs(s(z)) ** 2).real)
        ratios.append(sup / n)
    vals["reflected_r2_t1.5_max_sup_over_norm"] = float(max(ratios))
    ok = all(math.isfinite(v["sharp"]) and v["sharp"] <= v["explicit"]
             for key, v in vals.items() if isinstance(v, dict))
    return [Record("wulf_constants", vals, None, 0.0, ok, check_wulf_recorded.anchor)]


# ------------------------------------------------------------------ schwarz

@check("sup (1-|z|^2)^2 |S| <= sqrt(12/pi) ||S||_{A^2_2}")
def check_schwarzian_sup_l2(cfg):
    anchor = check_schwarzian_sup_l2.anchor
    series = []
    for k in range(200):
        rng = trial_rng(cfg.seed, "nehari", k)
        series.append(schwarz.random_schwarzian(rng, int(rng.integers(0, 21))))
    series += [schwarz.PowerSeries(np.eye(1, n + 1, n)[0]) for n in range(21)]
    sups = np.concatenate([schwarz.weighted_sup_batch(series[i : i + 50])
                           for i in range(0, len(series), 50)])
    norms = np.array([schwarz.bergman_norms(S=s)[1] for s in series])
    ratios = sups / (diff.SQRT_12_OVER_PI * norms)
    worst = float(ratios.max())
    const_err = 0.0
    for c in (1.0, -2.5, 0.3 + 0.4j, 7j):
        _, _, ratio = schwarz.nehari_tnt_check(schwarz.PowerSeries([c]))
        const_err = max(const_err, abs(ratio - 0.5))
    mono_err = max(abs(sups[200 + n] - schwarz.monomial_sup_closed_form(n)) for n in range(21))
    return [Record("schwarzian_sup_l2", worst, 1.0, 0.0, worst <= 1.0, anchor),
            *_err("schwarzian_sup_l2_constant", anchor, const_err, cfg.tol(1e-10)),
            *_err("schwarzian_sup_monomial", anchor, mono_err, cfg.tol(1e-9))]


@check("int |m(1/zbar)|^2/(1-|z|^2)^2 dA = 1/4 int (1-|z|^2)^2 |S|^2 dA")
def check_aw_quarter_identity(cfg):
    anchor = check_aw_quarter_identity.anchor
    rule = cfg.rule()
    worst = 0.0
    gh = []
    for k in range(50):
        rng = trial_rng(cfg.seed, "aw", k)
        S = schwarz.random_schwarzian(rng, int(rng.integers(0, 21)), scale=0.1)
        _, _, ratio = schwarz.aw_l2_identity_quadrature(S, rule)
        _, _, ratio_exact = schwarz.aw_l2_identity_check(S, rule)
        worst = max(worst, abs(ratio - 1), abs(ratio_exact - 1))
        gh.append(schwarz.guohui_ratio(lambda z, S=S: schwarz.ahlfors_weill_dilatation(S, z), S, rule))
    const_err = 0.0
    for c in (1.0, 0.2 - 0.1j, 3j):
        lhs, rhs, _ = schwarz.aw_l2_identity_quadrature(schwarz.PowerSeries([c]), rule)
        target = abs(c) ** 2 * math.pi / 12
        const_err = max(const_err, abs(lhs - target) / target, abs(rhs - target) / target)
    gh_err = float(np.max(np.abs(np.array(gh) - 4)))
    return [*_err("aw_quarter_identity", anchor, worst, cfg.tol(1e-6)),
            *_err("aw_quarter_constant", anchor, const_err, cfg.tol(1e-10)),
            Record("guohui_ratio", [float(min(gh)), float(max(gh))], 4.0, cfg.tol(1e-6),
                   gh_err <= cfg.tol(1e-6), "||S||^2 <= C int |mu|^2/(1-|z|^2)^2 (C recorded)")]


@check("||S(phi)||^2 + |A(phi)(0)|^2 ~ ||A(phi)||^2 near 0")
def check_psi_band(cfg):
    ratios = []
    for k in range(200):
        rng = trial_rng(cfg.seed, "psi_band", k)
        d = int(rng.integers(0, 16))
        A = schwarz.PowerSeries(rng.standard_normal(d + 1) + 1j * rng.standard_normal(d + 1))
        na, _ = schwarz.bergman_norms(A=A)
        A = A * (rng.uniform(0.001, 0.1) / na)
        ratios.append(schwarz.psi_band_ratio(A))
    lo, hi = float(min(ratios)), float(max(ratios))
    ok = 0 < lo <= hi < math.inf
    return [Record("psi_band", [lo, hi], None, 0.0, ok, check_psi_band.anchor)]


@check("S(f) = A' - A^2/2 with A = f''/f'; S(m o f) = S(f)")
def check_schwarzian_calculus(cfg):
    worst = 0.0
    for k in range(20):
        rng = trial_rng(cfg.seed, "schwarz_calc", k)
        S = schwarz.random_schwarzian(rng, 6, scale=0.05)
        f = schwarz.map_from_schwarzian(S, a0=0.1 * rng.standard_normal(), degree=24)
        direct = schwarz.schwarzian(f)
        via_psi, _ = schwarz.psi_map(schwarz.pre_schwarzian(f))
        a, b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        # pole -d/c kept at distance >= 3 from the origin, well off f(D)
        c = 0.3 * np.exp(2j * np.pi * rng.uniform())
        g = schwarz.moebius_compose(a, b, c, 1.0, f)
        moeb = schwarz.schwarzian(g)
        n = 12
        worst = max(worst, float(np.max(np.abs(direct.coeffs[:n] - via_psi.coeffs[:n]))),
                    float(np.max(np.abs(moeb.coeffs[:n] - direct.coeffs[:n]))),
                    float(np.max(np.abs(direct.coeffs[: S.coeffs.size] - S.coeffs))))
    return _err("schwarzian_calculus", check_schwarzian_calculus.anchor, worst, cfg.tol(1e-10))


# ------------------------------------------------------------------ project

@check("K(nu)(z) = 3/pi (1-|z|^2)^2 int (1 - conj(zeta) z)^{-4} conj(nu) dA")
def check_k_reproducing(cfg):
    anchor = check_k_reproducing.anchor
    rule = cfg.rule()
    err = 0.0
    for n in range(9):
        g = project.k_project_series(diff.HarmonicBeltrami(np.eye(1, n + 1, n)[0]), cfg.degree, rule)
        err = max(err, float(np.max(np.abs(g.coeffs - np.eye(1, cfg.degree + 1, n)[0]))))
    rng = trial_rng(cfg.seed, "k_direct", 0)
    z = 0.8 * np.sqrt(rng.uniform(size=25)) * np.exp(2j * np.pi * rng.uniform(size=25))
    direct_err = 0.0
    for k in range(5):
        nu = _mixture(trial_rng(cfg.seed, "k_direct_nu", k))
        g = project.k_project_series(nu, cfg.degree, rule)
        series_vals = (1 - np.abs(z) ** 2) ** 2 * g(z)
        direct_err = max(direct_err, float(np.max(np.abs(project.k_project_direct(nu, z, rule) - series_vals))))
    return [*_err("k_reproducing", anchor, err, cfg.tol(1e-10)),
            *_err("k_direct_vs_series", anchor, direct_err, cfg.tol(1e-6))]


def _mixture(rng, harmonic_degree=8, scale=1.0):
    """Harmonic part plus a random combination of moment-free modes."""
    h = diff.random_harmonic(rng, int(rng.integers(0, harmonic_degree + 1)))
    modes = [project.radial_moment_free(rng.standard_normal(4))]
    for _ in range(3):
        a, b = (int(x) for x in rng.integers(0, 6, size=2))
        if a != b:
            modes.append(project.angular_moment_free(a, b, complex(*rng.standard_normal(2))))

    def nu(z):
        return scale * (h(z) + sum(m(z) for m in modes))

    return nu


@check("P projects onto H_{-1,1} with kernel N: TBD = N + H_{-1,1}")
def check_projection(cfg):
    anchor = check_projection.anchor
    rule = cfg.rule()
    N = cfg.degree
    kernel = float(np.max(np.abs(project.p_project(lambda z: np.abs(z) ** 2 - 0.5, N, rule).coeffs)))
    idem = 0.0
    resid = 0.0
    for k in range(100):
        nu = _mixture(trial_rng(cfg.seed, "projection", k))
        p1 = project.p_project(nu, N, rule)
        p2 = project.p_project(p1, N, rule)
        idem = max(idem, float(np.max(np.abs(p2.coeffs - p1.coeffs)) / np.max(np.abs(p1.coeffs))))
        if k < 20:
            sup = project.beltrami_sup_on_grid(nu)
            mu = (lambda z, nu=nu, s=0.9 / sup: s * nu(z))
            _, _, res = project.decompose(mu, N, rule)
            resid = max(resid, float(res.max()))
    return [*_err("p_kernel", anchor, kernel, cfg.tol(1e-8)),
            *_err("p_idempotence", anchor, idem, cfg.tol(1e-8)),
            *_err("decompose_residual", anchor, resid, cfg.tol(1e-8))]


# ----------------------------------------------------------------------- wp

@check("<mu, nu> = int mu conj(nu) rho^2 dA")
def check_wp_gram(cfg):
    anchor = check_wp_gram.anchor
    rule = cfg.rule()
    G = wp.wp_gram(10, rule)
    n = np.arange(11)
    closed = 2 * np.pi / ((n + 1) * (n + 2) * (n + 3))
    # independent oracle: 2 pi * 1/2 int_0^1 u^n (1-u)^2 du by Gauss-Legendre
    x, w = np.polynomial.legendre.leggauss(40)
    u = 0.5 * (x + 1)
    beta_q = np.array([np.pi * 0.5 * np.sum(w * u**k * (1 - u) ** 2) for k in n])
    diag_err = max(_rel(np.diag(G.matrix).real, closed), _rel(beta_q, closed))
    off = G.matrix - np.diag(np.diag(G.matrix))
    off_err = float(np.max(np.abs(off)))
    herm = float(np.max(np.abs(G.matrix - G.matrix.conj().T)))
    min_eig = G.min_eigenvalue()
    # truncated-disk quadrature against the series formula, degree <= 16
    trunc = quad.disk_rule(64, 256, 0.999)
    tq = 0.0
    for k in range(10):
        rng = trial_rng(cfg.seed, "wp_trunc", k)
        a = diff.random_harmonic(rng, 16)
        b = diff.random_harmonic(rng, 16)
        tq = max(tq, abs(wp.wp_inner(a, b, trunc) - wp.wp_inner(a, b)) / abs(wp.wp_inner(a, b)))
    return [*_err("wp_gram_diagonal", anchor, diag_err, cfg.tol(1e-8)),
            *_err("wp_gram_offdiagonal", anchor, off_err, cfg.tol(1e-10)),
            *_err("wp_gram_hermitian", anchor, herm, cfg.tol(1e-12)),
            Record("wp_gram_psd", min_eig, -1e-10, 0.0, min_eig >= -1e-10, anchor),
            *_err("wp_exact_vs_truncated", anchor, tq, cfg.tol(1e-6))]


@check("(alpha, beta) = <B(alpha), B(beta)>")
def check_wp_transport(cfg):
    rule = cfg.rule()
    worst = 0.0
    cs = 0.0
    for k in range(20):
        rng = trial_rng(cfg.seed, "wp_transport", k)
        al, be = _random_quadratic(rng), _random_quadratic(rng)
        direct = wp.wp_inner_quadratic(al, be, rule)
        via = wp.wp_inner_quadratic_via_beltrami(al, be)
        worst = max(worst, abs(direct - via) / max(abs(via), 1e-300))
        a, b = diff.random_harmonic(rng, 12), diff.random_harmonic(rng, 12)
        cs = max(cs, abs(wp.wp_inner(a, b)) - a.l2_norm() * b.l2_norm())
    return [*_err("wp_transport", check_wp_transport.anchor, worst, cfg.tol(1e-10)),
            Record("wp_cauchy_schwarz", cs, 0.0, 1e-12, cs <= 1e-12, "|<mu,nu>| <= ||mu|| ||nu||")]


for _name, _anchor, _fn in REGISTRY:
    _fn.anchor = _anchor


# ------------------------------------------------------------------- runner

def run_suite(cfg: Config, workers: int | None = None, timings: bool = False) -> dict:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    workers = max(1, workers)

    def run(entry):
        _, _, fn = entry
        t0 = time.perf_counter()
        recs = fn(cfg)
        ms = (time.perf_counter() - t0) * 1e3
        if timings:
            for r in recs:
                r.runtime_ms = round(ms / len(recs), 3)
        return recs

    if workers == 1:
        results = [run(e) for e in REGISTRY]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(run, REGISTRY))   # map keeps registration order
    records = [r.to_dict() for recs in results for r in recs]
    config = asdict(cfg)
    digest = hashlib.sha256(json.dumps(config, sort_keys=True).encode()).hexdigest()
    return {"seed": cfg.seed, "config": config, "inputs_digest": digest,
            "pass": all(r["pass"] for r in records), "checks": records}


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
