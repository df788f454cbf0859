"""Floating-point checks of the polar action identities on seeded samples.

Samples come from ``numpy.random.default_rng(seed)`` (PCG64): moduli are
log-uniform in ``radius_range`` and arguments uniform in ``[0, 2 pi)``, so a
given ``SampleConfig`` reproduces the same points on every run.

Residuals are relative to a cancellation-free scale: the sum of the absolute
values of all terms entering the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import least_squares

from . import exact
from .families import isolated_g1, isolated_g2
from .mixed import (MixedPolynomial, associated_laurent, evaluate, evaluate_laurent,
                    exponent_matrices, gradients, term_magnitude)
from .weights import WeightSystem, is_full
from .invariants import ZetaFactored

TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class SampleConfig:
    count: int = 500
    seed: int = 0
    tol: float = 1e-9
    radius_range: tuple[float, float] = (0.25, 4.0)

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be positive")
        if not 0 < self.tol <= 1e-2:
            raise ValueError("tol must lie in (0, 1e-2]")
        lo, hi = self.radius_range
        if not 0 < lo <= hi:
            raise ValueError("radius_range must satisfy 0 < low <= high")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


@dataclass(frozen=True)
class CheckReport:
    name: str
    samples_run: int
    max_relative_residual: float
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "samples_run": self.samples_run,
                "max_relative_residual": self.max_relative_residual, "pass": self.passed}


def _report(name: str, residuals: np.ndarray, tol: float) -> CheckReport:
    worst = float(np.max(residuals)) if residuals.size else 0.0
    return CheckReport(name, int(residuals.size), worst, bool(worst <= tol))


def _relative(err, scale):
    err = np.abs(np.asarray(err, dtype=complex))
    scale = np.asarray(scale, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(scale > 0, err / np.where(scale > 0, scale, 1.0),
                       np.where(err == 0, 0.0, np.inf))
    return out


def log_uniform(rng, size, radius_range):
    lo, hi = radius_range
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size=size))


def sample_points(n: int, cfg: SampleConfig, rng=None) -> np.ndarray:
    """``(count, n)`` points of the torus (C*)^n."""
    rng = cfg.rng() if rng is None else rng
    rho = log_uniform(rng, (cfg.count, n), cfg.radius_range)
    theta = rng.uniform(0, TWO_PI, size=(cfg.count, n))
    return rho * np.exp(1j * theta)


# -- actions ---------------------------------------------------------------

def _act(q, p, r, eta, z):
    z = np.asarray(z, dtype=complex)
    r = np.asarray(r, dtype=float)[..., None]
    eta = np.asarray(eta, dtype=complex)[..., None]
    return z * r ** np.asarray(q, dtype=float) * eta ** np.asarray(p)


def polar_action(W: WeightSystem, r: float, eta: complex, z) -> np.ndarray:
    """``(r, eta) o z = (r^q_j eta^p_j z_j)_j``."""
    if r <= 0:
        raise ValueError("r must be positive")
    if abs(abs(eta) - 1) > 1e-12:
        raise ValueError("eta must lie on the unit circle")
    return _act(W.q, W.p, r, eta, z)


def monodromy_map(W: WeightSystem, z, power: int = 1) -> np.ndarray:
    """``h(z) = exp(2 pi i / m_p) o z`` applied ``power`` times."""
    if W.m_p == 0:
        raise ValueError("polar degree is zero")
    turns = np.array([Fraction(p * power, W.m_p) % 1 for p in W.p], dtype=float)
    return np.asarray(z, dtype=complex) * np.exp(1j * TWO_PI * turns)


def project_to_fiber(f: MixedPolynomial, W: WeightSystem, z) -> np.ndarray:
    """Move ``z`` along its orbit onto ``F = f^{-1}(1)``."""
    val = evaluate(f, z)
    if np.any(np.abs(val) == 0):
        raise ValueError("f(z) = 0 has no orbit through F")
    rho, theta = np.abs(val), np.angle(val)
    return _act(W.q, W.p, rho ** (-1.0 / W.m_r), np.exp(-1j * theta / W.m_p), z)


def torus_map_matrix(f: MixedPolynomial) -> list[list[Fraction]]:
    """``lambda = (N - M)^{-1} (N + M)`` for a full simplicial ``f``."""
    if not is_full(f):
        raise ValueError("torus diffeomorphism needs a full simplicial polynomial")
    E = exponent_matrices(f)
    return exact.matmul(exact.inverse(E.minus), E.plus)


def torus_diffeo(f: MixedPolynomial, W: WeightSystem | None, z, inverse: bool = False):
    """Map (C*)^n to (C*)^n with ``fhat(phi(z)) = f(z)``: arguments are kept
    and ``log|w| = lambda log|z|``."""
    lam = torus_map_matrix(f)
    if inverse:
        lam = exact.inverse(lam)
    L = np.array(lam, dtype=float)
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise ValueError("torus diffeomorphism needs nonzero coordinates")
    log_xi = np.log(np.abs(z)) @ L.T
    return np.exp(log_xi + 1j * np.angle(z))


# -- checks ----------------------------------------------------------------

def check_functional_equation(f: MixedPolynomial, W: WeightSystem, cfg: SampleConfig,
                              points=None) -> CheckReport:
    """``f((r, eta) o z) = r^m_r eta^m_p f(z)`` on random ``(r, eta, z)``."""
    rng = cfg.rng()
    z = sample_points(f.n, cfg, rng) if points is None else np.asarray(points, dtype=complex)
    k = len(z)
    r = log_uniform(rng, k, cfg.radius_range)
    eta = np.exp(1j * rng.uniform(0, TWO_PI, size=k))
    lhs = evaluate(f, _act(W.q, W.p, r, eta, z))
    factor = r ** W.m_r * eta ** W.m_p
    rhs = factor * evaluate(f, z)
    scale = r ** W.m_r * term_magnitude(f, z)
    return _report("functional_equation", _relative(lhs - rhs, scale), cfg.tol)


def _euler_residuals(f, weights, degree, sign, z):
    df, dbf = gradients(f)
    D = np.stack([evaluate(g, z) for g in df], axis=-1) if f.n else np.zeros_like(z)
    Db = np.stack([evaluate(g, z) for g in dbf], axis=-1) if f.n else np.zeros_like(z)
    w = np.asarray(weights, dtype=float)
    rhs = ((D * z + sign * Db * np.conj(z)) * w).sum(axis=-1)
    lhs = degree * evaluate(f, z)
    mags = np.abs(f.term_values(z))
    per_term = np.array([abs(degree) + sum(abs(x) * e for x, e in zip(weights, m.sum_exponent))
                         for m in f.monomials], dtype=float)
    return _relative(lhs - rhs, (mags * per_term).sum(axis=-1))


def check_euler_identities(f: MixedPolynomial, W: WeightSystem, cfg: SampleConfig,
                           kind: str = "both") -> CheckReport:
    """Radial ``m_r f = sum q_i (z_i df/dz_i + zbar_i df/dzbar_i)`` and polar
    ``m_p f = sum p_i (z_i df/dz_i - zbar_i df/dzbar_i)``."""
    z = sample_points(f.n, cfg)
    parts = []
    if kind in ("both", "radial"):
        parts.append(_euler_residuals(f, W.q, W.m_r, 1, z))
    if kind in ("both", "polar"):
        parts.append(_euler_residuals(f, W.p, W.m_p, -1, z))
    if not parts:
        raise ValueError(f"unknown kind {kind!r}")
    name = "euler" if kind == "both" else f"euler_{kind}"
    return _report(name, np.maximum.reduce(parts), cfg.tol)


def check_projection(f: MixedPolynomial, W: WeightSystem, cfg: SampleConfig) -> CheckReport:
    z = sample_points(f.n, cfg)
    val = evaluate(f, z)
    z = z[np.abs(val) > 0]
    w = project_to_fiber(f, W, z)
    return _report("projection", _relative(evaluate(f, w) - 1, term_magnitude(f, w)), cfg.tol)


def check_monodromy(f: MixedPolynomial, W: WeightSystem, cfg: SampleConfig) -> CheckReport:
    """``f(h(z)) = f(z)`` and ``h^m_p = id``."""
    z = sample_points(f.n, cfg)
    inv = _relative(evaluate(f, monodromy_map(W, z)) - evaluate(f, z), term_magnitude(f, z))
    w = z
    for _ in range(abs(W.m_p)):
        w = monodromy_map(W, w)
    period = np.abs(w - z).max(axis=-1) / np.abs(z).max(axis=-1)
    return _report("monodromy", np.maximum(inv, period), cfg.tol)


def check_torus_diffeo(f: MixedPolynomial, W: WeightSystem, cfg: SampleConfig) -> CheckReport:
    """``fhat(phi(z)) = f(z)`` and ``phi^{-1}(phi(z)) = z``."""
    z = sample_points(f.n, cfg)
    w = torus_diffeo(f, W, z)
    fhat = associated_laurent(f)
    lhs = np.array([evaluate_laurent(fhat, wk) for wk in w])
    corr = _relative(lhs - evaluate(f, z), term_magnitude(f, z))
    back = torus_diffeo(f, W, w, inverse=True)
    bij = np.abs(back - z).max(axis=-1) / np.abs(z).max(axis=-1)
    return _report("torus_diffeo", np.maximum(corr, bij), cfg.tol)


def run_checks(f: MixedPolynomial, W: WeightSystem, cfg: SampleConfig) -> list[CheckReport]:
    """All identity checks; the torus map only applies to full polynomials."""
    out = [check_functional_equation(f, W, cfg),
           check_euler_identities(f, W, cfg, "radial"),
           check_euler_identities(f, W, cfg, "polar"),
           check_monodromy(f, W, cfg),
           check_projection(f, W, cfg)]
    if is_full(f):
        out.append(check_torus_diffeo(f, W, cfg))
    return out


# -- singular points -------------------------------------------------------

@dataclass(frozen=True)
class SingularityResult:
    singular: bool
    alpha: complex | None
    residual: float


def _gradient_values(f: MixedPolynomial, z):
    df, dbf = gradients(f)
    z = np.asarray(z, dtype=complex)
    return (np.array([evaluate(g, z) for g in df]),
            np.array([evaluate(g, z) for g in dbf]))


def singularity_test(f: MixedPolynomial, z, tol: float = 1e-8) -> SingularityResult:
    """Critical-point test: ``conj(df) = alpha * dbar f`` with ``|alpha| = 1``.

    ``alpha`` is estimated by projection and both the parallelism residual
    (relative to the gradient size) and ``||alpha| - 1|`` must be below
    ``tol``. Vanishing gradients count as singular with ``alpha = 1``.
    """
    D, Db = _gradient_values(f, z)
    cD = np.conj(D)
    size = max(np.linalg.norm(D), np.linalg.norm(Db))
    if size <= 1e-300:
        return SingularityResult(True, 1 + 0j, 0.0)
    nb = np.vdot(Db, Db).real
    if nb == 0:
        return SingularityResult(False, None, 1.0)
    alpha = np.vdot(Db, cD) / nb
    par = np.linalg.norm(cD - alpha * Db) / size
    res = max(par, abs(abs(alpha) - 1))
    return SingularityResult(bool(res <= tol), complex(alpha) if res <= tol else None, float(res))


def _loop_angles(exps: Sequence[int], phi: float, branch: int = 0) -> list[float]:
    """Arguments of a closed chain ``z_{k+1} = alpha z_k^{a_k}`` of unit
    complex numbers with ``alpha = exp(i phi)``."""
    beta, gamma = 0, 1
    for e in exps:
        beta, gamma = 1 + e * beta, e * gamma
    psi0 = (-beta * phi + TWO_PI * branch) / (gamma - 1)
    out = [psi0]
    for e in exps[:-1]:
        out.append(phi + e * out[-1])
    return out


def g1_singular_family(a: Sequence[int], phi: float = 0.3, branch: int = 0):
    """A singular point of ``g1^{-1}(0) - {0}`` from the explicit family, or
    None when the isolatedness criterion holds.

    For ``n`` even with all exponents ``>= 2`` on one parity class, the
    coordinates of the other class vanish and the rest satisfy
    ``z_{c+2} = alpha z_c^{a_c}`` around the cycle.
    """
    if isolated_g1(a):
        return None
    n = len(a)
    big = [i for i, x in enumerate(a) if x >= 2]
    cls = list(range(big[0] % 2, n, 2))
    angles = _loop_angles([a[c] for c in cls], phi, branch)
    z = np.zeros(n, dtype=complex)
    for c, ang in zip(cls, angles):
        z[c] = np.exp(1j * ang)
    return z


def g2_singular_family(a: Sequence[int], phi: float = 0.3, branch: int = 0):
    """Singular point of ``g2^{-1}(0) - {0}`` from the explicit chain
    ``z_{c+2} = alpha z_c^{a_c}``, ``1 = alpha z_{n-1}^{a_{n-1}}`` (1-based
    last link), or None when the criterion says isolated."""
    if isolated_g2(a):
        return None
    n = len(a)
    block = [t for t in range(n - 1) if (t - (n - 1)) % 2 == 0 and a[t] >= 2]
    start = block[-1] + 1 if block else (n - 2) % 2
    cls = list(range(start, n - 1, 2))
    z = np.zeros(n, dtype=complex)
    alpha = np.exp(1j * phi)
    # backward: z_last^a = 1/alpha, then z_c^a_c = z_{c+2}/alpha
    target = 1 / alpha
    for c in reversed(cls):
        root = np.exp(1j * (np.angle(target) + TWO_PI * branch) / a[c]) * abs(target) ** (1 / a[c])
        z[c] = root
        target = root / alpha
    return z


def _weighted_norm(q, z):
    pos = [(j, qj) for j, qj in enumerate(q) if qj > 0]
    if not pos:
        return 1.0
    N = float(np.sqrt(sum(abs(z[j]) ** (2.0 / qj) for j, qj in pos)))
    # a torus inside the fixed locus of the radial action needs no gauge
    return N if N > 0 else 1.0


@dataclass(frozen=True)
class SearchResult:
    witnesses: tuple[np.ndarray, ...]
    best_residual: float
    starts: int


def search_singular_points(f: MixedPolynomial, W: WeightSystem, *, starts: int = 8,
                           seed: int = 0, tol: float = 1e-8,
                           supports: Sequence[Sequence[int]] | None = None) -> SearchResult:
    """Multi-start least-squares search for singular points of ``V - {0}``.

    On each coordinate torus C^{*J} the unknowns are ``log z_J`` and the
    phase of ``alpha``; residuals are ``f`` and ``conj(df) - alpha dbar f``
    divided by powers of a weighted norm so that they are invariant under
    the radial action (each candidate is rescaled onto ``N(z) = 1``, so the
    origin cannot be approached for free).  A
    candidate is kept if its residual is below ``tol`` and it passes
    :func:`singularity_test`.
    """
    if any(q < 0 for q in W.q):
        raise ValueError("search needs semipositive radial weights")
    n = f.n
    rng = np.random.default_rng(seed)
    df, dbf = gradients(f)
    if supports is None:
        supports = [[j for j in range(n) if mask >> j & 1] for mask in range(1, 2 ** n)]
    found = []
    best = np.inf
    total = 0
    for J in supports:
        J = list(J)
        k = len(J)

        def point(x, J=J, k=k):
            z = np.zeros(n, dtype=complex)
            z[J] = np.exp(np.clip(x[:k], -30, 30) + 1j * x[k:2 * k])
            # the residuals are radially invariant, so fix the gauge N(z) = 1
            return _act(W.q, W.p, 1.0 / _weighted_norm(W.q, z), 1.0, z)

        def residual(x, point=point):
            z = point(x)
            alpha = np.exp(1j * x[-1])
            parts = [evaluate(f, z)]
            for j in range(n):
                parts.append(np.conj(evaluate(df[j], z)) - alpha * evaluate(dbf[j], z))
            arr = np.array(parts)
            return np.concatenate([arr.real, arr.imag])

        for _ in range(starts):
            total += 1
            x0 = np.concatenate([rng.normal(0, 0.5, k), rng.uniform(0, TWO_PI, k),
                                 rng.uniform(0, TWO_PI, 1)])
            if all(W.q[j] == 0 for j in J):
                # no radial gauge here: keep moduli in a box so the search
                # cannot slide into the excluded origin
                lo = np.concatenate([np.full(k, -3.0), np.full(k + 1, -np.inf)])
                opts = dict(method="trf", bounds=(lo, -lo))
            else:
                opts = dict(method="lm")
            try:
                sol = least_squares(residual, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15,
                                    max_nfev=400 * (2 * k + 1), **opts)
            except (ValueError, FloatingPointError):
                continue
            if not np.all(np.isfinite(sol.fun)):
                continue
            res = float(np.max(np.abs(sol.fun)))
            best = min(best, res)
            if res <= tol:
                z = point(sol.x)
                if singularity_test(f, z, max(tol, 1e-8) * 1e2).singular:
                    found.append(z)
    return SearchResult(tuple(found), float(best), total)


# -- one variable ----------------------------------------------------------

@dataclass(frozen=True)
class FiberEnumeration:
    points: np.ndarray
    permutation: tuple[int, ...]
    charpoly: ZetaFactored
    zeta: ZetaFactored


def enumerate_fiber_dim1(c: complex, a: int, b: int) -> FiberEnumeration:
    """Solutions of ``c z^a zbar^b = 1`` and the permutation induced by the
    monodromy ``z -> exp(2 pi i/(a-b)) z``."""
    if a <= b or b < 0:
        raise ValueError("need a > b >= 0 (a = b is not polar weighted)")
    c = complex(c)
    if c == 0:
        raise ValueError("c must be nonzero")
    k = a - b
    rho = abs(c) ** (-1.0 / (a + b))
    theta = (-np.angle(c) + TWO_PI * np.arange(k)) / k
    pts = rho * np.exp(1j * theta)
    moved = pts * np.exp(1j * TWO_PI / k)
    perm = tuple(int(np.argmin(np.abs(pts - w))) for w in moved)
    seen, lengths = set(), []
    for s in range(k):
        if s in seen:
            continue
        L, j = 0, s
        while j not in seen:
            seen.add(j)
            j = perm[j]
            L += 1
        lengths.append(L)
    charpoly = ZetaFactored({})
    for L in lengths:
        charpoly = charpoly * ZetaFactored({L: 1})
    return FiberEnumeration(pts, perm, charpoly, charpoly.inverse())
