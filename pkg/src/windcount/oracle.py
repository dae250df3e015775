"""Independent ground truth for validating the counter.

None of this is used on the certified counting path. Roots come from an
Aberth-Ehrlich simultaneous iteration, winding numbers from direct
quadrature of ``(1/2 pi i) * integral p'(z)/p(z) dz``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .contour import Circle, Contour
from .polynomial import Polynomial, coefficient_scale, derivative, evaluate

_EPS = np.finfo(float).eps


class QuadratureResolutionError(ArithmeticError):
    """Quadrature result is not close enough to an integer; use more panels."""

    def __init__(self, value: float, panels: int):
        super().__init__(f"quadrature gave {value:.6f} with {panels} panels per piece")
        self.value = value
        self.panels = panels


@dataclass
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray
    converged: bool
    iterations: int = 0


def _initial_radius(c: np.ndarray) -> float:
    d = c.size - 1
    lead = abs(c[-1])
    mags = np.abs(c[:-1]) / lead
    # Fujiwara-style upper bound and the geometric mean of root moduli
    ks = np.arange(d)
    with np.errstate(divide="ignore"):
        upper = 2 * max((m ** (1.0 / (d - k)) for m, k in zip(mags, ks) if m > 0), default=1.0)
    geo = (abs(c[0]) / lead) ** (1.0 / d) if c[0] != 0 else 0.0
    return geo if geo > 0 else min(upper, 1.0)


def find_all_roots(p: Polynomial, max_iters: int = 500, tol: float = 1e-12,
                   seed: int = 0) -> RootSet:
    """All ``degree`` roots by Aberth-Ehrlich iteration.

    Starts from a circle of radius ``|p_0/p_d|**(1/d)`` with a random phase.
    A root stops moving once its correction is below ``tol * max(1, |z|)`` or
    its residual is within the rounding error of evaluation; ``converged`` is
    true when every root has stopped.
    """
    if p.degree < 1:
        raise ValueError("find_all_roots needs degree >= 1")
    c = p.coeffs
    d = p.degree
    dp = derivative(p)
    rng = np.random.default_rng(seed)
    rad = _initial_radius(c)
    phase = rng.uniform(0, 2 * np.pi)
    z = rad * np.exp(1j * (2 * np.pi * np.arange(d) / d + phase + 0.4))
    z *= 1 + 0.01 * rng.uniform(-1, 1, d)
    active = np.ones(d, dtype=bool)
    it = 0
    for it in range(1, max_iters + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        za = z[idx]
        pv = evaluate(p, za)
        dv = evaluate(dp, za)
        diff = za[:, None] - z[None, :]
        diff[np.arange(idx.size), idx] = 1.0
        inv = 1.0 / diff
        inv[np.arange(idx.size), idx] = 0.0
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pv / dv
            w = ratio / (1 - ratio * s)
        w = np.where(pv == 0, 0, w)
        w = np.where(np.isfinite(w), w, 1e-8 * (1 + np.abs(za)))
        z[idx] = za - w
        done = np.abs(w) < tol * np.maximum(1.0, np.abs(za))
        # residual already at the rounding level of Horner: nothing left to gain
        done |= np.abs(pv) <= 8 * d * _EPS * coefficient_scale(p, za)
        active[idx[done]] = False
    converged = not active.any()
    residuals = np.abs(evaluate(p, z))
    return RootSet(z, residuals, converged, it)


def count_inside(roots: np.ndarray, c: Contour) -> int:
    return int(np.count_nonzero(c.contains(roots)))


def _pieces(c: Contour) -> list[tuple[float, float]]:
    bounds = list(c.T) or [0.0]
    bounds.append(1.0)
    return list(zip(bounds[:-1], bounds[1:]))


def quadrature_winding(p: Polynomial, c: Contour, panels: int = 4096) -> float:
    """Argument-principle integral by composite midpoint rule per smooth piece.

    Raises :class:`QuadratureResolutionError` if the result is more than 0.25
    from the nearest integer.
    """
    if panels < 1:
        raise ValueError("panels must be positive")
    dp = derivative(p)
    total = 0j
    for a, b in _pieces(c):
        h = (b - a) / panels
        for start in range(0, panels, 1 << 18):
            j = np.arange(start, min(panels, start + (1 << 18)))
            t = a + (j + 0.5) * h
            z = c.points(t)
            total += np.sum(evaluate(dp, z) * c.velocity(t) / evaluate(p, z)) * h
    value = float((total / (2j * np.pi)).real)
    if abs(value - round(value)) > 0.25:
        raise QuadratureResolutionError(value, panels)
    return value


def quadrature_winding_adaptive(p: Polynomial, c: Contour, panels: int = 4096,
                                max_panels: int = 1 << 24) -> float:
    """:func:`quadrature_winding`, doubling panels until the result resolves."""
    while True:
        try:
            return quadrature_winding(p, c, panels)
        except QuadratureResolutionError:
            if panels >= max_panels:
                raise
            panels *= 2


@dataclass
class MinModulus:
    value: float
    t: float
    raw_min: float


def min_modulus_search(p, c: Contour, initial_samples: int = 1024,
                       refinement_rounds: int = 60, candidates: int = 8) -> MinModulus:
    """Dense sampling of ``|p(gamma(t))|`` plus golden-section refinement.

    The ``candidates`` smallest local minima of the raw samples are each
    refined inside the bracket formed by their two neighbours.
    """
    if initial_samples < 8:
        raise ValueError("initial_samples must be at least 8")
    t = np.union1d(np.arange(initial_samples) / initial_samples, np.asarray(c.T, dtype=float))
    mod = np.abs(p(c.points(t)))
    best = int(np.argmin(mod))
    raw_min = float(mod[best])
    if raw_min == 0:
        return MinModulus(0.0, float(t[best]), 0.0)
    n = t.size
    left = np.roll(mod, 1)
    right = np.roll(mod, -1)
    local = np.flatnonzero((mod <= left) & (mod <= right))
    local = local[np.argsort(mod[local])][:candidates]
    lo = t[(local - 1) % n].copy()
    hi = t[(local + 1) % n].copy()
    lo[local == 0] -= 1.0
    hi[local == n - 1] += 1.0
    value, t_best = raw_min, float(t[best])
    g = (math.sqrt(5) - 1) / 2
    x1 = hi - g * (hi - lo)
    x2 = lo + g * (hi - lo)
    f1 = np.abs(p(c.points(x1 % 1.0)))
    f2 = np.abs(p(c.points(x2 % 1.0)))
    for _ in range(refinement_rounds):
        take_left = f1 < f2
        hi = np.where(take_left, x2, hi)
        lo = np.where(take_left, lo, x1)
        new_x1 = np.where(take_left, hi - g * (hi - lo), x2)
        new_x2 = np.where(take_left, x1, lo + g * (hi - lo))
        probe = np.where(take_left, new_x1, new_x2)
        fp = np.abs(p(c.points(probe % 1.0)))
        f1, f2 = np.where(take_left, fp, f2), np.where(take_left, f1, fp)
        x1, x2 = new_x1, new_x2
        for xs, fs in ((x1, f1), (x2, f2)):
            k = int(np.argmin(fs))
            if fs[k] < value:
                value, t_best = float(fs[k]), float(xs[k] % 1.0)
        if value == 0:
            break
    return MinModulus(value, t_best, raw_min)


def estimate_min_modulus(p, c: Contour, initial_samples: int = 1024,
                         refinement_rounds: int = 60) -> float:
    """Non-certified estimate of ``min_t |p(gamma(t))|`` (an upper bound on it)."""
    return min_modulus_search(p, c, initial_samples, refinement_rounds).value


@dataclass
class IsolationCheck:
    ok: bool
    indeterminate: bool
    root_distance: float
    min_modulus: float
    witness_root: complex | None = None
    witness_t: float | None = None

    def __bool__(self):
        return self.ok


def check_isolation(p: Polynomial, c: Contour, r: float, roots: RootSet | None = None,
                    samples: int = 4096) -> IsolationCheck:
    """Whether every root is at least ``2r/3`` from the contour and
    ``|p(gamma(t))| >= r`` on a dense refined sample."""
    if roots is None:
        roots = find_all_roots(p)
    mm = min_modulus_search(p, c, samples)
    slack = 1 - 1e-9
    if p.degree == 0:
        ok = mm.value >= r * slack
        return IsolationCheck(ok, False, math.inf, mm.value, None, None if ok else mm.t)
    dist = c.boundary_distance(roots.roots)
    k = int(np.argmin(dist))
    root_ok = dist[k] >= 2 * r / 3 * slack
    mod_ok = mm.value >= r * slack
    return IsolationCheck(
        ok=bool(root_ok and mod_ok and roots.converged),
        indeterminate=not roots.converged,
        root_distance=float(dist[k]),
        min_modulus=mm.value,
        witness_root=None if root_ok else complex(roots.roots[k]),
        witness_t=None if mod_ok else mm.t,
    )


def isolation_normalized(p: Polynomial, c: Contour,
                         roots: RootSet | None = None) -> tuple[Polynomial, float]:
    """Scale ``p`` so its boundary minimum modulus is ``1.5 * delta``.

    ``delta`` is the oracle distance from the nearest root to the contour.
    The scaled polynomial has the same roots and satisfies the isolation
    assumption with ``r`` equal to its boundary minimum modulus, which is
    returned alongside it.
    """
    if roots is None:
        roots = find_all_roots(p)
    delta = float(c.boundary_distance(roots.roots).min())
    m = estimate_min_modulus(p, c, 4096)
    if m == 0 or delta == 0:
        raise ValueError("a root lies on the contour")
    q = p.scaled(1.5 * delta / m)
    return q, estimate_min_modulus(q, c, 4096)
