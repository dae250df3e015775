"""Convex boundary curves parametrized over [0, 1] and their sampling plans.

Polygons and rectangles use constant speed (arc length proportional to the
parameter), so the derivative bound ``L`` equals the perimeter exactly and
the breakpoints ``T`` are the vertex parameters. Circles run at constant
speed ``2*pi*radius`` and have no breakpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class ContourError(ValueError):
    """Invalid contour geometry or parameter."""


def _cross(a: complex, b: complex) -> float:
    return a.real * b.imag - a.imag * b.real


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ContourError("circle radius must be positive")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def L(self) -> float:
        return 2 * math.pi * self.radius

    @property
    def T(self) -> tuple[float, ...]:
        return ()

    def points(self, t):
        return self.center + self.radius * np.exp(2j * np.pi * np.asarray(t, dtype=float))

    def velocity(self, t):
        t = np.asarray(t, dtype=float)
        return 2j * np.pi * self.radius * np.exp(2j * np.pi * t)

    def contains(self, z) -> np.ndarray:
        return np.abs(np.asarray(z) - self.center) < self.radius

    def boundary_distance(self, z) -> np.ndarray:
        return np.abs(np.abs(np.asarray(z) - self.center) - self.radius)

    def to_json(self) -> dict:
        return {"disc": {"center": [self.center.real, self.center.imag],
                         "radius": self.radius}}


@dataclass(frozen=True)
class _PolygonBase:
    """Shared constant-speed parametrization for polygons and rectangles."""

    vertices: tuple[complex, ...] = field(init=False, repr=False)
    _breaks: np.ndarray = field(init=False, repr=False, compare=False)
    _edges: np.ndarray = field(init=False, repr=False, compare=False)
    _lengths: np.ndarray = field(init=False, repr=False, compare=False)
    _perimeter: float = field(init=False, repr=False, compare=False)

    def _setup(self, vertices: Sequence[complex]):
        verts = tuple(complex(v) for v in vertices)
        n = len(verts)
        if n < 3:
            raise ContourError("a polygon needs at least three vertices")
        for i in range(n):
            a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
            if _cross(b - a, c - b) <= 0:
                raise ContourError(
                    f"vertices must be strictly convex and counterclockwise (fails at vertex {i})")
        v = np.array(verts, dtype=np.complex128)
        edges = np.roll(v, -1) - v
        lengths = np.abs(edges)
        perimeter = float(lengths.sum())
        breaks = np.concatenate(([0.0], np.cumsum(lengths)[:-1] / perimeter))
        # the winding test above only checks local turns; a star polygon passes it
        turning = sum(math.atan2(_cross(edges[i - 1], edges[i]),
                                 (edges[i - 1] * np.conj(edges[i])).real)
                      for i in range(n))
        if abs(turning - 2 * math.pi) > 1e-9:
            raise ContourError("polygon is not simple (total turning is not 2*pi)")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "_breaks", breaks)
        object.__setattr__(self, "_edges", edges)
        object.__setattr__(self, "_lengths", lengths)
        object.__setattr__(self, "_perimeter", perimeter)

    @property
    def L(self) -> float:
        return self._perimeter

    @property
    def T(self) -> tuple[float, ...]:
        return tuple(float(b) for b in self._breaks)

    def _edge_index(self, t: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._breaks, t, side="right") - 1
        return np.clip(idx, 0, len(self.vertices) - 1)

    def points(self, t):
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t) % 1.0
        idx = self._edge_index(t)
        start = np.array(self.vertices, dtype=np.complex128)[idx]
        frac = (t - self._breaks[idx]) * self._perimeter / self._lengths[idx]
        pts = start + frac * self._edges[idx]
        at_vertex = t == self._breaks[idx]
        pts[at_vertex] = start[at_vertex]
        return pts[0] if scalar else pts

    def velocity(self, t):
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t) % 1.0
        idx = self._edge_index(t)
        vel = self._edges[idx] / self._lengths[idx] * self._perimeter
        vel = vel.astype(np.complex128)
        vel[t == self._breaks[idx]] = np.nan
        return vel[0] if scalar else vel

    def contains(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        inside = np.ones(z.shape, dtype=bool)
        for a, e in zip(self.vertices, self._edges):
            w = z - a
            inside &= (e.real * w.imag - e.imag * w.real) > 0
        return inside

    def boundary_distance(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        best = np.full(z.shape, np.inf)
        for a, e, ln in zip(self.vertices, self._edges, self._lengths):
            s = np.clip(((z - a) * np.conj(e)).real / (ln * ln), 0.0, 1.0)
            best = np.minimum(best, np.abs(z - (a + s * e)))
        return best


@dataclass(frozen=True)
class ConvexPolygon(_PolygonBase):
    """Convex polygon with counterclockwise vertices; ``t = 0`` at the first vertex."""

    corners: tuple[complex, ...] = ()

    def __post_init__(self):
        self._setup(self.corners)
        object.__setattr__(self, "corners", self.vertices)

    def to_json(self) -> dict:
        return {"polygon": [[v.real, v.imag] for v in self.vertices]}


@dataclass(frozen=True)
class Rectangle(_PolygonBase):
    """Axis-aligned rectangle; ``t = 0`` at ``corner_min``, traversed counterclockwise."""

    corner_min: complex = 0j
    corner_max: complex = 1 + 1j

    def __post_init__(self):
        lo, hi = complex(self.corner_min), complex(self.corner_max)
        if not (hi.real > lo.real and hi.imag > lo.imag):
            raise ContourError("rectangle corner_max must exceed corner_min in both coordinates")
        object.__setattr__(self, "corner_min", lo)
        object.__setattr__(self, "corner_max", hi)
        self._setup([lo, complex(hi.real, lo.imag), hi, complex(lo.real, hi.imag)])

    @classmethod
    def square(cls, center: complex, half_width: float) -> "Rectangle":
        d = complex(half_width, half_width)
        return cls(center - d, center + d)

    @property
    def center(self) -> complex:
        return (self.corner_min + self.corner_max) / 2

    def to_json(self) -> dict:
        lo, hi = self.corner_min, self.corner_max
        return {"box": {"min": [lo.real, lo.imag], "max": [hi.real, hi.imag]}}


Contour = Circle | ConvexPolygon | Rectangle


def parametrize(c: Contour, t: float) -> tuple[complex, complex | None]:
    """Point and velocity of ``c`` at ``t``; velocity is None at a breakpoint."""
    if not 0.0 <= t <= 1.0:
        raise ContourError(f"parameter {t} outside [0, 1]")
    point = complex(c.points(t))
    vel = complex(c.velocity(t))
    if math.isnan(vel.real):
        return point, None
    return point, vel


def derivative_bound(c: Contour) -> float:
    return c.L


@dataclass(frozen=True)
class IsolationSpec:
    """Lower bound ``r`` on ``min |p(gamma(t))|`` and whether it was supplied
    by the caller (certified) or estimated."""

    r: float
    certified: bool = True

    def __post_init__(self):
        if not (self.r > 0 and math.isfinite(self.r)):
            raise ValueError("isolation r must be a positive finite number")


@dataclass(frozen=True)
class SamplingPlan:
    """Sample parameters ``t_0 = 0 < t_1 < ... < t_N < 1``.

    Stored piecewise: smooth piece ``i`` spans ``[bounds[i], bounds[i+1])``
    and holds ``counts[i]`` uniformly spaced samples starting at its left end,
    so every breakpoint is a sample. ``params`` materializes the whole list;
    :meth:`chunks` streams it for very large plans.
    """

    bounds: tuple[float, ...]
    counts: tuple[int, ...]
    step_bound: float

    @property
    def N(self) -> int:
        return sum(self.counts) - 1

    @property
    def size(self) -> int:
        return sum(self.counts)

    @property
    def params(self) -> np.ndarray:
        return np.concatenate([c for _, c in self.chunks(self.size or 1)])

    def chunks(self, size: int):
        """Yield ``(offset, params)`` blocks of at most ``size`` parameters."""
        offset = 0
        for a, b, k in zip(self.bounds[:-1], self.bounds[1:], self.counts):
            for j0 in range(0, k, size):
                j = np.arange(j0, min(k, j0 + size))
                yield offset + j0, a + (b - a) * j / k
            offset += k

    def max_gap(self) -> float:
        """Largest consecutive gap, including the wrap from ``t_N`` to ``t_0 + 1``."""
        worst = 0.0
        prev = None
        for _, block in self.chunks(1 << 20):
            if prev is not None:
                worst = max(worst, block[0] - prev)
            if block.size > 1:
                worst = max(worst, float(np.diff(block).max()))
            prev = block[-1]
        return max(worst, 1.0 + self.bounds[0] - prev)


def step_bound(L: float, degree: int, r: float) -> float:
    return math.pi * r / (12 * degree * L)


def minimum_sample_count(L: float, degree: int, r: float, n_breaks: int) -> int:
    """``ceil(12 d L / (pi r)) + |T|``."""
    return math.ceil(12 * degree * L / (math.pi * r)) + n_breaks


def build_sampling_plan(c: Contour, degree: int, spec: IsolationSpec,
                        power_of_two: bool = False) -> SamplingPlan:
    """Sample parameters obeying the spacing rule ``t_i - t_{i-1} <= pi r / (12 d L)``.

    Each smooth piece between consecutive breakpoints is split uniformly into
    ``ceil(piece_length / step)`` intervals, so every breakpoint is a sample.
    If the resulting count is below ``ceil(12dL/(pi r)) + |T|`` the pieces with
    the widest spacing get extra intervals. With ``power_of_two`` (circles only)
    the plan is the ``2**h`` uniform grid, ``2**h`` the smallest power of two
    reaching that count and also at least ``degree + 1``, so that a size
    ``2**h`` transform of the polynomial samples exactly this grid.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    if not spec.r > 0:
        raise ValueError("r must be positive")
    L = derivative_bound(c)
    step = step_bound(L, degree, spec.r)
    breaks = list(c.T)
    n_min = minimum_sample_count(L, degree, spec.r, len(breaks))

    if power_of_two:
        if breaks:
            raise ContourError("power-of-two plans are only defined for circles")
        size = max(1 << n_min.bit_length(), 1 << degree.bit_length())
        return SamplingPlan((0.0, 1.0), (size,), step)

    bounds = (breaks or [0.0]) + [1.0]
    lengths = np.diff(bounds)
    counts = np.maximum(1, np.ceil(lengths / step).astype(np.int64))
    for i in range(counts.size):
        while lengths[i] / counts[i] > step:
            counts[i] += 1
    deficit = n_min + 1 - int(counts.sum())
    while deficit > 0:
        i = int(np.argmax(lengths / counts))
        counts[i] += 1
        deficit -= 1
    plan = SamplingPlan(tuple(bounds), tuple(int(k) for k in counts), step)
    # rounding in the uniform grid can push a gap a few ulps over the bound
    while plan.max_gap() > step:
        counts = counts + np.ceil(counts * 1e-6).astype(np.int64)
        plan = SamplingPlan(tuple(bounds), tuple(int(k) for k in counts), step)
    return plan


def max_gap(params: np.ndarray) -> float:
    """Largest consecutive gap including the wrap from ``t_N`` back to ``t_0``."""
    closed = np.append(params, 1.0 + params[0])
    return float(np.diff(closed).max())


def region_from_json(obj: dict) -> Contour:
    """Parse ``{"disc": ...}``, ``{"box": ...}`` or ``{"polygon": [...]}``."""
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ContourError("region must be an object with exactly one of disc, box, polygon")
    (kind, body), = obj.items()
    try:
        if kind == "disc":
            cx, cy = body["center"]
            return Circle(complex(cx, cy), float(body["radius"]))
        if kind == "box":
            x0, y0 = body["min"]
            x1, y1 = body["max"]
            return Rectangle(complex(x0, y0), complex(x1, y1))
        if kind == "polygon":
            return ConvexPolygon(tuple(complex(x, y) for x, y in body))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ContourError):
            raise
        raise ContourError(f"region.{kind}: malformed ({exc})") from None
    raise ContourError(f"region: unknown shape {kind!r}")
