"""Root counting by quadrant labels of polynomial values along a contour.

The contour is sampled densely enough (relative to the isolation bound
``r``) that consecutive values of ``p(gamma(t))`` can never jump by two
quadrants or wind fully around the origin between samples. Each value gets
a label in {0, 1, 2, 3}; consecutive label differences are lifted to
{-1, 0, +1} and their closed-loop sum is four times the winding number.

Everything after evaluation is small-integer arithmetic. Assumption
breaches that are visible in the samples are reported as violations rather
than silently absorbed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .contour import (Circle, Contour, IsolationSpec, SamplingPlan,
                      build_sampling_plan, minimum_sample_count)
from .polynomial import (Polynomial, affine_substitute, fft_eval_unit_circle,
                         fft_size_for)

QUADRANT_SKIP = "quadrant_skip"
ZERO_VALUE = "zero_value"
DIVISIBILITY_FAILURE = "divisibility_failure"
MODULUS_BELOW_R = "modulus_below_r"
ARG_JUMP = "arg_jump"
SAMPLE_BUDGET = "sample_budget"

# Under the isolation assumptions a single step turns p(gamma) by at most pi/4.
MAX_STEP_ANGLE = math.pi / 4
# Relative slack when comparing sample moduli to a claimed r (rounding only).
R_SLACK = 1e-9
NEAR_AXIS = 1e-12
DEFAULT_MAX_SAMPLES = 1 << 26
_CHUNK = 1 << 18


class QuadrantSkip(ValueError):
    """Adjacent labels two quadrants apart; the sampling was too coarse."""


def quadrant_label(v: complex) -> int:
    """Half-open quadrant of a nonzero complex number.

    0: Re > 0, Im >= 0;  1: Re <= 0, Im > 0;  2: Re < 0, Im <= 0;  3: Re >= 0, Im < 0.
    """
    x, y = v.real, v.imag
    if x > 0 and y >= 0:
        return 0
    if x <= 0 and y > 0:
        return 1
    if x < 0 and y <= 0:
        return 2
    if x >= 0 and y < 0:
        return 3
    raise ValueError("zero has no quadrant label")


def quadrant_labels(values: np.ndarray) -> np.ndarray:
    """Vectorized :func:`quadrant_label`; zero maps to -1."""
    x, y = values.real, values.imag
    labels = np.full(values.shape, -1, dtype=np.int8)
    labels[(x > 0) & (y >= 0)] = 0
    labels[(x <= 0) & (y > 0)] = 1
    labels[(x < 0) & (y <= 0)] = 2
    labels[(x >= 0) & (y < 0)] = 3
    return labels


def lift_step(prev_label: int, next_label: int) -> int:
    """Balanced residue of ``next - prev`` modulo 4."""
    diff = (next_label - prev_label) % 4
    if diff == 2:
        raise QuadrantSkip(f"labels {prev_label} -> {next_label} skip a quadrant")
    return (0, 1, None, -1)[diff]


def lift_steps(labels: np.ndarray) -> np.ndarray:
    """Steps in {-1, 0, +1}; skips and steps touching a zero value count as 0."""
    lab = labels.astype(np.int64)
    diff = np.diff(lab) % 4
    steps = np.where(diff == 3, -1, diff)
    steps[diff == 2] = 0
    bad = (lab[:-1] < 0) | (lab[1:] < 0)
    steps[bad] = 0
    return steps


@dataclass
class WindingOutcome:
    """Result of a counting run plus everything needed to audit it.

    ``labels`` has ``N + 2`` entries: the samples ``t_0 .. t_N`` and the
    closing label at ``t_0`` again. ``violations`` holds ``(index, kind)``
    pairs where ``index`` points into ``labels``.
    """

    winding: int | None
    labels: np.ndarray
    samples_used: int
    violations: list[tuple[int, str]]
    certified: bool
    r: float
    method: str
    near_axis: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    attempts: int = 1

    @property
    def lift(self) -> np.ndarray:
        if self.labels.size == 0:
            return np.zeros(0, dtype=np.int64)
        steps = lift_steps(self.labels)
        return np.concatenate(([int(self.labels[0])], int(self.labels[0]) + np.cumsum(steps)))

    @property
    def N(self) -> int:
        return max(self.labels.size - 2, 0)

    @property
    def ok(self) -> bool:
        return not self.violations

    def violation_kinds(self) -> set[str]:
        return {kind for _, kind in self.violations}

    def summary(self) -> dict:
        return {
            "winding": self.winding,
            "certified": self.certified,
            "N": self.N,
            "samples_used": self.samples_used,
            "r": self.r,
            "method": self.method,
            "attempts": self.attempts,
            "violations": [[i, k] for i, k in self.violations],
            "near_axis": len(self.near_axis),
        }


def _plan_for(p, c: Contour, spec: IsolationSpec) -> SamplingPlan:
    return build_sampling_plan(c, max(p.degree, 1), spec, power_of_two=isinstance(c, Circle))


def _choose_method(p, c: Contour, method: str) -> str:
    if method not in ("auto", "fft", "horner"):
        raise ValueError(f"unknown evaluation method {method!r}")
    fft_ok = isinstance(c, Circle) and isinstance(p, Polynomial)
    if method == "fft" and not fft_ok:
        raise ValueError("the FFT path needs a disc contour and a coefficient polynomial")
    if method == "auto":
        return "fft" if fft_ok else "horner"
    return method


def sample_values(p, c: Contour, plan: SamplingPlan, method: str):
    """Yield ``(offset, values)`` chunks of ``p(gamma(t_i))`` in plan order."""
    if method == "fft":
        n = plan.size
        q = affine_substitute(p, c.center, c.radius)
        h = fft_size_for(n, q.degree)
        values = fft_eval_unit_circle(q, h)
        stride = (1 << h) // n
        yield 0, values[::stride]
        return
    for start, t in plan.chunks(_CHUNK):
        yield start, np.asarray(p(c.points(t)), dtype=np.complex128)


def evaluation_count(p, plan: SamplingPlan, method: str) -> int:
    n = plan.size
    if method == "fft":
        return 1 << fft_size_for(n, p.degree)
    return n


def count_roots(p, c: Contour, spec: IsolationSpec, method: str = "auto",
                max_samples: int = DEFAULT_MAX_SAMPLES) -> WindingOutcome:
    """Winding number of ``p`` along ``c`` with sample spacing derived from ``spec.r``.

    ``p`` is a :class:`~windcount.polynomial.Polynomial` or any evaluator with
    a ``degree`` attribute. Disc contours always use the power-of-two uniform
    plan, so ``method="fft"`` and ``method="horner"`` sample identical points.
    """
    method = _choose_method(p, c, method)
    if p.degree == 0:
        # labels are constant for a nonzero constant; one sample decides
        v = complex(p(complex(c.points(0.0))))
        lab = quadrant_labels(np.array([v, v]))
        viol = [(0, ZERO_VALUE), (1, ZERO_VALUE)] if v == 0 else []
        if v != 0 and abs(v) < spec.r * (1 - R_SLACK):
            viol.append((0, MODULUS_BELOW_R))
        return WindingOutcome(None if v == 0 else 0, lab, 1, viol,
                              spec.certified and not viol, spec.r, "horner")

    predicted = minimum_sample_count(c.L, p.degree, spec.r, len(c.T))
    if predicted + 1 > max_samples:
        return WindingOutcome(None, np.zeros(0, dtype=np.int8), 0,
                              [(-1, SAMPLE_BUDGET)], False, spec.r, method)
    plan = _plan_for(p, c, spec)
    evals = evaluation_count(p, plan, method)

    n = plan.size
    labels = np.empty(n + 1, dtype=np.int8)
    violations: list[tuple[int, str]] = []
    near: list[np.ndarray] = []
    first = prev = None
    r_floor = spec.r * (1 - R_SLACK)
    for start, vals in sample_values(p, c, plan, method):
        labels[start:start + vals.size] = quadrant_labels(vals)
        mod = np.abs(vals)
        for i in np.flatnonzero(mod == 0):
            violations.append((start + int(i), ZERO_VALUE))
        for i in np.flatnonzero((mod < r_floor) & (mod > 0)):
            violations.append((start + int(i), MODULUS_BELOW_R))
        axis = np.minimum(np.abs(vals.real), np.abs(vals.imag)) < NEAR_AXIS * mod
        near.append(start + np.flatnonzero(axis & (mod > 0)))
        if first is None:
            first = vals[0]
        chained = vals if prev is None else np.concatenate(([prev], vals))
        offset = start if prev is None else start - 1
        for i in _arg_jumps(chained):
            violations.append((offset + i + 1, ARG_JUMP))
        prev = vals[-1]
    labels[n] = labels[0]
    for i in _arg_jumps(np.array([prev, first])):
        violations.append((n, ARG_JUMP))

    diffs = np.diff(labels.astype(np.int64)) % 4
    valid = (labels[:-1] >= 0) & (labels[1:] >= 0)
    skips = np.flatnonzero((diffs == 2) & valid) + 1
    skip_set = set(skips.tolist())
    violations = [(i, k) for i, k in violations if not (k == ARG_JUMP and i in skip_set)]
    violations.extend((int(i), QUADRANT_SKIP) for i in skips)

    total = int(lift_steps(labels).sum())
    winding = None
    if total % 4:
        violations.append((n, DIVISIBILITY_FAILURE))
    elif not any(k == ZERO_VALUE for _, k in violations):
        winding = total // 4
    violations.sort()
    return WindingOutcome(
        winding=winding,
        labels=labels,
        samples_used=evals,
        violations=violations,
        certified=spec.certified and not violations,
        r=spec.r,
        method=method,
        near_axis=np.concatenate(near) if near else np.zeros(0, dtype=np.int64),
    )


def _arg_jumps(vals: np.ndarray) -> np.ndarray:
    """Indices ``i`` where the turn from ``vals[i]`` to ``vals[i+1]`` exceeds pi/4."""
    if vals.size < 2:
        return np.zeros(0, dtype=np.int64)
    turn = np.angle(vals[1:] * np.conj(vals[:-1]))
    nz = (vals[1:] != 0) & (vals[:-1] != 0)
    return np.flatnonzero((np.abs(turn) > MAX_STEP_ANGLE) & nz)


RETRYABLE = {QUADRANT_SKIP, ZERO_VALUE, ARG_JUMP, MODULUS_BELOW_R, DIVISIBILITY_FAILURE}


def count_roots_adaptive(p, c: Contour, initial_r_guess: float, max_doublings: int = 20,
                         method: str = "auto",
                         max_samples: int = DEFAULT_MAX_SAMPLES) -> WindingOutcome:
    """Count with a guessed ``r``, halving it after every detectable breach.

    The result is never certified: a guessed ``r`` is not a proven bound.
    When violations survive ``max_doublings`` halvings, or the next plan
    would exceed ``max_samples``, the last outcome is returned with its
    violations intact.
    """
    if not initial_r_guess > 0:
        raise ValueError("initial r guess must be positive")
    if max_doublings < 0:
        raise ValueError("max_doublings must be non-negative")
    r = float(initial_r_guess)
    used = 0
    out = None
    for attempt in range(1, max_doublings + 2):
        out = count_roots(p, c, IsolationSpec(r, certified=False), method, max_samples)
        used += out.samples_used
        kinds = out.violation_kinds()
        if not kinds or not kinds <= RETRYABLE:
            break
        r /= 2
    return replace(out, samples_used=used, attempts=attempt, certified=False)
