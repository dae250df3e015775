"""Quadtree root isolation driven by boundary winding counts.

Every box is counted on its boundary square. Boxes with count zero are
discarded, the rest are split into four congruent squares until they are
narrower than the target width. A split is only accepted when the four child
counts add up to the parent count; otherwise the parent is reported as
suspect instead of guessing.

The root square is the initial box inflated by a margin of 1/32 of its
width and nudged off-center by a fixed irrational fraction of that margin.
The grid lines of the quadtree then avoid "round" coordinates such as 0 or
k/10, where a root would sit exactly on a shared edge.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .contour import Rectangle
from .oracle import min_modulus_search
from .polynomial import BlackBoxEvaluator, Polynomial
from .winding import DEFAULT_MAX_SAMPLES, count_roots_adaptive

EXCLUDED = "excluded"
ISOLATED = "isolated"
UNDECIDED = "undecided"
SUSPECT = "suspect"

MARGIN = 1 / 32
_NUDGE = complex(math.sqrt(5) - 2, math.sqrt(2) - 1)
GUESS_SAMPLES = 64
GUESS_ROUNDS = 24


@dataclass
class IsolationBox:
    center: complex
    half_width: float
    count: int | None = None
    status: str = UNDECIDED
    depth: int = 0
    inflated: bool = False

    @property
    def width(self) -> float:
        return 2 * self.half_width

    def rectangle(self) -> Rectangle:
        return Rectangle.square(self.center, self.half_width)

    def contains(self, z: complex) -> bool:
        d = z - self.center
        return abs(d.real) <= self.half_width and abs(d.imag) <= self.half_width

    def children(self) -> list["IsolationBox"]:
        q = self.half_width / 2
        return [IsolationBox(self.center + complex(sx * q, sy * q), q, depth=self.depth + 1)
                for sy in (-1, 1) for sx in (-1, 1)]

    def to_json(self) -> dict:
        return {"center": [self.center.real, self.center.imag],
                "half_width": self.half_width, "count": self.count}


@dataclass
class SplitRecord:
    parent: IsolationBox
    children: list[IsolationBox]


@dataclass
class IsolationReport:
    isolated_boxes: list[IsolationBox]
    suspect_boxes: list[IsolationBox]
    root_box: IsolationBox
    splits: list[SplitRecord] = field(default_factory=list)
    excluded: int = 0
    evaluations_used: int = 0
    max_depth_reached: int = 0
    note: str = ("counts come from adaptively estimated isolation bounds; every "
                 "detected assumption breach is surfaced as a suspect box")

    @property
    def total_count_check(self) -> int:
        return sum(b.count or 0 for b in self.isolated_boxes + self.suspect_boxes)

    def to_json(self) -> dict:
        return {
            "isolated": [b.to_json() for b in self.isolated_boxes],
            "suspect": [b.to_json() for b in self.suspect_boxes],
            "evaluations": self.evaluations_used,
        }


class _Counter:
    def __init__(self, p, max_doublings: int, max_samples: int):
        self.p = p
        self.max_doublings = max_doublings
        self.max_samples = max_samples
        self.evaluations = 0

    def count(self, box: IsolationBox, strict: int = 1) -> int | None:
        rect = box.rectangle()
        mm = min_modulus_search(self.p, rect, GUESS_SAMPLES, GUESS_ROUNDS, candidates=4)
        self.evaluations += GUESS_SAMPLES + 4 * (GUESS_ROUNDS + 2) + 2
        if mm.value == 0:
            return None
        # Rescale so |p'| ~ 1 where |p| is smallest on the boundary; the minimum
        # modulus then approximates the distance to the nearest root, and the
        # count itself is unchanged by a constant factor.
        h = 1e-7
        ends = self.p(rect.points(np.array([mm.t - h, mm.t + h]) % 1.0))
        slope = abs(ends[1] - ends[0]) / (2 * h * rect.L)
        scale = 1.0 / slope if slope > 0 else 1.0
        q = _scaled(self.p, scale)
        out = count_roots_adaptive(q, rect, mm.value * scale / strict, self.max_doublings,
                                   max_samples=self.max_samples)
        self.evaluations += out.samples_used
        return out.winding if out.ok else None

    def count_with_retry(self, box: IsolationBox, strict: int = 1) -> bool:
        """Count ``box`` in place, inflating it once by the margin on failure."""
        n = self.count(box, strict)
        if n is None:
            box.half_width += MARGIN * box.width
            box.inflated = True
            n = self.count(box, strict)
        box.count = n
        return n is not None


def _scaled(p, alpha: float):
    if isinstance(p, Polynomial):
        return p.scaled(alpha)
    return BlackBoxEvaluator(lambda z: alpha * p(z), p.degree, vectorized=True)


def _as_square(initial_box) -> tuple[complex, float]:
    if isinstance(initial_box, Rectangle):
        lo, hi = initial_box.corner_min, initial_box.corner_max
        w, h = hi.real - lo.real, hi.imag - lo.imag
        if not math.isclose(w, h, rel_tol=1e-12):
            raise ValueError("initial box must be a square")
        return initial_box.center, w / 2
    center, half_width = initial_box
    if not half_width > 0:
        raise ValueError("initial box half width must be positive")
    return complex(center), float(half_width)


def isolate_roots(p, initial_box, target_width: float, max_depth: int = 30,
                  max_doublings: int = 20,
                  max_samples: int = DEFAULT_MAX_SAMPLES) -> IsolationReport:
    """Breadth-first quadtree isolation of the roots of ``p`` in ``initial_box``.

    ``initial_box`` is a square :class:`Rectangle` or a ``(center, half_width)``
    pair. Boxes are refined until ``width <= target_width``; a box reaching
    that width is reported as isolated with its count (which may exceed one
    for a multiple root or a tight cluster).
    """
    if not target_width > 0:
        raise ValueError("target_width must be positive")
    center, hw = _as_square(initial_box)
    margin = MARGIN * 2 * hw
    root = IsolationBox(center + margin / 2 * _NUDGE, hw + margin)
    counter = _Counter(p, max_doublings, max_samples)
    report = IsolationReport([], [], root)

    if not counter.count_with_retry(root):
        root.status = SUSPECT
        report.suspect_boxes.append(root)
        report.evaluations_used = counter.evaluations
        return report

    queue = deque([root])
    while queue:
        box = queue.popleft()
        report.max_depth_reached = max(report.max_depth_reached, box.depth)
        if box.count == 0:
            box.status = EXCLUDED
            report.excluded += 1
            continue
        if box.width <= target_width:
            box.status = ISOLATED
            report.isolated_boxes.append(box)
            continue
        if box.depth >= max_depth:
            box.status = SUSPECT
            report.suspect_boxes.append(box)
            continue
        children = _split(counter, box)
        if children is None:
            box.status = SUSPECT
            report.suspect_boxes.append(box)
            continue
        report.splits.append(SplitRecord(box, children))
        queue.extend(children)

    report.evaluations_used = counter.evaluations
    return report


def _split(counter: _Counter, box: IsolationBox) -> list[IsolationBox] | None:
    # A second pass with a 16x smaller r guess guards against an undetected
    # aliasing error in one of the children.
    for strict in (1, 16):
        children = box.children()
        if not all(counter.count_with_retry(ch, strict) for ch in children):
            return None
        if sum(ch.count for ch in children) == box.count:
            return children
    return None


def count_conservation_audit(report: IsolationReport, degree: int) -> bool:
    """Every recorded split conserves counts and the leaves add up to the root count."""
    root = report.root_box.count
    if root is None or root > degree:
        return False
    for split in report.splits:
        counts = [ch.count for ch in split.children]
        if any(c is None for c in counts) or sum(counts) != split.parent.count:
            return False
    return report.total_count_check == root
