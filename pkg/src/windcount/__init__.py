"""Counting polynomial roots in convex regions from quadrant labels of sampled values."""

from .contour import (Circle, ConvexPolygon, IsolationSpec, Rectangle, SamplingPlan,
                      build_sampling_plan, derivative_bound, parametrize, region_from_json)
from .polynomial import (BlackBoxEvaluator, Polynomial, affine_substitute, derivative,
                         evaluate, fft_eval_unit_circle)
from .winding import (WindingOutcome, count_roots, count_roots_adaptive, lift_step,
                      quadrant_label)

__all__ = [
    "BlackBoxEvaluator", "Circle", "ConvexPolygon", "IsolationSpec", "Polynomial",
    "Rectangle", "SamplingPlan", "WindingOutcome", "affine_substitute",
    "build_sampling_plan", "count_roots", "count_roots_adaptive", "derivative",
    "derivative_bound", "evaluate", "fft_eval_unit_circle", "lift_step",
    "parametrize", "quadrant_label", "region_from_json",
]
