import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import PENTAGON, UNIT_CIRCLE, UNIT_SQUARE, isolated_case
from windcount import (BlackBoxEvaluator, Circle, IsolationSpec, Polynomial, Rectangle,
                       count_roots, count_roots_adaptive, lift_step, quadrant_label)
from windcount.oracle import count_inside, estimate_min_modulus, isolation_normalized
from windcount.winding import (ARG_JUMP, DIVISIBILITY_FAILURE, MODULUS_BELOW_R, QUADRANT_SKIP,
                               SAMPLE_BUDGET, ZERO_VALUE, QuadrantSkip, lift_steps,
                               quadrant_labels)


def angle_quadrant(v):
    """Label from the argument in [0, 2pi): quadrant k covers [k pi/2, (k+1) pi/2)."""
    a = math.atan2(v.imag, v.real) % (2 * math.pi)
    return int(a // (math.pi / 2)) % 4


class TestQuadrantLabel:
    @pytest.mark.parametrize("v, expected", [
        (1 + 0j, 0), (1j, 1), (-1 + 0j, 2), (-1j, 3),
        (1 + 1j, 0), (-1 + 1j, 1), (-1 - 1j, 2), (1 - 1j, 3),
    ])
    def test_axes_and_diagonals(self, v, expected):
        assert quadrant_label(v) == expected

    @pytest.mark.parametrize("v, expected", [
        (complex(1.0, -0.0), 0), (complex(-0.0, 1.0), 1),
        (complex(-1.0, -0.0), 2), (complex(-0.0, -1.0), 3),
    ])
    def test_signed_zero_components(self, v, expected):
        assert quadrant_label(v) == expected

    def test_zero_raises(self):
        with pytest.raises(ValueError):
            quadrant_label(0j)
        with pytest.raises(ValueError):
            quadrant_label(complex(-0.0, -0.0))

    @settings(max_examples=500)
    @given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
    def test_matches_argument(self, x, y):
        v = complex(x, y)
        # atan2 rounding is only trusted away from the axes
        if min(abs(x), abs(y)) <= 1e-9 * abs(v):
            return
        assert quadrant_label(v) == angle_quadrant(v)

    def test_vectorized(self):
        rng = np.random.default_rng(0)
        v = rng.normal(size=1000) + 1j * rng.normal(size=1000)
        v[::100] = 0
        lab = quadrant_labels(v)
        for x, k in zip(v, lab):
            assert k == (-1 if x == 0 else quadrant_label(x))


class TestLift:
    @pytest.mark.parametrize("a, b, step", [(0, 1, 1), (3, 0, 1), (1, 0, -1), (0, 3, -1), (2, 2, 0)])
    def test_steps(self, a, b, step):
        assert lift_step(a, b) == step

    @pytest.mark.parametrize("a, b", [(0, 2), (1, 3), (2, 0), (3, 1)])
    def test_skip_raises(self, a, b):
        with pytest.raises(QuadrantSkip):
            lift_step(a, b)

    @settings(max_examples=200)
    @given(st.lists(st.integers(-1, 1), min_size=1, max_size=200), st.integers(0, 3))
    def test_telescopes(self, moves, start):
        labels = np.array([start] + list((start + np.cumsum(moves)) % 4), dtype=np.int8)
        steps = lift_steps(labels)
        assert steps.tolist() == moves
        total = int(steps.sum())
        assert (labels[-1] - labels[0] - total) % 4 == 0


class TestCountRootsBasic:
    def test_identity_on_unit_circle(self):
        out = count_roots(Polynomial([0, 1]), UNIT_CIRCLE, IsolationSpec(1.0))
        assert out.winding == 1 and out.ok and out.certified
        assert out.N >= 24

    def test_two_roots_one_inside(self):
        p = Polynomial.from_roots([0.5, 2.0])
        r = estimate_min_modulus(p, UNIT_CIRCLE)
        out = count_roots(p, UNIT_CIRCLE, IsolationSpec(r))
        assert out.winding == 1 and out.ok

    def test_square_with_root_at_centre(self):
        sq = Rectangle(0j, 1 + 1j)
        p = Polynomial.from_roots([0.5 + 0.5j])
        out = count_roots(p, sq, IsolationSpec(0.5))
        assert out.winding == 1 and out.ok

    def test_no_roots(self):
        p = Polynomial.from_roots([3, -3j])
        out = count_roots(p, UNIT_CIRCLE, IsolationSpec(estimate_min_modulus(p, UNIT_CIRCLE)))
        assert out.winding == 0 and out.ok

    def test_multiplicities(self):
        p = Polynomial.from_roots([0.2] * 3 + [-0.4] * 2)
        r = estimate_min_modulus(p, UNIT_CIRCLE)
        out = count_roots(p, UNIT_CIRCLE, IsolationSpec(r))
        assert out.winding == 5 and out.ok

    def test_constant(self):
        out = count_roots(Polynomial([2 - 1j]), UNIT_CIRCLE, IsolationSpec(1.0))
        assert out.winding == 0 and out.ok and out.samples_used == 1

    def test_labels_closed(self):
        out = count_roots(Polynomial([0, 1]), UNIT_SQUARE, IsolationSpec(1.0))
        assert out.labels[0] == out.labels[-1]
        assert out.labels.size == out.N + 2
        assert out.lift[-1] - out.lift[0] == 4 * out.winding

    def test_black_box(self):
        bb = BlackBoxEvaluator(lambda z: (z - 0.1j) * (z + 3), degree=2, vectorized=True)
        out = count_roots(bb, PENTAGON, IsolationSpec(estimate_min_modulus(bb, PENTAGON)))
        assert out.winding == 1 and out.method == "horner"

    def test_fft_requires_circle(self):
        with pytest.raises(ValueError):
            count_roots(Polynomial([0, 1]), UNIT_SQUARE, IsolationSpec(1.0), method="fft")

    def test_summary_fields(self):
        s = count_roots(Polynomial([0, 1]), UNIT_CIRCLE, IsolationSpec(1.0)).summary()
        assert s["winding"] == 1 and s["violations"] == []


class TestViolations:
    def test_root_on_contour_detected(self):
        # the first sample of the circle plan is exactly z = 1
        p = Polynomial.from_roots([1.0 + 0j])
        out = count_roots(p, UNIT_CIRCLE, IsolationSpec(1.0))
        assert not out.ok
        assert ZERO_VALUE in out.violation_kinds()
        assert out.winding is None

    def test_claimed_r_too_large(self):
        # root at distance 0.01 from the circle but r claimed 0.5
        p = Polynomial.from_roots([0.99])
        out = count_roots(p, UNIT_CIRCLE, IsolationSpec(0.5))
        assert not out.ok and not out.certified
        assert MODULUS_BELOW_R in out.violation_kinds()

    def test_coarse_sampling_flags_turning(self):
        p = Polynomial.from_roots([0.999, -0.999, 0.999j])
        out = count_roots(p, UNIT_CIRCLE, IsolationSpec(10.0))
        kinds = out.violation_kinds()
        assert kinds & {QUADRANT_SKIP, ARG_JUMP, DIVISIBILITY_FAILURE}

    def test_budget(self):
        out = count_roots(Polynomial([0, 1]), UNIT_CIRCLE, IsolationSpec(1e-12), max_samples=1000)
        assert out.violation_kinds() == {SAMPLE_BUDGET}
        assert out.winding is None and out.N == 0

    def test_violations_sorted(self):
        out = count_roots(Polynomial.from_roots([0.99, -0.99]), UNIT_CIRCLE, IsolationSpec(1.0))
        assert out.violations == sorted(out.violations)


class TestAdaptive:
    def test_recovers_from_bad_guess(self):
        p = Polynomial.from_roots([0.95, 0.1j, -2])
        out = count_roots_adaptive(p, UNIT_CIRCLE, 10.0)
        assert out.winding == 2 and out.ok
        assert out.attempts > 1 and not out.certified

    def test_never_certified(self):
        out = count_roots_adaptive(Polynomial([0, 1]), UNIT_CIRCLE, 1.0)
        assert out.ok and not out.certified and out.attempts == 1

    def test_gives_up_with_violations(self):
        p = Polynomial.from_roots([1 - 1e-9])
        out = count_roots_adaptive(p, UNIT_CIRCLE, 1.0, max_doublings=3)
        assert not out.ok
        assert out.attempts == 4

    def test_budget_stops(self):
        p = Polynomial.from_roots([1 - 1e-12])
        out = count_roots_adaptive(p, UNIT_CIRCLE, 1.0, max_samples=1 << 16)
        assert SAMPLE_BUDGET in out.violation_kinds()

    def test_accumulates_samples(self):
        p = Polynomial.from_roots([0.95])
        single = count_roots(p, UNIT_CIRCLE, IsolationSpec(1.0))
        out = count_roots_adaptive(p, UNIT_CIRCLE, 1.0)
        assert out.samples_used > single.samples_used


class TestEngines:
    @pytest.mark.parametrize("seed", range(5))
    def test_fft_horner_identical_labels(self, seed):
        rng = np.random.default_rng(seed)
        p = Polynomial(rng.normal(size=40) + 1j * rng.normal(size=40))
        r = estimate_min_modulus(p, UNIT_CIRCLE)
        a = count_roots(p, UNIT_CIRCLE, IsolationSpec(r), method="fft")
        b = count_roots(p, UNIT_CIRCLE, IsolationSpec(r), method="horner")
        assert np.array_equal(a.labels, b.labels)
        assert a.winding == b.winding

    def test_shifted_disc(self):
        disc = Circle(1 + 1j, 0.5)
        p = Polynomial.from_roots([1 + 1.2j, 1 - 1j, 0.9 + 0.9j])
        r = estimate_min_modulus(p, disc)
        a = count_roots(p, disc, IsolationSpec(r), method="fft")
        b = count_roots(p, disc, IsolationSpec(r), method="horner")
        assert a.winding == b.winding == 2


class TestProperties:
    @pytest.mark.parametrize("seed", range(8))
    def test_rotation_equivariance(self, seed):
        rng = np.random.default_rng(seed)
        p, r, roots, _ = isolated_case(rng, UNIT_CIRCLE, int(rng.integers(1, 8)))
        phi = rng.uniform(0, 2 * np.pi)
        rotated = Polynomial.from_roots(roots * cmath.exp(1j * phi))
        r2 = estimate_min_modulus(rotated, UNIT_CIRCLE)
        a = count_roots(p, UNIT_CIRCLE, IsolationSpec(r))
        b = count_roots(rotated, UNIT_CIRCLE, IsolationSpec(r2))
        assert a.winding == b.winding == count_inside(roots, UNIT_CIRCLE)

    @pytest.mark.parametrize("alpha", [2, 1j, -1, 1 + 1j])
    def test_scaling_invariance(self, alpha):
        rng = np.random.default_rng(11)
        p, r, roots, _ = isolated_case(rng, UNIT_SQUARE, 6)
        a = count_roots(p, UNIT_SQUARE, IsolationSpec(r))
        b = count_roots(p.scaled(alpha), UNIT_SQUARE, IsolationSpec(abs(alpha) * r))
        assert a.winding == b.winding

    @pytest.mark.parametrize("seed", range(6))
    def test_additivity_under_split(self, seed):
        rng = np.random.default_rng(100 + seed)
        roots = rng.uniform(-1.5, 1.5, 6) + 1j * rng.uniform(-1.5, 1.5, 6)
        left = Rectangle(-1 - 1j, 0.1234 + 1j)
        right = Rectangle(0.1234 - 1j, 1 + 1j)
        whole = Rectangle(-1 - 1j, 1 + 1j)
        p = Polynomial.from_roots(roots)
        counts = []
        for box in (left, right, whole):
            p_n, r = isolation_normalized(p, box)
            counts.append(count_roots(p_n, box, IsolationSpec(r)).winding)
        assert counts[0] + counts[1] == counts[2] == count_inside(roots, whole)
