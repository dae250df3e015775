import numpy as np
import pytest

from windcount import Polynomial, Rectangle
from windcount.subdivision import (ISOLATED, IsolationBox, count_conservation_audit,
                                   isolate_roots)


def assert_each_root_in_one_box(report, roots):
    for z in roots:
        assert sum(b.contains(z) for b in report.isolated_boxes) == 1


class TestBox:
    def test_children_tile_parent(self):
        box = IsolationBox(1 + 1j, 2.0)
        kids = box.children()
        assert {k.center for k in kids} == {0 + 0j, 2 + 0j, 0 + 2j, 2 + 2j}
        assert all(k.half_width == 1.0 and k.depth == 1 for k in kids)

    def test_contains_boundary(self):
        assert IsolationBox(0j, 1.0).contains(1 + 1j)

    def test_rectangle(self):
        assert IsolationBox(0j, 0.5).rectangle().L == 4.0


class TestIsolate:
    def test_two_roots(self):
        roots = [1j, -1j]
        p = Polynomial.from_roots(roots)
        report = isolate_roots(p, Rectangle(-2 - 2j, 2 + 2j), 0.05)
        assert len(report.isolated_boxes) == 2 and not report.suspect_boxes
        assert all(b.status == ISOLATED and b.count == 1 for b in report.isolated_boxes)
        assert all(b.width <= 0.05 for b in report.isolated_boxes)
        assert_each_root_in_one_box(report, roots)
        assert count_conservation_audit(report, 2)

    def test_close_real_roots(self):
        roots = np.arange(1, 9) / 10
        p = Polynomial.from_roots(roots)
        report = isolate_roots(p, Rectangle(-1 - 1j, 1 + 1j), 0.01)
        assert not report.suspect_boxes
        assert len(report.isolated_boxes) == 8
        assert_each_root_in_one_box(report, roots)
        assert count_conservation_audit(report, 8)

    def test_roots_outside_ignored(self):
        p = Polynomial.from_roots([0.3, 5, -7j])
        report = isolate_roots(p, ((0j), 1.0), 0.02)
        assert [b.count for b in report.isolated_boxes] == [1]

    def test_double_root_reported_with_count(self):
        p = Polynomial.from_roots([0.25 + 0.25j] * 2)
        report = isolate_roots(p, Rectangle(-1 - 1j, 1 + 1j), 0.01)
        total = sum(b.count for b in report.isolated_boxes + report.suspect_boxes)
        assert total == 2
        assert count_conservation_audit(report, 2)

    def test_evaluations_recorded(self):
        report = isolate_roots(Polynomial([0, 1]), Rectangle(-1 - 1j, 1 + 1j), 0.1)
        assert report.evaluations_used > 0
        doc = report.to_json()
        assert set(doc) == {"isolated", "suspect", "evaluations"}

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            isolate_roots(Polynomial([0, 1]), Rectangle(0j, 2 + 1j), 0.1)

    def test_bad_target(self):
        with pytest.raises(ValueError):
            isolate_roots(Polynomial([0, 1]), Rectangle(-1 - 1j, 1 + 1j), 0)

    def test_depth_limit_marks_suspect(self):
        p = Polynomial.from_roots([0.1, 0.1001])
        report = isolate_roots(p, Rectangle(-1 - 1j, 1 + 1j), 1e-6, max_depth=3)
        assert report.suspect_boxes
        assert report.max_depth_reached == 3


class TestAudit:
    def test_detects_tampering(self):
        p = Polynomial.from_roots([0.5, -0.5])
        report = isolate_roots(p, Rectangle(-1 - 1j, 1 + 1j), 0.1)
        assert count_conservation_audit(report, 2)
        report.isolated_boxes[0].count += 1
        assert not count_conservation_audit(report, 2)

    def test_root_count_above_degree(self):
        p = Polynomial.from_roots([0.5])
        report = isolate_roots(p, Rectangle(-1 - 1j, 1 + 1j), 0.5)
        assert not count_conservation_audit(report, 0)
