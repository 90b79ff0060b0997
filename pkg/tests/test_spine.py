import pytest

from hahnval import spine
from hahnval.coefficients import Tag
from hahnval.spine import (
    Cut,
    EVERYTHING,
    NOTHING,
    Point,
    above,
    cut_cmp,
    cut_member,
    definable_k,
    enumerate_points,
    format_cut,
    format_point,
    g1x,
    g1y,
    g2x,
    g2y,
    label,
    parse_cut,
    parse_point,
    point_cmp,
    successor,
    tag_of,
)


class TestOrder:
    def test_g2_blocks_reverse(self):
        assert point_cmp(g2x(5), g2y(2)) == -1

    def test_g2_before_g1(self):
        assert point_cmp(g2y(0), g1y(0, 0)) == -1

    def test_g1_blocks_ascending(self):
        assert point_cmp(g1x(1), g1y(2, 0)) == -1

    def test_within_g2_block(self):
        assert point_cmp(g2x(3), g2y(3)) == -1

    def test_within_g1_block_x_last(self):
        assert point_cmp(g1y(0, 7), g1x(0)) == -1
        assert point_cmp(g1y(0, 2), g1y(0, 3)) == -1

    def test_total_on_window(self):
        pts = enumerate_points(3, 3)
        for i, p in enumerate(pts):
            for j, q in enumerate(pts):
                assert point_cmp(p, q) == (i > j) - (i < j)


class TestLabel:
    def test_table(self):
        assert label(g2x(3)) == "X"
        assert label(g1y(0, 7)) == "Y"
        assert label(g1x(4)) == "X"
        assert label(g2y(0)) == "Y"

    def test_tags(self):
        assert tag_of(g2x(0)) is Tag.X2
        assert tag_of(g2y(1)) is Tag.Y3
        assert tag_of(g1y(2, 1)) is Tag.Y3
        assert tag_of(g1x(2)) is Tag.X2


def successor_oracle(p: Point, bound: int = 3) -> Point:
    """Order-minimum of the window points strictly above p."""
    candidates = [q for q in enumerate_points(bound, bound) if point_cmp(q, p) > 0]
    return min(candidates, key=lambda q: q.sort_key())


class TestSuccessor:
    def test_crossing_g2_blocks(self):
        assert successor(g2y(1)) == successor_oracle(g2y(1)) == g2x(0)

    def test_crossing_regions(self):
        assert successor(g2y(0)) == successor_oracle(g2y(0)) == g1y(0, 0)

    def test_crossing_g1_blocks(self):
        assert successor(g1x(0)) == successor_oracle(g1x(0)) == g1y(1, 0)

    def test_within_blocks(self):
        assert successor(g2x(2)) == successor_oracle(g2x(2)) == g2y(2)
        assert successor(g1y(1, 1)) == successor_oracle(g1y(1, 1)) == g1y(1, 2)

    def test_immediate_on_window(self):
        window = enumerate_points(6, 6)
        for p in window:
            s = successor(p)
            assert point_cmp(p, s) == -1
            assert not any(point_cmp(p, q) < 0 < point_cmp(s, q) for q in window)


def has_yy(p: Point) -> bool:
    return label(p) == "Y" and label(successor(p)) == "Y"


class TestDefinableK:
    def test_value(self):
        assert definable_k() == g2y(0)

    def test_no_other_g2_point_qualifies(self):
        for n in range(11):
            for p in (g2x(n), g2y(n)):
                assert has_yy(p) == (p == g2y(0))

    def test_g1_y_points_qualify_but_lie_above(self):
        k = definable_k()
        for m in range(4):
            for i in range(4):
                p = g1y(m, i)
                assert has_yy(p)
                assert point_cmp(k, p) == -1

    def test_k_is_least_qualifying_on_window(self):
        qualifying = [p for p in enumerate_points(6, 6) if has_yy(p)]
        assert min(qualifying, key=lambda q: q.sort_key()) == definable_k()

    def test_segment_above_k_is_the_g1_region(self):
        cut = above(definable_k())
        for p in enumerate_points(6, 6):
            assert cut_member(p, cut) == (p.region == "G1")

    def test_g2_labels_never_repeat_y(self):
        word = "".join(label(p) for p in enumerate_points(6, 6) if p.region == "G2")
        assert "YY" not in word


class TestCuts:
    def test_membership(self):
        assert cut_member(g1y(0, 0), above(g2y(0)))
        assert not cut_member(g2y(0), above(g2y(0)))  # strict
        assert cut_member(g2x(9), EVERYTHING)
        assert not cut_member(g2x(9), NOTHING)

    def test_containment_order(self):
        assert cut_cmp(above(g1x(0)), above(g2y(0))) == -1
        assert cut_cmp(above(g2y(0)), above(g2y(0))) == 0
        assert cut_cmp(NOTHING, above(g1x(5))) == -1
        assert cut_cmp(EVERYTHING, above(g2x(9))) == 1

    def test_containment_matches_membership_on_window(self):
        cuts = [NOTHING, EVERYTHING] + [above(p) for p in enumerate_points(2, 2)]
        window = enumerate_points(3, 3)
        for c1 in cuts:
            for c2 in cuts:
                members1 = {p for p in window if cut_member(p, c1)}
                members2 = {p for p in window if cut_member(p, c2)}
                if cut_cmp(c1, c2) == -1:
                    assert members1 < members2 or members1 == members2
                    # strictness shows up once the window is large enough
                if cut_cmp(c1, c2) == 0:
                    assert members1 == members2

    def test_invalid_cut(self):
        with pytest.raises(ValueError):
            Cut("above")
        with pytest.raises(ValueError):
            Cut("all", g2x(0))


class TestLiterals:
    def test_point_roundtrip(self):
        for p in enumerate_points(3, 3):
            assert parse_point(format_point(p)) == p

    def test_point_examples(self):
        assert parse_point("G2.0.y") == g2y(0)
        assert parse_point("G1.2.y0") == g1y(2, 0)
        assert parse_point("G1.4.x") == g1x(4)

    def test_bad_points(self):
        for text in ("G3.0.x", "G2.0.y1", "G1.0.y", "G1.0.x2", "G2.x", ""):
            with pytest.raises(ValueError):
                parse_point(text)

    def test_cut_roundtrip(self):
        for c in (EVERYTHING, NOTHING, above(g2y(0)), above(g1y(1, 2))):
            assert parse_cut(format_cut(c)) == c

    def test_bad_cut(self):
        with pytest.raises(ValueError):
            parse_cut("above(G2.0.y")
