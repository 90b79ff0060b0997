from fractions import Fraction

import pytest

from hahnval import oag
from hahnval import sampling as sp
from hahnval import series as se
from hahnval.coefficients import TagMismatch
from hahnval.oag import parse_element
from hahnval.series import (
    INFINITY,
    NotInValuationRing,
    Q,
    QI,
    Series,
    monomial,
    one_scalar,
    parse_series,
    scalar,
)

SEED = 27182


def t(exp_text: str, num=1, den=1):
    return monomial(scalar(Fraction(num, den)), parse_element(exp_text))


class TestScalars:
    def test_complex_mul(self):
        i = scalar(0, 1, QI)
        assert i * i == scalar(-1, 0, QI)

    def test_inverse(self):
        s = scalar(Fraction(1, 2), Fraction(-3, 4), QI)
        assert s * s.inverse() == scalar(1, 0, QI)
        assert scalar(Fraction(2, 7)).inverse() == scalar(Fraction(7, 2))

    def test_q_keeps_im_zero(self):
        with pytest.raises(ValueError):
            scalar(1, 1, Q)

    def test_tag_mismatch(self):
        with pytest.raises(TagMismatch):
            scalar(1, 0, Q) * scalar(1, 0, QI)

    def test_zero_inverse(self):
        with pytest.raises(ZeroDivisionError):
            scalar(0).inverse()


class TestRingOps:
    def test_monomial_law(self):
        g = "1@G1.0.y0"
        d = "2@G1.0.y0"
        assert se.s_mul(t(g), t(d)) == t("3@G1.0.y0")

    def test_difference_of_squares(self):
        g = t("1@G2.0.y")
        one = se.one()
        assert se.s_mul(one + g, one - g) == one - se.s_mul(g, g)

    def test_leading_term_rule(self):
        for i in range(200):
            a = sp.sample_series(SEED, 2 * i)
            b = sp.sample_series(SEED, 2 * i + 1)
            if a.is_zero() or b.is_zero():
                assert se.s_mul(a, b).is_zero()
                continue
            prod = se.s_mul(a, b)
            (ea, sa), (eb, sb) = a.terms[0], b.terms[0]
            assert prod.terms[0] == (oag.add(ea, eb), sa * sb)

    def test_tag_mismatch(self):
        with pytest.raises(TagMismatch):
            se.s_add(se.one(Q), se.one(QI))

    def test_ring_axioms_on_samples(self):
        for i in range(100):
            a = sp.sample_series(SEED, 3 * i)
            b = sp.sample_series(SEED, 3 * i + 1)
            c = sp.sample_series(SEED, 3 * i + 2)
            assert se.s_mul(a, b) == se.s_mul(b, a)
            assert se.s_mul(se.s_mul(a, b), c) == se.s_mul(a, se.s_mul(b, c))
            assert se.s_mul(a, se.s_add(b, c)) == se.s_add(se.s_mul(a, b), se.s_mul(a, c))


class TestValuations:
    def test_val_minimum_exponent(self):
        # a positive coefficient at a more significant point dominates, so
        # the G1-supported exponent is the smaller one
        lo, hi = parse_element("1@G1.0.y0"), parse_element("1@G2.0.y")
        assert oag.cmp(lo, hi) < 0
        assert se.val(t("1@G2.0.y") + t("1@G1.0.y0")) == lo

    def test_val_zero(self):
        assert se.val(se.zero()) is INFINITY

    def test_wval_projects_away_g1(self):
        assert se.w_val(t("-1@G1.0.y0")) == oag.ZERO

    def test_wval_keeps_g2(self):
        assert se.w_val(t("-1@G2.0.x")) == parse_element("-1@G2.0.x")

    def test_membership_split(self):
        a = t("-1@G1.0.y0")
        assert se.in_O(a, "w") and not se.in_O(a, "v")
        b = t("-1@G2.0.x")
        assert not se.in_O(b, "w") and not se.in_O(b, "v")
        assert se.in_O(se.one(), "v") and se.in_O(se.one(), "w")

    def test_zero_in_both(self):
        assert se.in_O(se.zero(), "v") and se.in_O(se.zero(), "w")

    def test_axioms_on_samples(self):
        for i in range(300):
            a = sp.sample_series(SEED, 2 * i)
            b = sp.sample_series(SEED, 2 * i + 1)
            if not a.is_zero() and not b.is_zero():
                assert se.val(se.s_mul(a, b)) == se.val(a) + se.val(b)
            total = se.s_add(a, b)
            va, vb = se.val(a), se.val(b)
            if va is INFINITY or vb is INFINITY or total.is_zero():
                continue
            lo = va if oag.cmp(va, vb) <= 0 else vb
            assert oag.cmp(se.val(total), lo) >= 0
            if oag.cmp(va, vb) != 0:
                assert se.val(total) == lo

    def test_fine_ring_inside_coarse_ring(self):
        for i in range(300):
            a = sp.sample_series(SEED, i)
            if se.in_O(a, "v"):
                assert se.in_O(a, "w")


class TestResidue:
    def test_projection_rule(self):
        a = t("1@G2.0.x") + t("2@G1.0.y0", 3)
        assert se.residue_w(a) == t("2@G1.0.y0", 3)

    def test_identity_on_one(self):
        assert se.residue_w(se.one()) == se.one()

    def test_positive_value_maps_to_zero(self):
        assert se.residue_w(t("1@G2.1.y")).is_zero()

    def test_rejects_negative_coarse_value(self):
        with pytest.raises(NotInValuationRing):
            se.residue_w(t("-1@G2.0.x"))

    def test_homomorphism_on_samples(self):
        for i in range(200):
            a = sp.sample_w_integral_series(SEED, 2 * i)
            b = sp.sample_w_integral_series(SEED, 2 * i + 1)
            ra, rb = se.residue_w(a), se.residue_w(b)
            assert se.residue_w(se.s_add(a, b)) == se.s_add(ra, rb)
            assert se.residue_w(se.s_mul(a, b)) == se.s_mul(ra, rb)


class TestInverse:
    def test_monomial_exact(self):
        g = t("1@G1.0.y0", 3, 5)
        for iterations in (0, 3):
            inv = se.s_inverse(g, iterations)
            assert se.s_mul(g, inv) == se.one()

    def test_geometric_tail(self):
        a = se.one() + t("1@G2.0.y")
        inv = se.s_inverse(a, 2)
        residual = se.s_mul(a, inv) - se.one()
        # residual is -(-eps)^3 = t^(3g)
        assert residual == t("3@G2.0.y")
        threshold = oag.scalar_mul(3, parse_element("1@G2.0.y"))
        assert all(oag.cmp(e, threshold) >= 0 for e, _ in residual.terms)

    def test_threshold_on_samples(self):
        for i in range(100):
            a = sp.sample_series(SEED, i)
            if a.is_zero():
                continue
            lead_exp, lead_scalar = a.terms[0]
            eps = se.s_mul(a, monomial(lead_scalar.inverse(), oag.neg(lead_exp))) - se.one(a.tag)
            for iterations in range(4):
                residual = se.s_mul(a, se.s_inverse(a, iterations)) - se.one(a.tag)
                if eps.is_zero():
                    assert residual.is_zero()
                elif not residual.is_zero():
                    threshold = oag.scalar_mul(iterations + 1, se.val(eps))
                    assert oag.cmp(se.val(residual), threshold) >= 0

    def test_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            se.s_inverse(se.zero(), 2)


class TestFieldEmbeddings:
    def test_exponent_tables(self):
        assert se.apply_field_embedding("f", t("-1@G1.0.y0")) == t("-1@G2.0.y")
        assert se.apply_field_embedding("g", t("-1@G2.0.x")) == t("-1@G1.0.x")

    def test_multiplicative(self):
        for i in range(100):
            a = sp.sample_series(SEED, 2 * i)
            b = sp.sample_series(SEED, 2 * i + 1)
            for emb in ("f", "g"):
                fa = se.apply_field_embedding(emb, a)
                fb = se.apply_field_embedding(emb, b)
                assert se.apply_field_embedding(emb, se.s_mul(a, b)) == se.s_mul(fa, fb)
                assert se.apply_field_embedding(emb, se.s_add(a, b)) == se.s_add(fa, fb)

    def test_bad_id(self):
        with pytest.raises(ValueError):
            se.apply_field_embedding("f3", se.one())


class TestPrestelReport:
    def test_f_fails_forward_only(self):
        rep = se.prestel_report("f", 50, 7)
        assert rep.forward.status == se.FAILS
        assert rep.backward.status == se.HOLDS
        w = rep.forward.witness
        assert se.in_O(w, "w") and not se.in_O(se.apply_field_embedding("f", w), "w")
        assert w == se.curated_witnesses()[0]

    def test_g_fails_backward_only(self):
        rep = se.prestel_report("g", 50, 7)
        assert rep.backward.status == se.FAILS
        assert rep.forward.status == se.HOLDS
        w = rep.backward.witness
        assert not se.in_O(w, "w") and se.in_O(se.apply_field_embedding("g", w), "w")
        assert w == se.curated_witnesses()[1]

    def test_zero_samples_rejected(self):
        with pytest.raises(ValueError):
            se.prestel_report("f", 0, 7)

    def test_json_shape(self):
        import json

        text = se.report_to_json(se.prestel_report("f", 5, 3))
        data = json.loads(text)
        assert sorted(data) == ["backward", "embedding", "forward", "samples", "seed"]
        assert data["samples"] == 5 and data["seed"] == 3
        assert text == se.report_to_json(se.prestel_report("f", 5, 3))


class TestSeriesLiterals:
    def test_parse_example(self):
        a = parse_series("1*t^(-1@G1.0.y0)")
        assert a == t("-1@G1.0.y0")

    def test_multi_term(self):
        a = parse_series("1/2*t^(0) + -3*t^(1@G2.0.y + 1@G1.0.x)")
        assert len(a.terms) == 2

    def test_scalar_with_imaginary_part(self):
        a = parse_series("1/2+-3/4 i*t^(0)")
        assert a.tag == QI
        assert a.terms[0][1] == scalar(Fraction(1, 2), Fraction(-3, 4), QI)

    def test_zero(self):
        assert parse_series("0") == se.zero()
        assert se.format_series(se.zero()) == "0"

    def test_roundtrip_on_samples(self):
        for i in range(100):
            for tag in (Q, QI):
                a = sp.sample_series(SEED, i, tag)
                assert parse_series(se.format_series(a), tag) == a
                if not a.is_zero():
                    assert parse_series(se.format_series(a)) == a

    def test_bad_literals(self):
        for text in ("t^(0)", "1*t^0", "1*t^(0) 2*t^(0)", "1*", "*t^(0)"):
            with pytest.raises(ValueError):
                parse_series(text)

    def test_terms_sorted_by_exponent(self):
        # 1@G1.0.y0 - 1@G2.0.x is negative, so the G1 exponent sorts first
        a = parse_series("1*t^(1@G2.0.x) + 1*t^(1@G1.0.y0)")
        assert se.format_series(a) == "1*t^(1@G1.0.y0) + 1*t^(1@G2.0.x)"
