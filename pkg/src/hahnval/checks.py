"""Seeded property suites bundling the element-level claims, shared by the
CLI ``check`` subcommands and the acceptance tests.

Every suite is a pure function of (samples, seed) and returns a plain
dict: suite name, echoed samples and seed, one entry per subcheck with a
pass flag, the number of cases inspected, and the first counterexample
(as a literal) when one exists.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from . import coefficients as cf
from . import formulas as fm
from . import oag
from . import sampling as sp
from . import series as se
from .coefficients import Tag
from .oag import GroupElement, ZERO
from .spine import (
    above,
    cut_member,
    definable_k,
    enumerate_points,
    g1x,
    g1y,
    g2x,
    g2y,
    label,
    successor,
)


def _subcheck(name: str, cases: Iterable[tuple[bool, str]]) -> dict:
    checked = 0
    failures = 0
    witness = None
    for ok, case_repr in cases:
        checked += 1
        if not ok:
            failures += 1
            if witness is None:
                witness = case_repr
    out = {"name": name, "passed": failures == 0, "checked": checked, "failures": failures}
    if witness is not None:
        out["witness"] = witness
    return out


def _suite(name: str, samples: int, seed: int, subchecks: list[dict]) -> dict:
    return {
        "suite": name,
        "samples": samples,
        "seed": seed,
        "passed": all(c["passed"] for c in subchecks),
        "checks": subchecks,
    }


def _support_above(y: GroupElement, j0) -> bool:
    return all(p > j0 for p in y.support())


# ---------------------------------------------------------------------------
# lemma suite: the interval/coset decision against the support oracle

def _agreement_cases(samples: int, seed: int, r: int):
    for i in range(samples):
        x = sp.sample_nondivisible(seed, i, r)
        y = sp.sample_element(seed, i)
        j0 = oag.leading_obstruction(x, r)
        oracle = _support_above(y, j0)
        result = oag.lemma_rhs(x, y, r)
        ok = result.empty == oracle
        if ok and not result.empty:
            z = result.witness
            bound = oag.scalar_mul(r, oag.abs_element(y))
            ok = (
                oag.cmp(z, ZERO) >= 0
                and oag.cmp(z, bound) <= 0
                and oag.divisible(z - x, r)
            )
        yield ok, f"x={x} y={y} r={r}"


def _k_class_cases(count: int, seed: int):
    target = above(g2y(0))
    for i in range(count):
        x = sp.sample_k_class(seed, i)
        yield oag.fr(x, 6) == target, f"x={x}"


def _obstruction_label_cases(samples: int, seed: int):
    for i in range(samples):
        x = sp.sample_nondivisible(seed, i, 3)
        yield label(oag.leading_obstruction(x, 3)) == "Y", f"x={x}"


def _gamma1_cases(samples: int, seed: int):
    boundary = [
        oag.parse_element("1@G2.0.y"),
        oag.parse_element("-1@G2.0.y"),
        oag.parse_element("1@G1.0.y0"),
        oag.parse_element("-1@G1.0.y0"),
        ZERO,
    ]
    for y in boundary:
        yield oag.in_gamma1_definable(y) == oag.in_gamma1_direct(y), f"y={y}"
    for i in range(samples):
        y = sp.sample_element(seed, i)
        yield oag.in_gamma1_definable(y) == oag.in_gamma1_direct(y), f"y={y}"


def _representative_stability_cases(count: int, seed: int):
    # the defining test must not depend on which class representative is used
    for i in range(count):
        x_alt = sp.sample_k_class(seed, 10_000 + i)
        y = sp.sample_element(seed, 10_000 + i)
        ok = oag.lemma_rhs(x_alt, y, 6).empty == oag.in_gamma1_direct(y)
        yield ok, f"x'={x_alt} y={y}"


def _fr_formula_cases(count: int, seed: int, r: int):
    for i in range(count):
        x = sp.sample_nondivisible(seed, 20_000 + i, r)
        y = sp.sample_element(seed, 20_000 + i)
        oracle = _support_above(y, oag.leading_obstruction(x, r))
        yield fm.eval_fr_formula(x, y, r) == oracle, f"x={x} y={y} r={r}"


def check_lemma(samples: int, seed: int) -> dict:
    subchecks = [
        _subcheck("interval-coset-agreement-r3", _agreement_cases(samples, seed, 3)),
        _subcheck("interval-coset-agreement-r6", _agreement_cases(samples, seed, 6)),
        _subcheck(
            "definable-k",
            [(definable_k() == g2y(0), "definable_k")]
            + [
                (
                    cut_member(p, above(definable_k())) == (p.region == "G1"),
                    f"p={p}",
                )
                for p in enumerate_points(6, 6)
            ],
        ),
        _subcheck("k-class-f6", _k_class_cases(max(1, samples // 10), seed)),
        _subcheck("obstruction-label-r3", _obstruction_label_cases(samples, seed)),
        _subcheck("gamma1-agreement", _gamma1_cases(samples, seed)),
        _subcheck(
            "gamma1-representative-stability",
            _representative_stability_cases(max(1, samples // 10), seed),
        ),
        _subcheck("fr-formula-agreement-r3", _fr_formula_cases(max(1, samples // 4), seed, 3)),
        _subcheck("fr-formula-agreement-r6", _fr_formula_cases(max(1, samples // 4), seed, 6)),
    ]
    return _suite("lemma", samples, seed, subchecks)


# ---------------------------------------------------------------------------
# construction suite: embedding properties and the inclusion reports

def _in_f2_domain(p) -> bool:
    return p.region == "G2" or p == g1y(0, 0)


def _embedding_cases(embedding_id: str, samples: int, seed: int):
    preimage: dict[GroupElement, GroupElement] = {}
    for i in range(samples):
        a = sp.sample_element(seed, 2 * i)
        b = sp.sample_element(seed, 2 * i + 1)
        ea = oag.apply_embedding(embedding_id, a)
        eb = oag.apply_embedding(embedding_id, b)
        case = f"a={a} b={b}"
        yield oag.apply_embedding(embedding_id, a + b) == ea + eb, f"additivity {case}"
        yield (oag.cmp(a, b) < 0) == (oag.cmp(ea, eb) < 0), f"order {case}"
        for r in (2, 3, 6):
            yield oag.divisible(a, r) == oag.divisible(ea, r), f"divisibility r={r} a={a}"
        if ea in preimage:
            yield preimage[ea] == a, f"injectivity a={a} vs {preimage[ea]}"
        else:
            preimage[ea] = a


def _composition_cases(samples: int, seed: int):
    for i in range(samples):
        a = sp.sample_element(seed, i)
        part2 = oag.element([(p, c) for p, c in a.terms if _in_f2_domain(p)])
        part1 = oag.element([(p, c) for p, c in a.terms if not _in_f2_domain(p)])
        assembled = oag.apply_embedding("f2", part2) + oag.apply_embedding("f1", part1)
        yield assembled == oag.apply_embedding("f3", a), f"f3 assembly a={a}"
        low = oag.element([(p, c) for p, c in a.terms if p.region == "G2" and p.block >= 1])
        rest = a - low
        assembled = oag.apply_embedding("g2", low) + oag.apply_embedding("g1", rest)
        yield assembled == oag.apply_embedding("g3", a), f"g3 assembly a={a}"
        boundary = oag.element(
            [(p, c) for p, c in rest.terms if p.region == "G2"]
        )
        inner = rest - boundary
        assembled = oag.apply_embedding("g12", boundary) + oag.apply_embedding("g11", inner)
        yield assembled == oag.apply_embedding("g1", rest), f"g1 assembly a={a}"


def _convexity_cases(samples: int, seed: int):
    # the image of the block-boundary embedding is a final-segment subgroup
    # of the window it lands in: anything squeezed between 0 and an image
    # element stays inside the image support, so an element with support
    # outside it can never be squeezed
    window = [g1y(0, i) for i in range(4)] + [g1x(0), g1y(1, 0)]
    image_support = {g1x(0), g1y(1, 0)}
    for i in range(samples):
        c = sp.sample_supported_element(seed, 2 * i, window)
        b = oag.apply_embedding(
            "g12", sp.sample_supported_element(seed, 2 * i + 1, [g2x(0), g2y(0)])
        )
        b = oag.abs_element(b)
        squeezed = ZERO <= c <= b
        inside = set(c.support()) <= image_support
        yield inside or not squeezed, f"c={c} b={b}"


def _prestel_cases(samples: int, seed: int):
    rep_f = se.prestel_report("f", samples, seed)
    ok_f = (
        rep_f.forward.status == se.FAILS
        and rep_f.backward.status == se.HOLDS
        and rep_f.forward.witness is not None
        and se.in_O(rep_f.forward.witness, "w")
        and not se.in_O(se.apply_field_embedding("f", rep_f.forward.witness), "w")
    )
    yield ok_f, se.report_to_json(rep_f)
    rep_g = se.prestel_report("g", samples, seed)
    ok_g = (
        rep_g.backward.status == se.FAILS
        and rep_g.forward.status == se.HOLDS
        and rep_g.backward.witness is not None
        and not se.in_O(rep_g.backward.witness, "w")
        and se.in_O(se.apply_field_embedding("g", rep_g.backward.witness), "w")
    )
    yield ok_g, se.report_to_json(rep_g)


def check_construction(samples: int, seed: int) -> dict:
    subchecks = [
        _subcheck("embedding-f3", _embedding_cases("f3", samples, seed)),
        _subcheck("embedding-g3", _embedding_cases("g3", samples, seed)),
        _subcheck("embedding-composition", _composition_cases(samples, seed)),
        _subcheck("boundary-image-convexity", _convexity_cases(samples, seed)),
        _subcheck("inclusion-reports", _prestel_cases(max(1, samples), seed)),
    ]
    return _suite("construction", samples, seed, subchecks)


# ---------------------------------------------------------------------------
# axioms suite: base structures, valuations, residues, formula layer

def _coeff_div_cases(samples: int, seed: int):
    for i in range(samples):
        tag = Tag.X2 if i % 2 == 0 else Tag.Y3
        a = sp.sample_coeff(seed, i, tag)
        yield cf.divisible(a, 6) == (cf.divisible(a, 2) and cf.divisible(a, 3)), f"a={a}"


def _coset_witness_cases(samples: int, seed: int):
    plans = [(Tag.X2, 2), (Tag.X2, 6), (Tag.Y3, 3), (Tag.Y3, 6)]
    for i in range(samples):
        tag, r = plans[i % 4]
        a = sp.sample_nondivisible_coeff(seed, i, r, tag)
        hi = sp.sample_coeff(seed, 50_000 + i, tag)
        hi = -hi if hi.num < 0 else hi
        c = cf.coset_witness(a, r, hi)
        ok = (
            cf.cmp(c, cf.zero(tag)) > 0
            and cf.cmp(c, hi) < 0
            and cf.divisible(c - a, r)
        )
        yield ok, f"a={a} r={r} hi={hi} c={c}"


def _group_axiom_cases(samples: int, seed: int):
    for i in range(samples):
        a = sp.sample_element(seed, 3 * i)
        b = sp.sample_element(seed, 3 * i + 1)
        c = sp.sample_element(seed, 3 * i + 2)
        case = f"a={a} b={b} c={c}"
        yield (oag.cmp(a, b) < 0) + (oag.cmp(a, b) == 0) + (oag.cmp(a, b) > 0) == 1, f"totality {case}"
        if oag.cmp(a, b) <= 0 and oag.cmp(b, c) <= 0:
            yield oag.cmp(a, c) <= 0, f"transitivity {case}"
        if oag.cmp(a, b) < 0:
            yield oag.cmp(a + c, b + c) < 0, f"translation {case}"


def _spine_cases():
    window = enumerate_points(6, 6)
    window_set = set(window)
    for idx, p in enumerate(window):
        s = successor(p)
        yield p < s, f"p={p}"
        strictly_between = [q for q in window if p < q < s]
        yield not strictly_between, f"p={p} between={strictly_between[:1]}"
        if s in window_set and idx + 1 < len(window):
            yield window[idx + 1] == s, f"p={p}"
    g2_labels = "".join(label(p) for p in window if p.region == "G2")
    yield "YY" not in g2_labels, f"labels={g2_labels}"
    for p in window:
        if p.region == "G2" and p != g2y(0):
            pred = label(p) == "Y" and label(successor(p)) == "Y"
            yield not pred, f"p={p}"
        if p.region == "G1" and p.axis == "y":
            yield label(p) == "Y" and label(successor(p)) == "Y", f"p={p}"


def _valuation_cases(samples: int, seed: int):
    for i in range(samples):
        a = sp.sample_series(seed, 2 * i)
        b = sp.sample_series(seed, 2 * i + 1)
        case = f"a={a} b={b}"
        prod = se.s_mul(a, b)
        if a.is_zero() or b.is_zero():
            yield se.val(prod) is se.INFINITY, f"v-mult {case}"
        else:
            yield se.val(prod) == se.val(a) + se.val(b), f"v-mult {case}"
            yield se.w_val(prod) == se.w_val(a) + se.w_val(b), f"w-mult {case}"
        total = se.s_add(a, b)
        va, vb, vt = se.val(a), se.val(b), se.val(total)
        if va is se.INFINITY:
            yield vt is se.INFINITY or vt == vb, f"v-ultra {case}"
        elif vb is se.INFINITY:
            yield vt == va, f"v-ultra {case}"
        else:
            lo = va if oag.cmp(va, vb) <= 0 else vb
            if vt is se.INFINITY:
                yield oag.cmp(va, vb) == 0, f"v-ultra {case}"
            else:
                yield oag.cmp(vt, lo) >= 0, f"v-ultra {case}"
                if oag.cmp(va, vb) != 0:
                    yield oag.cmp(vt, lo) == 0, f"v-ultra-eq {case}"
        # the coarse ring contains the fine ring
        if se.in_O(a, "v"):
            yield se.in_O(a, "w"), f"coarsening {case}"


def _coarsening_strict_cases():
    unit = se.curated_witnesses()[0]
    yield se.in_O(unit, "w") and not se.in_O(unit, "v"), f"unit={unit}"


def _residue_cases(samples: int, seed: int):
    for i in range(samples):
        a = sp.sample_w_integral_series(seed, 2 * i)
        b = sp.sample_w_integral_series(seed, 2 * i + 1)
        ra, rb = se.residue_w(a), se.residue_w(b)
        case = f"a={a} b={b}"
        yield se.residue_w(se.s_add(a, b)) == se.s_add(ra, rb), f"res-add {case}"
        yield se.residue_w(se.s_mul(a, b)) == se.s_mul(ra, rb), f"res-mul {case}"


def _inverse_cases(samples: int, seed: int):
    for i in range(samples):
        a = sp.sample_series(seed, i)
        if a.is_zero():
            continue
        lead_exp, lead_scalar = a.terms[0]
        normalizer = se.monomial(lead_scalar.inverse(), oag.neg(lead_exp))
        eps = se.s_mul(a, normalizer) - se.one(a.tag)
        for iterations in range(4):
            inv = se.s_inverse(a, iterations)
            residual = se.s_mul(a, inv) - se.one(a.tag)
            if eps.is_zero():
                yield residual.is_zero(), f"a={a} it={iterations}"
            elif residual.is_zero():
                yield True, f"a={a} it={iterations}"
            else:
                threshold = oag.scalar_mul(iterations + 1, se.val(eps))
                yield oag.cmp(se.val(residual), threshold) >= 0, f"a={a} it={iterations}"


def _leading_term_cases(samples: int, seed: int):
    for i in range(samples):
        a = sp.sample_series(seed, 2 * i)
        b = sp.sample_series(seed, 2 * i + 1)
        if a.is_zero() or b.is_zero():
            continue
        prod = se.s_mul(a, b)
        ea, sa = a.terms[0]
        eb, sb = b.terms[0]
        yield prod.terms[0] == (oag.add(ea, eb), sa * sb), f"a={a} b={b}"


def _roundtrip_corpus() -> tuple[list[str], list[str]]:
    corpus = [
        "x = y",
        "x < y",
        "0 = 0",
        "x + y = z",
        "x - y < z",
        "-x = y",
        "2*x = x + x",
        "-3*x < 0",
        "x + (y + z) = x + y + z",
        "x - (y - z) = x - y + z",
        "Div_2(x)",
        "Div_3(x + y)",
        "Div_6(2*x - y)",
        "!Div_2(x)",
        "!(x < y)",
        "!!(x = y)",
        "x < y & y < z",
        "x < y | y < x",
        "x = y & y = z & z = x",
        "x = y | y = z | z = x",
        "x = y & (y = z | z = x)",
        "(x = y | y = z) & z = x",
        "!(x = y & y = z)",
        "Ex u. x = u",
        "All u. u = u",
        "Ex u. Ex t. x = u + t",
        "All u. Ex t. u + t = 0",
        "Ex u. u < x & x < 2*u",
        "All u. Div_3(u) | !Div_3(u)",
        "Ex u. (All t. t = u) | u = x",
        "x = y + -1*z",
        "Div_6(x) & Div_3(y) & Div_2(z)",
        "0 < x & !(0 = x)",
        "Ex w. w + w = x & Div_2(x)",
        "All a. All b. a + b = b + a",
    ]
    ring_corpus = [
        "x = 1",
        "x*y = 1",
        "x^3 = x*x*x",
        "y1*(y^3 - 2) = 1",
        "(x + y)*(x - y) = x^2 - y^2",
        "x*(y + z) = x*y + x*z",
        "2*x = x + x",
        "-1*x = -x",
        "x^0 = 1",
        "Ex u. u*x = 1",
        "Ex y. Ex y1. y1*(y^3 - 2) = 1 & y = 0",
        "t = 0 | t = y1*z1",
        "u = y1 - z1 & y1*(y^3 - 2) = 1",
        "x = u + t & (Ex y. y = 0)",
    ]
    return corpus, ring_corpus


def _roundtrip_cases():
    group_corpus, ring_corpus = _roundtrip_corpus()
    for text, signature in [(t, fm.GROUP) for t in group_corpus] + [
        (t, fm.RING) for t in ring_corpus
    ]:
        f = fm.parse(text, signature)
        printed = fm.print_formula(f)
        ok = fm.parse(printed, signature) == f
        ok = ok and "".join(printed.split()) == "".join(text.split())
        yield ok, f"text={text!r} printed={printed!r}"
    f = fm.eta()
    printed = fm.print_formula(f)
    yield fm.parse(printed, fm.RING) == f, f"eta printed={printed!r}"
    yield "y1*(y^3 - 2) = 1" in printed, "eta inverse atom"
    yield fm.free_variables(f) == frozenset({"x"}), "eta free variables"


def _eta_witness_cases():
    zero_s = se.zero()
    minus_half = se.monomial(se.scalar(Fraction(-1, 2)), ZERO)
    block = (zero_s, zero_s, minus_half, minus_half)
    yield fm.check_eta_witness(zero_s, (zero_s, zero_s), block, block), "trivial witness"
    minus_third = se.monomial(se.scalar(Fraction(-1, 3)), ZERO)
    tampered = (zero_s, zero_s, minus_third, minus_half)
    yield not fm.check_eta_witness(zero_s, (zero_s, zero_s), tampered, block), "tampered unit"
    yield not fm.check_eta_witness(zero_s, (se.one(), zero_s), block, block), "tampered split"


def _eval_qf_cases(samples: int, seed: int):
    div_formula = {r: fm.Div(r, fm.Var("x")) for r in (2, 3, 6)}
    for i in range(samples):
        x = sp.sample_element(seed, i)
        for r in (2, 3, 6):
            got = fm.eval_qf(div_formula[r], {"x": x}, fm.GROUP)
            yield got == oag.divisible(x, r), f"Div_{r} x={x}"


def _morphism_cases(samples: int, seed: int):
    texts = [
        "x < y",
        "x + y = z",
        "Div_3(x - y)",
        "2*x < y + z | x = 0",
        "Div_6(x) & !(y < x)",
    ]
    phis = [fm.parse(t, fm.GROUP) for t in texts]
    for i in range(samples):
        assignment = {
            "x": sp.sample_element(seed, 3 * i),
            "y": sp.sample_element(seed, 3 * i + 1),
            "z": sp.sample_element(seed, 3 * i + 2),
        }
        mapped = {k: oag.apply_embedding("f3", v) for k, v in assignment.items()}
        for t, phi in zip(texts, phis):
            ok = fm.eval_qf(phi, assignment, fm.GROUP) == fm.eval_qf(phi, mapped, fm.GROUP)
            yield ok, f"phi={t!r} x={assignment['x']}"


def check_axioms(samples: int, seed: int) -> dict:
    subchecks = [
        _subcheck("coeff-divisibility-meet", _coeff_div_cases(samples, seed)),
        _subcheck("coeff-coset-witness", _coset_witness_cases(max(1, samples // 2), seed)),
        _subcheck("ordered-group-axioms", _group_axiom_cases(samples, seed)),
        _subcheck("spine-order", _spine_cases()),
        _subcheck("valuation-axioms", _valuation_cases(samples, seed)),
        _subcheck("coarsening-strict", _coarsening_strict_cases()),
        _subcheck("residue-homomorphism", _residue_cases(max(1, samples // 2), seed)),
        _subcheck("inverse-threshold", _inverse_cases(max(1, samples // 5), seed)),
        _subcheck("product-leading-term", _leading_term_cases(max(1, samples // 2), seed)),
        _subcheck("formula-roundtrip", _roundtrip_cases()),
        _subcheck("eta-witness", _eta_witness_cases()),
        _subcheck("eval-qf-divisibility", _eval_qf_cases(max(1, samples // 10), seed)),
        _subcheck("eval-qf-embedding-morphism", _morphism_cases(max(1, samples // 10), seed)),
    ]
    return _suite("axioms", samples, seed, subchecks)


SUITES: dict[str, Callable[[int, int], dict]] = {
    "lemma": check_lemma,
    "construction": check_construction,
    "axioms": check_axioms,
}
