"""Finite-support series over an exact scalar field, with the fine and
coarse valuations, residues, the induced self-embeddings, and the
two-direction inclusion report.

The carrier is the group ring: finitely many exponents (group elements)
with nonzero scalars.  The fine valuation reads off the least exponent;
the coarse one projects that exponent onto its G2 part, which realizes
the quotient by the G1 region.  Scalars are exact rationals, optionally
with a rational imaginary part; neither field contains a cube root of 2,
which keeps the cubic expressions of the formula layer invertible.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from . import coefficients as cf
from . import oag
from .coefficients import Tag, TagMismatch
from .oag import GroupElement, ZERO as G_ZERO
from .spine import above, g1y, g2x, g2y

Q = "Q"
QI = "QI"

_W_CUT = above(g2y(0))


class NotInValuationRing(ValueError):
    """Residue requested for a series with negative coarse value."""


@dataclass(frozen=True)
class ResidueScalar:
    """An exact scalar re + im*i confined to Q (im = 0) or Q(i)."""

    re: Fraction
    im: Fraction
    tag: str

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __add__(self, other: "ResidueScalar") -> "ResidueScalar":
        _check_tags(self.tag, other.tag)
        return ResidueScalar(self.re + other.re, self.im + other.im, self.tag)

    def __neg__(self) -> "ResidueScalar":
        return ResidueScalar(-self.re, -self.im, self.tag)

    def __mul__(self, other: "ResidueScalar") -> "ResidueScalar":
        _check_tags(self.tag, other.tag)
        return ResidueScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.tag,
        )

    def inverse(self) -> "ResidueScalar":
        if self.is_zero():
            raise ZeroDivisionError("scalar inverse of zero")
        norm = self.re * self.re + self.im * self.im
        return ResidueScalar(self.re / norm, -self.im / norm, self.tag)

    def __str__(self) -> str:
        return format_scalar(self)


def _check_tags(t1: str, t2: str) -> None:
    if t1 != t2:
        raise TagMismatch(f"cannot combine scalar fields {t1} and {t2}")


def scalar(re: Fraction | int, im: Fraction | int = 0, tag: str = Q) -> ResidueScalar:
    if tag not in (Q, QI):
        raise ValueError(f"bad scalar field tag {tag!r}")
    re, im = Fraction(re), Fraction(im)
    if tag == Q and im != 0:
        raise ValueError("Q scalars have no imaginary part")
    return ResidueScalar(re, im, tag)


def one_scalar(tag: str = Q) -> ResidueScalar:
    return scalar(1, 0, tag)


@dataclass(frozen=True)
class Series:
    """Sorted tuple of (exponent, nonzero scalar) pairs plus the scalar
    field tag.  Build via :func:`series`."""

    terms: tuple[tuple[GroupElement, ResidueScalar], ...]
    tag: str = Q

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Series") -> "Series":
        return s_add(self, other)

    def __sub__(self, other: "Series") -> "Series":
        return s_add(self, s_neg(other))

    def __neg__(self) -> "Series":
        return s_neg(self)

    def __mul__(self, other: "Series") -> "Series":
        return s_mul(self, other)

    def __str__(self) -> str:
        return format_series(self)


_EXP_KEY = cmp_to_key(oag.cmp)


def series(terms, tag: str = Q) -> Series:
    """Normalize (exponent, scalar) data: merge duplicate exponents, drop
    zero scalars, sort exponents ascending."""
    if hasattr(terms, "items"):
        terms = terms.items()
    acc: dict[GroupElement, ResidueScalar] = {}
    for e, s in terms:
        _check_tags(s.tag, tag)
        acc[e] = acc[e] + s if e in acc else s
    pairs = [(e, s) for e, s in acc.items() if not s.is_zero()]
    pairs.sort(key=lambda es: _EXP_KEY(es[0]))
    return Series(tuple(pairs), tag)


def zero(tag: str = Q) -> Series:
    return Series((), tag)


def one(tag: str = Q) -> Series:
    return Series(((G_ZERO, one_scalar(tag)),), tag)


def monomial(s: ResidueScalar, exponent: GroupElement) -> Series:
    return series([(exponent, s)], s.tag)


def from_int(k: int, tag: str = Q) -> Series:
    return series([(G_ZERO, scalar(k, 0, tag))], tag)


def s_add(a: Series, b: Series) -> Series:
    _check_tags(a.tag, b.tag)
    return series(list(a.terms) + list(b.terms), a.tag)


def s_neg(a: Series) -> Series:
    return Series(tuple((e, -s) for e, s in a.terms), a.tag)


def s_mul(a: Series, b: Series) -> Series:
    _check_tags(a.tag, b.tag)
    acc: dict[GroupElement, ResidueScalar] = {}
    for ea, sa in a.terms:
        for eb, sb in b.terms:
            e = oag.add(ea, eb)
            s = sa * sb
            acc[e] = acc[e] + s if e in acc else s
    return series(acc, a.tag)


class _Infinity:
    """Value of the zero series; greater than every group element."""

    def __repr__(self) -> str:
        return "inf"

    def __str__(self) -> str:
        return "inf"


INFINITY = _Infinity()


def val(a: Series):
    """Least exponent, or INFINITY for the zero series."""
    if a.is_zero():
        return INFINITY
    return a.terms[0][0]


def w_val(a: Series):
    """The fine value with its G1 support dropped: the image of the value
    in the quotient by the G1 region."""
    v = val(a)
    if v is INFINITY:
        return INFINITY
    return oag.project_quotient(v, _W_CUT)


def in_O(a: Series, which: str) -> bool:
    """Membership in the valuation ring of the fine (v) or coarse (w)
    valuation; the zero series belongs to both."""
    if which == "v":
        v = val(a)
    elif which == "w":
        v = w_val(a)
    else:
        raise ValueError(f"which must be 'v' or 'w', got {which!r}")
    return v is INFINITY or v >= G_ZERO


def residue_w(a: Series) -> Series:
    """The coarse residue: keep exactly the terms whose exponent projects
    to zero on the G2 part (those exponents live on G1 points)."""
    if not in_O(a, "w"):
        raise NotInValuationRing("series has negative coarse value")
    kept = [
        (e, s)
        for e, s in a.terms
        if oag.project_quotient(e, _W_CUT).is_zero()
    ]
    return Series(tuple(kept), a.tag)


def s_inverse(a: Series, iterations: int) -> Series:
    """Truncated inverse: with a = c*t^g*(1 + eps), val(eps) > 0, return
    c^-1 * t^-g * sum of (-eps)^i for i <= iterations.  Every term of
    a*result - 1 then has fine value >= (iterations+1)*val(eps); for a
    monomial the inverse is exact.
    """
    if a.is_zero():
        raise ZeroDivisionError("series inverse of zero")
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    lead_exp, lead_scalar = a.terms[0]
    lead_inv = monomial(lead_scalar.inverse(), oag.neg(lead_exp))
    eps = s_mul(a, lead_inv) - one(a.tag)
    acc = one(a.tag)
    power = one(a.tag)
    for _ in range(iterations):
        power = s_mul(power, s_neg(eps))
        acc = s_add(acc, power)
    return s_mul(acc, lead_inv)


def apply_field_embedding(embedding_id: str, a: Series) -> Series:
    """Remap exponents through the corresponding total group embedding;
    scalars ride along unchanged, so this is a ring homomorphism."""
    table = {"f": "f3", "g": "g3"}
    try:
        group_id = table[embedding_id]
    except KeyError:
        raise ValueError(f"field embedding must be 'f' or 'g', got {embedding_id!r}") from None
    return series(
        [(oag.apply_embedding(group_id, e), s) for e, s in a.terms], a.tag
    )


# ---------------------------------------------------------------------------
# two-direction inclusion report

HOLDS = "holds-on-samples"
FAILS = "fails"


@dataclass(frozen=True)
class DirectionResult:
    status: str
    witness: Series | None = None


@dataclass(frozen=True)
class PrestelReport:
    embedding: str
    samples: int
    seed: int
    forward: DirectionResult
    backward: DirectionResult


def curated_witnesses() -> list[Series]:
    """The two monomials that separate the inclusion directions: the first
    has coarse value 0 but maps into negative G2 territory under f, the
    second has negative coarse value but maps onto a G1 point under g."""
    m1 = oag.monomial(cf.make(-1, 1, Tag.Y3), g1y(0, 0))
    m2 = oag.monomial(cf.make(-1, 1, Tag.X2), g2x(0))
    return [monomial(one_scalar(Q), m1), monomial(one_scalar(Q), m2)]


def prestel_report(embedding_id: str, samples: int, seed: int) -> PrestelReport:
    """Check both inclusion directions of the coarse valuation ring under
    the chosen self-embedding, on the curated pair plus seeded samples.

    forward:  x in O_w implies e(x) in O_w
    backward: e(x) in O_w implies x in O_w

    The first counterexample per direction is reported; the curated pair
    is evaluated first so reports are stable across sample counts.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    from . import sampling

    candidates = curated_witnesses() + [
        sampling.sample_series(seed, i) for i in range(samples)
    ]
    fwd: Series | None = None
    bwd: Series | None = None
    for x in candidates:
        image = apply_field_embedding(embedding_id, x)
        x_in, image_in = in_O(x, "w"), in_O(image, "w")
        if fwd is None and x_in and not image_in:
            fwd = x
        if bwd is None and image_in and not x_in:
            bwd = x
    return PrestelReport(
        embedding=embedding_id,
        samples=samples,
        seed=seed,
        forward=DirectionResult(FAILS, fwd) if fwd is not None else DirectionResult(HOLDS),
        backward=DirectionResult(FAILS, bwd) if bwd is not None else DirectionResult(HOLDS),
    )


def report_to_dict(report: PrestelReport) -> dict:
    def direction(d: DirectionResult) -> dict:
        out = {"status": d.status}
        if d.witness is not None:
            out["witness"] = format_series(d.witness)
        return out

    return {
        "embedding": report.embedding,
        "samples": report.samples,
        "seed": report.seed,
        "forward": direction(report.forward),
        "backward": direction(report.backward),
    }


def report_to_json(report: PrestelReport) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True)


# ---------------------------------------------------------------------------
# literals: `0` or terms `scalar*t^(<element>)` joined by `+`

def _format_fraction(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def format_scalar(s: ResidueScalar) -> str:
    if s.tag == Q:
        return _format_fraction(s.re)
    return f"{_format_fraction(s.re)}+{_format_fraction(s.im)} i"


def parse_scalar(text: str, tag: str) -> ResidueScalar:
    body = text.strip()
    if tag == QI:
        if body.endswith("i"):
            body = body[:-1].strip()
            if "+" not in body:
                raise ValueError(f"bad scalar literal {text!r}")
            re_text, im_text = body.rsplit("+", 1)
            return scalar(_parse_fraction(re_text), _parse_fraction(im_text), QI)
        return scalar(_parse_fraction(body), 0, QI)
    if body.endswith("i"):
        raise ValueError(f"imaginary scalar {text!r} in a Q series")
    return scalar(_parse_fraction(body), 0, Q)


def _parse_fraction(text: str) -> Fraction:
    body = text.strip()
    if "/" in body:
        num_text, den_text = body.split("/", 1)
        return Fraction(int(num_text.strip()), int(den_text.strip()))
    return Fraction(int(body))


_TERM_RE = re.compile(r"t\^\(([^)]*)\)")


def parse_series(text: str, tag: str | None = None) -> Series:
    body = text.strip()
    if tag is None:
        # nothing else in the grammar uses the letter i
        tag = QI if "i" in body else Q
    if body == "0":
        return zero(tag)
    matches = list(_TERM_RE.finditer(body))
    if not matches:
        raise ValueError(f"bad series literal {text!r}")
    tail = body[matches[-1].end() :].strip()
    if tail:
        raise ValueError(f"bad series literal {text!r}: trailing {tail!r}")
    pairs = []
    prev_end = 0
    for k, m in enumerate(matches):
        seg = body[prev_end : m.start()].strip()
        prev_end = m.end()
        if k > 0:
            if not seg.startswith("+"):
                raise ValueError(f"bad series literal {text!r}: terms must be joined by +")
            seg = seg[1:].strip()
        if not seg.endswith("*"):
            raise ValueError(f"bad series literal {text!r}: term needs scalar*t^(...)")
        s = parse_scalar(seg[:-1], tag)
        e = oag.parse_element(m.group(1))
        pairs.append((e, s))
    return series(pairs, tag)


def format_series(a: Series) -> str:
    if a.is_zero():
        return "0"
    return " + ".join(
        f"{format_scalar(s)}*t^({oag.format_element(e)})" for e, s in a.terms
    )
