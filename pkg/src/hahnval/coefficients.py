"""Exact arithmetic in the two coefficient rings.

A coefficient is a reduced rational confined to one of two subrings of Q:

* tag ``X2``: denominators odd (2 stays prime, 3 is a unit),
* tag ``Y3``: denominators prime to 3 (3 stays prime, 2 is a unit).

Both rings are dense in Q and closed under addition and negation.  Density
is what makes ``coset_witness`` total: inside any interval (0, hi) there is
a representative of any coset of ``r`` times the ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

ALLOWED_R = (2, 3, 6)


class Tag(Enum):
    """Which coefficient ring a value lives in."""

    X2 = "X2"
    Y3 = "Y3"

    @property
    def blocked_prime(self) -> int:
        """The prime that must not divide denominators of this ring."""
        return 2 if self is Tag.X2 else 3

    @property
    def dense_prime(self) -> int:
        """A prime that is a unit here; its inverse powers shrink to 0."""
        return 3 if self is Tag.X2 else 2


class TagMismatch(ValueError):
    """Operands live in different coefficient rings (or scalar fields)."""


class DenominatorNotInLocalization(ValueError):
    """The reduced denominator is divisible by the ring's blocked prime."""


@dataclass(frozen=True)
class Coeff:
    """A reduced rational ``num/den`` confined to the ring named by ``tag``.

    Invariants: gcd(|num|, den) = 1, den >= 1, num = 0 forces den = 1, and
    the blocked prime of ``tag`` does not divide ``den``.  Always build
    through :func:`make`.
    """

    num: int
    den: int
    tag: Tag

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_zero(self) -> bool:
        return self.num == 0

    def __add__(self, other: Coeff) -> Coeff:
        _check_tags(self, other)
        return _from_fraction(self.as_fraction() + other.as_fraction(), self.tag)

    def __sub__(self, other: Coeff) -> Coeff:
        _check_tags(self, other)
        return _from_fraction(self.as_fraction() - other.as_fraction(), self.tag)

    def __neg__(self) -> Coeff:
        return Coeff(-self.num, self.den, self.tag)

    def __mul__(self, k: int) -> Coeff:
        if not isinstance(k, int):
            return NotImplemented
        return _from_fraction(self.as_fraction() * k, self.tag)

    __rmul__ = __mul__

    def __lt__(self, other: Coeff) -> bool:
        _check_tags(self, other)
        return self.as_fraction() < other.as_fraction()

    def __le__(self, other: Coeff) -> bool:
        _check_tags(self, other)
        return self.as_fraction() <= other.as_fraction()

    def __gt__(self, other: Coeff) -> bool:
        return other.__lt__(self)

    def __ge__(self, other: Coeff) -> bool:
        return other.__le__(self)

    def __str__(self) -> str:
        return format_coeff(self)


def _check_tags(a: Coeff, b: Coeff) -> None:
    if a.tag is not b.tag:
        raise TagMismatch(f"cannot combine {a.tag.value} with {b.tag.value}")


def _from_fraction(f: Fraction, tag: Tag) -> Coeff:
    if f.denominator % tag.blocked_prime == 0:
        raise DenominatorNotInLocalization(
            f"denominator {f.denominator} is divisible by {tag.blocked_prime} "
            f"(not a {tag.value} value)"
        )
    return Coeff(f.numerator, f.denominator, tag)


def make(num: int, den: int = 1, tag: Tag = Tag.X2) -> Coeff:
    """Build a coefficient from ``num/den``, reduced and sign-normalized.

    Raises DenominatorNotInLocalization when the reduced denominator is
    divisible by the ring's blocked prime, and ZeroDivisionError for den=0.
    """
    return _from_fraction(Fraction(num, den), tag)


def zero(tag: Tag) -> Coeff:
    return Coeff(0, 1, tag)


def one(tag: Tag) -> Coeff:
    return Coeff(1, 1, tag)


def add(a: Coeff, b: Coeff) -> Coeff:
    return a + b


def neg(a: Coeff) -> Coeff:
    return -a


def cmp(a: Coeff, b: Coeff) -> int:
    """-1, 0 or 1 as a < b, a = b, a > b."""
    _check_tags(a, b)
    fa, fb = a.as_fraction(), b.as_fraction()
    return (fa > fb) - (fa < fb)


def _check_r(r: int) -> None:
    if r not in ALLOWED_R:
        raise ValueError(f"r must be one of {ALLOWED_R}, got {r}")


def divisible(a: Coeff, r: int) -> bool:
    """True iff a = r*b for some b in the same ring.

    Only the blocked prime of the ring matters: the other prime factor of
    r is a unit.  Zero is divisible by everything.
    """
    _check_r(r)
    if a.num == 0:
        return True
    p = a.tag.blocked_prime
    if r % p != 0:
        return True
    return a.num % p == 0


def coset_witness(a: Coeff, r: int, hi: Coeff) -> Coeff:
    """A value c with 0 < c < hi and c congruent to a modulo r times the ring.

    Deterministic: first reduce a mod r over the integers, then, if still
    too large, reduce mod r/q^k where q is the ring's unit prime and k is
    minimal with r/q^k < hi.  Every adjustment subtracts an element of
    r times the ring, so the coset is preserved; density guarantees the
    interval is hit.
    """
    _check_tags(a, hi)
    _check_r(r)
    if divisible(a, r):
        raise ValueError("a must not be divisible by r")
    fhi = hi.as_fraction()
    if fhi <= 0:
        raise ValueError("hi must be positive")
    fa = a.as_fraction()
    c = fa - r * (fa / r).__floor__()
    # now 0 < c < r (c = 0 would mean a is an integer multiple of r)
    if c < fhi:
        return _from_fraction(c, a.tag)
    step = Fraction(r)
    q = a.tag.dense_prime
    while step >= fhi:
        step /= q
    c = c - step * (c / step).__floor__()
    if c == 0:
        c = step
    return _from_fraction(c, a.tag)


def parse_coeff(text: str, tag: Tag) -> Coeff:
    """Parse ``num`` or ``num/den`` (sign on num) into the given ring."""
    body = text.strip()
    try:
        if "/" in body:
            num_text, den_text = body.split("/", 1)
            return make(int(num_text.strip()), int(den_text.strip()), tag)
        return make(int(body), 1, tag)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, DenominatorNotInLocalization):
            raise
        raise ValueError(f"bad coefficient literal {text!r}: {exc}") from None


def format_coeff(a: Coeff) -> str:
    if a.den == 1:
        return str(a.num)
    return f"{a.num}/{a.den}"
