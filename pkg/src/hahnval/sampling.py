"""Deterministic seeded generators for elements, coefficients and series.

Streams are split per sample index: sample i under seed s depends only on
(s, i), so suites can evaluate samples in any order (or in parallel) and
still reproduce byte-identical reports.

Fixed desk-scale distribution: support sizes 0-4, blocks and y indices
0-3, numerators in [-9, 9] without 0, denominators in [1, 9] filtered by
the ring tag.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import coefficients as cf
from . import oag
from . import series as se
from .coefficients import Coeff, Tag
from .oag import GroupElement, element
from .spine import Point, g1x, g1y, g2x, g2y, tag_of

_MASK64 = (1 << 64) - 1

# stream salts, one per generator kind
_ELEMENT = 1
_NONDIV = 2
_KCLASS = 3
_SERIES = 4
_COEFF = 5
_NDCOEFF = 6
_SUPPORTED = 7

_DENS = {Tag.X2: (1, 3, 5, 7, 9), Tag.Y3: (1, 2, 4, 5, 7, 8)}


def _rng(salt: int, seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([salt, seed & _MASK64, index]))


def _draw_point(rng: np.random.Generator) -> Point:
    block = int(rng.integers(0, 4))
    if rng.integers(0, 2) == 0:
        return g2x(block) if rng.integers(0, 2) == 0 else g2y(block)
    if rng.integers(0, 2) == 0:
        return g1x(block)
    return g1y(block, int(rng.integers(0, 4)))


def _draw_num(rng: np.random.Generator) -> int:
    mag = int(rng.integers(1, 10))
    return mag if rng.integers(0, 2) == 0 else -mag


def _draw_coeff(rng: np.random.Generator, tag: Tag) -> Coeff:
    dens = _DENS[tag]
    den = dens[int(rng.integers(0, len(dens)))]
    return cf.make(_draw_num(rng), den, tag)


def _draw_element(rng: np.random.Generator) -> GroupElement:
    size = int(rng.integers(0, 5))
    picked: dict[Point, Coeff] = {}
    while len(picked) < size:
        p = _draw_point(rng)
        if p in picked:
            continue
        picked[p] = _draw_coeff(rng, tag_of(p))
    return element(picked)


def sample_coeff(seed: int, index: int, tag: Tag) -> Coeff:
    return _draw_coeff(_rng(_COEFF, seed, index), tag)


def sample_nondivisible_coeff(seed: int, index: int, r: int, tag: Tag) -> Coeff:
    """A coefficient outside r times its ring (redraws until found)."""
    if r % tag.blocked_prime != 0:
        raise ValueError(f"every {tag.value} value is divisible by {r}")
    rng = _rng(_NDCOEFF, seed, index)
    while True:
        a = _draw_coeff(rng, tag)
        if not cf.divisible(a, r):
            return a


def sample_supported_element(seed: int, index: int, points) -> GroupElement:
    """An element supported on a subset of the given points, each kept with
    probability one half."""
    rng = _rng(_SUPPORTED, seed, index)
    picked: dict[Point, Coeff] = {}
    for p in points:
        if rng.integers(0, 2) == 0:
            picked[p] = _draw_coeff(rng, tag_of(p))
    return element(picked)


def sample_element(seed: int, index: int) -> GroupElement:
    return _draw_element(_rng(_ELEMENT, seed, index))


def sample_nondivisible(seed: int, index: int, r: int) -> GroupElement:
    """A nonzero element outside r times the group (redraws until found)."""
    rng = _rng(_NONDIV, seed, index)
    while True:
        a = _draw_element(rng)
        if not a.is_zero() and not oag.divisible(a, r):
            return a


def sample_k_class(seed: int, index: int) -> GroupElement:
    """An element whose leading 6-obstruction sits exactly at the last G2
    point: points below get 6-divisible coefficients, the point itself a
    non-divisible one, anything above is left free."""
    rng = _rng(_KCLASS, seed, index)
    base = _draw_element(rng)
    boundary = g2y(0)
    picked: dict[Point, Coeff] = {}
    for p, c in base.terms:
        picked[p] = 6 * c if p < boundary else c
    while True:
        num = _draw_num(rng)
        if num % 3 != 0:
            break
    dens = _DENS[Tag.Y3]
    den = dens[int(rng.integers(0, len(dens)))]
    picked[boundary] = cf.make(num, den, Tag.Y3)
    return element(picked)


def _draw_scalar(rng: np.random.Generator, tag: str) -> se.ResidueScalar:
    re_part = Fraction(_draw_num(rng), int(rng.integers(1, 10)))
    if tag == se.QI:
        im_num = int(rng.integers(-9, 10))
        im_part = Fraction(im_num, int(rng.integers(1, 10)))
        return se.scalar(re_part, im_part, tag)
    return se.scalar(re_part, 0, tag)


def sample_series(seed: int, index: int, tag: str = se.Q) -> se.Series:
    """A finite-support series with 0-3 terms over the chosen scalar field."""
    rng = _rng(_SERIES, seed, index)
    nterms = int(rng.integers(0, 4))
    exps: dict[GroupElement, se.ResidueScalar] = {}
    while len(exps) < nterms:
        e = _draw_element(rng)
        if e in exps:
            continue
        exps[e] = _draw_scalar(rng, tag)
    return se.series(exps, tag)


def sample_w_integral_series(seed: int, index: int, tag: str = se.Q) -> se.Series:
    """A sample shifted by a monomial so that its coarse value is >= 0."""
    a = sample_series(seed, index, tag)
    wv = se.w_val(a)
    if wv is se.INFINITY or not (wv < oag.ZERO):
        return a
    shift = se.monomial(se.one_scalar(tag), oag.neg(wv))
    return se.s_mul(a, shift)
