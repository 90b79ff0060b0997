"""First-order terms and formulas over the ordered-group and ring
signatures, with a parser, a canonical printer, quantifier-free
evaluation in the two concrete structures, the distinguished
ring-signature membership formula, and its witness checker.

Grammar::

    formula := ('Ex'|'All') IDENT '.' formula | disj
    disj    := conj ('|' conj)*
    conj    := unit ('&' unit)*
    unit    := '!' unit | 'Div_2(' term ')' | 'Div_3(' term ')'
             | 'Div_6(' term ')' | '(' formula ')' | term ('='|'<') term
    term    := product (('+'|'-') product)*
    product := signed ('*' signed)*
    signed  := '-' signed | power
    power   := primary ('^' NAT)?
    primary := IDENT | NAT | '(' term ')'

The group signature admits 0, addition, negation, integer scalar
multiples, '=', '<' and the divisibility atoms; the ring signature admits
integer constants, '+', '-', '*', '^' and '='.  Quantifiers parse in both
but only quantifier-free formulas evaluate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from . import oag
from . import series as se

GROUP = "group"
RING = "ring"


class ParseError(ValueError):
    """Rejected input text; carries the offset where parsing failed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnboundVariable(ValueError):
    """A free variable of the formula is missing from the assignment."""


class QuantifierPresent(ValueError):
    """Quantifier-free evaluation applied to a quantified formula."""


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Sub:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Pow:
    base: "Term"
    exp: int


Term = Union[Var, Lit, Add, Sub, Neg, Mul, Pow]


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Lt:
    left: Term
    right: Term


@dataclass(frozen=True)
class Div:
    r: int
    arg: Term


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Eq, Lt, Div, And, Or, Not, Exists, Forall]

_QUANT_KEYWORDS = ("Ex", "All")
_DIV_HEADS = {"Div_2": 2, "Div_3": 3, "Div_6": 6}


# ---------------------------------------------------------------------------
# tokenizer / parser

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<nat>\d+)"
    r"|(?P<sym>[-+*^=<&|!().]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup is None:
            break
        tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        tok = self.peek()
        if tok is None or tok[1] != value:
            pos = tok[2] if tok else len(self.text)
            found = repr(tok[1]) if tok else "end of input"
            raise ParseError(f"expected {value!r}, found {found}", pos)
        self.i += 1

    def at_value(self, value: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[1] == value

    # formulas -------------------------------------------------------------

    def formula(self) -> Formula:
        tok = self.peek()
        if tok and tok[0] == "ident" and tok[1] in _QUANT_KEYWORDS:
            self.next()
            name_tok = self.next()
            if name_tok[0] != "ident" or name_tok[1] in _QUANT_KEYWORDS or name_tok[1] in _DIV_HEADS:
                raise ParseError("expected a variable name", name_tok[2])
            self.expect(".")
            body = self.formula()
            return Exists(name_tok[1], body) if tok[1] == "Ex" else Forall(name_tok[1], body)
        return self.disj()

    def disj(self) -> Formula:
        f = self.conj()
        while self.at_value("|"):
            self.next()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unit()
        while self.at_value("&"):
            self.next()
            f = And(f, self.unit())
        return f

    def unit(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        if tok[1] == "!":
            self.next()
            return Not(self.unit())
        if tok[0] == "ident" and tok[1] in _DIV_HEADS:
            self.next()
            self.expect("(")
            t = self.term()
            self.expect(")")
            return Div(_DIV_HEADS[tok[1]], t)
        if tok[1] == "(":
            # a parenthesized formula or a parenthesized term opening a
            # comparison; try the formula reading first and backtrack
            mark = self.i
            try:
                self.next()
                f = self.formula()
                self.expect(")")
                return f
            except ParseError:
                self.i = mark
        return self.relation()

    def relation(self) -> Formula:
        left = self.term()
        tok = self.peek()
        if tok is None or tok[1] not in ("=", "<"):
            pos = tok[2] if tok else len(self.text)
            raise ParseError("expected '=' or '<'", pos)
        self.next()
        right = self.term()
        return Eq(left, right) if tok[1] == "=" else Lt(left, right)

    # terms ----------------------------------------------------------------

    def term(self) -> Term:
        t = self.product()
        while True:
            tok = self.peek()
            if tok is None or tok[1] not in ("+", "-"):
                return t
            self.next()
            rhs = self.product()
            t = Add(t, rhs) if tok[1] == "+" else Sub(t, rhs)

    def product(self) -> Term:
        t = self.signed()
        while self.at_value("*"):
            self.next()
            t = Mul(t, self.signed())
        return t

    def signed(self) -> Term:
        if self.at_value("-"):
            self.next()
            return Neg(self.signed())
        return self.power()

    def power(self) -> Term:
        t = self.primary()
        if self.at_value("^"):
            self.next()
            tok = self.next()
            if tok[0] != "nat":
                raise ParseError("exponent must be a natural number", tok[2])
            return Pow(t, int(tok[1]))
        return t

    def primary(self) -> Term:
        tok = self.next()
        if tok[0] == "nat":
            return Lit(int(tok[1]))
        if tok[0] == "ident":
            if tok[1] in _QUANT_KEYWORDS or tok[1] in _DIV_HEADS:
                raise ParseError(f"{tok[1]!r} is reserved", tok[2])
            return Var(tok[1])
        if tok[1] == "(":
            t = self.term()
            self.expect(")")
            return t
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse(text: str, signature: str) -> Formula:
    """Parse a formula and check it against the signature."""
    parser = _Parser(text)
    f = parser.formula()
    tok = parser.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    _validate(f, signature, bound=frozenset())
    return f


def _is_int_scalar(t: Term) -> bool:
    return isinstance(t, Lit) or (isinstance(t, Neg) and _is_int_scalar(t.arg))


def _validate_term(t: Term, signature: str) -> None:
    if isinstance(t, Var):
        return
    if isinstance(t, Lit):
        if signature == GROUP and t.value != 0:
            raise ParseError(
                f"constant {t.value} outside a scalar multiple in the group signature", 0
            )
        return
    if isinstance(t, (Add, Sub)):
        _validate_term(t.left, signature)
        _validate_term(t.right, signature)
        return
    if isinstance(t, Neg):
        if signature == GROUP and _is_int_scalar(t.arg):
            return
        _validate_term(t.arg, signature)
        return
    if isinstance(t, Mul):
        if signature == GROUP:
            if _is_int_scalar(t.left):
                _validate_term(t.right, signature)
                return
            if _is_int_scalar(t.right):
                _validate_term(t.left, signature)
                return
            raise ParseError("group multiplication needs an integer scalar side", 0)
        _validate_term(t.left, signature)
        _validate_term(t.right, signature)
        return
    if isinstance(t, Pow):
        if signature == GROUP:
            raise ParseError("'^' is not in the group signature", 0)
        if t.exp < 0:
            raise ParseError("negative exponent", 0)
        _validate_term(t.base, signature)
        return
    raise TypeError(f"not a term: {t!r}")


def _validate(f: Formula, signature: str, bound: frozenset[str]) -> None:
    if isinstance(f, Eq):
        _validate_term(f.left, signature)
        _validate_term(f.right, signature)
    elif isinstance(f, Lt):
        if signature == RING:
            raise ParseError("'<' is not in the ring signature", 0)
        _validate_term(f.left, signature)
        _validate_term(f.right, signature)
    elif isinstance(f, Div):
        if signature == RING:
            raise ParseError("divisibility atoms are not in the ring signature", 0)
        _validate_term(f.arg, signature)
    elif isinstance(f, (And, Or)):
        _validate(f.left, signature, bound)
        _validate(f.right, signature, bound)
    elif isinstance(f, Not):
        _validate(f.arg, signature, bound)
    elif isinstance(f, (Exists, Forall)):
        if f.var in bound:
            raise ParseError(f"variable {f.var!r} rebound inside its own scope", 0)
        _validate(f.body, signature, bound | {f.var})
    else:
        raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# printer (canonical: parse(print(f)) == f)

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _term_prec(t: Term) -> int:
    if isinstance(t, (Add, Sub)):
        return _PREC_ADD
    if isinstance(t, Mul):
        return _PREC_MUL
    if isinstance(t, Neg):
        return _PREC_NEG
    if isinstance(t, Pow):
        return _PREC_POW
    return _PREC_ATOM


def _print_term(t: Term, ctx: int = 0, right: bool = False) -> str:
    prec = _term_prec(t)
    if isinstance(t, Var):
        body = t.name
    elif isinstance(t, Lit):
        body = str(t.value)
    elif isinstance(t, (Add, Sub)):
        op = "+" if isinstance(t, Add) else "-"
        body = f"{_print_term(t.left, prec)} {op} {_print_term(t.right, prec, right=True)}"
    elif isinstance(t, Mul):
        body = f"{_print_term(t.left, prec)}*{_print_term(t.right, prec, right=True)}"
    elif isinstance(t, Neg):
        body = f"-{_print_term(t.arg, prec)}"
    elif isinstance(t, Pow):
        body = f"{_print_term(t.base, _PREC_ATOM)}^{t.exp}"
    else:
        raise TypeError(f"not a term: {t!r}")
    if prec < ctx or (prec == ctx and right):
        return f"({body})"
    return body


def print_formula(f: Formula) -> str:
    """Canonical text; tight '*' and '^', spaced additive and relational
    operators, quantifier bodies extending maximally to the right."""
    if isinstance(f, Eq):
        return f"{_print_term(f.left)} = {_print_term(f.right)}"
    if isinstance(f, Lt):
        return f"{_print_term(f.left)} < {_print_term(f.right)}"
    if isinstance(f, Div):
        return f"Div_{f.r}({_print_term(f.arg)})"
    if isinstance(f, And):
        return f"{_print_operand(f.left, And)} & {_print_operand(f.right, And, right=True)}"
    if isinstance(f, Or):
        return f"{_print_operand(f.left, Or)} | {_print_operand(f.right, Or, right=True)}"
    if isinstance(f, Not):
        if isinstance(f.arg, (Div, Not)):
            return f"!{print_formula(f.arg)}"
        return f"!({print_formula(f.arg)})"
    if isinstance(f, Exists):
        return f"Ex {f.var}. {print_formula(f.body)}"
    if isinstance(f, Forall):
        return f"All {f.var}. {print_formula(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def _formula_prec(f: Formula) -> int:
    if isinstance(f, (Exists, Forall)):
        return 0
    if isinstance(f, Or):
        return 1
    if isinstance(f, And):
        return 2
    if isinstance(f, Not):
        return 3
    return 4


def _print_operand(f: Formula, parent: type, right: bool = False) -> str:
    parent_prec = 1 if parent is Or else 2
    prec = _formula_prec(f)
    text = print_formula(f)
    if prec < parent_prec or (prec == parent_prec and right):
        return f"({text})"
    return text


# ---------------------------------------------------------------------------
# quantifier-free evaluation

Value = Union[oag.GroupElement, se.Series]
Assignment = Mapping[str, Value]


def _eval_group_term(t: Term, a: Assignment) -> oag.GroupElement:
    if isinstance(t, Var):
        if t.name not in a:
            raise UnboundVariable(f"variable {t.name!r} has no assigned value")
        return a[t.name]
    if isinstance(t, Lit):
        if t.value != 0:
            raise ValueError(f"constant {t.value} is not a group element")
        return oag.ZERO
    if isinstance(t, Add):
        return oag.add(_eval_group_term(t.left, a), _eval_group_term(t.right, a))
    if isinstance(t, Sub):
        return oag.add(_eval_group_term(t.left, a), oag.neg(_eval_group_term(t.right, a)))
    if isinstance(t, Neg):
        return oag.neg(_eval_group_term(t.arg, a))
    if isinstance(t, Mul):
        if _is_int_scalar(t.left):
            return oag.scalar_mul(_int_of(t.left), _eval_group_term(t.right, a))
        if _is_int_scalar(t.right):
            return oag.scalar_mul(_int_of(t.right), _eval_group_term(t.left, a))
        raise ValueError("group multiplication needs an integer scalar side")
    raise ValueError(f"term {t!r} is outside the group signature")


def _int_of(t: Term) -> int:
    if isinstance(t, Lit):
        return t.value
    if isinstance(t, Neg):
        return -_int_of(t.arg)
    raise ValueError(f"not an integer literal: {t!r}")


def _series_tag(a: Assignment) -> str:
    for v in a.values():
        if isinstance(v, se.Series):
            return v.tag
    return se.Q


def _eval_series_term(t: Term, a: Assignment, tag: str) -> se.Series:
    if isinstance(t, Var):
        if t.name not in a:
            raise UnboundVariable(f"variable {t.name!r} has no assigned value")
        return a[t.name]
    if isinstance(t, Lit):
        return se.from_int(t.value, tag)
    if isinstance(t, Add):
        return se.s_add(_eval_series_term(t.left, a, tag), _eval_series_term(t.right, a, tag))
    if isinstance(t, Sub):
        return se.s_add(
            _eval_series_term(t.left, a, tag),
            se.s_neg(_eval_series_term(t.right, a, tag)),
        )
    if isinstance(t, Neg):
        return se.s_neg(_eval_series_term(t.arg, a, tag))
    if isinstance(t, Mul):
        return se.s_mul(_eval_series_term(t.left, a, tag), _eval_series_term(t.right, a, tag))
    if isinstance(t, Pow):
        acc = se.one(tag)
        base = _eval_series_term(t.base, a, tag)
        for _ in range(t.exp):
            acc = se.s_mul(acc, base)
        return acc
    raise ValueError(f"term {t!r} is outside the ring signature")


def eval_qf(phi: Formula, a: Assignment, structure: str) -> bool:
    """Evaluate a quantifier-free formula in the group or series structure."""
    if isinstance(phi, (Exists, Forall)):
        raise QuantifierPresent("formula is not quantifier-free")
    if isinstance(phi, And):
        return eval_qf(phi.left, a, structure) and eval_qf(phi.right, a, structure)
    if isinstance(phi, Or):
        return eval_qf(phi.left, a, structure) or eval_qf(phi.right, a, structure)
    if isinstance(phi, Not):
        return not eval_qf(phi.arg, a, structure)
    if structure == GROUP:
        if isinstance(phi, Eq):
            return oag.cmp(_eval_group_term(phi.left, a), _eval_group_term(phi.right, a)) == 0
        if isinstance(phi, Lt):
            return oag.cmp(_eval_group_term(phi.left, a), _eval_group_term(phi.right, a)) < 0
        if isinstance(phi, Div):
            return oag.divisible(_eval_group_term(phi.arg, a), phi.r)
        raise TypeError(f"not a formula: {phi!r}")
    if structure == "series" or structure == RING:
        tag = _series_tag(a)
        if isinstance(phi, Eq):
            return _eval_series_term(phi.left, a, tag) == _eval_series_term(phi.right, a, tag)
        if isinstance(phi, (Lt, Div)):
            raise ValueError("ordered/divisibility atoms are outside the ring signature")
        raise TypeError(f"not a formula: {phi!r}")
    raise ValueError(f"structure must be 'group' or 'series', got {structure!r}")


# ---------------------------------------------------------------------------
# the distinguished ring formula and its witness checker

def _inverse_atom(unit_var: str, base_var: str) -> Formula:
    # unit_var * (base_var^3 - 2) = 1
    return Eq(Mul(Var(unit_var), Sub(Pow(Var(base_var), 3), Lit(2))), Lit(1))


def eta() -> Formula:
    """The ring-signature membership formula with one free variable x:
    x splits as u + t where u is a difference of inverses of cubic
    expressions and t is zero or a product of two such inverses.  The two
    existential blocks bind disjoint fresh names (y, z, y1, z1) and
    (p, q, p1, q1); the original presentation reuses one quadruple."""
    block1 = Exists(
        "y",
        Exists(
            "z",
            Exists(
                "y1",
                Exists(
                    "z1",
                    And(
                        And(
                            Eq(Var("u"), Sub(Var("y1"), Var("z1"))),
                            _inverse_atom("y1", "y"),
                        ),
                        _inverse_atom("z1", "z"),
                    ),
                ),
            ),
        ),
    )
    block2 = Exists(
        "p",
        Exists(
            "q",
            Exists(
                "p1",
                Exists(
                    "q1",
                    Or(
                        Eq(Var("t"), Lit(0)),
                        And(
                            And(
                                Eq(Var("t"), Mul(Var("p1"), Var("q1"))),
                                _inverse_atom("p1", "p"),
                            ),
                            _inverse_atom("q1", "q"),
                        ),
                    ),
                ),
            ),
        ),
    )
    matrix = And(And(Eq(Var("x"), Add(Var("u"), Var("t"))), block1), block2)
    return Exists("u", Exists("t", matrix))


def free_variables(f: Formula) -> frozenset[str]:
    def term_vars(t: Term) -> frozenset[str]:
        if isinstance(t, Var):
            return frozenset({t.name})
        if isinstance(t, Lit):
            return frozenset()
        if isinstance(t, (Add, Sub, Mul)):
            return term_vars(t.left) | term_vars(t.right)
        if isinstance(t, Neg):
            return term_vars(t.arg)
        if isinstance(t, Pow):
            return term_vars(t.base)
        raise TypeError(f"not a term: {t!r}")

    if isinstance(f, (Eq, Lt)):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Div):
        return term_vars(f.arg)
    if isinstance(f, (And, Or)):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, Not):
        return free_variables(f.arg)
    if isinstance(f, (Exists, Forall)):
        return free_variables(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def _inverse_atom_holds(unit: se.Series, base: se.Series, iterations: int) -> bool:
    """Check unit * (base^3 - 2) = 1, exactly or up to the truncation
    threshold: the residual must have fine value at least
    (iterations+1) * val(eps), eps the normalized tail of base^3 - 2."""
    cube = se.s_mul(se.s_mul(base, base), base)
    b = cube - se.from_int(2, base.tag)
    if b.is_zero():
        return False
    residual = se.s_mul(unit, b) - se.one(base.tag)
    if residual.is_zero():
        return True
    lead_exp, lead_scalar = b.terms[0]
    normalizer = se.monomial(lead_scalar.inverse(), oag.neg(lead_exp))
    eps = se.s_mul(b, normalizer) - se.one(base.tag)
    if eps.is_zero():
        return False
    threshold = oag.scalar_mul(iterations + 1, se.val(eps))
    return not (se.val(residual) < threshold)


def check_eta_witness(
    x: se.Series,
    w1: tuple[se.Series, se.Series],
    w2: tuple[se.Series, se.Series, se.Series | None, se.Series | None],
    w3: tuple[se.Series, se.Series, se.Series | None, se.Series | None],
    iterations: int = 2,
) -> bool:
    """Evaluate the quantifier-free matrix of the membership formula at the
    supplied witnesses.

    w1 supplies (u, t); w2 and w3 supply (base1, base2, unit1, unit2) for
    the two blocks.  A unit given as None is an inversion request: it is
    replaced by the truncated inverse of the corresponding cubic
    expression at the given iteration count.  Inverse-bearing atoms accept
    residuals above the truncation threshold; all other atoms are exact.
    """
    u, t = w1

    def resolve(base: se.Series, unit: se.Series | None) -> se.Series:
        if unit is not None:
            return unit
        cube = se.s_mul(se.s_mul(base, base), base)
        return se.s_inverse(cube - se.from_int(2, base.tag), iterations)

    y, z, y1, z1 = w2
    y1, z1 = resolve(y, y1), resolve(z, z1)
    p, q, p1, q1 = w3
    p1, q1 = resolve(p, p1), resolve(q, q1)

    if x != se.s_add(u, t):
        return False
    if u != y1 - z1:
        return False
    if not _inverse_atom_holds(y1, y, iterations):
        return False
    if not _inverse_atom_holds(z1, z, iterations):
        return False
    if t.is_zero():
        return True
    if t != se.s_mul(p1, q1):
        return False
    return _inverse_atom_holds(p1, p, iterations) and _inverse_atom_holds(q1, q, iterations)


def eval_fr_formula(x: oag.GroupElement, y: oag.GroupElement, r: int) -> bool:
    """The one quantified pattern the artifact decides: emptiness of the
    interval/coset intersection, i.e. membership of y in the avoiding
    segment of x."""
    return oag.lemma_rhs(x, y, r).empty
