"""Exact sparse arithmetic for (Laurent-)polynomials and their tensor powers.

An element is a dictionary from exponent vectors to nonzero rationals
(``fractions.Fraction``), so all arithmetic is exact and equality is term-map
equality.  A ``Variables`` table fixes the variable order: Laurent variables
first, then the ordinary (unipotent) ones in declaration order.  Exponent
vectors are dense tuples over that order; only Laurent variables may carry
negative exponents.

The text syntax is normative and round-trips through ``parse_element`` /
``format_element``:

* variables match ``[A-Za-z][A-Za-z0-9_]*``
* powers are written ``X^3`` (``X^-1`` on Laurent variables)
* ``*`` between factors is optional (whitespace suffices)
* coefficients are integers or ``p/q``
* the tensor separator is ``(x)``, the unit monomial is ``1``
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Mono = Tuple[int, ...]

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*$")


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class InputError(EngineError):
    """Malformed user input: syntax errors, undeclared variables, bad documents."""


class DomainError(EngineError):
    """Operation left the algebra's domain (e.g. negative power of a non-Laurent variable)."""


class ValidationError(EngineError):
    """A structural precondition failed (invalid presentation, twist or map)."""


class Variables:
    """Ordered variable table: Laurent variables first, then unipotent ones."""

    __slots__ = ("laurent", "unipotent", "names", "index", "n", "n_laurent", "_unit")

    def __init__(self, laurent: Sequence[str] = (), unipotent: Sequence[str] = ()):
        names = tuple(laurent) + tuple(unipotent)
        seen = set()
        for nm in names:
            if not _IDENT_RE.match(nm):
                raise InputError(f"invalid variable identifier: {nm!r}")
            if nm in seen:
                raise InputError(f"duplicate variable: {nm!r}")
            seen.add(nm)
        self.laurent = tuple(laurent)
        self.unipotent = tuple(unipotent)
        self.names = names
        self.index = {nm: i for i, nm in enumerate(names)}
        self.n = len(names)
        self.n_laurent = len(self.laurent)
        self._unit = (0,) * self.n

    def __eq__(self, other):
        return isinstance(other, Variables) and self.laurent == other.laurent \
            and self.unipotent == other.unipotent

    def __hash__(self):
        return hash((self.laurent, self.unipotent))

    def __repr__(self):
        return f"Variables(laurent={list(self.laurent)}, unipotent={list(self.unipotent)})"

    def is_laurent(self, i: int) -> bool:
        return i < self.n_laurent

    @property
    def unit_mono(self) -> Mono:
        return self._unit

    def mono(self, exps: Mapping[str, int]) -> Mono:
        vec = [0] * self.n
        for nm, e in exps.items():
            if nm not in self.index:
                raise InputError(f"undeclared variable: {nm!r}")
            vec[self.index[nm]] = e
        return self.check_mono(tuple(vec))

    def check_mono(self, m: Mono) -> Mono:
        for i, e in enumerate(m):
            if e < 0 and not self.is_laurent(i):
                raise DomainError(
                    f"negative exponent on non-Laurent variable {self.names[i]!r}")
        return m

    def var_mono(self, name: str, power: int = 1) -> Mono:
        return self.mono({name: power})

    def mono_mul(self, a: Mono, b: Mono) -> Mono:
        return tuple(x + y for x, y in zip(a, b))

    def mono_udeg(self, m: Mono) -> int:
        """Total degree in the unipotent variables."""
        return sum(m[self.n_laurent:])

    def mono_counit(self, m: Mono) -> Fraction:
        """1 on purely-Laurent monomials (grouplike), 0 otherwise."""
        return Fraction(1) if all(e == 0 for e in m[self.n_laurent:]) else Fraction(0)

    def order_key(self, m: Mono):
        return (self.mono_udeg(m), tuple(-e for e in m))

    def format_mono(self, m: Mono) -> str:
        parts = []
        for i, e in enumerate(m):
            if e == 0:
                continue
            parts.append(self.names[i] if e == 1 else f"{self.names[i]}^{e}")
        return " ".join(parts) if parts else "1"


class AlgebraElement:
    """Sparse exact-rational combination of monomials over a fixed Variables table."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Variables, terms: Mapping[Mono, Fraction] | None = None):
        self.vars = vars
        clean: Dict[Mono, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    vars.check_mono(m)
                    clean[m] = c
        self.terms = clean

    @classmethod
    def zero(cls, vars: Variables) -> "AlgebraElement":
        return cls(vars)

    @classmethod
    def one(cls, vars: Variables) -> "AlgebraElement":
        return cls(vars, {vars.unit_mono: Fraction(1)})

    @classmethod
    def var(cls, vars: Variables, name: str, power: int = 1) -> "AlgebraElement":
        return cls(vars, {vars.var_mono(name, power): Fraction(1)})

    @classmethod
    def const(cls, vars: Variables, c) -> "AlgebraElement":
        return cls(vars, {vars.unit_mono: Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.vars == other.vars \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return AlgebraElement(self.vars, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        out: Dict[Mono, Fraction] = {}
        mul = self.vars.mono_mul
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mul(ma, mb)
                s = out.get(m, Fraction(0)) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return AlgebraElement(self.vars, out)

    def scale(self, c) -> "AlgebraElement":
        c = Fraction(c)
        if not c:
            return AlgebraElement.zero(self.vars)
        return AlgebraElement(self.vars, {m: c * x for m, x in self.terms.items()})

    def coefficient(self, m: Mono) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def udeg(self) -> int:
        """Maximal unipotent total degree; -1 for the zero element."""
        if not self.terms:
            return -1
        return max(self.vars.mono_udeg(m) for m in self.terms)

    def support_vars(self) -> set:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.vars.names[i])
        return used

    def substitute(self, images: Mapping[str, "AlgebraElement"],
                   target: Variables | None = None) -> "AlgebraElement":
        """Apply the algebra homomorphism sending each variable to its image.

        Every variable occurring in self must have an image.  A Laurent
        variable's image must be an invertible monomial multiple (a single
        term in Laurent variables only), since negative powers require
        inverting it.
        """
        tgt = target
        if tgt is None:
            for img in images.values():
                tgt = img.vars
                break
            if tgt is None:
                tgt = self.vars
        out = AlgebraElement.zero(tgt)
        pow_cache: Dict[Tuple[str, int], AlgebraElement] = {}
        for m, c in self.terms.items():
            acc = AlgebraElement.const(tgt, c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                nm = self.vars.names[i]
                if nm not in images:
                    raise InputError(f"no substitution image for variable {nm!r}")
                key = (nm, e)
                if key not in pow_cache:
                    img = images[nm]
                    if self.vars.is_laurent(i):
                        pow_cache[key] = _laurent_power(img, e)
                    else:
                        pow_cache[key] = _positive_power(img, e)
                acc = acc * pow_cache[key]
            out = out + acc
        return out


def _positive_power(a: AlgebraElement, e: int) -> AlgebraElement:
    out = AlgebraElement.one(a.vars)
    base = a
    while e:
        if e & 1:
            out = out * base
        base = base * base
        e >>= 1
    return out


def _laurent_power(img: AlgebraElement, e: int) -> AlgebraElement:
    if e >= 0:
        return _positive_power(img, e)
    if len(img.terms) != 1:
        raise DomainError("Laurent variable image is not an invertible monomial multiple")
    (m, c), = img.terms.items()
    if any(m[i] and not img.vars.is_laurent(i) for i in range(img.vars.n)):
        raise DomainError("Laurent variable image is not invertible")
    inv = AlgebraElement(img.vars, {tuple(-x for x in m): Fraction(1) / c})
    return _positive_power(inv, -e)


class TensorElement:
    """Element of the 2- or 3-fold tensor power, stored as sparse leg tuples."""

    __slots__ = ("vars", "arity", "terms")

    def __init__(self, vars: Variables, arity: int,
                 terms: Mapping[Tuple[Mono, ...], Fraction] | None = None):
        if arity not in (2, 3):
            raise InputError(f"tensor arity must be 2 or 3, got {arity}")
        self.vars = vars
        self.arity = arity
        clean: Dict[Tuple[Mono, ...], Fraction] = {}
        if terms:
            for legs, c in terms.items():
                c = Fraction(c)
                if c:
                    for leg in legs:
                        vars.check_mono(leg)
                    clean[legs] = c
        self.terms = clean

    @classmethod
    def zero(cls, vars: Variables, arity: int) -> "TensorElement":
        return cls(vars, arity)

    @classmethod
    def unit(cls, vars: Variables, arity: int) -> "TensorElement":
        return cls(vars, arity, {(vars.unit_mono,) * arity: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.vars == other.vars \
            and self.arity == other.arity and self.terms == other.terms

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if self.arity != other.arity:
            raise DomainError("tensor arity mismatch")
        out = dict(self.terms)
        for legs, c in other.terms.items():
            s = out.get(legs, Fraction(0)) + c
            if s:
                out[legs] = s
            else:
                out.pop(legs, None)
        return TensorElement(self.vars, self.arity, out)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.vars, self.arity,
                             {legs: -c for legs, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        if self.arity != other.arity:
            raise DomainError("tensor arity mismatch")
        mul = self.vars.mono_mul
        out: Dict[Tuple[Mono, ...], Fraction] = {}
        for la, ca in self.terms.items():
            for lb, cb in other.terms.items():
                legs = tuple(mul(x, y) for x, y in zip(la, lb))
                s = out.get(legs, Fraction(0)) + ca * cb
                if s:
                    out[legs] = s
                else:
                    out.pop(legs, None)
        return TensorElement(self.vars, self.arity, out)

    def scale(self, c) -> "TensorElement":
        c = Fraction(c)
        if not c:
            return TensorElement.zero(self.vars, self.arity)
        return TensorElement(self.vars, self.arity,
                             {legs: c * x for legs, x in self.terms.items()})


def tensor_of(legs: Sequence[AlgebraElement]) -> TensorElement:
    """Outer tensor product of 2 or 3 algebra elements."""
    vars = legs[0].vars
    arity = len(legs)
    out: Dict[Tuple[Mono, ...], Fraction] = {}
    for combo in itertools.product(*(leg.terms.items() for leg in legs)):
        key = tuple(m for m, _ in combo)
        c = Fraction(1)
        for _, x in combo:
            c *= x
        s = out.get(key, Fraction(0)) + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return TensorElement(vars, arity, out)


# ---------------------------------------------------------------------------
# canonical text format


def _format_terms(vars: Variables, items) -> str:
    parts = []
    for key, coeff, monotext in items:
        mag = abs(coeff)
        if monotext == "1":
            body = str(mag)
        elif mag == 1:
            body = monotext
        else:
            body = f"{mag} {monotext}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def format_element(el: AlgebraElement) -> str:
    vars = el.vars
    items = sorted(((m, c) for m, c in el.terms.items()),
                   key=lambda mc: vars.order_key(mc[0]))
    return _format_terms(vars, ((m, c, vars.format_mono(m)) for m, c in items))


def format_tensor(t: TensorElement) -> str:
    vars = t.vars
    items = sorted(((legs, c) for legs, c in t.terms.items()),
                   key=lambda lc: tuple(vars.order_key(m) for m in lc[0]))
    return _format_terms(
        vars,
        ((legs, c, "(x)".join(vars.format_mono(m) for m in legs)) for legs, c in items))


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<tensor>\(x\))|(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<pow>\^-?\d+)|(?P<op>[+\-*]))")


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"syntax error at {text[pos:pos + 12]!r}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
    return out


def _parse_terms(text: str):
    """Split into (+1/-1 sign, token list) per additive term."""
    toks = _tokenize(text)
    terms, cur, sign = [], [], 1
    expect_term = True
    for kind, val in toks:
        if kind == "op" and val in "+-" and (expect_term or True):
            if cur:
                terms.append((sign, cur))
                cur, sign = [], 1
            if val == "-":
                sign = -sign
            expect_term = True
            continue
        if kind == "op" and val == "*":
            continue
        cur.append((kind, val))
        expect_term = False
    if cur:
        terms.append((sign, cur))
    return terms


def _term_to_legs(vars: Variables, toks, arity: int):
    """Reduce one additive term to (coefficient, legs) with `arity` legs."""
    legs = [[] for _ in range(arity)]
    cur = 0
    coeff = Fraction(1)
    i = 0
    while i < len(toks):
        kind, val = toks[i]
        if kind == "tensor":
            cur += 1
            if cur >= arity:
                raise InputError("too many tensor legs")
            i += 1
            continue
        if kind == "num":
            coeff *= Fraction(val)
            i += 1
            continue
        if kind == "ident":
            power = 1
            if i + 1 < len(toks) and toks[i + 1][0] == "pow":
                power = int(toks[i + 1][1][1:])
                i += 1
            legs[cur].append((val, power))
            i += 1
            continue
        raise InputError(f"unexpected token {val!r}")
    if cur != arity - 1:
        raise InputError(f"expected {arity} tensor legs, found {cur + 1}")
    monos = []
    for leg in legs:
        exps: Dict[str, int] = {}
        for nm, p in leg:
            exps[nm] = exps.get(nm, 0) + p
        monos.append(vars.mono(exps))
    return coeff, tuple(monos)


def parse_element(text: str, vars: Variables) -> AlgebraElement:
    out: Dict[Mono, Fraction] = {}
    for sign, toks in _parse_terms(text):
        coeff, (m,) = _term_to_legs(vars, toks, 1)
        c = out.get(m, Fraction(0)) + sign * coeff
        if c:
            out[m] = c
        else:
            out.pop(m, None)
    return AlgebraElement(vars, out)


def parse_tensor(text: str, vars: Variables, arity: int) -> TensorElement:
    out: Dict[Tuple[Mono, ...], Fraction] = {}
    for sign, toks in _parse_terms(text):
        coeff, legs = _term_to_legs(vars, toks, arity)
        c = out.get(legs, Fraction(0)) + sign * coeff
        if c:
            out[legs] = c
        else:
            out.pop(legs, None)
    return TensorElement(vars, arity, out)


# ---------------------------------------------------------------------------
# dense-in-degree enumeration


def monomials_up_to(vars: Variables, degree: int, laurent_window: int = 1) -> list:
    """All monomials with unipotent total degree <= degree and Laurent
    exponents in [-laurent_window, laurent_window], in canonical order."""
    lau_ranges = [range(-laurent_window, laurent_window + 1)] * vars.n_laurent
    uni = vars.n - vars.n_laurent
    out = []

    def uni_parts(slots: int, budget: int):
        if slots == 0:
            yield ()
            return
        for e in range(budget + 1):
            for rest in uni_parts(slots - 1, budget - e):
                yield (e,) + rest

    for lau in itertools.product(*lau_ranges):
        for u in uni_parts(uni, degree):
            out.append(lau + u)
    out.sort(key=vars.order_key)
    return out


def mono_tuples_up_to(vars: Variables, arity: int, degree: int,
                      laurent_window: int = 1) -> Iterator[Tuple[Mono, ...]]:
    """Tuples of monomials with joint unipotent degree <= degree.

    Each slot's Laurent exponents range over the window independently.
    """
    monos = monomials_up_to(vars, degree, laurent_window)
    udeg = vars.mono_udeg

    def rec(slots: int, budget: int):
        if slots == 0:
            yield ()
            return
        for m in monos:
            d = udeg(m)
            if d > budget:
                continue
            for rest in rec(slots - 1, budget - d):
                yield (m,) + rest

    return rec(arity, degree)
