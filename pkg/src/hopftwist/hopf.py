"""Hopf-algebra structure of coordinate rings of unipotent / nilpotent groups.

A ``GroupPresentation`` declares grouplike Laurent generators and an ordered
list of unipotent generators, each with a coproduct defect

    q(y) = delta(y) - y(x)1 - 1(x)y

supported on strictly earlier generators.  The coproduct, counit, antipode
and point translations extend from the generators; all values exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple

from .poly import (AlgebraElement, DomainError, InputError, Mono, TensorElement,
                   ValidationError, Variables, format_element, format_tensor,
                   tensor_of)


class GroupPresentation:
    """Coordinate Hopf algebra data: variables plus q-defects of the unipotent generators."""

    def __init__(self, vars: Variables, q: Mapping[str, TensorElement] | None = None):
        self.vars = vars
        self.q: Dict[str, TensorElement] = {}
        q = q or {}
        for nm, t in q.items():
            if nm not in vars.index or vars.is_laurent(vars.index[nm]):
                raise InputError(f"q-data declared for non-unipotent variable {nm!r}")
            if t.arity != 2:
                raise InputError(f"q({nm}) must have tensor arity 2")
            if not t.is_zero():
                self.q[nm] = t
        self._delta1: Dict[Mono, TensorElement] = {}
        self._delta2: Dict[Mono, TensorElement] = {}
        self._antipode: Dict[Mono, AlgebraElement] = {}
        self._weights: Dict[str, int] | None = None

    def __eq__(self, other):
        return isinstance(other, GroupPresentation) and self.vars == other.vars \
            and self.q == other.q

    def is_abelian(self) -> bool:
        return not self.q

    def q_of(self, name: str) -> TensorElement:
        return self.q.get(name, TensorElement.zero(self.vars, 2))

    # -- coproduct ----------------------------------------------------------

    def _gen_delta(self, i: int) -> TensorElement:
        vars = self.vars
        nm = vars.names[i]
        g = vars.var_mono(nm)
        if vars.is_laurent(i):
            return TensorElement(vars, 2, {(g, g): Fraction(1)})
        unit = vars.unit_mono
        t = TensorElement(vars, 2, {(g, unit): Fraction(1), (unit, g): Fraction(1)})
        return t + self.q_of(nm)

    def delta_mono(self, m: Mono) -> TensorElement:
        cached = self._delta1.get(m)
        if cached is not None:
            return cached
        vars = self.vars
        out = TensorElement.unit(vars, 2)
        for i, e in enumerate(m):
            if e == 0:
                continue
            if vars.is_laurent(i):
                g = vars.var_mono(vars.names[i], e)
                out = out * TensorElement(vars, 2, {(g, g): Fraction(1)})
            else:
                base = self._gen_delta(i)
                for _ in range(e):
                    out = out * base
        self._delta1[m] = out
        return out

    def delta2_mono(self, m: Mono) -> TensorElement:
        """Iterated coproduct (delta (x) id) o delta, three legs."""
        cached = self._delta2.get(m)
        if cached is not None:
            return cached
        vars = self.vars
        out: Dict[Tuple[Mono, ...], Fraction] = {}
        for (l1, l2), c in self.delta_mono(m).terms.items():
            for (a, b), d in self.delta_mono(l1).terms.items():
                key = (a, b, l2)
                s = out.get(key, Fraction(0)) + c * d
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        t = TensorElement(vars, 3, out)
        self._delta2[m] = t
        return t

    def delta2_mono_right(self, m: Mono) -> TensorElement:
        """(id (x) delta) o delta, for coassociativity checks."""
        out: Dict[Tuple[Mono, ...], Fraction] = {}
        for (l1, l2), c in self.delta_mono(m).terms.items():
            for (a, b), d in self.delta_mono(l2).terms.items():
                key = (l1, a, b)
                s = out.get(key, Fraction(0)) + c * d
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return TensorElement(self.vars, 3, out)

    def coproduct(self, p: AlgebraElement, iterate: int = 1) -> TensorElement:
        if iterate not in (1, 2):
            raise InputError("iterate must be 1 or 2")
        arity = iterate + 1
        out = TensorElement.zero(self.vars, arity)
        expand = self.delta_mono if iterate == 1 else self.delta2_mono
        for m, c in p.terms.items():
            out = out + expand(m).scale(c)
        return out

    # -- filtration weights ---------------------------------------------------

    def generator_weights(self) -> Dict[str, int]:
        """Filtration weight per generator: 0 on Laurent variables, 1 on
        primitive unipotent generators, and for a defect q(y) = sum Y'(x)Y''
        the maximum of weight(Y') + weight(Y'') over its terms."""
        if self._weights is not None:
            return self._weights
        w: Dict[str, int] = {nm: 0 for nm in self.vars.laurent}
        for nm in self.vars.unipotent:
            qv = self.q_of(nm)
            if qv.is_zero():
                w[nm] = 1
            else:
                best = 1
                for (l, r), _ in qv.terms.items():
                    wl = sum(e * w[self.vars.names[i]] for i, e in enumerate(l) if e)
                    wr = sum(e * w[self.vars.names[i]] for i, e in enumerate(r) if e)
                    best = max(best, wl + wr)
                w[nm] = best
        self._weights = w
        return w

    def mono_weight(self, m: Mono) -> int:
        w = self.generator_weights()
        return sum(e * w[self.vars.names[i]] for i, e in enumerate(m) if e)

    # -- counit, antipode ---------------------------------------------------

    def counit(self, p: AlgebraElement) -> Fraction:
        total = Fraction(0)
        for m, c in p.terms.items():
            total += c * self.vars.mono_counit(m)
        return total

    def _gen_antipode(self, i: int) -> AlgebraElement:
        vars = self.vars
        nm = vars.names[i]
        if vars.is_laurent(i):
            return AlgebraElement.var(vars, nm, -1)
        out = -AlgebraElement.var(vars, nm)
        for (l, r), c in self.q_of(nm).terms.items():
            out = out - (self.antipode_mono(l) * AlgebraElement(vars, {r: c}))
        return out

    def antipode_mono(self, m: Mono) -> AlgebraElement:
        cached = self._antipode.get(m)
        if cached is not None:
            return cached
        vars = self.vars
        out = AlgebraElement.one(vars)
        for i, e in enumerate(m):
            if e == 0:
                continue
            if vars.is_laurent(i):
                out = out * AlgebraElement.var(vars, vars.names[i], -e)
            else:
                g = self._gen_antipode(i)
                for _ in range(e):
                    out = out * g
        self._antipode[m] = out
        return out

    def antipode(self, p: AlgebraElement) -> AlgebraElement:
        out = AlgebraElement.zero(self.vars)
        for m, c in p.terms.items():
            out = out + self.antipode_mono(m).scale(c)
        return out

    # -- points and translations --------------------------------------------

    def ev(self, p: AlgebraElement, g: "GroupPoint") -> Fraction:
        total = Fraction(0)
        for m, c in p.terms.items():
            val = Fraction(1)
            for i, e in enumerate(m):
                if e:
                    val *= g.coord(self.vars.names[i]) ** e
            total += c * val
        return total

    def rho(self, p: AlgebraElement, g: "GroupPoint") -> AlgebraElement:
        """Right translation (id (x) ev_g) o delta."""
        out: Dict[Mono, Fraction] = {}
        for m, c in p.terms.items():
            for (l, r), d in self.delta_mono(m).terms.items():
                v = c * d * self._ev_mono(r, g)
                if v:
                    s = out.get(l, Fraction(0)) + v
                    if s:
                        out[l] = s
                    else:
                        out.pop(l, None)
        return AlgebraElement(self.vars, out)

    def lam(self, p: AlgebraElement, g: "GroupPoint") -> AlgebraElement:
        """Left translation (ev_g o S (x) id) o delta."""
        out = AlgebraElement.zero(self.vars)
        for m, c in p.terms.items():
            for (l, r), d in self.delta_mono(m).terms.items():
                v = c * d * self.ev(self.antipode_mono(l), g)
                if v:
                    out = out + AlgebraElement(self.vars, {r: v})
        return out

    def lam_inverse(self, p: AlgebraElement, g: "GroupPoint") -> AlgebraElement:
        """Left translation by the inverse point, (ev_g (x) id) o delta."""
        out: Dict[Mono, Fraction] = {}
        for m, c in p.terms.items():
            for (l, r), d in self.delta_mono(m).terms.items():
                v = c * d * self._ev_mono(l, g)
                if v:
                    s = out.get(r, Fraction(0)) + v
                    if s:
                        out[r] = s
                    else:
                        out.pop(r, None)
        return AlgebraElement(self.vars, out)

    def ad(self, p: AlgebraElement, g: "GroupPoint") -> AlgebraElement:
        return self.rho(self.lam(p, g), g)

    def translate(self, p: AlgebraElement, g: "GroupPoint", which: str):
        if which == "ev":
            return self.ev(p, g)
        if which == "right":
            return self.rho(p, g)
        if which == "left":
            return self.lam(p, g)
        if which == "ad":
            return self.ad(p, g)
        raise InputError(f"unknown translation kind {which!r}")

    def _ev_mono(self, m: Mono, g: "GroupPoint") -> Fraction:
        val = Fraction(1)
        for i, e in enumerate(m):
            if e:
                val *= g.coord(self.vars.names[i]) ** e
        return val

    # -- convenience ---------------------------------------------------------

    def element(self, text: str) -> AlgebraElement:
        from .poly import parse_element
        return parse_element(text, self.vars)

    def gen(self, name: str) -> AlgebraElement:
        return AlgebraElement.var(self.vars, name)

    def is_primitive(self, p: AlgebraElement) -> bool:
        if self.counit(p) != 0:
            return False
        unit = self.vars.unit_mono
        expect = TensorElement.zero(self.vars, 2)
        for m, c in p.terms.items():
            expect = expect + TensorElement(self.vars, 2,
                                            {(m, unit): c, (unit, m): c})
        return self.coproduct(p) == expect


class GroupPoint:
    """A rational point: unipotent coordinates default to 0, Laurent ones to 1."""

    __slots__ = ("vars", "coords")

    def __init__(self, vars: Variables, coords: Mapping[str, Fraction] | None = None):
        self.vars = vars
        self.coords: Dict[str, Fraction] = {}
        for nm, v in (coords or {}).items():
            if nm not in vars.index:
                raise InputError(f"undeclared coordinate {nm!r}")
            v = Fraction(v)
            if vars.is_laurent(vars.index[nm]) and v == 0:
                raise InputError(f"Laurent coordinate {nm!r} must be nonzero")
            self.coords[nm] = v

    def coord(self, name: str) -> Fraction:
        if name in self.coords:
            return self.coords[name]
        return Fraction(1) if self.vars.is_laurent(self.vars.index[name]) else Fraction(0)

    @classmethod
    def identity(cls, vars: Variables) -> "GroupPoint":
        return cls(vars)


def validate_presentation(gp: GroupPresentation, strict: bool = False):
    """Structural checks on a presentation.

    Returns (errors, warnings) as lists of message strings.  With strict=True
    the first error raises ValidationError instead.
    """
    errors: List[str] = []
    warnings: List[str] = []
    vars = gp.vars
    uni = vars.unipotent

    def fail(msg):
        if strict:
            raise ValidationError(msg)
        errors.append(msg)

    for nm in gp.q:
        if nm not in uni:
            fail(f"q-data on unknown unipotent generator {nm!r}")

    for pos, nm in enumerate(uni):
        qv = gp.q_of(nm)
        earlier = set(vars.laurent) | set(uni[:pos])
        for (l, r), _ in qv.terms.items():
            for leg, side in ((l, "left"), (r, "right")):
                if vars.mono_counit(leg) != 0:
                    fail(f"q({nm}): {side} leg {vars.format_mono(leg)!r} "
                         "is not in the augmentation ideal")
                used = {vars.names[i] for i, e in enumerate(leg) if e}
                bad = used - earlier
                if bad:
                    fail(f"q({nm}): {side} leg uses non-earlier variable(s) "
                         f"{sorted(bad)}")
        if pos == 0 and not qv.is_zero():
            fail(f"q({nm}) must vanish on the first unipotent generator")
        if pos == 1 and not qv.is_zero():
            warnings.append(f"q({nm}) nonzero on the second unipotent generator "
                            "(non-canonical coordinates)")

    unit = AlgebraElement.one(vars)
    for i, nm in enumerate(vars.names):
        g = vars.var_mono(nm)
        lhs = gp.delta2_mono(g)
        rhs = gp.delta2_mono_right(g)
        if lhs != rhs:
            fail(f"coassociativity fails on {nm}: discrepancy "
                 f"{format_tensor(lhs - rhs)}")
        # counit axioms (eps (x) id) delta = id = (id (x) eps) delta
        left = AlgebraElement.zero(vars)
        right = AlgebraElement.zero(vars)
        for (l, r), c in gp.delta_mono(g).terms.items():
            left = left + AlgebraElement(vars, {r: c * vars.mono_counit(l)})
            right = right + AlgebraElement(vars, {l: c * vars.mono_counit(r)})
        want = AlgebraElement.var(vars, nm)
        if left != want or right != want:
            fail(f"counit axiom fails on {nm}")
        # antipode axiom m(S (x) id) delta = eps * 1
        acc = AlgebraElement.zero(vars)
        for (l, r), c in gp.delta_mono(g).terms.items():
            acc = acc + (gp.antipode_mono(l) * AlgebraElement(vars, {r: c}))
        want = unit.scale(vars.mono_counit(g))
        if acc != want:
            fail(f"antipode axiom fails on {nm}: got {format_element(acc)}")
    return errors, warnings
