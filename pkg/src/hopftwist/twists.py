"""Bifunctionals on a coordinate Hopf algebra: twist construction and calculus.

A twist packages two bilinear forms J and J^-1 on A (x) A, convolution-inverse
to each other.  Kinds:

* trivial        -- eps (x) eps
* expR           -- pullback of (eps (x) eps) o exp(scale * rhat) along a Hopf
                    surjection onto an abelian support presentation, where
                    rhat is built from canonical derivations (d/dy on
                    unipotent generators, x*d/dx on Laurent ones)
* table          -- finitely many monomial-pair values, all other non-unit
                    pairs default to zero and are recorded in an assumption log
* pullback       -- another twist composed with a validated Hopf map
* flipped        -- arguments swapped
* convolution    -- convolution product of two twists

Every evaluation returns ``(value, log)`` where ``log`` is a frozenset of
canonically formatted monomial pairs that a table twist resolved by its zero
default.  expR and trivial twists always return an empty log.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .hopf import GroupPresentation
from .poly import (AlgebraElement, DomainError, InputError, Mono, TensorElement,
                   ValidationError, Variables, format_element, tensor_of)

EMPTY_LOG: frozenset = frozenset()

Valued = Tuple[Fraction, frozenset]


def merge_logs(*logs: frozenset) -> frozenset:
    out = EMPTY_LOG
    for lg in logs:
        if lg:
            out = out | lg
    return out


class PairForm:
    """A bilinear form on elements of one presentation, memoized per monomial pair."""

    def __init__(self, presentation: GroupPresentation):
        self.presentation = presentation
        self._memo: Dict[Tuple[Mono, Mono], Valued] = {}

    def mono_value(self, a: Mono, b: Mono) -> Valued:
        raise NotImplementedError

    def value_monos(self, a: Mono, b: Mono) -> Valued:
        key = (a, b)
        hit = self._memo.get(key)
        if hit is None:
            hit = self.mono_value(a, b)
            self._memo[key] = hit
        return hit

    def of(self, a: AlgebraElement, b: AlgebraElement) -> Valued:
        total = Fraction(0)
        log = EMPTY_LOG
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                v, lg = self.value_monos(ma, mb)
                if v:
                    total += ca * cb * v
                if lg:
                    log = log | lg
        return total, log

    def flip(self) -> "PairForm":
        return FlipForm(self)


class FlipForm(PairForm):
    def __init__(self, base: PairForm):
        super().__init__(base.presentation)
        self.base = base

    def mono_value(self, a: Mono, b: Mono) -> Valued:
        return self.base.value_monos(b, a)

    def flip(self) -> PairForm:
        return self.base


class EpsEpsForm(PairForm):
    def mono_value(self, a: Mono, b: Mono) -> Valued:
        vars = self.presentation.vars
        return vars.mono_counit(a) * vars.mono_counit(b), EMPTY_LOG


class DiffForm(PairForm):
    """Pointwise difference f - g."""

    def __init__(self, f: PairForm, g: PairForm):
        super().__init__(f.presentation)
        self.f, self.g = f, g

    def mono_value(self, a: Mono, b: Mono) -> Valued:
        v1, l1 = self.f.value_monos(a, b)
        v2, l2 = self.g.value_monos(a, b)
        return v1 - v2, merge_logs(l1, l2)


class ConvForm(PairForm):
    """Convolution (f * g)(a, b) = sum f(a1, b1) g(a2, b2)."""

    def __init__(self, f: PairForm, g: PairForm):
        super().__init__(f.presentation)
        self.f, self.g = f, g

    def mono_value(self, a: Mono, b: Mono) -> Valued:
        gp = self.presentation
        total = Fraction(0)
        log = EMPTY_LOG
        for (a1, a2), ca in gp.delta_mono(a).terms.items():
            for (b1, b2), cb in gp.delta_mono(b).terms.items():
                v1, l1 = self.f.value_monos(a1, b1)
                if l1:
                    log = log | l1
                if not v1:
                    continue
                v2, l2 = self.g.value_monos(a2, b2)
                if l2:
                    log = log | l2
                if v2:
                    total += ca * cb * v1 * v2
        return total, log


def convolve_bi(f: PairForm, g: PairForm, a: AlgebraElement,
                b: AlgebraElement) -> Valued:
    return ConvForm(f, g).of(a, b)


# ---------------------------------------------------------------------------
# twists


class Twist:
    """Evaluator pair (J, J^-1) on A (x) A."""

    kind = "abstract"

    def __init__(self, presentation: GroupPresentation):
        self.presentation = presentation
        self.J: PairForm = None  # set by subclasses
        self.Jinv: PairForm = None

    @property
    def J21(self) -> PairForm:
        return self.J.flip()

    @property
    def J21inv(self) -> PairForm:
        return self.Jinv.flip()

    def skew_part(self) -> PairForm:
        """J - J21."""
        return DiffForm(self.J, self.J21)

    def inverse_skew_part(self) -> PairForm:
        """J^-1 - J21^-1."""
        return DiffForm(self.Jinv, self.J21inv)

    def bieval(self, a: AlgebraElement, b: AlgebraElement, side: str = "J") -> Valued:
        if side == "J":
            return self.J.of(a, b)
        if side == "Jinv":
            return self.Jinv.of(a, b)
        raise InputError(f"unknown twist side {side!r}")


class _TwistSide(PairForm):
    def __init__(self, twist: "Twist", fn):
        super().__init__(twist.presentation)
        self._fn = fn

    def mono_value(self, a: Mono, b: Mono) -> Valued:
        return self._fn(a, b)


class TrivialTwist(Twist):
    kind = "trivial"

    def __init__(self, presentation: GroupPresentation):
        super().__init__(presentation)
        self.J = EpsEpsForm(presentation)
        self.Jinv = EpsEpsForm(presentation)


def trivial_twist(presentation: GroupPresentation) -> TrivialTwist:
    return TrivialTwist(presentation)


class ExpRTwist(Twist):
    """Exponential r-matrix twist pulled back along a Hopf surjection.

    `pairs` lists (gen_i, gen_j, coeff) over the support; the operator is
    rhat = sum coeff * (D_i (x) D_j - D_j (x) D_i) with D the canonical
    derivation of each support generator.  J evaluates as
    (eps (x) eps) o exp(scale * rhat) applied to (pi(a) (x) pi(b)).
    """

    kind = "expR"

    def __init__(self, presentation: GroupPresentation, support: GroupPresentation,
                 pairs: Sequence[Tuple[str, str, Fraction]],
                 embed: Mapping[str, AlgebraElement],
                 scale: Fraction = Fraction(1, 2), max_order: int = 64):
        super().__init__(presentation)
        if not support.is_abelian():
            raise ValidationError("expR support presentation must be abelian (all q = 0)")
        self.support = support
        self.scale = Fraction(scale)
        self.max_order = int(max_order)
        svars = support.vars
        self.pairs: List[Tuple[int, int, Fraction]] = []
        for gi, gj, c in pairs:
            for g in (gi, gj):
                if g not in svars.index:
                    raise InputError(f"expR pair uses undeclared support generator {g!r}")
            i, j = svars.index[gi], svars.index[gj]
            if svars.is_laurent(i) and svars.is_laurent(j):
                raise ValidationError(
                    f"unsupported torus-torus pair ({gi}, {gj}): value not rational")
            self.pairs.append((i, j, Fraction(c)))
        self.embed = dict(embed)
        _validate_hopf_map(presentation, support, self.embed, what="expR embedding")
        self._pi_cache: Dict[Mono, AlgebraElement] = {}
        self.J = _TwistSide(self, lambda a, b: (self._series(a, b, self.scale), EMPTY_LOG))
        self.Jinv = _TwistSide(self, lambda a, b: (self._series(a, b, -self.scale), EMPTY_LOG))

    def pi(self, m: Mono) -> AlgebraElement:
        hit = self._pi_cache.get(m)
        if hit is None:
            el = AlgebraElement(self.presentation.vars, {m: Fraction(1)})
            hit = el.substitute(self.embed, target=self.support.vars)
            self._pi_cache[m] = hit
        return hit

    def _derive(self, m: Mono, i: int) -> Tuple[Fraction, Mono] | None:
        e = m[i]
        if e == 0:
            return None
        svars = self.support.vars
        if svars.is_laurent(i):
            return Fraction(e), m
        out = list(m)
        out[i] = e - 1
        return Fraction(e), tuple(out)

    def _rhat(self, t: Dict[Tuple[Mono, Mono], Fraction]) -> Dict[Tuple[Mono, Mono], Fraction]:
        out: Dict[Tuple[Mono, Mono], Fraction] = {}

        def put(key, val):
            s = out.get(key, Fraction(0)) + val
            if s:
                out[key] = s
            else:
                out.pop(key, None)

        for (u, v), c in t.items():
            for i, j, coeff in self.pairs:
                du_i = self._derive(u, i)
                dv_j = self._derive(v, j)
                if du_i and dv_j:
                    put((du_i[1], dv_j[1]), c * coeff * du_i[0] * dv_j[0])
                du_j = self._derive(u, j)
                dv_i = self._derive(v, i)
                if du_j and dv_i:
                    put((du_j[1], dv_i[1]), -c * coeff * du_j[0] * dv_i[0])
        return out

    def _series(self, a: Mono, b: Mono, scale: Fraction) -> Fraction:
        svars = self.support.vars
        pa, pb = self.pi(a), self.pi(b)
        t: Dict[Tuple[Mono, Mono], Fraction] = {}
        for ma, ca in pa.terms.items():
            for mb, cb in pb.terms.items():
                key = (ma, mb)
                s = t.get(key, Fraction(0)) + ca * cb
                if s:
                    t[key] = s
                else:
                    t.pop(key, None)

        def eps_pick(tt):
            tot = Fraction(0)
            eps = svars.mono_counit
            for (u, v), c in tt.items():
                e = eps(u) * eps(v)
                if e:
                    tot += c * e
            return tot

        total = eps_pick(t)
        n = 0
        while t:
            n += 1
            if n > self.max_order:
                raise DomainError(f"expR series exceeded iteration cap {self.max_order}")
            t = self._rhat(t)
            factor = scale / n
            t = {k: v * factor for k, v in t.items()}
            total += eps_pick(t)
        return total


def build_expr_twist(presentation: GroupPresentation, support: GroupPresentation,
                     pairs, embed: Mapping[str, str | AlgebraElement],
                     scale=Fraction(1, 2), max_order: int = 64) -> ExpRTwist:
    """Convenience wrapper: embed images may be given as text."""
    from .poly import parse_element
    images = {}
    for nm, img in embed.items():
        if isinstance(img, str):
            img = parse_element(img, support.vars)
        images[nm] = img
    norm_pairs = [(gi, gj, Fraction(c)) for gi, gj, c in pairs]
    return ExpRTwist(presentation, support, norm_pairs, images,
                     scale=Fraction(scale), max_order=max_order)


class TableTwist(Twist):
    """Twist known through finitely many monomial-pair values.

    Unlisted non-unit pairs evaluate to zero; each such consultation is
    recorded in the returned assumption log.  Counital values J(a,1)=eps(a)
    and J(1,a)=eps(a) are structural, not table entries.
    """

    kind = "table"

    def __init__(self, presentation: GroupPresentation,
                 entries_j: Mapping[Tuple[Mono, Mono], Fraction],
                 entries_jinv: Mapping[Tuple[Mono, Mono], Fraction],
                 certified_degree: int = 2):
        super().__init__(presentation)
        self.certified_degree = certified_degree
        vars = presentation.vars
        unit = vars.unit_mono

        def clean(entries, label):
            out: Dict[Tuple[Mono, Mono], Fraction] = {}
            for (a, b), c in entries.items():
                if a == unit or b == unit:
                    raise InputError(
                        f"{label} entry on a unit leg: counital values are implied")
                if (a, b) in out:
                    raise InputError(f"duplicate {label} entry at "
                                     f"({vars.format_mono(a)}, {vars.format_mono(b)})")
                out[(a, b)] = Fraction(c)
            return out

        self.entries_j = clean(entries_j, "J")
        self.entries_jinv = clean(entries_jinv, "Jinv")
        self._validate_primitive_antisymmetry()
        self.J = _TwistSide(self, lambda a, b: self._lookup(self.entries_j, a, b))
        self.Jinv = _TwistSide(self, lambda a, b: self._lookup(self.entries_jinv, a, b))

    def _validate_primitive_antisymmetry(self):
        gp = self.presentation
        vars = gp.vars
        gens = [vars.var_mono(nm) for nm in vars.unipotent]
        # a generator is primitive iff its q-defect vanishes
        prim = {}
        for nm in vars.unipotent:
            prim[vars.var_mono(nm)] = gp.q_of(nm).is_zero()
        for a in gens:
            for b in gens:
                if not (prim[a] or prim[b]):
                    continue
                va = self.entries_j.get((a, b), Fraction(0))
                vb = self.entries_jinv.get((a, b), Fraction(0))
                if va + vb != 0:
                    raise ValidationError(
                        "table twist violates J + Jinv = 0 on the primitive pair "
                        f"({vars.format_mono(a)}, {vars.format_mono(b)}): "
                        f"{va} + {vb} != 0")

    def _lookup(self, table, a: Mono, b: Mono) -> Valued:
        vars = self.presentation.vars
        unit = vars.unit_mono
        if a == unit:
            return vars.mono_counit(b), EMPTY_LOG
        if b == unit:
            return vars.mono_counit(a), EMPTY_LOG
        hit = table.get((a, b))
        if hit is not None:
            return hit, EMPTY_LOG
        return Fraction(0), frozenset({(vars.format_mono(a), vars.format_mono(b))})


def build_table_twist(presentation: GroupPresentation, entries_j, entries_jinv,
                      certified_degree: int = 2) -> TableTwist:
    """Entries given as (monomial text, monomial text, coefficient) triples."""
    from .poly import parse_element

    def conv(entries):
        out = {}
        for ma, mb, c in entries:
            ea = parse_element(ma, presentation.vars)
            eb = parse_element(mb, presentation.vars)
            if len(ea.terms) != 1 or len(eb.terms) != 1:
                raise InputError(f"table entry legs must be monomials: ({ma}, {mb})")
            (ka, ca), = ea.terms.items()
            (kb, cb), = eb.terms.items()
            key = (ka, kb)
            if key in out:
                raise InputError(f"duplicate table entry ({ma}, {mb})")
            out[key] = Fraction(c) * ca * cb
        return out

    return TableTwist(presentation, conv(entries_j), conv(entries_jinv),
                      certified_degree=certified_degree)


class PullbackTwist(Twist):
    """J'(a, b) = J(pi(a), pi(b)) for a validated Hopf map pi."""

    kind = "pullback"

    def __init__(self, presentation: GroupPresentation, base: Twist,
                 mapping: Mapping[str, AlgebraElement]):
        super().__init__(presentation)
        self.base = base
        self.mapping = dict(mapping)
        _validate_hopf_map(presentation, base.presentation, self.mapping,
                           what="twist pullback map")
        self._pi_cache: Dict[Mono, AlgebraElement] = {}
        self.J = _TwistSide(self, lambda a, b: base.J.of(self.pi(a), self.pi(b)))
        self.Jinv = _TwistSide(self, lambda a, b: base.Jinv.of(self.pi(a), self.pi(b)))

    def pi(self, m: Mono) -> AlgebraElement:
        hit = self._pi_cache.get(m)
        if hit is None:
            el = AlgebraElement(self.presentation.vars, {m: Fraction(1)})
            hit = el.substitute(self.mapping, target=self.base.presentation.vars)
            self._pi_cache[m] = hit
        return hit


def pullback_twist(presentation: GroupPresentation, base: Twist,
                   mapping: Mapping[str, str | AlgebraElement]) -> PullbackTwist:
    from .poly import parse_element
    images = {}
    for nm, img in mapping.items():
        if isinstance(img, str):
            img = parse_element(img, base.presentation.vars)
        images[nm] = img
    return PullbackTwist(presentation, base, images)


class FlippedTwist(Twist):
    kind = "flipped"

    def __init__(self, base: Twist):
        super().__init__(base.presentation)
        self.base = base
        self.J = base.J.flip()
        self.Jinv = base.Jinv.flip()


def flip_twist(base: Twist) -> FlippedTwist:
    return FlippedTwist(base)


class ConvolutionTwist(Twist):
    """J = J1 * J2 with inverse J2^-1 * J1^-1."""

    kind = "convolution"

    def __init__(self, first: Twist, second: Twist):
        if first.presentation is not second.presentation \
                and first.presentation != second.presentation:
            raise InputError("convolution of twists over different presentations")
        super().__init__(first.presentation)
        self.J = ConvForm(first.J, second.J)
        self.Jinv = ConvForm(second.Jinv, first.Jinv)


def _validate_hopf_map(src: GroupPresentation, dst: GroupPresentation,
                       images: Mapping[str, AlgebraElement], what: str):
    """Check the substitution src -> dst is a bialgebra map on generators."""
    svars = src.vars
    for nm in svars.names:
        if nm not in images:
            raise ValidationError(f"{what}: no image for generator {nm!r}")
    for nm in svars.names:
        img = images[nm]
        i = svars.index[nm]
        if svars.is_laurent(i):
            if len(img.terms) != 1:
                raise ValidationError(f"{what}: image of Laurent {nm!r} is not invertible")
            (m, _), = img.terms.items()
            if any(m[k] and not dst.vars.is_laurent(k) for k in range(dst.vars.n)):
                raise ValidationError(f"{what}: image of Laurent {nm!r} is not invertible")
        if src.counit(AlgebraElement.var(svars, nm)) != dst.counit(img):
            raise ValidationError(f"{what}: counit not preserved on {nm!r}")
        lhs = dst.coproduct(img)
        rhs = TensorElement.zero(dst.vars, 2)
        for (l, r), c in src.delta_mono(svars.var_mono(nm)).terms.items():
            el_l = AlgebraElement(svars, {l: Fraction(1)}).substitute(
                images, target=dst.vars)
            el_r = AlgebraElement(svars, {r: Fraction(1)}).substitute(
                images, target=dst.vars)
            rhs = rhs + tensor_of([el_l, el_r]).scale(c)
        if lhs != rhs:
            raise ValidationError(
                f"{what}: coproduct compatibility fails on generator {nm!r}")


class RawPairTable(PairForm):
    """Ad-hoc bilinear form from a finite pair table (zero elsewhere, no logging).

    Counital values on unit legs are implied.  Mainly used to feed deliberately
    broken forms into the checkers.
    """

    def __init__(self, presentation: GroupPresentation,
                 entries: Mapping[Tuple[Mono, Mono], Fraction]):
        super().__init__(presentation)
        self.entries = {k: Fraction(v) for k, v in entries.items()}

    def mono_value(self, a: Mono, b: Mono) -> Valued:
        vars = self.presentation.vars
        unit = vars.unit_mono
        if a == unit:
            return vars.mono_counit(b), EMPTY_LOG
        if b == unit:
            return vars.mono_counit(a), EMPTY_LOG
        return self.entries.get((a, b), Fraction(0)), EMPTY_LOG
