"""Acceptance suite: every fixture-level claim checked exactly, one criterion
per test, each with its stated wall-clock budget.  Run with -s to see the
per-criterion verdict lines.
"""

import time
from fractions import Fraction

import pytest

from hopftwist import (AlgebraElement, GroupPoint, TwistedProduct,
                       check_associativity, check_coproduct_homomorphism,
                       check_cotriangular, check_hopf_cocycle,
                       check_leading_term, check_primitive_pairing,
                       check_product_equality, format_element, rform)
from hopftwist.catalog import load_example, verify_example
from hopftwist.lie import (LieModel, RMatrix, SkewForm, cybe_check,
                           cybe_components, jacobi_check, omega_r_duality)
from hopftwist.structure import (element_bracket_table, lemma_formula_check,
                                 lie_closure_check, presentation_table,
                                 quotient_algebra, smash_relation_check,
                                 twist_invariance_check, weyl_pair_check)

EXPR_KEYS = ("heisenberg3", "dim4-base", "u4-coset", "nilpotent-torus")


class Budget:
    def __init__(self, label, seconds):
        self.label = label
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.monotonic() - self.t0
        verdict = "PASS" if exc_type is None else "FAIL"
        print(f"{self.label}: {verdict} ({self.elapsed:.2f}s)")
        if exc_type is None:
            assert self.elapsed < self.seconds, \
                f"{self.label} exceeded its {self.seconds}s budget"
        return False


def two_sided(doc):
    return TwistedProduct(doc.presentation, doc.twist, doc.twist, "two-sided")


def test_criterion_1_dim4_base():
    with Budget("criterion-1 dim4-base", 5):
        doc = load_example("dim4-base")
        el = doc.element
        table = presentation_table(doc.twist)
        assert table.bracket("W", "X") == el("Y")
        assert table.bracket("W", "V") == el("1/2 Y^2")
        for a, b in (("X", "Y"), ("X", "V"), ("Y", "V"), ("Y", "W")):
            assert table.bracket(a, b).is_zero()
        assert sum(0 if v.is_zero() else 1 for v in table.brackets.values()) == 2

        prod = two_sided(doc)
        quot, qrep = quotient_algebra(prod, {"Y": el("1")})
        assert qrep.ok
        assert quot.commutator(el("W"), el("V"))[0] == el("1/2")
        assert weyl_pair_check(quot, el("W"), el("2 V")).ok

        _, reject = quotient_algebra(prod, {"X": el("1")})
        assert not reject.ok


def test_criterion_2_heisenberg3_invariance():
    with Budget("criterion-2 heisenberg3", 10):
        doc = load_example("heisenberg3")
        rep = check_product_equality(two_sided(doc), degree=4)
        assert rep.ok, rep.failures[:1]


def test_criterion_3_dim4_minimal():
    with Budget("criterion-3 dim4-minimal", 5):
        doc = load_example("dim4-minimal")
        el = doc.element
        table = presentation_table(doc.twist)
        assert table.bracket("W", "X") == el("Y")
        assert table.bracket("W", "V") == el("1/2 Y^2 + X")
        assert sum(0 if v.is_zero() else 1 for v in table.brackets.values()) == 2
        assert table.log, "assumed-zero log must be surfaced"

        target = LieModel(["a", "b", "c", "d"],
                          {("a", "b"): {"c": 1}, ("c", "b"): {"d": 1}})
        basis = [("Xp", el("1/2 Y^2 + X")), ("Y", el("Y")),
                 ("V", el("V")), ("W", el("W"))]
        corr = [("V", Fraction(1), "a"), ("W", Fraction(-1), "b"),
                ("Xp", Fraction(1), "c"), ("Y", Fraction(1), "d")]
        rep = lie_closure_check(two_sided(doc), basis, target, corr)
        assert rep.ok, rep.failures[:1]


def test_criterion_4_u4_coset():
    # The published relation triple {[Y,F13], [F13,V], [Y,V]} is jointly
    # unsatisfiable for any twist of this form: the brackets come out as
    # (c, -c, c) times the stated values for c = J(U,X) - J(X,U), so no sign
    # choice makes all three hold with the printed argument order.  The
    # fixture pins c = +1 and the middle bracket in the [V,F13] orientation;
    # see the decisions ledger for the derivation.
    with Budget("criterion-4 u4-coset", 10):
        doc = load_example("u4-coset")
        el = doc.element
        left = TwistedProduct(doc.presentation, doc.twist, None, "left")
        labeled = [("F23", el("F23")), ("F13", el("F13")),
                   ("Y", el("F24 - F23 F34")), ("V", el("F14 - F13 F34"))]
        table, _ = element_bracket_table(left, labeled)
        assert table[("Y", "F13")] == el("F23^2")
        assert table[("V", "F13")] == el("F23 F13")
        assert table[("V", "Y")] == -(el("F23") * el("F24 - F23 F34"))
        for pair, br in table.items():
            if pair not in {("Y", "F13"), ("V", "F13"), ("V", "Y")}:
                assert br.is_zero(), f"unexpected bracket at {pair}"


def test_criterion_5_u4_quotient():
    with Budget("criterion-5 u4-quotient", 20):
        doc = load_example("u4-quotient")
        el = doc.element
        table = presentation_table(doc.twist)
        assert table.bracket("F14", "F12") == el("F34")
        assert table.bracket("F13", "F14") == el("F24 - F12 - F23 F34")
        assert table.bracket("F14", "F24") == el("F23 - F34")
        assert sum(0 if v.is_zero() else 1 for v in table.brackets.values()) == 3

        prod = two_sided(doc)
        quot, qrep = quotient_algebra(prod, {"F23": el("F34 - 1")})
        assert qrep.ok
        # images: A,B,C,T,Q = F12,F13,F34,F24,F14
        assert quot.commutator(el("F12"), el("F14"))[0] == el("-F34")
        assert quot.commutator(el("F13"), el("F14"))[0] == \
            el("F24 - F12 - F34^2 + F34")
        assert quot.commutator(el("F24"), el("F14"))[0] == el("1")
        assert weyl_pair_check(quot, el("F24"), el("F14")).ok
        # after the sign flip A -> -A and P := T - C(C-1), the element A - C.P
        # commutes with Q (all products taken in the quotient algebra)
        P = el("F24 - F34^2 + F34")
        CP, _ = quot.of(el("F34"), P)
        a_prime = el("-F12") - CP
        assert quot.commutator(a_prime, el("F14"))[0].is_zero()


def test_criterion_6_nilpotent_torus():
    with Budget("criterion-6 nilpotent-torus", 5):
        doc = load_example("nilpotent-torus")
        el = doc.element
        table = presentation_table(doc.twist)
        assert table.bracket("V", "F") == el("F Y - F X")
        assert sum(0 if v.is_zero() else 1 for v in table.brackets.values()) == 1
        rep, p = smash_relation_check(doc.twist, "V", "F")
        assert rep.ok
        assert p == el("Y - X")
        prod = two_sided(doc)
        t1, _ = prod.of(AlgebraElement.var(doc.presentation.vars, "F", -1), el("V"))
        conj, _ = prod.of(t1, el("F"))
        assert conj == el("V + Y - X")


def test_criterion_7_property_suites():
    with Budget("criterion-7 property suites", 60):
        for key in EXPR_KEYS:
            doc = load_example(key)
            gp = doc.presentation
            tw = doc.twist
            if key == "u4-quotient":
                # pullback of the table twist: exercised by its own tasks; the
                # strict exact suites below are for the exponential fixtures
                assert lemma_formula_check(tw).ok
                continue
            assert check_hopf_cocycle(tw, degree=4).ok, key
            prod = two_sided(doc)
            assert check_cotriangular(rform(tw), prod, degree=3).ok, key
            assert check_coproduct_homomorphism(tw, tw, degree=3).ok, key
            for kind in ("two-sided", "right", "left"):
                pk = TwistedProduct(gp, tw, tw, kind)
                assert check_associativity(pk, degree=3).ok, (key, kind)
            assert lemma_formula_check(tw).ok, key
            prims = [nm for nm in gp.vars.unipotent if gp.q_of(nm).is_zero()]
            for p in prims:
                for a in gp.vars.names:
                    assert check_primitive_pairing(tw, gp.gen(p), gp.gen(a)).ok
            assert check_leading_term(prod, degree=4).ok, key


def test_criterion_8_lie_cybe():
    with Budget("criterion-8 lie-cybe", 1):
        four = LieModel(["a", "b", "c", "d"],
                        {("a", "b"): {"c": 1}, ("c", "b"): {"d": 1}})
        r = RMatrix(four, {("a", "c"): 1, ("d", "b"): 1})
        assert cybe_check(r).ok

        heis = LieModel(["a", "b", "c"], {("a", "b"): {"c": 1}})
        bad = RMatrix(heis, {("a", "b"): 1})
        assert not cybe_check(bad).ok
        assert cybe_components(bad)[("c", "a", "b")] == 1

        rep, data = omega_r_duality(four, ["a", "b", "c", "d"], r=r)
        assert rep.ok
        omega = SkewForm(four, {("a", "c"): 1, ("d", "b"): 1})
        rep2, data2 = omega_r_duality(four, ["a", "b", "c", "d"], omega=omega)
        assert rep2.ok
        assert data2["r"] == [[x for x in row] for row in r.m]

        for key in ("heisenberg3", "dim4-base", "dim4-minimal", "u4-coset",
                    "u4-quotient", "nilpotent-torus"):
            doc = load_example(key)
            model = doc.lie["model"]
            assert jacobi_check(model).ok, key
            assert cybe_check(doc.lie["r"]).ok, key
            dual, _ = omega_r_duality(model, doc.lie["subalgebra"],
                                      r=doc.lie["r"])
            assert dual.ok, key


def test_criterion_9_invariance():
    with Budget("criterion-9 invariance", 5):
        doc = load_example("heisenberg3")
        for label in ("g1", "g2", "g3", "g4", "g5"):
            _, equal = twist_invariance_check(doc.twist, doc.point(label), degree=3)
            assert equal, label

        doc4 = load_example("dim4-base")
        gp = doc4.presentation
        g = doc4.point("gY")
        _, equal = twist_invariance_check(doc4.twist, g, degree=3)
        assert not equal
        conj, _ = doc4.twist.J.of(gp.ad(gp.gen("W"), g), gp.ad(gp.gen("X"), g))
        base, _ = doc4.twist.J.of(gp.gen("W"), gp.gen("X"))
        assert (conj, base) == (Fraction(-1, 2), Fraction(0))


def test_golden_suite_all_examples_exit_zero():
    with Budget("golden suite (verify-example x6)", 120):
        for key in ("heisenberg3", "dim4-base", "dim4-minimal", "u4-coset",
                    "u4-quotient", "nilpotent-torus"):
            report, status = verify_example(key)
            assert status == 0, f"{key} failed:\n{report}"
