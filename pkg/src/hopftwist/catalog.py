"""Built-in fixture catalog, task execution and deterministic reporting.

``run_tasks`` executes a document's task list in order and renders one report
section per task.  Exit status: 0 when no task fails (warnings allowed),
1 on any failure, 2 on input errors.  Reports are byte-identical across runs.
"""

from __future__ import annotations

import importlib.resources
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .document import DefinitionDocument, load_definition
from .hopf import validate_presentation
from .lie import cybe_check, jacobi_check, omega_r_duality
from .poly import (AlgebraElement, EngineError, InputError, format_element,
                   parse_element)
from .products import (CheckReport, TwistedProduct, check_associativity,
                       check_coproduct_homomorphism, check_cotriangular,
                       check_hopf_cocycle, check_leading_term,
                       check_primitive_pairing, check_product_equality, rform)
from .structure import (element_bracket_table, lemma_formula_check,
                        lie_closure_check, presentation_table, quotient_algebra,
                        smash_relation_check, twist_invariance_check,
                        weyl_pair_check, double_coset_map_check,
                        delta_stability_check)
from .twists import ExpRTwist, build_expr_twist

CATALOG_KEYS = ("heisenberg3", "dim4-base", "dim4-minimal", "u4-coset",
                "u4-quotient", "nilpotent-torus")

_CATALOG_BLURBS = {
    "heisenberg3": "3-dim Heisenberg group, invariant twist: twisted = untwisted",
    "dim4-base": "4-dim group, twist on a 2-dim abelian subgroup: [W,X]=Y, [W,V]=1/2 Y^2",
    "dim4-minimal": "4-dim group, full-support table twist: enveloping-algebra presentation",
    "u4-coset": "upper unitriangular 4x4, one-sided coset algebra relations",
    "u4-quotient": "upper unitriangular 4x4, double-coset quotient with a Weyl pair",
    "nilpotent-torus": "torus times Heisenberg, smash-product relation F^-1 V F = V + Y - X",
}


def catalog_text(key: str) -> str:
    if key not in CATALOG_KEYS:
        raise InputError(f"unknown example key {key!r}; known: {', '.join(CATALOG_KEYS)}")
    ref = importlib.resources.files("hopftwist") / "fixtures" / f"{key}.json"
    return ref.read_text()


def load_example(key: str, max_order: Optional[int] = None) -> DefinitionDocument:
    return load_definition(catalog_text(key), max_order=max_order)


def list_examples() -> List[str]:
    return [f"{key}: {_CATALOG_BLURBS[key]}" for key in CATALOG_KEYS]


class RunOptions:
    def __init__(self, degree: int = 4, max_order: int = 64,
                 laurent_window: int = 1, report: str = "text"):
        self.degree = degree
        self.max_order = max_order
        self.laurent_window = laurent_window
        self.report = report


def _expected_lookup(expect: Mapping[str, str], default: Optional[str],
                     a: str, b: str, doc: DefinitionDocument):
    """Expected bracket for the ordered pair (a, b), honoring antisymmetry."""
    key = f"{a},{b}"
    rkey = f"{b},{a}"
    if key in expect:
        return doc.element(expect[key])
    if rkey in expect:
        return -doc.element(expect[rkey])
    if default is None:
        return None
    return doc.element(default)


def _compare_table(rep: CheckReport, computed: Mapping[Tuple[str, str], AlgebraElement],
                   expect: Mapping[str, str], default: Optional[str],
                   doc: DefinitionDocument):
    for (a, b) in sorted(computed):
        got = computed[(a, b)]
        want = _expected_lookup(expect, default, a, b, doc)
        line = f"[{a},{b}] = {format_element(got)}"
        if want is None:
            rep.info(line + "  (no expectation)")
            continue
        if got == want:
            rep.info(line)
        else:
            rep.fail(f"bracket [{a},{b}] = {format_element(got)} differs from "
                     f"expected {format_element(want)}")


# ---------------------------------------------------------------------------
# task implementations


def _task_validate(doc, task, opts) -> CheckReport:
    rep = CheckReport("validate")
    errors, warnings = validate_presentation(doc.presentation)
    for e in errors:
        rep.fail(e)
    for w in warnings:
        rep.warn(w)
    vars = doc.presentation.vars
    rep.info(f"generators: {len(vars.laurent)} Laurent, {len(vars.unipotent)} unipotent")
    return rep


def _two_sided(doc) -> TwistedProduct:
    return TwistedProduct(doc.presentation, doc.twist, doc.twist, "two-sided")


def _task_cocycle(doc, task, opts) -> CheckReport:
    return check_hopf_cocycle(doc.twist, task.get("degree", opts.degree),
                              opts.laurent_window)


def _task_cotriangular(doc, task, opts) -> CheckReport:
    degree = task.get("degree", max(1, opts.degree - 1))
    return check_cotriangular(rform(doc.twist), _two_sided(doc), degree,
                              opts.laurent_window)


def _task_coproduct_hom(doc, task, opts) -> CheckReport:
    degree = task.get("degree", max(1, opts.degree - 1))
    return check_coproduct_homomorphism(doc.twist, doc.twist, degree,
                                        opts.laurent_window)


def _task_associativity(doc, task, opts) -> CheckReport:
    degree = task.get("degree", max(1, opts.degree - 1))
    rep = CheckReport("associativity")
    gp = doc.presentation
    for kind in ("two-sided", "right", "left"):
        prod = TwistedProduct(gp, doc.twist, doc.twist, kind)
        sub = check_associativity(prod, degree, opts.laurent_window)
        rep.absorb_log(sub.log)
        rep.lines.extend(f"{kind}: {ln}" for ln in sub.lines)
        rep.failures.extend(f"{kind}: {ln}" for ln in sub.failures)
        rep.warnings.extend(f"{kind}: {ln}" for ln in sub.warnings)
    return rep


def _task_presentation(doc, task, opts) -> CheckReport:
    rep = CheckReport("presentation")
    table = presentation_table(doc.twist)
    rep.absorb_log(table.log)
    _compare_table(rep, table.brackets, task.get("expect", {}),
                   task.get("default"), doc)
    rep.info("central: " + (", ".join(table.central) if table.central else "(none)"))
    rep.info("primitive: " + (", ".join(table.primitive) if table.primitive else "(none)"))
    for key, ok in sorted(table.contained_in_earlier.items()):
        if not table.brackets[key].is_zero() and not ok:
            rep.fail(f"bracket [{key[0]},{key[1]}] escapes the earlier filtration")
    for nm, rows in table.delta_rows.items():
        rep.info(f"ore-level {nm}: " + "; ".join(rows))
    stab = delta_stability_check(doc.twist, degree=2,
                                 laurent_window=opts.laurent_window)
    if not stab.ok:
        rep.failures.extend(stab.failures)
    rep.absorb_log(stab.log)
    return rep


def _task_lemma_formula(doc, task, opts) -> CheckReport:
    return lemma_formula_check(doc.twist)


def _task_primitive_pairing(doc, task, opts) -> CheckReport:
    rep = CheckReport("primitive-pairing")
    gp = doc.presentation
    vars = gp.vars
    prims = [nm for nm in vars.unipotent if gp.q_of(nm).is_zero()]
    count = 0
    for p in prims:
        for a in vars.names:
            count += 1
            sub = check_primitive_pairing(doc.twist, gp.gen(p), gp.gen(a))
            rep.absorb_log(sub.log)
            if not sub.ok:
                rep.failures.extend(f"({p},{a}): {f}" for f in sub.failures)
    rep.info(f"primitive-generator pairs checked: {count}")
    return rep


def _task_product_equality(doc, task, opts) -> CheckReport:
    return check_product_equality(_two_sided(doc), task.get("degree", opts.degree),
                                  opts.laurent_window)


def _task_invariance(doc, task, opts) -> CheckReport:
    rep = CheckReport("invariance")
    degree = task.get("degree", max(1, opts.degree - 1))
    expect = task.get("expect")
    labels = task.get("points") or sorted(doc.points)
    for label in labels:
        sub, equal = twist_invariance_check(doc.twist, doc.point(label), degree,
                                            opts.laurent_window)
        rep.absorb_log(sub.log)
        word = "equal" if equal else "unequal"
        rep.info(f"point {label}: {word}; " + "; ".join(sub.lines))
        if expect == "equal" and not equal:
            rep.fail(f"point {label}: expected invariance, found a violation")
        if expect == "unequal" and equal:
            rep.fail(f"point {label}: expected a violation, found none up to degree {degree}")
    return rep


def _task_quotient(doc, task, opts) -> CheckReport:
    rep = CheckReport("quotient")
    gp = doc.presentation
    subst = {nm: doc.element(img) for nm, img in task.get("subst", {}).items()}
    quot, qrep = quotient_algebra(_two_sided(doc), subst)
    rep.absorb_log(qrep.log)
    if task.get("expect_rejected"):
        if qrep.ok:
            rep.fail("quotient unexpectedly accepted: ideal passed two-sidedness")
        else:
            rep.info("rejected as expected: " + qrep.failures[0])
        return rep
    if not qrep.ok:
        rep.failures.extend(qrep.failures)
        return rep
    rep.lines.extend(qrep.lines)
    remaining = [nm for nm in gp.vars.names if nm not in subst]
    computed = {}
    for i in range(len(remaining)):
        for j in range(i):
            el, lg = quot.commutator(gp.gen(remaining[i]), gp.gen(remaining[j]))
            rep.absorb_log(lg)
            computed[(remaining[i], remaining[j])] = el
    _compare_table(rep, computed, task.get("expect", {}), task.get("default"), doc)
    for p_text, q_text in task.get("weyl", []):
        sub = weyl_pair_check(quot, doc.element(p_text), doc.element(q_text))
        rep.absorb_log(sub.log)
        rep.lines.extend(sub.lines)
        if not sub.ok:
            rep.failures.extend(sub.failures)
    for a_text, b_text in task.get("commute", []):
        br, lg = quot.commutator(doc.element(a_text), doc.element(b_text))
        rep.absorb_log(lg)
        if br.is_zero():
            rep.info(f"commute: [{a_text}, {b_text}] = 0")
        else:
            rep.fail(f"elements do not commute: [{a_text}, {b_text}] = "
                     f"{format_element(br)}")
    return rep


def _task_coset_table(doc, task, opts) -> CheckReport:
    rep = CheckReport("coset-table")
    gp = doc.presentation
    kind = {"left": "left", "right": "right", "two-sided": "two-sided"}[
        task.get("product", "left")]
    prod = TwistedProduct(gp, doc.twist, doc.twist, kind)
    defs = task["elements"]
    order = task.get("order") or sorted(defs)
    elements = [(nm, doc.element(defs[nm])) for nm in order]
    computed, log = element_bracket_table(prod, elements)
    rep.absorb_log(log)
    _compare_table(rep, computed, task.get("expect", {}), task.get("default"), doc)
    return rep


def _task_smash(doc, task, opts) -> CheckReport:
    rep = CheckReport("smash")
    gp = doc.presentation
    vars = gp.vars
    pairs = task.get("pairs")
    if task.get("all") or pairs is None:
        pairs = [[y, x] for y in vars.unipotent for x in vars.laurent]
    expect = task.get("expect", {})
    default = task.get("default")
    for y, x in pairs:
        sub, p = smash_relation_check(doc.twist, y, x)
        rep.absorb_log(sub.log)
        rep.lines.extend(sub.lines)
        if not sub.ok:
            rep.failures.extend(sub.failures)
            continue
        key = f"{y},{x}"
        want_text = expect.get(key, default)
        if want_text is not None:
            want = doc.element(want_text)
            if p != want:
                rep.fail(f"p[{key}] = {format_element(p)} differs from expected "
                         f"{format_element(want)}")
    return rep


def _task_double_coset(doc, task, opts) -> CheckReport:
    tw = doc.twist
    if not isinstance(tw, ExpRTwist):
        raise InputError("double-coset task requires an expR twist")
    support_twist = ExpRTwist(tw.support, tw.support,
                              [(tw.support.vars.names[i], tw.support.vars.names[j], c)
                               for i, j, c in tw.pairs],
                              {nm: AlgebraElement.var(tw.support.vars, nm)
                               for nm in tw.support.vars.names},
                              scale=tw.scale, max_order=tw.max_order)
    degree = task.get("degree", max(1, opts.degree - 1))
    return double_coset_map_check(tw, support_twist, tw.embed,
                                  doc.point(task["point"]), degree,
                                  opts.laurent_window)


def _task_leading_term(doc, task, opts) -> CheckReport:
    return check_leading_term(_two_sided(doc), task.get("degree", opts.degree),
                              opts.laurent_window)


def _task_lie(doc, task, opts) -> CheckReport:
    rep = CheckReport("lie")
    if doc.lie is None:
        rep.info("no lie section")
        return rep
    model = doc.lie["model"]
    jac = jacobi_check(model)
    rep.lines.extend("jacobi: " + ln for ln in jac.lines)
    rep.failures.extend("jacobi: " + ln for ln in jac.failures)
    r = doc.lie.get("r")
    sub = doc.lie.get("subalgebra")
    if r is not None:
        cy = cybe_check(r)
        rep.lines.extend("cybe: " + ln for ln in cy.lines)
        rep.failures.extend("cybe: " + ln for ln in cy.failures)
        if sub:
            dual, data = omega_r_duality(model, sub, r=r)
            rep.lines.extend("duality: " + ln for ln in dual.lines)
            rep.failures.extend("duality: " + ln for ln in dual.failures)
            omega = doc.lie.get("omega")
            if dual.ok and omega is not None:
                idx = [model._idx(nm) for nm in sub]
                declared = [[omega.m[i][j] for j in idx] for i in idx]
                if declared != data["omega"]:
                    rep.fail("declared omega differs from the r-dual form")
                else:
                    rep.info("declared omega matches the r-dual form")
            if dual.ok and isinstance(doc.twist, ExpRTwist):
                svars = doc.twist.support.vars
                if svars.n == len(sub):
                    n = svars.n
                    m = [[Fraction(0)] * n for _ in range(n)]
                    for i, j, c in doc.twist.pairs:
                        m[i][j] += c
                        m[j][i] -= c
                    idx = [model._idx(nm) for nm in sub]
                    restricted = [[r.m[i][j] for j in idx] for i in idx]
                    if m == restricted:
                        rep.info("twist pair matrix matches r on the subalgebra")
                    else:
                        rep.fail("twist pair matrix differs from r on the subalgebra")
    return rep


def _task_lie_closure(doc, task, opts) -> CheckReport:
    defs = task["basis"]
    order = task.get("order") or sorted(defs)
    basis = [(nm, doc.element(defs[nm])) for nm in order]
    target = doc.lie["model"] if doc.lie else None
    corr = None
    if task.get("correspondence"):
        corr = [(src, Fraction(str(c)), dst)
                for src, c, dst in task["correspondence"]]
    return lie_closure_check(_two_sided(doc), basis, target, corr)


_TASK_DISPATCH = {
    "validate": _task_validate,
    "cocycle": _task_cocycle,
    "cotriangular": _task_cotriangular,
    "coproduct-hom": _task_coproduct_hom,
    "associativity": _task_associativity,
    "presentation": _task_presentation,
    "lemma-formula": _task_lemma_formula,
    "primitive-pairing": _task_primitive_pairing,
    "product-equality": _task_product_equality,
    "invariance": _task_invariance,
    "quotient": _task_quotient,
    "coset-table": _task_coset_table,
    "smash": _task_smash,
    "double-coset": _task_double_coset,
    "leading-term": _task_leading_term,
    "lie": _task_lie,
    "lie-closure": _task_lie_closure,
}


def run_tasks(doc: DefinitionDocument, opts: Optional[RunOptions] = None
              ) -> Tuple[str, int]:
    """Execute the document's tasks; returns (report text, exit status)."""
    opts = opts or RunOptions()
    header = f"name={doc.name}" if opts.report == "machine" else f"# {doc.name}"
    sections: List[str] = [header]
    any_fail = False
    n_warn = 0
    for k, task in enumerate(doc.tasks):
        op = task["op"]
        rep = _TASK_DISPATCH[op](doc, task, opts)
        rep.name = op
        any_fail = any_fail or not rep.ok
        n_warn += len(rep.warnings)
        if opts.report == "machine":
            sections.append(f"task.{k}.op={op}")
            sections.append(f"task.{k}.status={rep.status()}")
            for ln in rep.lines:
                sections.append(f"task.{k}.info={ln}")
            for ln in rep.warnings:
                sections.append(f"task.{k}.warning={ln}")
            for ln in rep.failures:
                sections.append(f"task.{k}.failure={ln}")
            for a, b in sorted(rep.log):
                sections.append(f"task.{k}.assumed-zero=({a}, {b})")
        else:
            sections.extend(rep.render())
    status = 1 if any_fail else 0
    verdict = "FAIL" if any_fail else "PASS"
    if opts.report == "machine":
        sections.append(f"summary={verdict}")
        sections.append(f"warnings={n_warn}")
    else:
        sections.append(f"SUMMARY {verdict} tasks={len(doc.tasks)} warnings={n_warn}")
    return "\n".join(sections) + "\n", status


def verify_example(key: str, opts: Optional[RunOptions] = None) -> Tuple[str, int]:
    opts = opts or RunOptions()
    doc = load_example(key, max_order=opts.max_order)
    return run_tasks(doc, opts)
