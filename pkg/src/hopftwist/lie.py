"""Finite-dimensional Lie algebras by structure constants, r-matrices and
skew forms: Jacobi, classical Yang-Baxter, and the r <-> omega duality.

Everything is exact index arithmetic over Fraction; the Yang-Baxter sum is
evaluated componentwise in the triple tensor space.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from .linalg import inverse
from .poly import InputError, ValidationError
from .products import CheckReport


class LieModel:
    """Basis labels plus structure constants [e_i, e_j] = sum c[i][j][k] e_k."""

    def __init__(self, labels: Sequence[str],
                 brackets: Mapping[Tuple[str, str], Mapping[str, Fraction]]):
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise InputError("duplicate Lie basis labels")
        self.index = {nm: i for i, nm in enumerate(self.labels)}
        n = len(self.labels)
        self.c: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for (a, b), row in brackets.items():
            i, j = self._idx(a), self._idx(b)
            if i == j:
                if any(Fraction(v) for v in row.values()):
                    raise InputError(f"nonzero bracket [{a},{a}]")
                continue
            vec = {self._idx(k): Fraction(v) for k, v in row.items() if Fraction(v)}
            if not vec:
                continue
            if (i, j) in self.c or (j, i) in self.c:
                # merge, honouring antisymmetry
                cur = self.c.get((i, j))
                if cur is None:
                    cur = {k: -v for k, v in self.c.pop((j, i)).items()}
                for k, v in vec.items():
                    cur[k] = cur.get(k, Fraction(0)) + v
                self.c[(i, j)] = {k: v for k, v in cur.items() if v}
            else:
                self.c[(i, j)] = vec

    def _idx(self, label: str) -> int:
        if label not in self.index:
            raise InputError(f"unknown Lie basis label {label!r}")
        return self.index[label]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket(self, i: int, j: int) -> Dict[int, Fraction]:
        if i == j:
            return {}
        row = self.c.get((i, j))
        if row is not None:
            return row
        row = self.c.get((j, i))
        if row is not None:
            return {k: -v for k, v in row.items()}
        return {}

    def format_vector(self, vec: Mapping[int, Fraction]) -> str:
        parts = []
        for k in sorted(vec):
            v = vec[k]
            if not v:
                continue
            term = self.labels[k] if abs(v) == 1 else f"{abs(v)} {self.labels[k]}"
            if not parts:
                parts.append(term if v > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if v > 0 else f"- {term}")
        return " ".join(parts) if parts else "0"


class RMatrix:
    """Skew element of the second exterior power, r = sum_{i<j} r[i][j] e_i ^ e_j."""

    def __init__(self, model: LieModel, wedges: Mapping[Tuple[str, str], Fraction]):
        self.model = model
        n = model.dim
        self.m = [[Fraction(0)] * n for _ in range(n)]
        for (a, b), v in wedges.items():
            i, j = model._idx(a), model._idx(b)
            v = Fraction(v)
            if i == j and v:
                raise InputError(f"diagonal wedge {a}^{a}")
            self.m[i][j] += v
            self.m[j][i] -= v

    def support(self) -> List[int]:
        n = self.model.dim
        return [i for i in range(n) if any(self.m[i][j] for j in range(n))]


class SkewForm:
    """Skew bilinear form on (a subalgebra of) a LieModel."""

    def __init__(self, model: LieModel, entries: Mapping[Tuple[str, str], Fraction]):
        self.model = model
        n = model.dim
        self.m = [[Fraction(0)] * n for _ in range(n)]
        for (a, b), v in entries.items():
            i, j = model._idx(a), model._idx(b)
            v = Fraction(v)
            if i == j and v:
                raise InputError(f"diagonal skew entry ({a},{a})")
            self.m[i][j] += v
            self.m[j][i] -= v


def jacobi_check(model: LieModel) -> CheckReport:
    rep = CheckReport("jacobi")
    n = model.dim
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                count += 1
                acc: Dict[int, Fraction] = {}

                def add_term(a, b, c):
                    inner = model.bracket(a, b)
                    for m, v in inner.items():
                        outer = model.bracket(m, c)
                        for l, w in outer.items():
                            s = acc.get(l, Fraction(0)) + v * w
                            if s:
                                acc[l] = s
                            else:
                                acc.pop(l, None)

                add_term(i, j, k)
                add_term(k, i, j)
                add_term(j, k, i)
                if acc:
                    rep.fail(f"Jacobi fails at ({model.labels[i]}, {model.labels[j]}, "
                             f"{model.labels[k]}): {model.format_vector(acc)}")
    rep.info(f"triples checked: {count}")
    return rep


def cybe_check(r: RMatrix) -> CheckReport:
    """[r12,r13] + [r12,r23] + [r13,r23] = 0 in the triple tensor space."""
    rep = CheckReport("cybe")
    model = r.model
    n = model.dim
    total: Dict[Tuple[int, int, int], Fraction] = {}

    def put(key, v):
        s = total.get(key, Fraction(0)) + v
        if s:
            total[key] = s
        else:
            total.pop(key, None)

    entries = [(i, j, r.m[i][j]) for i in range(n) for j in range(n) if r.m[i][j]]
    for i, j, rij in entries:
        for k, l, rkl in entries:
            coeff = rij * rkl
            for m, v in model.bracket(i, k).items():
                put((m, j, l), coeff * v)
            for m, v in model.bracket(j, k).items():
                put((i, m, l), coeff * v)
            for m, v in model.bracket(j, l).items():
                put((i, k, m), coeff * v)
    if total:
        witnesses = sorted(total)[:5]
        for w in witnesses:
            lbl = "(x)".join(model.labels[x] for x in w)
            rep.fail(f"CYBE sum has nonzero component {lbl}: {total[w]}")
        rep.info(f"nonzero components: {len(total)}")
    else:
        rep.info("CYBE sum vanishes identically")
    return rep


def cybe_components(r: RMatrix) -> Dict[Tuple[str, str, str], Fraction]:
    """The full Yang-Baxter sum, keyed by basis labels (empty iff CYBE holds)."""
    rep_total: Dict[Tuple[str, str, str], Fraction] = {}
    model = r.model
    n = model.dim
    entries = [(i, j, r.m[i][j]) for i in range(n) for j in range(n) if r.m[i][j]]
    for i, j, rij in entries:
        for k, l, rkl in entries:
            coeff = rij * rkl
            for m, v in model.bracket(i, k).items():
                key = (model.labels[m], model.labels[j], model.labels[l])
                rep_total[key] = rep_total.get(key, Fraction(0)) + coeff * v
            for m, v in model.bracket(j, k).items():
                key = (model.labels[i], model.labels[m], model.labels[l])
                rep_total[key] = rep_total.get(key, Fraction(0)) + coeff * v
            for m, v in model.bracket(j, l).items():
                key = (model.labels[i], model.labels[k], model.labels[m])
                rep_total[key] = rep_total.get(key, Fraction(0)) + coeff * v
    return {k: v for k, v in rep_total.items() if v}


def _check_subalgebra(model: LieModel, sub: Sequence[int], rep: CheckReport) -> bool:
    ok = True
    subset = set(sub)
    for i in sub:
        for j in sub:
            if i >= j:
                continue
            for k, v in model.bracket(i, j).items():
                if v and k not in subset:
                    rep.fail(f"[{model.labels[i]}, {model.labels[j]}] leaves the "
                             f"subalgebra (component {model.labels[k]})")
                    ok = False
    return ok


def omega_r_duality(model: LieModel, subalgebra: Sequence[str],
                    r: RMatrix | None = None,
                    omega: SkewForm | None = None) -> Tuple[CheckReport, dict]:
    """Convert between a non-degenerate r on a subalgebra and its dual 2-cocycle.

    Convention: r = sum e_i ^ f_i corresponds to omega(e_i, f_i) = 1, which in
    matrix terms is omega = -(r-matrix)^{-1}.  Also checks that the subalgebra
    is bracket-closed, that the input is non-degenerate on it, and that the
    form satisfies the symplectic 2-cocycle identity there.
    """
    rep = CheckReport("omega-r-duality")
    if (r is None) == (omega is None):
        raise InputError("provide exactly one of r, omega")
    sub = [model._idx(nm) for nm in subalgebra]
    if not _check_subalgebra(model, sub, rep):
        return rep, {}
    src = r.m if r is not None else omega.m
    sm = [[src[i][j] for j in sub] for i in sub]
    if len(sub) % 2 == 1:
        rep.fail(f"non-degeneracy fails: odd dimension {len(sub)}")
        return rep, {}
    inv = inverse(sm)
    if inv is None:
        rep.fail("non-degeneracy fails: singular matrix on the subalgebra")
        return rep, {}
    neg_inv = [[-x for x in row] for row in inv]
    if r is not None:
        omega_m = neg_inv
        r_m = sm
    else:
        omega_m = sm
        r_m = neg_inv
    # quasi-Frobenius 2-cocycle identity on all basis triples of the subalgebra
    pos = {g: t for t, g in enumerate(sub)}
    failures = 0
    for a in range(len(sub)):
        for b in range(a + 1, len(sub)):
            for c in range(b + 1, len(sub)):
                i, j, k = sub[a], sub[b], sub[c]

                def w(br, z):
                    tot = Fraction(0)
                    for m, v in br.items():
                        tot += v * omega_m[pos[m]][pos[z]]
                    return tot

                total = w(model.bracket(i, j), k) + w(model.bracket(k, i), j) \
                    + w(model.bracket(j, k), i)
                if total:
                    failures += 1
                    rep.fail("2-cocycle identity fails at ("
                             f"{model.labels[i]}, {model.labels[j]}, {model.labels[k]}): "
                             f"{total}")
    rep.info(f"subalgebra dimension: {len(sub)}")
    out = {
        "subalgebra": [model.labels[i] for i in sub],
        "omega": omega_m,
        "r": r_m,
    }
    if rep.ok:
        rep.info("non-degenerate; conversion exact")
    return rep, out
