"""Subcategory descriptors, approximation maps and right-minimal reduction.

A Subcat is either a finite list of pairwise non-isomorphic indecomposable
generators or a knitted family (postprojective / preinjective) bounded by
a dimension cap.  Canonical precovers stack one copy of each contributing
generator per (stable) hom dimension; right-minimal reduction strips
superfluous summands by lifting idempotents inside the annihilator right
ideal of the map.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import linalg, polymod
from .algebra import Algebra
from .homological import dtr_data
from .knit import knit_cached
from .rep import (
    EndAlgebra,
    end_algebra,
    PrimeTooSmall,
    Rep,
    RepMap,
    decompose,
    direct_sum,
    dual,
    hom_basis,
    identity_map,
    image_of,
    is_indecomposable,
    iso,
    zero_map,
    zero_rep,
)
from .stable import stable_hom

DEFAULT_SEED = 1
AUDIT_RANDOM_CLASSES = 32


class CapExceeded(Exception):
    """The family cap was hit before the question could be decided."""


@dataclass(eq=False)
class Subcat:
    """A full additive subcategory closed (to be audited) under extensions
    and direct summands."""

    algebra: Algebra
    kind: str  # "finite" | "postprojective" | "preinjective"
    gens: list = field(default_factory=list)
    cap: int = 0
    audit_status: str = "unaudited"

    def __post_init__(self):
        if self.kind not in ("finite", "postprojective", "preinjective"):
            raise ValueError(f"unknown subcategory kind {self.kind!r}")
        if self.kind == "finite":
            for g in self.gens:
                if not is_indecomposable(g):
                    raise ValueError("generators must be indecomposable")
            for i, g in enumerate(self.gens):
                for h in self.gens[:i]:
                    if iso(g, h) is not None:
                        raise ValueError("generators must be pairwise non-isomorphic")
        elif self.cap <= 0:
            raise ValueError("family subcategories need a positive cap")

    def members(self) -> list:
        """The (capped) list of indecomposable members."""
        if self.kind == "finite":
            return list(self.gens)
        direction = (
            "from-projectives" if self.kind == "postprojective" else "from-injectives"
        )
        return list(knit_cached(self.algebra, self.cap, direction).members)

    def describe(self) -> str:
        if self.kind == "finite":
            return f"finite[{len(self.gens)} gens]"
        return f"{self.kind}[cap {self.cap}]"


def contains(sub: Subcat, m: Rep, seed: int = DEFAULT_SEED) -> bool:
    """Decompose m and match every indecomposable summand against members.

    For a family, membership is decidable summand by summand: a summand
    whose total dimension exceeds the cap is undecidable and raises
    CapExceeded rather than returning a guess.
    """
    if m.is_zero:
        return True
    members = sub.members()
    for g in decompose(m, seed=seed):
        if sub.kind != "finite" and g.rep.total_dim > sub.cap:
            raise CapExceeded(
                f"summand of total dim {g.rep.total_dim} undecidable "
                f"within cap {sub.cap}"
            )
        if all(iso(g.rep, member) is None for member in members):
            return False
    return True


# -- extension-closure audit ------------------------------------------------


@dataclass
class AuditReport:
    passed: bool
    pairs_checked: int
    classes_checked: int
    sampling_policy: str
    failures: list = field(default_factory=list)  # (Z, X, coords, bad summand)


def audit_extension_closed(
    sub: Subcat, bound: int | None = None, seed: int = DEFAULT_SEED
) -> AuditReport:
    """Realize Ext classes between members and check middles stay inside.

    Basis classes plus up to AUDIT_RANDOM_CLASSES seeded random classes per
    pair; a pass is evidence up to this sampling policy.
    """
    from .homological import ext1

    members = sub.members()
    if bound is not None:
        members = [m for m in members if m.total_dim <= bound]
    rng = random.Random(seed)
    report = AuditReport(
        True, 0, 0, f"basis + up to {AUDIT_RANDOM_CLASSES} random classes, seed {seed}"
    )
    for z in members:
        pres = None
        for x in members:
            ext = ext1(z, x, pres=pres)
            pres = ext.pres
            report.pairs_checked += 1
            if ext.dim == 0:
                continue
            classes = ext.basis_classes()
            for _ in range(min(AUDIT_RANDOM_CLASSES, ext.dim * 4)):
                v = np.array(
                    [rng.randrange(sub.algebra.p) for _ in range(ext.dim)],
                    dtype=np.int64,
                )
                if v.any():
                    classes.append(v)
            for coords in classes:
                report.classes_checked += 1
                ses = ext.realize(coords)
                try:
                    ok = contains(sub, ses.middle, seed=seed)
                except CapExceeded:
                    ok = False
                if not ok:
                    report.passed = False
                    bad = None
                    for g in decompose(ses.middle, seed=seed):
                        if all(
                            iso(g.rep, member) is None for member in sub.members()
                        ):
                            bad = g.rep
                            break
                    report.failures.append((z, x, coords, bad))
    sub.audit_status = "passed" if report.passed else "failed"
    return report


# -- canonical precovers and preenvelopes -----------------------------------


@dataclass
class BuildReport:
    contributing: list  # (generator, dim used)
    stabilized: bool
    cap: int
    # inclusion of each indecomposable copy of the source, grouped per
    # contributing generator; spares callers a re-decomposition
    summand_inclusions: list = field(default_factory=list)


def canonical_precover(
    sub: Subcat, t: Rep, variant: str = "plain"
) -> tuple:
    """(nu: N -> t, BuildReport) with N = sum of G^{dim (stable) Hom(G, t)}.

    Every map from the subcategory factors through nu in the respective
    category, by construction; is_precover re-verifies independently.
    """
    if variant not in ("plain", "stable-inj"):
        raise ValueError("variant must be 'plain' or 'stable-inj'")
    members = sub.members()
    pieces = []  # (generator, maps)
    contributing = []
    for g in members:
        if variant == "plain":
            maps = list(hom_basis(g, t).basis)
        else:
            sh = stable_hom(g, t, "inj")
            maps = [sh.rep_for(q) for q in _unit_vectors(sh.dim)]
        if maps:
            pieces.append((g, maps))
            contributing.append((g, len(maps)))
    stabilized = True
    if sub.kind != "finite" and members:
        # the family list is capped; the scan is stabilized when the largest
        # members contribute nothing
        top = max(m.total_dim for m in members)
        tail = [g for g in members if g.total_dim == top]
        if any(any(iso(g, cg) is not None for cg, _ in contributing) for g in tail):
            stabilized = False
            raise CapExceeded(
                "largest family members still contribute; raise the cap"
            )
    report = BuildReport(contributing, stabilized, sub.cap)
    if not pieces:
        return zero_map(zero_rep(sub.algebra), t), report
    summands = []
    columns = []
    for g, maps in pieces:
        for f in maps:
            summands.append(g)
            columns.append(f)
    n, injs, projs = direct_sum(summands)
    nu = zero_map(n, t)
    for f, pr in zip(columns, projs):
        nu = nu + f.compose(pr)
    grouped = []
    pos = 0
    for g, maps in pieces:
        grouped.append((g, injs[pos : pos + len(maps)]))
        pos += len(maps)
    report.summand_inclusions = grouped
    return nu, report


def _unit_vectors(d: int):
    out = []
    for i in range(d):
        v = np.zeros(d, dtype=np.int64)
        v[i] = 1
        out.append(v)
    return out


@dataclass
class ApproxReport:
    kind: str
    passed: bool
    failures: list = field(default_factory=list)  # (generator, witness map)
    detail: list = field(default_factory=list)  # (generator, covered, total)


def is_precover(nu: RepMap, sub: Subcat, variant: str = "plain") -> ApproxReport:
    """Every (stable) map G -> target factors through nu, per generator."""
    t = nu.target
    p = t.p
    report = ApproxReport(f"precover-{variant}", True)
    for g in sub.members():
        if variant == "plain":
            hs = hom_basis(g, t)
            total = hs.dim
            through = hom_basis(g, nu.source)
            cols = [hs.coords(nu.compose(phi)) for phi in through.basis]
            mat = np.stack(cols, axis=1) if cols else linalg.zeros(total, 0)
            to_map = hs.from_coords
        else:
            sh = stable_hom(g, t, "inj")
            total = sh.dim
            through = hom_basis(g, nu.source)
            cols = [sh.class_of(nu.compose(phi)) for phi in through.basis]
            mat = np.stack(cols, axis=1) if cols else linalg.zeros(total, 0)
            to_map = sh.rep_for
        covered = linalg.rank(mat, p)
        report.detail.append((g, covered, total))
        if covered < total:
            report.passed = False
            for e in _unit_vectors(total):
                ok, _ = linalg.in_span(mat, e, p)
                if not ok:
                    report.failures.append((g, to_map(e)))
                    break
    return report


def is_preenvelope(mu: RepMap, sub: Subcat, variant: str = "plain") -> ApproxReport:
    """Every (stable) map source -> G factors through mu, per generator."""
    s = mu.source
    p = s.p
    report = ApproxReport(f"preenvelope-{variant}", True)
    for g in sub.members():
        if variant == "plain":
            hs = hom_basis(s, g)
            total = hs.dim
            through = hom_basis(mu.target, g)
            cols = [hs.coords(phi.compose(mu)) for phi in through.basis]
            to_map = hs.from_coords
        else:
            sh = stable_hom(s, g, "proj")
            total = sh.dim
            through = hom_basis(mu.target, g)
            cols = [sh.class_of(phi.compose(mu)) for phi in through.basis]
            to_map = sh.rep_for
        mat = np.stack(cols, axis=1) if cols else linalg.zeros(total, 0)
        covered = linalg.rank(mat, p)
        report.detail.append((g, covered, total))
        if covered < total:
            report.passed = False
            for e in _unit_vectors(total):
                ok, _ = linalg.in_span(mat, e, p)
                if not ok:
                    report.failures.append((g, to_map(e)))
                    break
    return report


# -- right-minimal reduction ------------------------------------------------


def _minpoly_coords(end: EndAlgebra, w: np.ndarray) -> list:
    """Minimal polynomial (ascending coeffs) of an element in coordinates."""
    p = end.p
    powers = [end.identity_coords()]
    while True:
        mat = np.stack(powers, axis=1)
        nxt = end.multiply_coords(powers[-1], w)
        ok, c = linalg.in_span(mat, nxt, p)
        if ok:
            coeffs = [(-int(ci)) % p for ci in c] + [1]
            return polymod.trim(coeffs)
        powers.append(nxt)


def _poly_eval_coords(end: EndAlgebra, coeffs, w: np.ndarray) -> np.ndarray:
    p = end.p
    acc = np.zeros(end.dim, dtype=np.int64)
    power = end.identity_coords()
    for c in coeffs:
        acc = (acc + (c % p) * power) % p
        power = end.multiply_coords(power, w)
    return acc


def _non_nilpotent_in_ideal(end, v_basis):
    """(w, minpoly, multiplicity of the factor X) for a non-radical,
    non-nilpotent element of the right ideal spanned by v_basis, or
    (None, None, None) when the ideal lies in the radical.

    A single non-radical element can still be nilpotent (its image in the
    semisimple quotient may be a nilpotent matrix), so the basis sweep is
    followed by seeded random combinations; a nonzero right ideal of the
    quotient always contains non-nilpotent elements.
    """
    p = end.p
    k = v_basis.shape[1]
    if k == 0:
        return None, None, None

    def candidates():
        for j in range(k):
            yield v_basis[:, j]
        rng = random.Random(17)
        for _ in range(64):
            coeffs = np.array([rng.randrange(p) for _ in range(k)], dtype=np.int64)
            yield (v_basis @ coeffs) % p

    saw_non_radical = False
    for w in candidates():
        if end.in_radical(w):
            continue
        saw_non_radical = True
        mp = _minpoly_coords(end, w)
        a = 0
        while a < len(mp) and mp[a] % p == 0:
            a += 1
        if a < polymod.degree(mp):
            return w, mp, a
    if saw_non_radical:
        raise RuntimeError(
            "annihilator ideal escapes the radical but no non-nilpotent "
            "element was found"
        )
    return None, None, None


def right_minimal_reduce(nu: RepMap) -> RepMap:
    """Strip the source down to a right minimal map with the same
    factorization closure.

    Iterates: V = {g in End(source) : nu g = 0} is a right ideal; if V lies
    in the radical, nu is right minimal.  Otherwise a nonzero idempotent is
    lifted inside V (polynomial CRT on a non-nilpotent element, then Newton
    iteration, both constant-term-free so the result stays in V) and the
    corresponding summand is split off.
    """
    src = nu.source
    if src.is_zero:
        return nu
    end = end_algebra(src)
    p = src.p
    if p <= end.dim:
        raise PrimeTooSmall(
            f"p={p} <= dim End = {end.dim}; right-minimal reduction needs p > dim End"
        )
    cols = [nu.compose(b).flatten() for b in end.basis]
    mat = np.stack(cols, axis=1)
    v_basis = linalg.kernel_basis(mat, p)  # coords of V in End basis
    w, mp, a = _non_nilpotent_in_ideal(end, v_basis)
    if w is None:
        return nu
    if a == 0:
        # w invertible and nu w = 0: nu is the zero map; minimal source is 0
        z = zero_rep(src.algebra)
        return zero_map(z, nu.target)
    g_part = polymod.trim(list(mp[a:]))
    xa = [0] * a + [1]
    upoly, _, gcd = polymod.pgcdex(xa, g_part, p)
    if polymod.degree(gcd) != 0:
        raise RuntimeError("X^a and g share a factor; minpoly split failed")
    inv_gcd = pow(int(gcd[0]), p - 2, p)
    h = polymod.pscale(polymod.pmul(upoly, xa, p), inv_gcd, p)
    e = _poly_eval_coords(end, h, w)
    for _ in range(end.dim + 4):
        sq = end.multiply_coords(e, e)
        if np.array_equal(sq, e):
            break
        cube = end.multiply_coords(sq, e)
        e = (3 * sq - 2 * cube) % p
    else:
        raise RuntimeError("idempotent lifting did not converge")
    if not e.any():
        raise RuntimeError("lifted idempotent is zero")
    one_minus_e = (end.identity_coords() - e) % p
    f = end.from_coords(one_minus_e)
    sub, incl, _ = image_of(f)
    if sub.total_dim == src.total_dim:
        raise RuntimeError("splitting made no progress")
    return right_minimal_reduce(nu.compose(incl))


def right_minimality_certificate(nu: RepMap) -> bool:
    """Whether the annihilator right ideal of nu lies in rad End(source)."""
    src = nu.source
    if src.is_zero:
        return True
    end = end_algebra(src)
    cols = [nu.compose(b).flatten() for b in end.basis]
    mat = np.stack(cols, axis=1)
    v_basis = linalg.kernel_basis(mat, src.p)
    return all(
        end.in_radical(v_basis[:, j]) for j in range(v_basis.shape[1])
    )


# -- duality ----------------------------------------------------------------


_DUAL_KIND = {
    "finite": "finite",
    "postprojective": "preinjective",
    "preinjective": "postprojective",
}


def dual_subcat(sub: Subcat) -> Subcat:
    """The subcategory of duals over the opposite algebra."""
    if sub.kind == "finite":
        return Subcat(sub.algebra.opposite(), "finite", [dual(g) for g in sub.gens])
    return Subcat(sub.algebra.opposite(), _DUAL_KIND[sub.kind], [], sub.cap)


def preenvelope_via_duality(sub: Subcat, l_mod: Rep, variant: str = "stable-proj"):
    """A (stable-proj) preenvelope of l_mod by sub, built by dualizing the
    canonical precover of dual(l_mod) over the opposite algebra."""
    if variant not in ("plain", "stable-proj"):
        raise ValueError("variant must be 'plain' or 'stable-proj'")
    dsub = dual_subcat(sub)
    dl = dual(l_mod)
    precover_variant = "plain" if variant == "plain" else "stable-inj"
    nu, report = canonical_precover(dsub, dl, precover_variant)
    mu = RepMap(
        l_mod, dual(nu.source), tuple(b.T.copy() for b in nu.blocks), check=True
    )
    return mu, report
