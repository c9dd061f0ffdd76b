"""The category mod(Lambda): representations, homomorphisms, duality,
decomposition and indecomposability certification.

A left module is a covariant quiver representation: a space at every
vertex and, for each arrow a: s -> t, a matrix of shape dim_t x dim_s.
Morphisms are one matrix per vertex subject to the commuting conditions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np
import sympy

from . import linalg
from .algebra import Algebra
from .linalg import matmul

DEFAULT_SEED = 1
ISO_RANDOM_TRIES = 64


class AlgebraMismatch(ValueError):
    pass


class ZeroModuleError(ValueError):
    pass


class PrimeTooSmall(ValueError):
    """p <= dim End(M): the trace-form radical criterion is not valid."""


class BruteForceCapExceeded(ValueError):
    pass


@dataclass(eq=False)
class Rep:
    """A finite dimensional representation of a bound quiver algebra."""

    algebra: Algebra
    dims: tuple
    maps: dict  # arrow name -> matrix, shape dim_target x dim_source
    name: str = ""

    def __post_init__(self):
        alg = self.algebra
        p = alg.p
        self.dims = tuple(int(d) for d in self.dims)
        if len(self.dims) != alg.quiver.n:
            raise ValueError("dimension vector length differs from vertex count")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")
        maps = {}
        for a in alg.quiver.arrows:
            m = self.maps.get(a.name)
            want = (self.dims[a.target - 1], self.dims[a.source - 1])
            if m is None:
                m = linalg.zeros(*want)
            m = linalg.as_matrix(m, p)
            if m.shape != want:
                raise ValueError(
                    f"arrow {a.name!r} matrix has shape {m.shape}, expected {want}"
                )
            maps[a.name] = m
        self.maps = maps
        for rel in alg.relations:
            acc = None
            for coeff, arrows in rel.terms:
                term = (coeff % p) * self.evaluate_arrows(arrows)
                acc = term if acc is None else acc + term
            if acc is not None and (acc % p).any():
                raise ValueError("representation does not satisfy the relations")

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_at(self, v: int) -> int:
        return self.dims[v - 1]

    def evaluate_arrows(self, arrows) -> np.ndarray:
        """Matrix of a path given by arrow names in application order."""
        alg = self.algebra
        if not arrows:
            raise ValueError("need a source vertex for the trivial path")
        v = alg.quiver.by_name[arrows[0]].source
        m = linalg.eye(self.dim_at(v))
        for name in arrows:
            m = matmul(self.maps[name], m, self.p)
        return m

    def evaluate_element(self, x: dict, src: int, tgt: int) -> np.ndarray:
        """Action matrix M_tgt <- M_src of an algebra element supported on
        paths src -> tgt."""
        out = linalg.zeros(self.dim_at(tgt), self.dim_at(src))
        for (s, arrows), c in x.items():
            if s != src:
                continue
            m = (
                linalg.eye(self.dim_at(src))
                if not arrows
                else self.evaluate_arrows(arrows)
            )
            out = (out + c * m) % self.p
        return out

    def equal(self, other: "Rep") -> bool:
        return (
            self.algebra is other.algebra
            and self.dims == other.dims
            and all(np.array_equal(self.maps[k], other.maps[k]) for k in self.maps)
        )

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"Rep{label}(dims={self.dims})"


def zero_rep(alg: Algebra) -> Rep:
    return Rep(alg, (0,) * alg.quiver.n, {})


def simple(alg: Algebra, v: int) -> Rep:
    dims = [0] * alg.quiver.n
    dims[v - 1] = 1
    return Rep(alg, tuple(dims), {}, name=f"S{v}")


@dataclass(eq=False)
class RepMap:
    """A homomorphism of representations: one matrix per vertex."""

    source: Rep
    target: Rep
    blocks: tuple
    check: bool = True

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            raise AlgebraMismatch("source and target live over different algebras")
        p = self.p
        blocks = []
        for v in range(1, self.source.algebra.quiver.n + 1):
            b = linalg.as_matrix(self.blocks[v - 1], p)
            want = (self.target.dim_at(v), self.source.dim_at(v))
            if b.shape != want:
                raise ValueError(f"block at vertex {v} has shape {b.shape}, want {want}")
            blocks.append(b)
        self.blocks = tuple(blocks)
        if self.check:
            for a in self.source.algebra.quiver.arrows:
                lhs = matmul(self.block(a.target), self.source.maps[a.name], p)
                rhs = matmul(self.target.maps[a.name], self.block(a.source), p)
                if not np.array_equal(lhs, rhs):
                    raise ValueError(f"map does not commute with arrow {a.name!r}")

    @property
    def p(self) -> int:
        return self.source.algebra.p

    def block(self, v: int) -> np.ndarray:
        return self.blocks[v - 1]

    def compose(self, other: "RepMap") -> "RepMap":
        """self after other."""
        if other.target is not self.source and not other.target.equal(self.source):
            raise ValueError("composition mismatch")
        return RepMap(
            other.source,
            self.target,
            tuple(
                matmul(self.blocks[i], other.blocks[i], self.p)
                for i in range(len(self.blocks))
            ),
            check=False,
        )

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(
            self.source,
            self.target,
            tuple((a + b) % self.p for a, b in zip(self.blocks, other.blocks)),
            check=False,
        )

    def scale(self, c: int) -> "RepMap":
        return RepMap(
            self.source,
            self.target,
            tuple((c * b) % self.p for b in self.blocks),
            check=False,
        )

    def __sub__(self, other: "RepMap") -> "RepMap":
        return self + other.scale(self.p - 1)

    def flatten(self) -> np.ndarray:
        parts = [b.reshape(-1) for b in self.blocks]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    @property
    def is_zero(self) -> bool:
        return not any(b.any() for b in self.blocks)

    def is_injective(self) -> bool:
        return all(
            linalg.rank(b, self.p) == b.shape[1] for b in self.blocks
        )

    def is_surjective(self) -> bool:
        return all(
            linalg.rank(b, self.p) == b.shape[0] for b in self.blocks
        )

    def is_invertible(self) -> bool:
        return all(linalg.is_invertible(b, self.p) for b in self.blocks)

    def equal(self, other: "RepMap") -> bool:
        return all(np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks))

    def __repr__(self):
        return f"RepMap({self.source.dims} -> {self.target.dims})"


def identity_map(m: Rep) -> RepMap:
    return RepMap(m, m, tuple(linalg.eye(d) for d in m.dims), check=False)


def zero_map(src: Rep, tgt: Rep) -> RepMap:
    return RepMap(
        src,
        tgt,
        tuple(linalg.zeros(tgt.dims[i], src.dims[i]) for i in range(len(src.dims))),
        check=False,
    )


def map_from_flat(src: Rep, tgt: Rep, flat: np.ndarray, check: bool = False) -> RepMap:
    blocks = []
    pos = 0
    for i in range(len(src.dims)):
        r, c = tgt.dims[i], src.dims[i]
        blocks.append(np.asarray(flat[pos : pos + r * c], dtype=np.int64).reshape(r, c))
        pos += r * c
    return RepMap(src, tgt, tuple(blocks), check=check)


@dataclass(eq=False)
class HomSpace:
    """A deterministic k-basis of Hom(source, target)."""

    source: Rep
    target: Rep
    basis: list  # list of RepMap

    @property
    def dim(self) -> int:
        return len(self.basis)

    def flat_matrix(self) -> np.ndarray:
        """Columns = flattened basis maps."""
        cached = getattr(self, "_flat", None)
        if cached is not None:
            return cached
        n = sum(
            self.target.dims[i] * self.source.dims[i]
            for i in range(len(self.source.dims))
        )
        if not self.basis:
            self._flat = linalg.zeros(n, 0)
        else:
            self._flat = np.stack([f.flatten() for f in self.basis], axis=1)
        return self._flat

    def _solver(self):
        """(row selection, inverse of the selected square block).

        The basis columns are independent, so some row subset of the flat
        matrix is invertible; solving against it turns every coords call
        into a single matrix product.
        """
        cached = getattr(self, "_solver_cache", None)
        if cached is not None:
            return cached
        p = self.source.p
        a = self.flat_matrix()
        _, pivots = linalg.rref(a.T, p)
        rows = list(pivots)
        binv = linalg.matrix_inverse(a[rows, :], p)
        if binv is None:
            raise RuntimeError("hom basis columns are dependent")
        self._solver_cache = (rows, binv)
        return self._solver_cache

    def coords(self, f: RepMap):
        """Coefficients of f in the basis, or None if f is outside (it never is
        for a genuine hom)."""
        v = f.flatten() % self.source.p
        if not self.basis:
            return None if v.any() else np.zeros(0, dtype=np.int64)
        rows, binv = self._solver()
        c = linalg.matmul(binv, v[rows].reshape(-1, 1), self.source.p)[:, 0]
        check = linalg.matmul(self.flat_matrix(), c.reshape(-1, 1), self.source.p)
        if not np.array_equal(check[:, 0], v):
            return None
        return c

    def from_coords(self, coords) -> RepMap:
        f = zero_map(self.source, self.target)
        for c, b in zip(coords, self.basis):
            if c % self.source.p:
                f = f + b.scale(int(c))
        return f


def hom_basis(m: Rep, n: Rep) -> HomSpace:
    """Solve the commuting conditions; basis ordered by kernel_basis order.

    Results are memoized on the source module (keeping the target alive),
    since verification sweeps ask for the same pair many times.
    """
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("modules live over different algebras")
    cache = getattr(m, "_hom_cache", None)
    if cache is None:
        cache = {}
        m._hom_cache = cache
    hit = cache.get(id(n))
    if hit is not None and hit[0] is n:
        return hit[1]
    hs = _hom_basis_raw(m, n)
    cache[id(n)] = (n, hs)
    return hs


def _hom_basis_raw(m: Rep, n: Rep) -> HomSpace:
    p = m.p
    sizes = [n.dims[i] * m.dims[i] for i in range(len(m.dims))]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offsets[-1])
    rows = []
    for a in m.algebra.quiver.arrows:
        s, t = a.source, a.target
        r = n.dim_at(t) * m.dim_at(s)
        if r == 0:
            continue
        block = linalg.zeros(r, total)
        # row-major vec: vec(f_t @ M_a) = kron(I, M_a^T) vec(f_t)
        if sizes[t - 1]:
            block[:, offsets[t - 1] : offsets[t]] = np.kron(
                linalg.eye(n.dim_at(t)), m.maps[a.name].T
            )
        # vec(N_a @ f_s) = kron(N_a, I) vec(f_s)
        if sizes[s - 1]:
            block[:, offsets[s - 1] : offsets[s]] = (
                block[:, offsets[s - 1] : offsets[s]]
                - np.kron(n.maps[a.name], linalg.eye(m.dim_at(s)))
            ) % p
        rows.append(block % p)
    system = np.vstack(rows) if rows else linalg.zeros(0, total)
    kb = linalg.kernel_basis(system, p)
    basis = [map_from_flat(m, n, kb[:, j], check=False) for j in range(kb.shape[1])]
    return HomSpace(m, n, basis)


def dual(m: Rep) -> Rep:
    """The k-linear dual over the opposite algebra; an exact involution."""
    op = m.algebra.opposite()
    maps = {a.name: m.maps[a.name].T.copy() for a in m.algebra.quiver.arrows}
    return Rep(op, m.dims, maps, name=f"D({m.name})" if m.name else "")


def dual_map(f: RepMap) -> RepMap:
    """Contravariant: source and target swap, vertexwise transpose."""
    return RepMap(
        dual(f.target),
        dual(f.source),
        tuple(b.T.copy() for b in f.blocks),
        check=False,
    )


def direct_sum(ms) -> tuple:
    """Block-diagonal sum. Returns (rep, injections, projections)."""
    ms = list(ms)
    if not ms:
        raise ValueError("direct_sum of nothing needs an algebra; use zero_rep")
    alg = ms[0].algebra
    if any(m.algebra is not alg for m in ms):
        raise AlgebraMismatch("summands live over different algebras")
    n = alg.quiver.n
    dims = tuple(sum(m.dims[i] for m in ms) for i in range(n))
    maps = {}
    for a in alg.quiver.arrows:
        blocks = [m.maps[a.name] for m in ms]
        out = linalg.zeros(dims[a.target - 1], dims[a.source - 1])
        ro = co = 0
        for b in blocks:
            out[ro : ro + b.shape[0], co : co + b.shape[1]] = b
            ro += b.shape[0]
            co += b.shape[1]
        maps[a.name] = out
    total = Rep(alg, dims, maps)
    injections, projections = [], []
    offs = [0] * n
    for m in ms:
        inj_blocks, proj_blocks = [], []
        for i in range(n):
            e = linalg.zeros(dims[i], m.dims[i])
            if m.dims[i]:
                e[offs[i] : offs[i] + m.dims[i], :] = linalg.eye(m.dims[i])
            inj_blocks.append(e)
            proj_blocks.append(e.T.copy())
        injections.append(RepMap(m, total, tuple(inj_blocks), check=False))
        projections.append(RepMap(total, m, tuple(proj_blocks), check=False))
        for i in range(n):
            offs[i] += m.dims[i]
    return total, injections, projections


def _induced_arrow(sub_t, sub_s, big_map, p):
    """kappa with sub_t @ kappa = big_map @ sub_s (sub_t has full column rank)."""
    rhs = matmul(big_map, sub_s, p)
    kappa = linalg.solve(sub_t, rhs, p)
    if kappa is None:
        raise RuntimeError("subspace family is not invariant")
    return kappa


def kernel_of(f: RepMap) -> tuple:
    """(kernel rep, inclusion)."""
    alg = f.source.algebra
    p = f.p
    bases = [linalg.kernel_basis(f.block(v), p) for v in range(1, alg.quiver.n + 1)]
    return subrep_from_subspaces(f.source, bases)


def subrep_from_subspaces(m: Rep, bases) -> tuple:
    """Subrepresentation spanned by the given (invariant) vertex subspaces."""
    alg = m.algebra
    p = m.p
    dims = tuple(b.shape[1] for b in bases)
    maps = {}
    for a in alg.quiver.arrows:
        maps[a.name] = _induced_arrow(
            bases[a.target - 1], bases[a.source - 1], m.maps[a.name], p
        )
    sub = Rep(alg, dims, maps)
    incl = RepMap(sub, m, tuple(bases), check=False)
    return sub, incl


def cokernel_of(f: RepMap) -> tuple:
    """(cokernel rep, projection)."""
    alg = f.source.algebra
    p = f.p
    pis = [linalg.left_null_space(f.block(v), p) for v in range(1, alg.quiver.n + 1)]
    dims = tuple(pi.shape[0] for pi in pis)
    maps = {}
    for a in alg.quiver.arrows:
        s, t = a.source, a.target
        if dims[t - 1] == 0 or dims[s - 1] == 0:
            maps[a.name] = linalg.zeros(dims[t - 1], dims[s - 1])
            continue
        rinv = linalg.right_inverse(pis[s - 1], p)
        maps[a.name] = matmul(matmul(pis[t - 1], f.target.maps[a.name], p), rinv, p)
    cok = Rep(alg, dims, maps)
    proj = RepMap(f.target, cok, tuple(pis), check=True)
    return cok, proj


def image_of(f: RepMap) -> tuple:
    """(image rep, inclusion into target, epi from source)."""
    alg = f.source.algebra
    p = f.p
    bases = [linalg.column_space(f.block(v), p) for v in range(1, alg.quiver.n + 1)]
    img, incl = subrep_from_subspaces(f.target, bases)
    epi_blocks = []
    for v in range(1, alg.quiver.n + 1):
        q = linalg.solve(bases[v - 1], f.block(v), p)
        if q is None:
            raise RuntimeError("image coordinates failed")
        epi_blocks.append(q)
    epi = RepMap(f.source, img, tuple(epi_blocks), check=True)
    return img, incl, epi


def factor_through_left(f: RepMap, h: RepMap):
    """Some x with f . x = h (x: h.source -> f.source), or None."""
    hs = hom_basis(h.source, f.source)
    if hs.dim == 0:
        return zero_map(h.source, f.source) if h.is_zero else None
    cols = np.stack([f.compose(b).flatten() for b in hs.basis], axis=1)
    ok, c = linalg.in_span(cols, h.flatten(), f.p)
    return hs.from_coords(c) if ok else None


def factor_through_right(g: RepMap, h: RepMap):
    """Some x with x . g = h (x: g.target -> h.target), or None."""
    hs = hom_basis(g.target, h.target)
    if hs.dim == 0:
        return zero_map(g.target, h.target) if h.is_zero else None
    cols = np.stack([b.compose(g).flatten() for b in hs.basis], axis=1)
    ok, c = linalg.in_span(cols, h.flatten(), g.p)
    return hs.from_coords(c) if ok else None


# -- endomorphism algebras -------------------------------------------------


class EndAlgebra:
    """End(M) with structure constants, trace-form radical and quotient data.

    The radical is the radical of the regular trace form tr(L_{xy}); this
    identifies rad End(M) whenever p > dim End(M) (guarded by callers).
    """

    def __init__(self, m: Rep):
        self.module = m
        self.p = m.p
        hs = hom_basis(m, m)
        self.basis = hs.basis
        self.dim = hs.dim
        self._flat = hs.flat_matrix()
        self._hs = hs
        p = self.p
        e = self.dim
        struct = np.zeros((e, e, e), dtype=np.int64)
        for i in range(e):
            for j in range(e):
                c = hs.coords(self.basis[i].compose(self.basis[j]))
                struct[i, j] = c
        self.struct = struct
        tr_l = np.array(
            [int(struct[mm, :, :].diagonal().sum() % p) for mm in range(e)],
            dtype=np.int64,
        )
        gram = linalg.zeros(e, e)
        for i in range(e):
            for j in range(e):
                gram[i, j] = int((struct[i, j] * tr_l).sum() % p)
        self.gram = gram
        self.radical_coords = linalg.kernel_basis(gram, p)
        self.radical_dim = self.radical_coords.shape[1]
        # complement coordinates: non-pivot indices of the radical row space
        if self.radical_dim:
            rr, piv = linalg.rref(self.radical_coords.T, p)
            self._rad_rref, self._rad_pivots = rr, piv
        else:
            self._rad_rref, self._rad_pivots = linalg.zeros(0, e), []
        self.quotient_indices = [
            i for i in range(e) if i not in self._rad_pivots
        ]

    def coords(self, f: RepMap) -> np.ndarray:
        c = self._hs.coords(f)
        if c is None:
            raise ValueError("map is not an endomorphism coordinate")
        return c

    def from_coords(self, coords) -> RepMap:
        return self._hs.from_coords(coords)

    def identity_coords(self) -> np.ndarray:
        return self.coords(identity_map(self.module))

    def multiply_coords(self, x, y) -> np.ndarray:
        p = self.p
        out = np.zeros(self.dim, dtype=np.int64)
        for i in np.nonzero(np.asarray(x) % p)[0]:
            for j in np.nonzero(np.asarray(y) % p)[0]:
                out = (out + int(x[i]) * int(y[j]) * self.struct[i, j]) % p
        return out

    def reduce_mod_radical(self, coords) -> np.ndarray:
        v = np.asarray(coords, dtype=np.int64) % self.p
        for i, pc in enumerate(self._rad_pivots):
            if v[pc]:
                v = (v - v[pc] * self._rad_rref[i]) % self.p
        return v

    def in_radical(self, coords) -> bool:
        return not self.reduce_mod_radical(coords).any()

    def quotient_coords(self, coords) -> np.ndarray:
        v = self.reduce_mod_radical(coords)
        return v[self.quotient_indices]

    def quotient_lift(self, qcoords) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for qi, i in enumerate(self.quotient_indices):
            v[i] = int(qcoords[qi]) % self.p
        return v

    @property
    def quotient_dim(self) -> int:
        return len(self.quotient_indices)

    def quotient_commutative(self) -> bool:
        for i in self.quotient_indices:
            for j in self.quotient_indices:
                if j <= i:
                    continue
                x = np.zeros(self.dim, dtype=np.int64)
                x[i] = 1
                y = np.zeros(self.dim, dtype=np.int64)
                y[j] = 1
                comm = (self.multiply_coords(x, y) - self.multiply_coords(y, x)) % self.p
                if not self.in_radical(comm):
                    return False
        return True

    def frobenius_matrix(self) -> np.ndarray:
        """Matrix of x -> x^p on End(M)/rad in quotient coordinates."""
        p = self.p
        q = self.quotient_dim
        cols = []
        for i in self.quotient_indices:
            rep = self.basis[i]
            powered = RepMap(
                rep.source,
                rep.target,
                tuple(linalg.matrix_power(b, p, p) for b in rep.blocks),
                check=False,
            )
            cols.append(self.quotient_coords(self.coords(powered)))
        return (
            np.stack(cols, axis=1) if cols else linalg.zeros(q, 0)
        )


def end_algebra(m: Rep) -> EndAlgebra:
    """End(M), memoized on the module (structure constants are expensive)."""
    e = getattr(m, "_end_cache", None)
    if e is None:
        e = EndAlgebra(m)
        m._end_cache = e
    return e


def _exhaustive_idempotent_split(end: EndAlgebra) -> bool:
    """True iff End contains a nontrivial idempotent (exhaustive search).

    Only feasible when p ** dim End is tiny; used as the small-field route.
    """
    p = end.p
    ident = end.identity_coords()
    for coeffs in itertools.product(range(p), repeat=end.dim):
        v = np.array(coeffs, dtype=np.int64)
        if not v.any():
            continue
        if np.array_equal(v % p, ident % p):
            continue
        if np.array_equal(end.multiply_coords(v, v), v % p):
            return True
    return False


EXHAUSTIVE_END_LIMIT = 1 << 16


def is_indecomposable(m: Rep) -> bool:
    """Certify indecomposability via End(M)/rad.

    Large p (p > dim End): radical of the trace form, then E/rad must be
    commutative with a 1-dimensional Frobenius fixed space.  Small p falls
    back to exhaustive idempotent search when feasible, else raises.
    """
    if m.is_zero:
        raise ZeroModuleError("the zero module is neither dec nor indecomposable")
    cached = getattr(m, "_indec_cache", None)
    if cached is not None:
        return cached
    end = end_algebra(m)
    if m.p > end.dim:
        if not end.quotient_commutative():
            m._indec_cache = False
            return False
        fr = end.frobenius_matrix()
        fixed = linalg.kernel_basis(
            (fr - linalg.eye(end.quotient_dim)) % m.p, m.p
        ).shape[1]
        m._indec_cache = fixed == 1
        return m._indec_cache
    if m.p ** end.dim <= EXHAUSTIVE_END_LIMIT:
        m._indec_cache = not _exhaustive_idempotent_split(end)
        return m._indec_cache
    raise PrimeTooSmall(
        f"p={m.p} <= dim End = {end.dim}; rerun over a larger prime field"
    )


# -- decomposition ----------------------------------------------------------


def _charpoly_mod(a: np.ndarray, p: int) -> list:
    """Characteristic polynomial coefficients mod p, ascending degree."""
    if a.shape[0] == 0:
        return [1]
    x = sympy.symbols("x")
    cp = sympy.Matrix(a.tolist()).charpoly(x)
    coeffs = [int(c) % p for c in reversed(cp.all_coeffs())]
    return coeffs


def _factor_mod(coeffs: list, p: int) -> list:
    """[(factor coeffs ascending, multiplicity)] over F_p."""
    x = sympy.symbols("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        fc = [int(c) % p for c in reversed(f.all_coeffs())]
        out.append((fc, int(mult)))
    return out


def _poly_of_endo(f: RepMap, coeffs: list) -> RepMap:
    """Evaluate a polynomial on an endomorphism, vertexwise."""
    p = f.p
    out_blocks = []
    for b in f.blocks:
        acc = linalg.zeros(*b.shape)
        power = linalg.eye(b.shape[0])
        for c in coeffs:
            acc = (acc + (c % p) * power) % p
            power = matmul(power, b, p)
        out_blocks.append(acc)
    return RepMap(f.source, f.target, tuple(out_blocks), check=False)


@dataclass
class Summand:
    rep: Rep
    multiplicity: int
    inclusions: list = field(default_factory=list)
    projections: list = field(default_factory=list)


class DecompositionFailed(RuntimeError):
    pass


def _split_once(m: Rep, rng: random.Random):
    """Return a list of >= 2 (subrep, incl) pieces, or None if no splitting
    endomorphism was found among the sweep candidates."""
    end = end_algebra(m)
    p = m.p

    def candidates():
        for b in end.basis:
            yield b
        for _ in range(64):
            coeffs = [rng.randrange(p) for _ in range(end.dim)]
            yield end.from_coords(np.array(coeffs, dtype=np.int64))

    total = m.total_dim
    for f in candidates():
        blocks_cat = [f.blocks[i] for i in range(len(m.dims)) if m.dims[i]]
        if not blocks_cat:
            return None
        full = linalg.zeros(total, total)
        off = 0
        for b in f.blocks:
            d = b.shape[0]
            full[off : off + d, off : off + d] = b
            off += d
        cp = _charpoly_mod(full, p)
        factors = _factor_mod(cp, p)
        if len(factors) < 2:
            continue
        pieces = []
        for fc, mult in factors:
            g = _poly_of_endo(f, fc)
            g_power = RepMap(
                m,
                m,
                tuple(linalg.matrix_power(b, total, p) for b in g.blocks),
                check=False,
            )
            sub, incl = kernel_of(g_power)
            pieces.append((sub, incl))
        if sum(s.total_dim for s, _ in pieces) != total:
            continue
        if any(s.total_dim == 0 for s, _ in pieces):
            continue
        return pieces
    return None


def _split_indecomposables(m: Rep, rng: random.Random):
    """Full Fitting splitting: list of (indec rep, incl into m, proj from m)."""
    if m.is_zero:
        return []
    if is_indecomposable(m):
        ident = identity_map(m)
        return [(m, ident, ident)]
    pieces = _split_once(m, rng)
    if pieces is None:
        raise DecompositionFailed("no splitting endomorphism found")
    p = m.p
    # projections from m onto each piece: invert the combined change of basis
    combined = [
        np.hstack([incl.block(v) for _, incl in pieces])
        for v in range(1, m.algebra.quiver.n + 1)
    ]
    inverses = [linalg.matrix_inverse(c, p) for c in combined]
    if any(inv is None for inv in inverses):
        raise DecompositionFailed("piece inclusions do not span")
    out = []
    row_off = [0] * len(m.dims)
    for sub, incl in pieces:
        proj_blocks = []
        for i in range(len(m.dims)):
            d = sub.dims[i]
            proj_blocks.append(inverses[i][row_off[i] : row_off[i] + d, :])
            row_off[i] += d
        proj = RepMap(m, sub, tuple(proj_blocks), check=True)
        for piece, sub_incl, sub_proj in _split_indecomposables(sub, rng):
            out.append(
                (piece, incl.compose(sub_incl), sub_proj.compose(proj))
            )
    return out


def decompose(m: Rep, seed: int = DEFAULT_SEED) -> list:
    """Decompose into indecomposables grouped up to isomorphism.

    Returns a list of Summand records; inclusion/projection witnesses are
    the split maps into/out of m (one pair per copy).
    """
    rng = random.Random(seed)
    pieces = _split_indecomposables(m, rng)
    groups: list[Summand] = []
    for rep_piece, incl, proj in pieces:
        for g in groups:
            if iso(g.rep, rep_piece, seed=seed) is not None:
                g.multiplicity += 1
                g.inclusions.append(incl)
                g.projections.append(proj)
                break
        else:
            groups.append(Summand(rep_piece, 1, [incl], [proj]))
    return groups


def iso(m: Rep, n: Rep, seed: int = DEFAULT_SEED):
    """An isomorphism witness, or None.

    Basis sweep, then seeded random combinations, then a sound
    decompose-and-match fallback (basis sweep alone is complete for
    indecomposable pairs since non-isos form a proper subspace).
    """
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("modules live over different algebras")
    if m.dims != n.dims:
        return None
    if m.is_zero:
        return zero_map(m, n)
    hs = hom_basis(m, n)
    if hs.dim == 0:
        return None
    for f in hs.basis:
        if f.is_invertible():
            return f
    rng = random.Random(seed)
    p = m.p
    for _ in range(ISO_RANDOM_TRIES):
        coeffs = np.array([rng.randrange(p) for _ in range(hs.dim)], dtype=np.int64)
        f = hs.from_coords(coeffs)
        if f.is_invertible():
            return f
    # sound structural fallback
    rng2 = random.Random(seed + 1)
    left = _split_indecomposables(m, rng2)
    right = list(_split_indecomposables(n, rng2))
    if len(left) != len(right):
        return None
    used = [False] * len(right)
    p_blocks = [linalg.zeros(n.dims[i], m.dims[i]) for i in range(len(m.dims))]
    for lp, l_incl, l_proj in left:
        found = None
        for j, (rp, r_incl, _r_proj) in enumerate(right):
            if used[j]:
                continue
            w = _indec_iso(lp, rp)
            if w is not None:
                found = (j, w, r_incl)
                break
        if found is None:
            return None
        j, w, r_incl = found
        used[j] = True
        term = r_incl.compose(w).compose(l_proj)
        for i in range(len(p_blocks)):
            p_blocks[i] = (p_blocks[i] + term.block(i + 1)) % p
    f = RepMap(m, n, tuple(p_blocks), check=True)
    return f if f.is_invertible() else None


def _indec_iso(m: Rep, n: Rep):
    """Iso test for indecomposables: a hom-basis sweep is complete here."""
    if m.dims != n.dims:
        return None
    hs = hom_basis(m, n)
    for f in hs.basis:
        if f.is_invertible():
            return f
    return None


# -- brute-force oracle over F_2 --------------------------------------------

BRUTE_TOTAL_DIM_CAP = 5


def _gl_generators(d: int):
    """Generators (with inverses) of GL(d, 2) as integer matrices."""
    if d <= 1:
        return []
    gens = []
    swap = np.eye(d, dtype=np.int64)
    swap[[0, 1]] = swap[[1, 0]]
    gens.append(swap)
    if d > 2:
        cyc = np.zeros((d, d), dtype=np.int64)
        for i in range(d):
            cyc[(i + 1) % d, i] = 1
        gens.append(cyc)
        gens.append(cyc.T.copy())
    trans = np.eye(d, dtype=np.int64)
    trans[0, 1] = 1
    gens.append(trans)  # self-inverse over F_2
    return gens


def brute_indec_classes(alg: Algebra, dimvector) -> list:
    """All indecomposables with the given dimension vector over F_2, one
    representative per iso class, by exhaustive orbit enumeration.

    Independent oracle: iso classes are orbits of the vertexwise base
    change group; indecomposability is exhaustive idempotent search.
    """
    dimvector = tuple(int(d) for d in dimvector)
    if sum(dimvector) > BRUTE_TOTAL_DIM_CAP:
        raise BruteForceCapExceeded(
            f"total dimension {sum(dimvector)} exceeds cap {BRUTE_TOTAL_DIM_CAP}"
        )
    if alg.p == 2:
        alg2 = alg
    else:
        alg2 = Algebra(alg.quiver, alg.relations, p=2)
    quiver = alg2.quiver
    shapes = [
        (dimvector[a.target - 1], dimvector[a.source - 1]) for a in quiver.arrows
    ]
    entry_counts = [r * c for r, c in shapes]

    def tuple_key(mats):
        return tuple(bytes(m.reshape(-1).astype(np.uint8)) for m in mats)

    all_tuples = []
    for bits in itertools.product((0, 1), repeat=sum(entry_counts)):
        mats = []
        pos = 0
        for (r, c), cnt in zip(shapes, entry_counts):
            mats.append(np.array(bits[pos : pos + cnt], dtype=np.int64).reshape(r, c))
            pos += cnt
        try:
            rep = Rep(
                alg2, dimvector, {a.name: m for a, m in zip(quiver.arrows, mats)}
            )
        except ValueError:
            continue
        all_tuples.append((tuple_key(mats), mats, rep))

    gens_per_vertex = [_gl_generators(d) for d in dimvector]
    gl_actions = []
    for v in range(quiver.n):
        for g in gens_per_vertex[v]:
            ginv = linalg.matrix_inverse(g, 2)
            gl_actions.append((v + 1, g, ginv))

    index = {key: i for i, (key, _, _) in enumerate(all_tuples)}
    visited = [False] * len(all_tuples)
    reps_out = []
    for i, (key, mats, rep) in enumerate(all_tuples):
        if visited[i]:
            continue
        orbit = [i]
        visited[i] = True
        stack = [mats]
        while stack:
            cur = stack.pop()
            for v, g, ginv in gl_actions:
                new = []
                for a, mcur in zip(quiver.arrows, cur):
                    m2 = mcur
                    if a.target == v:
                        m2 = matmul(g, m2, 2)
                    if a.source == v:
                        m2 = matmul(m2, ginv, 2)
                    new.append(m2)
                k = tuple_key(new)
                j = index.get(k)
                if j is not None and not visited[j]:
                    visited[j] = True
                    orbit.append(j)
                    stack.append(new)
        rep0 = all_tuples[min(orbit)][2]
        if rep0.is_zero:
            continue
        end = EndAlgebra(rep0)
        if not _exhaustive_idempotent_split(end):
            reps_out.append(rep0)
    return reps_out
