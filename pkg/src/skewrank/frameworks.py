"""Equivalent descriptions of the quotient ring and the maps between them.

polynomial  --Φ_α-->  ℓ θ-polynomials  --ev_B-->  L^{ℓn}  --Ext_E-->  (K^{n×n})^ℓ

A θ-polynomial is stored as its ``n`` coefficients (f_0, ..., f_{n-1}) meaning
Σ f_i θ^i.  Vectors are tuples of ℓ blocks of ``n`` L-codes; matrix tuples are
tuples of ℓ square K-matrices given as row tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import BadDimensionError, NormMismatchError, ShapeMismatchError
from .gf import Elem, Tower
from .linalg import inverse, rank
from .skew import SkewPoly
from .sumrank import LambdaContext, QuotientElem

__all__ = [
    "Basis",
    "power_basis",
    "phi_alpha",
    "phi_alpha_inverse",
    "theta_eval",
    "theta_adjoint",
    "ev_basis",
    "ev_basis_inverse",
    "ext_basis",
    "to_vector",
    "from_vector",
    "to_matrix",
    "vector_weight",
    "matrix_weight",
    "hamming_weight",
    "dual_basis",
    "normal_basis",
    "srk_form",
    "vec_form",
    "mat_form",
]

ThetaPoly = tuple[int, ...]
ThetaPolyTuple = tuple[ThetaPoly, ...]
VectorWord = tuple[tuple[int, ...], ...]
MatrixTuple = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True, eq=False)
class Basis:
    """An ordered K-basis of L."""

    tower: Tower
    elems: tuple[int, ...]

    def __post_init__(self):
        t = self.tower
        if len(self.elems) != t.n:
            raise BadDimensionError(f"a basis of L over K has {t.n} elements, got {len(self.elems)}")
        if rank([t.coords(b) for b in self.elems], t.L) != t.n:
            raise BadDimensionError("elements are not K-linearly independent")

    @classmethod
    def of(cls, tower: Tower, elems: Sequence[int | Elem]) -> Basis:
        return cls(tower, tuple(tower.unwrap(b) for b in elems))

    @cached_property
    def _to_coords(self) -> list[list[int]]:
        t = self.tower
        P = [list(r) for r in zip(*[t.coords(b) for b in self.elems])]  # columns are basis coords
        return inverse(P, t.L)

    def coords(self, x: int) -> tuple[int, ...]:
        """K-coordinates of ``x`` in this basis."""
        t = self.tower
        c = t.coords(x)
        L = t.L
        return tuple(L.sum(L.mul(a, b) for a, b in zip(row, c)) for row in self._to_coords)

    def combine(self, cs: Sequence[int]) -> int:
        t = self.tower
        return t.L.sum(t.mul(c, b) for c, b in zip(cs, self.elems))

    def __eq__(self, other) -> bool:
        return isinstance(other, Basis) and self.tower == other.tower and self.elems == other.elems

    def __hash__(self) -> int:
        return hash(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __len__(self) -> int:
        return len(self.elems)


def power_basis(tower: Tower) -> Basis:
    return Basis(tower, tuple(tower.power_basis()))


def _alphas(ctx: LambdaContext, alphas) -> tuple[int, ...]:
    if alphas is None:
        return ctx.alphas
    t = ctx.tower
    als = tuple(t.unwrap(a) for a in alphas)
    if len(als) != ctx.ell:
        raise ShapeMismatchError(f"expected {ctx.ell} values of α")
    if sorted(t.norm(a) for a in als) != sorted(ctx.lambdas):
        raise NormMismatchError("the norms of α do not match Λ")
    return als


def _bases(tower: Tower, ell: int, bases) -> list[Basis]:
    if bases is None:
        return [power_basis(tower)] * ell
    if isinstance(bases, Basis):
        return [bases] * ell
    bases = list(bases)
    if len(bases) != ell:
        raise ShapeMismatchError(f"expected {ell} bases")
    return bases


def phi_alpha(F: QuotientElem, alphas: Sequence[int | Elem] | None = None) -> ThetaPolyTuple:
    """Block i is F_{α_i} reduced modulo X^n - 1, read as a θ-polynomial."""
    ctx = F.ctx
    t = ctx.tower
    n = t.n
    add, mul = t.add, t.mul
    out = []
    for a in _alphas(ctx, alphas):
        comp = [0] * n
        for i, c in enumerate(F.coeffs):
            if c:
                comp[i % n] = add(comp[i % n], mul(c, t.tnorm(a, i)))
        out.append(tuple(comp))
    return tuple(out)


def phi_alpha_inverse(ctx: LambdaContext, comps: Sequence[Sequence[int]],
                      alphas: Sequence[int | Elem] | None = None) -> QuotientElem:
    """The unique F of degree < ℓn with phi_alpha(F, alphas) == comps."""
    t = ctx.tower
    n, ell = t.n, ctx.ell
    als = _alphas(ctx, alphas)
    if len(comps) != ell or any(len(c) != n for c in comps):
        raise ShapeMismatchError(f"expected {ell} θ-polynomials of length {n}")
    lams = [t.norm(a) for a in als]
    # coefficient j + s n of F enters block i with weight N_j(α_i) λ_i^s
    V = [[t.pow(lam, s) for s in range(ell)] for lam in lams]
    Vinv = inverse(V, t.L)
    f = [0] * ctx.N
    for j in range(n):
        rhs = [t.div(comps[i][j], t.tnorm(als[i], j)) for i in range(ell)]
        for s in range(ell):
            f[j + s * n] = t.L.sum(t.mul(Vinv[s][i], rhs[i]) for i in range(ell))
    return QuotientElem(ctx, SkewPoly(t, f))


def theta_eval(tower: Tower, f: Sequence[int], beta: int) -> int:
    """Σ f_i θ^i(β)."""
    s = 0
    for i, c in enumerate(f):
        if c:
            s = tower.add(s, tower.mul(c, tower.frob(beta, i)))
    return s


def theta_adjoint(tower: Tower, f: Sequence[int]) -> ThetaPoly:
    """Adjoint of Σ f_i θ^i for the trace form: Σ θ^{n-i}(f_i) θ^{n-i}."""
    n = tower.n
    g = [0] * n
    for i, c in enumerate(f):
        g[(n - i) % n] = tower.frob(c, (n - i) % n)
    return tuple(g)


def ev_basis(f: Sequence[int], B: Basis) -> tuple[int, ...]:
    """(f(b_1), ..., f(b_n))."""
    return tuple(theta_eval(B.tower, f, b) for b in B.elems)


def ev_basis_inverse(values: Sequence[int], B: Basis) -> ThetaPoly:
    """The θ-polynomial taking the given values on B."""
    t = B.tower
    n = t.n
    # values = f · M with the Moore matrix M[i][k] = θ^i(b_k)
    M = [[t.frob(b, i) for b in B.elems] for i in range(n)]
    Minv = inverse(M, t.L)
    return tuple(t.L.sum(t.mul(values[k], Minv[k][i]) for k in range(n)) for i in range(n))


def ext_basis(v: Sequence[int], E: Basis) -> tuple[tuple[int, ...], ...]:
    """n × n K-matrix whose column j is the coordinate vector of v_j in E."""
    cols = [E.coords(x) for x in v]
    return tuple(zip(*cols))


def to_vector(F: QuotientElem, alphas=None, bases=None) -> VectorWord:
    bs = _bases(F.ctx.tower, F.ctx.ell, bases)
    return tuple(ev_basis(c, B) for c, B in zip(phi_alpha(F, alphas), bs))


def from_vector(ctx: LambdaContext, v: Sequence[Sequence[int]], alphas=None, bases=None) -> QuotientElem:
    bs = _bases(ctx.tower, ctx.ell, bases)
    if len(v) != ctx.ell:
        raise ShapeMismatchError(f"expected {ctx.ell} blocks")
    comps = [ev_basis_inverse(block, B) for block, B in zip(v, bs)]
    return phi_alpha_inverse(ctx, comps, alphas)


def to_matrix(F: QuotientElem, alphas=None, bases=None, ext_bases=None) -> MatrixTuple:
    es = _bases(F.ctx.tower, F.ctx.ell, ext_bases)
    return tuple(ext_basis(block, E) for block, E in zip(to_vector(F, alphas, bases), es))


def vector_weight(tower: Tower, v: Sequence[Sequence[int]]) -> int:
    """Σ over blocks of the K-rank of the block entries."""
    return sum(rank([tower.coords(x) for x in block], tower.L) if any(block) else 0 for block in v)


def matrix_weight(tower: Tower, ms: Sequence[Sequence[Sequence[int]]]) -> int:
    return sum(rank(m, tower.L) if any(any(r) for r in m) else 0 for m in ms)


def hamming_weight(v: Sequence[Sequence[int]]) -> int:
    return sum(1 for block in v for x in block if x)


def dual_basis(B: Basis) -> Basis:
    """B* with Tr(b_i b*_j) = δ_ij."""
    t = B.tower
    T = [[t.trace(t.mul(a, b)) for b in B.elems] for a in B.elems]
    S = inverse(T, t.L)
    n = t.n
    return Basis(t, tuple(t.L.sum(t.mul(S[k][j], B.elems[k]) for k in range(n)) for j in range(n)))


def normal_basis(tower: Tower) -> Basis:
    """First β in enumeration order whose conjugates form a basis."""
    for b in range(1, tower.order):
        conj = [tower.frob(b, i) for i in range(tower.n)]
        if rank([tower.coords(x) for x in conj], tower.L) == tower.n:
            return Basis(tower, tuple(conj))
    raise AssertionError("normal bases exist")  # pragma: no cover


def _check_shapes(a, b) -> None:
    if len(a) != len(b) or any(len(x) != len(y) for x, y in zip(a, b)):
        raise ShapeMismatchError("arguments have different shapes")


def srk_form(tower: Tower, s: Sequence[Sequence[int]], u: Sequence[Sequence[int]]) -> int:
    """Σ_i Tr(Σ_j f_ij g_ij) over θ-polynomial tuples."""
    _check_shapes(s, u)
    acc = 0
    for a, b in zip(s, u):
        for x, y in zip(a, b):
            acc = tower.add(acc, tower.mul(x, y))
    return tower.trace(acc)


def vec_form(tower: Tower, u: Sequence[Sequence[int]], v: Sequence[Sequence[int]]) -> int:
    """Tr(u · v) for vectors in L^{ℓn}."""
    return srk_form(tower, u, v)


def mat_form(tower: Tower, m1, m2) -> int:
    """Σ_i Tr(M_i N_i^T), the entrywise dot product over K."""
    _check_shapes(m1, m2)
    K = tower.K
    acc = 0
    for A, B in zip(m1, m2):
        _check_shapes(A, B)
        for ra, rb in zip(A, B):
            for x, y in zip(ra, rb):
                acc = K.add(acc, K.mul(x, y))
    return acc
