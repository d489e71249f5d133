"""The quotient L[X; θ]/(H_Λ) with H_Λ = Π_λ (X^n - λ), and the sum-rank weight on it."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import (
    ContextMismatchError,
    LambdaNotCyclicGroupError,
    NormMismatchError,
    TooManyBlocksError,
    ZeroAlphaError,
    ZeroPolynomialError,
)
from .gf import Elem, Tower
from .linalg import Matrix
from .skew import SkewPoly, gcrd, lclm, right_divide

__all__ = [
    "LambdaContext",
    "QuotientElem",
    "make_context",
    "reduce",
    "qmul",
    "weight",
    "distance",
    "dickson_matrix",
    "annihilator_generator",
    "adjoint",
    "v_adjoint",
    "bilinear_lambda",
]


@dataclass(frozen=True, eq=False)
class LambdaContext:
    """Tower, the λ values, and one norm-λ representative α per block."""

    tower: Tower
    lambdas: tuple[int, ...]
    alphas: tuple[int, ...]

    @property
    def ell(self) -> int:
        return len(self.lambdas)

    @property
    def n(self) -> int:
        return self.tower.n

    @property
    def N(self) -> int:
        """ℓn, the code length and degree of H_Λ."""
        return len(self.lambdas) * self.tower.n

    @cached_property
    def H(self) -> SkewPoly:
        t = self.tower
        K = t.K
        # product in the commutative variable Y = X^n, then spread out
        c = [1]
        for lam in self.lambdas:
            nl = K.neg(lam)
            nxt = [0] * (len(c) + 1)
            for i, x in enumerate(c):
                nxt[i + 1] = K.add(nxt[i + 1], x)
                nxt[i] = K.add(nxt[i], K.mul(nl, x))
            c = nxt
        coeffs = [0] * (self.N + 1)
        for i, x in enumerate(c):
            coeffs[i * t.n] = x
        return SkewPoly(t, coeffs)

    @cached_property
    def is_group(self) -> bool:
        s = set(self.lambdas)
        K = self.tower.K
        return all(K.mul(a, b) in s for a in s for b in s)

    @cached_property
    def hash(self) -> str:
        payload = json.dumps({"tower": self.tower.to_dict(), "lambdas": list(self.lambdas),
                              "alphas": list(self.alphas)}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __eq__(self, other) -> bool:
        return (isinstance(other, LambdaContext) and self.tower == other.tower
                and self.lambdas == other.lambdas and self.alphas == other.alphas)

    def __hash__(self) -> int:
        return hash((self.tower, self.lambdas, self.alphas))

    def to_dict(self) -> dict:
        return {"tower": self.tower.to_dict(), "lambdas": list(self.lambdas),
                "alphas": list(self.alphas), "hash": self.hash}

    def elem(self, coeffs: Sequence[int | Elem]) -> QuotientElem:
        return reduce(SkewPoly(self.tower, coeffs), self)

    def zero(self) -> QuotientElem:
        return QuotientElem(self, SkewPoly(self.tower, []))

    def one(self) -> QuotientElem:
        return QuotientElem(self, SkewPoly(self.tower, [1]))

    def monomial(self, i: int, c: int = 1) -> QuotientElem:
        return reduce(SkewPoly.monomial(self.tower, i, c), self)


def make_context(tower: Tower, lambdas: Sequence[int | Elem], alphas: Sequence[int | Elem] | None = None,
                 *, alpha_index: int = 0) -> LambdaContext:
    """Validate Λ and pick (or check) one α of norm λ per block.

    Without explicit ``alphas`` the ``alpha_index``-th norm-λ element in
    enumeration order is used.
    """
    lams = tuple(tower.unwrap(x) for x in lambdas)
    tower.check_lambdas(lams)
    if len(lams) > tower.q - 1:
        raise TooManyBlocksError(f"ℓ = {len(lams)} exceeds |K*| = {tower.q - 1}")
    if alphas is None:
        als = tuple(tower.norm_representatives(lams, alpha_index))
    else:
        als = tuple(tower.unwrap(a) for a in alphas)
        if len(als) != len(lams):
            raise NormMismatchError("one α per λ is required")
        for a, lam in zip(als, lams):
            if a == 0:
                raise ZeroAlphaError("α must be nonzero")
            if tower.norm(a) != lam:
                raise NormMismatchError(f"N(α) = {tower.norm(a)} but λ = {lam}")
    return LambdaContext(tower, lams, als)


class QuotientElem:
    """A class modulo H_Λ, held by its remainder of degree < ℓn."""

    __slots__ = ("ctx", "rep")

    def __init__(self, ctx: LambdaContext, rep: SkewPoly):
        self.ctx = ctx
        self.rep = rep

    def _check(self, other: QuotientElem) -> None:
        if not isinstance(other, QuotientElem):
            raise TypeError("expected a QuotientElem")
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ContextMismatchError("elements of different quotient rings")

    def __add__(self, other: QuotientElem) -> QuotientElem:
        self._check(other)
        return QuotientElem(self.ctx, self.rep + other.rep)

    def __sub__(self, other: QuotientElem) -> QuotientElem:
        self._check(other)
        return QuotientElem(self.ctx, self.rep - other.rep)

    def __neg__(self) -> QuotientElem:
        return QuotientElem(self.ctx, -self.rep)

    def __mul__(self, other: QuotientElem) -> QuotientElem:
        return qmul(self, other)

    def scale(self, c: int) -> QuotientElem:
        return QuotientElem(self.ctx, self.rep.scale_left(c))

    def __eq__(self, other) -> bool:
        return isinstance(other, QuotientElem) and self.ctx == other.ctx and self.rep == other.rep

    def __hash__(self) -> int:
        return hash(self.rep.coeffs)

    def __bool__(self) -> bool:
        return bool(self.rep)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.rep.coeffs

    def padded(self) -> list[int]:
        c = list(self.rep.coeffs)
        return c + [0] * (self.ctx.N - len(c))

    def __str__(self) -> str:
        return str(self.rep)

    def __repr__(self) -> str:
        return f"QuotientElem({self.rep})"

    def to_dict(self) -> dict:
        return {"context": self.ctx.hash, "coeffs": self.padded()}


def _reduce_poly(F: SkewPoly, ctx: LambdaContext) -> SkewPoly:
    if len(F.coeffs) <= ctx.N:
        return F
    return right_divide(F, ctx.H)[1]


def reduce(F: SkewPoly | QuotientElem, ctx: LambdaContext) -> QuotientElem:
    if isinstance(F, QuotientElem):
        if F.ctx != ctx:
            raise ContextMismatchError("element belongs to another context")
        return F
    if F.tower is not ctx.tower and F.tower != ctx.tower:
        raise ContextMismatchError("polynomial over a different tower")
    return QuotientElem(ctx, _reduce_poly(F, ctx))


def qmul(A: QuotientElem, B: QuotientElem) -> QuotientElem:
    A._check(B)
    return QuotientElem(A.ctx, _reduce_poly(A.rep * B.rep, A.ctx))


def weight(F: QuotientElem) -> int:
    """wt_Λ(F) = ℓn - deg gcrd(F, H_Λ), and 0 for F = 0."""
    if not F.rep:
        return 0
    return F.ctx.N - int(gcrd(F.rep, F.ctx.H).degree)


def distance(F: QuotientElem, G: QuotientElem) -> int:
    return weight(F - G)


def dickson_matrix(F: QuotientElem) -> Matrix:
    """ℓn × ℓn matrix over L whose column j holds the coefficients of X^j F mod H_Λ."""
    ctx = F.ctx
    t = ctx.tower
    N = ctx.N
    h = ctx.H.coeffs
    cols = []
    cur = F.padded()
    for j in range(N):
        cols.append(cur)
        # X · cur, then fold the X^N term back with X^N ≡ X^N - H
        top = t.frob(cur[-1], 1)
        nxt = [0] + [t.frob(x, 1) for x in cur[:-1]]
        if top:
            for i in range(N):
                if h[i]:
                    nxt[i] = t.sub(nxt[i], t.mul(top, h[i]))
        cur = nxt
    return Matrix.of(t.L, [list(r) for r in zip(*cols)])


def annihilator_generator(F: QuotientElem) -> SkewPoly:
    """Monic A with Ann(F) = (A)/(H_Λ), namely lclm(H_Λ, F) right-divided by F."""
    if not F.rep:
        raise ZeroPolynomialError("the annihilator of 0 is the whole ring")
    m = lclm(F.ctx.H, F.rep)
    q, r = right_divide(m, F.rep)
    assert not r
    return q.monic()


def adjoint(F: QuotientElem) -> QuotientElem:
    """F^T = Σ_{i=1}^{ℓn} θ^{n-i}(f_i) X^{ℓn-i} with f_{ℓn} = f_0; needs Λ a group."""
    ctx = F.ctx
    if not ctx.is_group:
        raise LambdaNotCyclicGroupError("adjoint needs Λ to be a subgroup of K*")
    t = ctx.tower
    N, n = ctx.N, t.n
    f = F.padded()
    out = [0] * N
    out[0] = f[0]
    for i in range(1, N):
        out[N - i] = t.frob(f[i], (n - i) % n)
    return QuotientElem(ctx, SkewPoly(t, out))


def v_adjoint(F: QuotientElem, v: Sequence[int], alphas_src: Sequence[int | Elem] | None = None,
              alphas_dst: Sequence[int | Elem] | None = None) -> QuotientElem:
    """Φ_β^{-1} ∘ Υ_v ∘ Φ_α applied to F (α = ``alphas_src``, β = ``alphas_dst``).

    Υ_v replaces the blocks whose flag is 1 by their θ-polynomial adjoints.
    By default β = α^{-1} componentwise, which requires Λ to be a group.
    """
    from .frameworks import phi_alpha, phi_alpha_inverse, theta_adjoint

    ctx = F.ctx
    t = ctx.tower
    src = tuple(t.unwrap(a) for a in alphas_src) if alphas_src is not None else ctx.alphas
    if alphas_dst is None:
        if not ctx.is_group:
            raise LambdaNotCyclicGroupError("β = α^{-1} needs Λ closed under inverses")
        dst = tuple(t.inv(a) for a in src)
    else:
        dst = tuple(t.unwrap(a) for a in alphas_dst)
    if len(v) != ctx.ell:
        raise ValueError("v must have one flag per block")
    comps = phi_alpha(F, src)
    comps = [theta_adjoint(t, c) if flag else c for c, flag in zip(comps, v)]
    return phi_alpha_inverse(ctx, comps, dst)


def bilinear_lambda(F: QuotientElem, G: QuotientElem) -> int:
    """⟨F, G⟩_Λ = Tr(Σ f_i g_i), an element of K."""
    F._check(G)
    t = F.ctx.tower
    s = 0
    for a, b in zip(F.coeffs, G.coeffs):
        s = t.add(s, t.mul(a, b))
    return t.trace(s)
