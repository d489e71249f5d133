"""The skew polynomial ring L[X; θ] with X a = θ(a) X.

Coefficients are L-codes stored ascending.  All divisions are on the right:
``F = Q G + R`` with ``deg R < deg G``.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import BothZeroError, DivisionByZeroError, TowerMismatchError, ZeroAlphaError, ZeroPolynomialError
from .gf import Elem, Tower
from .linalg import Matrix, nullspace

__all__ = [
    "SkewPoly",
    "skew_mul",
    "right_divide",
    "gcrd",
    "lclm",
    "alpha_shift",
    "evaluate",
    "projective_evaluate",
    "lambda_value",
    "lambda_values",
    "kernel_basis",
    "companion_matrix",
    "a_matrix",
    "eigenspace_dim",
    "operator_matrix",
]

NEG_INF = -math.inf


class SkewPoly:
    """Immutable element of L[X; θ]."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: Tower, coeffs: Iterable[int | Elem] = ()):
        cs = [tower.unwrap(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.tower = tower
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def _raw(cls, tower: Tower, cs: list[int]) -> SkewPoly:
        while cs and cs[-1] == 0:
            cs.pop()
        obj = cls.__new__(cls)
        obj.tower = tower
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def monomial(cls, tower: Tower, i: int, c: int = 1) -> SkewPoly:
        return cls._raw(tower, [0] * i + [c])

    @classmethod
    def x_n_minus(cls, tower: Tower, lam: int) -> SkewPoly:
        """X^n - λ."""
        return cls._raw(tower, [tower.neg(lam)] + [0] * (tower.n - 1) + [1])

    # basic protocol -----------------------------------------------------------
    @property
    def degree(self) -> int | float:
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewPoly) and self.tower == other.tower and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def lead(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def elems(self) -> list[Elem]:
        return [Elem(self.tower, c) for c in self.coeffs]

    def _check(self, other: SkewPoly) -> None:
        if self.tower is not other.tower and self.tower != other.tower:
            raise TowerMismatchError("polynomials over different towers")

    # arithmetic ----------------------------------------------------------------
    def __add__(self, other: SkewPoly) -> SkewPoly:
        self._check(other)
        add = self.tower.add
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return SkewPoly._raw(self.tower, [add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    def __neg__(self) -> SkewPoly:
        neg = self.tower.neg
        return SkewPoly._raw(self.tower, [neg(x) for x in self.coeffs])

    def __sub__(self, other: SkewPoly) -> SkewPoly:
        return self + (-other)

    def __mul__(self, other: SkewPoly) -> SkewPoly:
        if isinstance(other, SkewPoly):
            self._check(other)
            return skew_mul(self, other)
        return NotImplemented

    def scale_left(self, c: int) -> SkewPoly:
        """c · F."""
        mul = self.tower.mul
        return SkewPoly._raw(self.tower, [mul(c, x) for x in self.coeffs])

    def scale_right(self, c: int) -> SkewPoly:
        """F · c = Σ f_i θ^i(c) X^i."""
        t = self.tower
        return SkewPoly._raw(t, [t.mul(x, t.frob(c, i)) for i, x in enumerate(self.coeffs)])

    def shift(self, k: int) -> SkewPoly:
        """F · X^k."""
        return SkewPoly._raw(self.tower, [0] * k + list(self.coeffs)) if self.coeffs else self

    def monic(self) -> SkewPoly:
        """inv(lead) · F."""
        return self.scale_left(self.tower.inv(self.lead()))

    def __divmod__(self, other: SkewPoly):
        return right_divide(self, other)

    def __mod__(self, other: SkewPoly) -> SkewPoly:
        return right_divide(self, other)[1]

    def __floordiv__(self, other: SkewPoly) -> SkewPoly:
        return right_divide(self, other)[0]

    # text ----------------------------------------------------------------------
    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        fmt = self.tower.format
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            cs = fmt(c)
            if mono and c == 1:
                parts.append(mono)
            else:
                parts.append(cs + mono)
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"SkewPoly({self})"

    def to_dict(self) -> dict:
        return {"coeffs": list(self.coeffs)}


def skew_mul(F: SkewPoly, G: SkewPoly) -> SkewPoly:
    t = F.tower
    a, b = F.coeffs, G.coeffs
    if not a or not b:
        return SkewPoly._raw(t, [])
    out = [0] * (len(a) + len(b) - 1)
    add, mul = t.add, t.mul
    for i, x in enumerate(a):
        if not x:
            continue
        th = t.frob_table(i) if t.n > 1 else None
        for j, y in enumerate(b):
            if y:
                out[i + j] = add(out[i + j], mul(x, th[y] if th else y))
    return SkewPoly._raw(t, out)


def right_divide(F: SkewPoly, G: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """(Q, R) with F = Q·G + R and deg R < deg G."""
    if not G.coeffs:
        raise DivisionByZeroError("right division by the zero polynomial")
    F._check(G)
    t = F.tower
    add, mul, neg = t.add, t.mul, t.neg
    r = list(F.coeffs)
    g = G.coeffs
    dg = len(g) - 1
    if len(r) <= dg:
        return SkewPoly._raw(t, []), F
    quot = [0] * (len(r) - dg)
    ginv = t.inv(g[-1])
    # cache θ^s(g) rows as needed
    for top in range(len(r) - 1, dg - 1, -1):
        c = r[top]
        if not c:
            continue
        s = top - dg
        # c X^s · G has leading coefficient c θ^s(g_d)
        coef = mul(c, t.frob(ginv, s))
        quot[s] = coef
        nc = neg(coef)
        th = t.frob_table(s) if t.n > 1 and s % t.n else None
        for i in range(dg):
            gi = g[i]
            if gi:
                r[s + i] = add(r[s + i], mul(nc, th[gi] if th else gi))
        r[top] = 0
    return SkewPoly._raw(t, quot), SkewPoly._raw(t, r[:dg])


def gcrd(F: SkewPoly, G: SkewPoly) -> SkewPoly:
    """Monic greatest common right divisor."""
    if not F.coeffs and not G.coeffs:
        raise BothZeroError("gcrd(0, 0) is undefined")
    a, b = F, G
    while b.coeffs:
        a, b = b, right_divide(a, b)[1]
    return a.monic()


def lclm(F: SkewPoly, G: SkewPoly) -> SkewPoly:
    """Monic least common left multiple, via the extended right Euclidean algorithm."""
    if not F.coeffs or not G.coeffs:
        raise ZeroPolynomialError("lclm needs nonzero arguments")
    t = F.tower
    r0, r1 = F, G
    u0, u1 = SkewPoly._raw(t, [1]), SkewPoly._raw(t, [])
    while r1.coeffs:
        q, r2 = right_divide(r0, r1)
        u0, u1 = u1, u0 - q * u1
        r0, r1 = r1, r2
    # now u1·F + v1·G = 0 with u1 minimal
    return (u1 * F).monic()


def alpha_shift(F: SkewPoly, alpha: int | Elem) -> SkewPoly:
    """F_α = Σ f_i N_i(α) X^i."""
    t = F.tower
    a = t.unwrap(alpha)
    if a == 0:
        raise ZeroAlphaError("α must be nonzero")
    return SkewPoly._raw(t, [t.mul(c, t.tnorm(a, i)) for i, c in enumerate(F.coeffs)])


def evaluate(F: SkewPoly, beta: int | Elem) -> int:
    """Σ f_i θ^i(β): F acting as a θ-polynomial."""
    t = F.tower
    b = t.unwrap(beta)
    s = 0
    for i, c in enumerate(F.coeffs):
        if c:
            s = t.add(s, t.mul(c, t.frob(b, i)))
    return s


def projective_evaluate(F: SkewPoly, beta: int | Elem) -> int:
    """Σ f_i N_i(β)."""
    t = F.tower
    b = t.unwrap(beta)
    s = 0
    for i, c in enumerate(F.coeffs):
        if c:
            s = t.add(s, t.mul(c, t.tnorm(b, i)))
    return s


def lambda_value(F: SkewPoly, lam: int | Elem) -> int:
    """d_λ(F) = deg gcrd(F, X^n - λ)."""
    t = F.tower
    lam = t.unwrap(lam)
    if not F.coeffs:
        return t.n
    return int(gcrd(F, SkewPoly.x_n_minus(t, lam)).degree)


def lambda_values(F: SkewPoly, lambdas: Sequence[int | Elem]) -> tuple[int, ...]:
    return tuple(lambda_value(F, lam) for lam in lambdas)


def operator_matrix(F: SkewPoly) -> Matrix:
    """n×n matrix over K of β ↦ F(β) in the power basis (columns are images)."""
    t = F.tower
    cols = [t.coords(evaluate(F, b)) for b in t.power_basis()]
    return Matrix.of(t.L, list(map(list, zip(*cols))))


def kernel_basis(F: SkewPoly) -> list[int]:
    """K-basis of {β ∈ L : F(β) = 0}.

    F acts through its residue modulo X^n - 1, so for F ≡ 0 the whole power
    basis of L is returned.
    """
    t = F.tower
    M = operator_matrix(F)
    return [t.from_coords(v) for v in nullspace(M.rows, t.L, t.n)]


def companion_matrix(F: SkewPoly) -> Matrix:
    """Companion matrix of the monic associate of F.

    Column j is the coordinate vector of X^{j+1} mod_r F in the basis
    1, X, ..., X^{d-1}.
    """
    if not F.coeffs:
        raise ZeroPolynomialError("companion matrix of zero")
    t = F.tower
    f = F.monic().coeffs
    d = len(f) - 1
    rows = [[0] * d for _ in range(d)]
    for j in range(d - 1):
        rows[j + 1][j] = 1
    for i in range(d):
        rows[i][d - 1] = t.neg(f[i])
    return Matrix.of(t.L, rows)


def a_matrix(F: SkewPoly) -> Matrix:
    """A_F = C θ(C) ... θ^{n-1}(C), the matrix of G ↦ X^n G mod_r F."""
    t = F.tower
    C = companion_matrix(F)
    A = C
    for i in range(1, t.n):
        A = A @ C.map(lambda x, i=i: t.frob(x, i))
    return A


def eigenspace_dim(F: SkewPoly, lam: int | Elem) -> int:
    """dim_L ker(A_F - λ I)."""
    t = F.tower
    lam = t.unwrap(lam)
    A = a_matrix(F)
    d = A.shape[0]
    shifted = Matrix.of(t.L, [[t.sub(A[i, j], lam) if i == j else A[i, j] for j in range(d)]
                              for i in range(d)])
    return shifted.nullity()
