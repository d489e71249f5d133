"""Finite fields and the tower F_p ⊆ K = GF(q) ⊆ L = GF(q^n).

Elements are plain ints.  An element of an extension ``B[y]/(m)`` with
coordinates ``(c_0, ..., c_{d-1})`` over ``B`` is encoded as
``sum(c_i * |B|**i)``, recursively, so the base-p digits of the code are the
power-basis coordinates over the prime field.  Two consequences are used
throughout the package:

* the elements of K are exactly the codes ``0 <= a < q`` inside L, and the prime
  field is ``0 <= a < p``;
* enumerating ``range(|L|)`` is the lexicographic coordinate order, with the
  constant coordinate varying fastest.

Multiplication uses discrete log tables and addition uses Zech logarithms, so
both are O(1) lookups.  Tables are sized ``|L|`` which keeps memory linear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadIntermediateError,
    EvenCharacteristicError,
    FieldMembershipError,
    NonPrimeError,
    ReducibleModulusError,
    TowerMismatchError,
    ZeroInputError,
    ZeroLambdaError,
    DuplicateLambdaError,
)

__all__ = [
    "FiniteField",
    "PrimeField",
    "Tower",
    "Elem",
    "Subgroup",
    "build_tower",
    "default_modulus",
    "frobenius",
    "norm",
    "trace",
    "truncated_norm",
    "xi",
    "hilbert90_preimage",
    "norm_representatives",
    "is_square",
    "squares_subgroup",
    "subgroup_generated",
    "is_prime",
    "prime_factors",
]

# Moduli fixed by convention.  Keys are (p, e, n); the K-modulus for e > 1 is
# keyed with n = 0.  Coefficients ascending, monic.
_KNOWN_MODULI: dict[tuple[int, int, int], tuple[int, ...]] = {
    (5, 1, 3): (3, 3, 0, 1),  # y^3 + 3y + 3, primitive
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# fields


class FiniteField:
    """GF(p^d) built as a simple extension of a smaller :class:`FiniteField`.

    Use :meth:`extension` or :class:`PrimeField`; the constructor is internal.
    """

    def __init__(self, p: int, base: FiniteField | None, modulus: tuple[int, ...] | None,
                 exp: list[int], log: list[int]):
        self.p = p
        self.base = base
        self.modulus = modulus
        self.order = len(log)
        self.degree = round(math.log(self.order, p)) if self.order > 1 else 0
        self._m = self.order - 1
        self._exp = exp + exp  # doubled so sums of two logs need no reduction
        self._log = log
        self.generator = exp[0 if self._m == 1 else 1] if self._m else 1
        # zech[d] = log(1 + g^d), or -1 when 1 + g^d = 0
        zech = []
        for d in range(self._m):
            x = exp[d]
            y = x - x % p + (x % p + 1) % p
            zech.append(log[y] if y else -1)
        self._zech = zech
        self._half = self._m // 2 if p != 2 else 0
        self._np_cache = None

    # construction -----------------------------------------------------------
    @classmethod
    def extension(cls, base: FiniteField, modulus: Sequence[int]) -> FiniteField:
        """``base[y]/(modulus)``; the modulus is monic with ascending coefficients."""
        mod = tuple(int(c) for c in modulus)
        d = len(mod) - 1
        if d < 1 or mod[-1] != 1:
            raise ReducibleModulusError(f"modulus must be monic of degree >= 1, got {mod}")
        if any(not 0 <= c < base.order for c in mod):
            raise ReducibleModulusError("modulus coefficient outside the base field")
        if not is_irreducible(mod, base):
            raise ReducibleModulusError(f"modulus {mod} is reducible over GF({base.order})")
        b = base.order
        order = b**d
        m = order - 1
        to_poly = _code_to_poly(b, d)

        def code(c: list[int]) -> int:
            v = 0
            for x in reversed(c):
                v = v * b + x
            return v

        root = [0] * d
        if d >= 2:
            root[1] = 1
        else:
            root[0] = base.neg(mod[0])
        gen = root
        if not _has_order(gen, m, mod, base):
            gen = None
            for c in range(2, order):
                cand = to_poly(c)
                if _has_order(cand, m, mod, base):
                    gen = cand
                    break
            if gen is None:  # pragma: no cover - excluded by the irreducibility test
                raise ReducibleModulusError(f"no primitive element for modulus {mod}")
        exp = [0] * m
        log = [-1] * order
        x = [1] + [0] * (d - 1)
        for i in range(m):
            c = code(x)
            exp[i] = c
            log[c] = i
            x = _pmulmod(x, gen, mod, base)
        return cls(base.p, base, mod, exp, log)

    # element helpers ----------------------------------------------------------
    def elements(self) -> range:
        return range(self.order)

    def contains(self, a: int) -> bool:
        return 0 <= a < self.order

    def digits(self, a: int) -> list[int]:
        """Base-p digits (prime-field coordinates), least significant first."""
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds: Iterable[int]) -> int:
        v = 0
        for x in reversed(list(ds)):
            v = v * self.p + x % self.p
        return v

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroInputError("log of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % self._m] if self._m else 1

    # arithmetic -------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        log = self._log
        la = log[a]
        d = log[b] - la
        if d < 0:
            d += self._m
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        return self._exp[self._log[a] + self._half]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            from .errors import DivisionByZeroError

            raise DivisionByZeroError("inverse of zero")
        return self._exp[self._m - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                return self.inv(0)
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % self._m] if self._m else 1

    def sum(self, xs: Iterable[int]) -> int:
        s = 0
        for x in xs:
            s = self.add(s, x)
        return s

    def order_of(self, a: int) -> int:
        if a == 0:
            raise ZeroInputError("zero has no multiplicative order")
        if not self._m:
            return 1
        return self._m // math.gcd(self._m, self._log[a])

    def np_tables(self):
        """(add, mul, neg, inv) lookup tables as numpy arrays, for batched work."""
        if self._np_cache is None:
            if self.order > 1024:
                raise ValueError("table-driven batch arithmetic needs |F| <= 1024")
            o = self.order
            digits = np.array([self.digits(a) for a in range(o)], dtype=np.int64).reshape(o, self.degree)
            pw = self.p ** np.arange(self.degree, dtype=np.int64)
            add = ((digits[:, None, :] + digits[None, :, :]) % self.p) @ pw
            lg = np.array(self._log, dtype=np.int64)
            ex = np.array(self._exp, dtype=np.int64)
            mul = ex[(lg[:, None] + lg[None, :]) % max(self._m, 1)]
            mul[0, :] = 0
            mul[:, 0] = 0
            neg = ((-digits) % self.p) @ pw
            inv = np.zeros(o, dtype=np.int64)
            for a in range(1, o):
                inv[a] = self.inv(a)
            self._np_cache = tuple(t.astype(np.int32) for t in (add, mul, neg, inv))
        return self._np_cache

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree})"


class PrimeField(FiniteField):
    """GF(p) with modular arithmetic fast paths."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise NonPrimeError(f"{p} is not prime")
        g = _primitive_root(p)
        exp = [pow(g, i, p) for i in range(p - 1)]
        log = [-1] * p
        for i, x in enumerate(exp):
            log[x] = i
        super().__init__(p, None, None, exp, log)
        self.generator = g

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def digits(self, a: int) -> list[int]:
        return [a]


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in fs):
            return g
    raise AssertionError("unreachable")  # pragma: no cover


# ---------------------------------------------------------------------------
# dense univariate polynomials over a FiniteField (construction-time only)


def _code_to_poly(b: int, d: int):
    def f(c: int) -> list[int]:
        out = []
        for _ in range(d):
            c, r = divmod(c, b)
            out.append(r)
        return out

    return f


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: Sequence[int], F: FiniteField) -> list[int]:
    """Remainder of ``a`` modulo a monic ``m``."""
    a = list(a)
    d = len(m) - 1
    for top in range(len(a) - 1, d - 1, -1):
        c = a[top]
        if c:
            s = top - d
            for i in range(d):
                if m[i]:
                    a[s + i] = F.sub(a[s + i], F.mul(c, m[i]))
            a[top] = 0
    return a[:d] + [0] * max(0, d - len(a))


def _pmul(a: Sequence[int], b: Sequence[int], F: FiniteField) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _pmulmod(a, b, m, F) -> list[int]:
    return _pmod(_pmul(a, b, F), m, F)


def _ppowmod(a: list[int], k: int, m, F) -> list[int]:
    d = len(m) - 1
    result = [1] + [0] * (d - 1)
    base = _pmod(a, m, F)
    while k:
        if k & 1:
            result = _pmulmod(result, base, m, F)
        k >>= 1
        if k:
            base = _pmulmod(base, base, m, F)
    return result


def _pgcd(a: list[int], b: list[int], F: FiniteField) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        # make b monic then reduce a mod b
        inv = F.inv(b[-1])
        b = [F.mul(inv, x) for x in b]
        a, b = b, _trim(_pmod(a, b, F)) if len(a) >= len(b) else a
    return a


def _has_order(x: list[int], m: int, mod, F: FiniteField) -> bool:
    """True when ``x`` has multiplicative order exactly ``m`` modulo ``mod``."""
    d = len(mod) - 1
    one = [1] + [0] * (d - 1)
    if not any(x):
        return False
    if _ppowmod(x, m, mod, F) != one:
        return False
    return all(_ppowmod(x, m // r, mod, F) != one for r in prime_factors(m)) if m > 1 else True


def is_irreducible(modulus: Sequence[int], F: FiniteField) -> bool:
    """Rabin's test for a monic polynomial over ``F``."""
    mod = list(modulus)
    d = len(mod) - 1
    if d == 1:
        return True
    if mod[0] == 0:
        return False
    q = F.order
    y = [0, 1] + [0] * (d - 2)

    def frob_iter(k: int) -> list[int]:
        r = y
        for _ in range(k):
            r = _ppowmod(r, q, mod, F)
        return r

    if frob_iter(d) != y:
        return False
    for r in prime_factors(d):
        t = frob_iter(d // r)
        diff = _trim([F.sub(a, b) for a, b in zip(t, y)])
        if len(_pgcd(mod, diff, F)) != 1:
            return False
    return True


def default_modulus(F: FiniteField, n: int, key: tuple[int, int, int] | None = None) -> tuple[int, ...]:
    """Deterministic monic modulus of degree ``n`` over ``F``.

    A fixed table is consulted first.  Otherwise degree one gives ``y - 1`` and
    higher degrees give the first primitive polynomial when the coefficient
    vector ``(c_0, ..., c_{n-1})`` is read as a base-|F| number.
    """
    if key is not None and key in _KNOWN_MODULI:
        return _KNOWN_MODULI[key]
    if n == 1:
        return (F.neg(1), 1)
    q = F.order
    m = q**n - 1
    to_poly = _code_to_poly(q, n)
    for c in range(1, q**n):
        low = to_poly(c)
        if low[0] == 0:
            continue
        mod = tuple(low) + (1,)
        if not is_irreducible(mod, F):
            continue
        if _has_order([0, 1] + [0] * (n - 2), m, mod, F):
            return mod
    raise AssertionError("no primitive polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# the tower


@dataclass(frozen=True)
class Subgroup:
    """A finite subgroup of K*, as a set of codes plus its order."""

    elements: frozenset[int]
    order: int
    every_unit_is_square: bool = False

    def __contains__(self, a: int) -> bool:
        return a in self.elements


class Tower:
    """K = GF(p^e) with L = GF(q^n) over it and the generator θ of Gal(L/K).

    ``theta_power`` selects θ = Frob_q^t; any ``t`` coprime to ``n`` generates the
    Galois group.  ``intermediate`` is ``s = [L:E]`` for a distinguished subfield
    E of L; it must divide the absolute degree ``e*n``.
    """

    def __init__(self, p: int, e: int = 1, n: int = 1, modulus: Sequence[int] | None = None, *,
                 modulus_K: Sequence[int] | None = None, intermediate: int | None = None,
                 theta_power: int = 1):
        if not is_prime(p):
            raise NonPrimeError(f"{p} is not prime")
        if e < 1 or n < 1:
            raise ValueError("extension degrees must be positive")
        if math.gcd(theta_power, n) != 1:
            raise ValueError(f"theta_power {theta_power} does not generate Gal(L/K) for n = {n}")
        if intermediate is not None and (intermediate < 1 or (e * n) % intermediate):
            raise BadIntermediateError(f"[L:E] = {intermediate} does not divide [L:F_p] = {e * n}")
        self.p, self.e, self.n = p, e, n
        self.theta_power = theta_power % n if n > 1 else 0
        self.intermediate = intermediate
        prime = PrimeField(p)
        self.prime_field = prime
        if e == 1:
            if modulus_K is not None and len(modulus_K) != 2:
                raise ReducibleModulusError("a degree-one K modulus is implied when e = 1")
            self.K = prime
            self.modulus_K = None
        else:
            mk = tuple(modulus_K) if modulus_K is not None else default_modulus(prime, e, (p, e, 0))
            if len(mk) != e + 1:
                raise ReducibleModulusError(f"K modulus must have degree {e}")
            self.K = FiniteField.extension(prime, mk)
            self.modulus_K = mk
        mod = tuple(modulus) if modulus is not None else default_modulus(self.K, n, (p, e, n))
        if len(mod) != n + 1:
            raise ReducibleModulusError(f"modulus must have degree {n}, got {len(mod) - 1}")
        self.modulus = mod
        if n == 1:
            if mod[-1] != 1 or not 0 <= mod[0] < self.K.order:
                raise ReducibleModulusError(f"bad degree-one modulus {mod}")
            self.L = self.K
        else:
            self.L = FiniteField.extension(self.K, mod)
        self.q = self.K.order
        self.order = self.L.order
        self._m = self.order - 1
        m = max(self._m, 1)
        self._frob_exp = [pow(self.q, (self.theta_power * i) % n, m) for i in range(n)]
        self._frob_tables: dict[int, list[int]] = {}
        self._tnorm_exp = [0]
        self._subfields: dict[int, list[int]] = {}
        root = self.q if n >= 2 else self.K.neg(mod[0])
        self.root = root
        # for n = 1 the γ of γ-power notation is the generator of K over F_p
        g = self.p if n == 1 and e >= 2 else root
        if g and self.L.order_of(g) == self._m:
            self.gamma: int | None = g
            self._gamma_log_inv = pow(self.L.log(g), -1, m) if self._m > 1 else 0
        else:
            self.gamma = None
        # ops as attributes for fast local binding
        L = self.L
        self.add, self.sub, self.neg, self.mul = L.add, L.sub, L.neg, L.mul
        self.inv, self.div, self.pow = L.inv, L.div, L.pow

    # identity ---------------------------------------------------------------
    def key(self) -> tuple:
        return (self.p, self.e, self.n, self.modulus, self.modulus_K, self.intermediate, self.theta_power)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tower) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Tower(p={self.p}, e={self.e}, n={self.n}, modulus={list(self.modulus)})"

    # subfields ----------------------------------------------------------------
    @property
    def absolute_degree(self) -> int:
        return self.e * self.n

    def field_degree(self, name: str) -> int:
        """Absolute degree over F_p of 'prime', 'K', 'E' or 'L'."""
        if name == "prime":
            return 1
        if name == "K":
            return self.e
        if name == "L":
            return self.e * self.n
        if name == "E":
            if self.intermediate is None:
                raise BadIntermediateError("tower has no intermediate field")
            return self.e * self.n // self.intermediate
        raise ValueError(f"unknown field {name!r}")

    def subfield(self, d: int) -> list[int]:
        """Elements of the subfield of absolute degree ``d``, in enumeration order."""
        if (self.e * self.n) % d:
            raise BadIntermediateError(f"L has no subfield of degree {d}")
        if d not in self._subfields:
            step = self._m // (self.p**d - 1)
            self._subfields[d] = sorted([0] + [self.L.exp(j * step) for j in range(self.p**d - 1)])
        return self._subfields[d]

    def in_subfield(self, a: int, d: int) -> bool:
        if a == 0:
            return True
        return self.L.log(a) % (self._m // (self.p**d - 1)) == 0

    def in_K(self, a: int) -> bool:
        return 0 <= a < self.q

    def K_elements(self) -> range:
        return range(self.q)

    def elements(self) -> range:
        return range(self.order)

    def coords(self, a: int) -> list[int]:
        """Coordinates over K in the power basis 1, y, ..., y^{n-1}."""
        out = []
        for _ in range(self.n):
            a, r = divmod(a, self.q)
            out.append(r)
        return out

    def from_coords(self, cs: Sequence[int]) -> int:
        if len(cs) != self.n:
            raise ValueError(f"expected {self.n} coordinates")
        v = 0
        for c in reversed(cs):
            if not 0 <= c < self.q:
                raise FieldMembershipError(f"coordinate {c} is not an element of K")
            v = v * self.q + c
        return v

    def power_basis(self) -> list[int]:
        return [self.q**i for i in range(self.n)]

    # Galois maps ------------------------------------------------------------
    def frob(self, a: int, i: int = 1) -> int:
        """θ^i(a)."""
        if a == 0 or self.n == 1:
            return a
        L = self.L
        return L._exp[(L._log[a] * self._frob_exp[i % self.n]) % self._m]

    def frob_table(self, i: int) -> list[int]:
        """Lookup table of θ^i over all codes."""
        i %= self.n
        t = self._frob_tables.get(i)
        if t is None:
            t = [self.frob(a, i) for a in range(self.order)]
            self._frob_tables[i] = t
        return t

    def norm(self, a: int) -> int:
        if a == 0:
            return 0
        return self.L.pow(a, self._m // (self.q - 1)) if self.q > 1 else a

    def trace(self, a: int) -> int:
        s = 0
        for i in range(self.n):
            s = self.add(s, self.frob(a, i))
        return s

    def absolute_trace(self, a: int) -> int:
        """Trace from L down to the prime field."""
        s, x = 0, a
        for _ in range(self.e * self.n):
            s = self.add(s, x)
            x = self.L.pow(x, self.p)
        return s

    def tnorm_exponent(self, i: int) -> int:
        """Exponent E with N_i(a) = a^E, reduced modulo |L| - 1."""
        ex = self._tnorm_exp
        m = max(self._m, 1)
        while len(ex) <= i:
            j = len(ex) - 1
            ex.append((ex[-1] + self._frob_exp[j % self.n]) % m)
        return ex[i]

    def tnorm(self, a: int, i: int) -> int:
        """Truncated norm N_i(a) = a θ(a) ... θ^{i-1}(a)."""
        if i == 0:
            return 1
        if a == 0:
            return 0
        L = self.L
        return L._exp[(L._log[a] * self.tnorm_exponent(i)) % self._m] if self._m else 1

    def xi(self, a: int) -> int:
        if a == 0:
            raise ZeroInputError("xi is defined on L* only")
        return self.div(self.frob(a, 1), a)

    def hilbert90_preimage(self, alpha: int) -> int | None:
        """Some x with θ(x)/x = alpha, or None when N(alpha) != 1."""
        if alpha == 0:
            raise ZeroInputError("alpha must be nonzero")
        if self.norm(alpha) != 1:
            return None
        if alpha == 1:
            return 1
        tn = [self.tnorm(alpha, i) for i in range(self.n)]
        for c in range(1, self.order):
            y = 0
            for i in range(self.n):
                y = self.add(y, self.mul(tn[i], self.frob(c, i)))
            if y:
                # χ(c) = Σ N_i(α) θ^i(c) satisfies θ(χ(c)) = α^{-1} χ(c)
                return self.inv(y)
        raise AssertionError("unreachable: χ_α is a nonzero K-linear map")  # pragma: no cover

    def norm_representatives(self, lambdas: Sequence[int], index: int = 0) -> list[int]:
        """For each λ the ``index``-th element of L (enumeration order) of norm λ."""
        out = []
        self.check_lambdas(lambdas)
        for lam in lambdas:
            seen = 0
            for a in range(1, self.order):
                if self.norm(a) == lam:
                    if seen == index:
                        out.append(a)
                        break
                    seen += 1
            else:
                raise ValueError(f"fewer than {index + 1} elements of norm {lam}")
        return out

    def check_lambdas(self, lambdas: Sequence[int]) -> None:
        for lam in lambdas:
            if lam == 0:
                raise ZeroLambdaError("λ must be nonzero")
            if not self.in_K(lam):
                raise FieldMembershipError(f"λ = {lam} is not in K")
        if len(set(lambdas)) != len(lambdas):
            raise DuplicateLambdaError(f"λ values must be distinct: {list(lambdas)}")

    def is_square(self, a: int) -> bool:
        """Euler's criterion in K*."""
        if self.q % 2 == 0:
            raise EvenCharacteristicError("every element of K* is a square when q is even")
        if a == 0:
            raise ZeroInputError("squares are taken in K*")
        if not self.in_K(a):
            raise FieldMembershipError(f"{a} is not in K")
        return self.K.pow(a, (self.q - 1) // 2) == 1

    def squares(self) -> Subgroup:
        if self.q % 2 == 0:
            return Subgroup(frozenset(range(1, self.q)), self.q - 1, every_unit_is_square=True)
        sq = frozenset(self.K.mul(x, x) for x in range(1, self.q))
        return Subgroup(sq, len(sq))

    def subgroup_generated(self, gens: Iterable[int]) -> Subgroup:
        elems = {1}
        frontier = [1]
        gens = list(gens)
        for g in gens:
            if g == 0:
                raise ZeroInputError("0 generates no subgroup")
            if not self.in_K(g):
                raise FieldMembershipError(f"{g} is not in K")
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.K.mul(x, g)
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        return Subgroup(frozenset(elems), len(elems))

    # text -------------------------------------------------------------------
    def gamma_log(self, a: int) -> int:
        """k with γ^k = a; requires a primitive modulus."""
        if self.gamma is None:
            raise ValueError("modulus is not primitive; γ-power notation unavailable")
        return (self.L.log(a) * self._gamma_log_inv) % max(self._m, 1)

    def gamma_pow(self, k: int) -> int:
        if self.gamma is None:
            raise ValueError("modulus is not primitive; γ-power notation unavailable")
        return self.L.pow(self.gamma, k)

    def format(self, a: int) -> str:
        """Prime-field elements as integers, others as ``g^k`` or a coordinate tuple."""
        if a < self.p:
            return str(a)
        if self.gamma is not None:
            return f"g^{self.gamma_log(a)}"
        return "(" + ",".join(str(c) for c in self.coords(a)) + ")"

    # JSON -------------------------------------------------------------------
    def to_dict(self) -> dict:
        d = {"p": self.p, "e": self.e, "n": self.n, "modulus": list(self.modulus),
             "intermediate": self.intermediate, "theta_power": self.theta_power or 1}
        if self.modulus_K is not None:
            d["modulus_K"] = list(self.modulus_K)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> Tower:
        return build_tower(d["p"], d.get("e", 1), d.get("n", 1), d.get("modulus"),
                           d.get("intermediate"), modulus_K=d.get("modulus_K"),
                           theta_power=d.get("theta_power", 1))

    # Elem wrappers ----------------------------------------------------------
    def elem(self, a: int | Elem, home: str = "L") -> Elem:
        if isinstance(a, Elem):
            if a.tower is not self and a.tower != self:
                raise TowerMismatchError("element belongs to a different tower")
            return a
        a = int(a)
        if not 0 <= a < self.order:
            raise FieldMembershipError(f"{a} is not an element code of L")
        return Elem(self, a, home)

    def unwrap(self, a: int | Elem) -> int:
        if isinstance(a, Elem):
            if a.tower is not self and a.tower != self:
                raise TowerMismatchError("element belongs to a different tower")
            return a.value
        return int(a)


_TOWER_CACHE: dict[tuple, Tower] = {}


def build_tower(p: int, e: int = 1, n: int = 1, modulus: Sequence[int] | None = None,
                intermediate: int | None = None, *, modulus_K: Sequence[int] | None = None,
                theta_power: int = 1) -> Tower:
    """Construct (or fetch from a small cache) the tower for the given data."""
    key = (p, e, n, tuple(modulus) if modulus is not None else None,
           tuple(modulus_K) if modulus_K is not None else None, intermediate, theta_power)
    t = _TOWER_CACHE.get(key)
    if t is None:
        t = Tower(p, e, n, modulus, modulus_K=modulus_K, intermediate=intermediate,
                  theta_power=theta_power)
        _TOWER_CACHE[key] = t
    return t


# ---------------------------------------------------------------------------
# tagged elements


_FIELD_ORDER = ("prime", "K", "E", "L")


@dataclass(frozen=True, eq=False)
class Elem:
    """An element of L with a tag naming the smallest named field it lives in.

    Mixing elements of different towers raises :class:`TowerMismatchError`;
    mixing fields of one tower coerces upward to a field containing both.
    """

    tower: Tower
    value: int
    home: str = "L"

    def _other(self, other) -> int:
        if isinstance(other, Elem):
            if other.tower is not self.tower and other.tower != self.tower:
                raise TowerMismatchError("elements belong to different towers")
            return other.value
        if isinstance(other, int):
            return other % self.tower.p
        return NotImplemented

    def _join(self, other) -> str:
        if not isinstance(other, Elem):
            return self.home
        t = self.tower
        da, db = t.field_degree(self.home), t.field_degree(other.home)
        for name in _FIELD_ORDER:
            if name == "E" and t.intermediate is None:
                continue
            d = t.field_degree(name)
            if d % da == 0 and d % db == 0:
                return name
        return "L"  # pragma: no cover

    def _wrap(self, v: int, other=None) -> Elem:
        return Elem(self.tower, v, self._join(other))

    def __add__(self, other):
        b = self._other(other)
        return self._wrap(self.tower.add(self.value, b), other)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return self._wrap(self.tower.sub(self.value, b), other)

    def __rsub__(self, other):
        b = self._other(other)
        return self._wrap(self.tower.sub(b, self.value), other)

    def __mul__(self, other):
        b = self._other(other)
        return self._wrap(self.tower.mul(self.value, b), other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return self._wrap(self.tower.div(self.value, b), other)

    def __rtruediv__(self, other):
        b = self._other(other)
        return self._wrap(self.tower.div(b, self.value), other)

    def __neg__(self):
        return self._wrap(self.tower.neg(self.value))

    def __pow__(self, k: int):
        return self._wrap(self.tower.pow(self.value, k))

    def __eq__(self, other) -> bool:
        if isinstance(other, Elem):
            return self.tower == other.tower and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Elem({self.tower.format(self.value)})"

    def __str__(self) -> str:
        return self.tower.format(self.value)


def _K_elem(t: Tower, v: int) -> Elem:
    return Elem(t, v, "prime" if v < t.p else "K")


def frobenius(a: Elem, i: int = 1) -> Elem:
    """θ^i(a)."""
    return Elem(a.tower, a.tower.frob(a.value, i), a.home)


def norm(a: Elem) -> Elem:
    return _K_elem(a.tower, a.tower.norm(a.value))


def trace(a: Elem) -> Elem:
    return _K_elem(a.tower, a.tower.trace(a.value))


def truncated_norm(a: Elem, i: int) -> Elem:
    if i < 0:
        raise ValueError("i must be non-negative")
    return Elem(a.tower, a.tower.tnorm(a.value, i))


def xi(a: Elem) -> Elem:
    return Elem(a.tower, a.tower.xi(a.value))


def hilbert90_preimage(alpha: Elem) -> Elem | None:
    x = alpha.tower.hilbert90_preimage(alpha.value)
    return None if x is None else Elem(alpha.tower, x)


def norm_representatives(tower: Tower, lambdas: Sequence[int | Elem], index: int = 0) -> list[Elem]:
    codes = [tower.unwrap(x) for x in lambdas]
    return [Elem(tower, a) for a in tower.norm_representatives(codes, index)]


def is_square(a: Elem) -> bool:
    return a.tower.is_square(a.value)


def squares_subgroup(tower: Tower) -> Subgroup:
    return tower.squares()


def subgroup_generated(tower: Tower, gens: Iterable[int | Elem]) -> Subgroup:
    return tower.subgroup_generated(tower.unwrap(g) for g in gens)
