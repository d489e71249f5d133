"""Pinned worked instances over F_5 ⊂ F_125 (modulus y^3 + 3y + 3) and F_9.

Each check compares a computed value with a pinned one.  A check marked
``known`` records a pinned value that is known to disagree with exact
arithmetic; it is reported but does not count as a failure.  Keys of
``KNOWN_DISCREPANCIES`` explain each case.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

from .codes import lrs, min_distance, mds_tower, tz_mds, twisted_lrs
from .frameworks import Basis, matrix_weight, phi_alpha, to_matrix, to_vector
from .gf import build_tower
from .skew import lambda_value
from .sumrank import annihilator_generator, dickson_matrix, make_context, weight

__all__ = ["Check", "run_all", "KNOWN_DISCREPANCIES", "FULL_LAMBDA_DICKSON"]

KNOWN_DISCREPANCIES = {
    "f125-gamma-poly/lambda-values": (
        "the pinned λ-values (1,0,1,0) and weight 10 contradict the pinned Dickson matrix, "
        "which the computation reproduces entrywise and which has rank 11"),
    "f125-gamma-poly/weight": "see f125-gamma-poly/lambda-values",
}

# rows of the 12 × 12 Dickson matrix of X^4+2X^3+3X^2+3X+1 over Λ = K*
FULL_LAMBDA_DICKSON = [
    [1, 0, 0, 0, 0, 0, 0, 0, 1, 2, 3, 3],
    [3, 1, 0, 0, 0, 0, 0, 0, 0, 1, 2, 3],
    [3, 3, 1, 0, 0, 0, 0, 0, 0, 0, 1, 2],
    [2, 3, 3, 1, 0, 0, 0, 0, 0, 0, 0, 1],
    [1, 2, 3, 3, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 2, 3, 3, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 2, 3, 3, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 2, 3, 3, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 2, 3, 3, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 2, 3, 3, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 2, 3, 3, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 2, 3, 3, 1],
]

# Dickson matrix of X^4+g^55X^3+g^29X^2+g^63X+1; tokens other than 0 and 1 are γ-exponents
_G_ROWS = [
    "1 0 0 0 0 0 0 0 1 55 21 87",
    "63 1 0 0 0 0 0 0 0 1 27 105",
    "29 67 1 0 0 0 0 0 0 0 1 11",
    "55 21 87 1 0 0 0 0 0 0 0 1",
    "1 27 105 63 1 0 0 0 0 0 0 0",
    "0 1 11 29 67 1 0 0 0 0 0 0",
    "0 0 1 55 21 87 1 0 0 0 0 0",
    "0 0 0 1 27 105 63 1 0 0 0 0",
    "0 0 0 0 1 11 29 67 1 0 0 0",
    "0 0 0 0 0 1 55 21 87 1 0 0",
    "0 0 0 0 0 0 1 27 105 63 1 0",
    "0 0 0 0 0 0 0 1 11 29 67 1",
]


def gamma_poly_dickson(t) -> list[list[int]]:
    """Decode the table above: '0' is zero, '1' is one, other tokens are γ-exponents."""
    out = []
    for row in _G_ROWS:
        r = []
        for tok in row.split():
            r.append(0 if tok == "0" else 1 if tok == "1" else t.gamma_pow(int(tok)))
        out.append(r)
    return out


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any
    seconds: float = 0.0
    known: bool = field(default=False)

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    @property
    def status(self) -> str:
        if self.ok:
            return "ok"
        return "known-discrepancy" if self.known else "MISMATCH"

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": self.status, "expected": self.expected,
             "actual": self.actual}
        if self.known:
            d["note"] = KNOWN_DISCREPANCIES[self.name]
        return d


def _add(out: list[Check], name: str, expected, actual, t0: float) -> None:
    out.append(Check(name, expected, actual, time.perf_counter() - t0, name in KNOWN_DISCREPANCIES))


def run_all() -> list[Check]:
    out: list[Check] = []
    t = build_tower(5, 1, 3)
    g = t.gamma_pow
    # blocks ordered by α = (1, 2, 3, 4), whose norms are (1, 3, 2, 4)
    ctx = make_context(t, [1, 3, 2, 4], alphas=[1, 2, 3, 4])

    t0 = time.perf_counter()
    F = ctx.elem([1, 3, 3, 2, 1])
    _add(out, "f125-poly/lambda-values", [1, 0, 2, 1], [lambda_value(F.rep, lam) for lam in (1, 2, 3, 4)], t0)
    _add(out, "f125-poly/weight", 8, weight(F), t0)
    _add(out, "f125-poly/annihilator", [4, 3, 4, 1, 0, 1, 1, 3, 1],
         list(annihilator_generator(F).coeffs), t0)
    D = dickson_matrix(F)
    _add(out, "f125-poly/dickson", FULL_LAMBDA_DICKSON, D.tolist(), t0)
    _add(out, "f125-poly/dickson-rank", 8, D.rank(), t0)
    _add(out, "f125-poly/phi", [[3, 4, 3], [2, 2, 2], [0, 0, 2], [4, 3, 3]],
         [list(c) for c in phi_alpha(F)], t0)
    _add(out, "f125-poly/block-ranks", [2, 1, 3, 2], [matrix_weight(t, [m]) for m in to_matrix(F)], t0)

    t0 = time.perf_counter()
    G = ctx.elem([1, g(63), g(29), g(55), 1])
    _add(out, "f125-gamma-poly/lambda-values", [1, 0, 1, 0],
         [lambda_value(G.rep, lam) for lam in (1, 2, 3, 4)], t0)
    _add(out, "f125-gamma-poly/weight", 10, weight(G), t0)
    _add(out, "f125-gamma-poly/dickson", gamma_poly_dickson(t), dickson_matrix(G).tolist(), t0)

    t0 = time.perf_counter()
    B = Basis.of(t, [1, g(1), g(2)])
    u = [x for blk in to_vector(ctx.one(), bases=B) for x in blk]
    v = [x for blk in to_vector(F, bases=B) for x in blk]
    exp_u = [1, g(1), g(2)] * 4
    exp_v = [0, g(5), g(32), 1, 0, g(93), g(31), g(56), g(81), 0, g(1), g(56)]
    _add(out, "f125-vector/rows", [exp_u, exp_v], [u, v], t0)
    ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    _add(out, "f125-vector/ext-u", [ident] * 4,
         [[list(r) for r in m] for m in to_matrix(ctx.one(), bases=B, ext_bases=B)], t0)
    _add(out, "f125-vector/ext-v",
         [[[0, 4, 0], [0, 4, 2], [0, 2, 0]], [[1, 0, 3], [0, 0, 0], [0, 0, 0]],
          [[2, 2, 2], [0, 0, 1], [0, 1, 3]], [[0, 0, 2], [0, 1, 0], [0, 0, 1]]],
         [[list(r) for r in m] for m in to_matrix(F, bases=B, ext_bases=B)], t0)

    t0 = time.perf_counter()
    c2 = make_context(t, [1, 4], alphas=[1, 4])
    C = twisted_lrs(c2, 2, 2, 0)
    rep = min_distance(C)
    _add(out, "f125-twisted/distance", [5, 15624, "MSRD"], [rep.d, rep.enumerated, rep.verdict], t0)

    t0 = time.perf_counter()
    t9 = mds_tower(3)
    sq = sorted(t9.squares().elements)
    gamma = next(a for a in range(1, t9.order) if a not in t9.squares().elements)
    params = []
    for k in (1, 2, 3):
        code = tz_mds(3, k, gamma, sq, tower=t9)
        r = min_distance(code)
        params.append([code.ctx.ell, code.size, r.d])
    _add(out, "f9-mds/parameters", [[4, 9, 4], [4, 81, 3], [4, 729, 2]], params, t0)

    t0 = time.perf_counter()
    r = min_distance(lrs(ctx, 2))
    _add(out, "f125-lrs/distance", [11, "MSRD"], [r.d, r.verdict], t0)
    return out
