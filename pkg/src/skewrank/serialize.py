"""Text and JSON forms of towers, elements, polynomials and reports.

Element syntax: an integer (prime field), ``g^k`` / ``c*g^k`` (powers of the
root of a primitive modulus), or a coordinate tuple ``(c0,c1,...)`` over K.
Polynomials are sums of terms ``coef*X^i`` with ``*`` optional, e.g.
``X^4+g^55X^3+g^29X^2+g^63X+1``.
"""

from __future__ import annotations

import json
import re
from typing import Any, Sequence

from .errors import ParseError
from .gf import Tower, build_tower
from .skew import SkewPoly

__all__ = ["parse_element", "parse_poly", "parse_list", "parse_tower", "dumps", "SCHEMA_PREFIX"]

SCHEMA_PREFIX = "skewrank"

_INT = re.compile(r"\d+")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.s = re.sub(r"\s+", "", text)
        self.i = 0
        split = re.search(r"\d\s+\d", text)
        if split:
            pos = len(re.sub(r"\s+", "", text[: split.end() - 1]))
            raise ParseError("whitespace inside a number", self.s, pos)

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    def expect(self, ch: str) -> None:
        if not self.eat(ch):
            raise ParseError(f"expected {ch!r}", self.s, self.i)

    def integer(self) -> int:
        m = _INT.match(self.s, self.i)
        if not m:
            raise ParseError("expected an integer", self.s, self.i)
        self.i = m.end()
        return int(m.group())

    def done(self) -> bool:
        return self.i >= len(self.s)


def _coef(sc: _Scanner, t: Tower) -> int | None:
    """A coefficient, or None when none is present (implicit 1)."""
    c = None
    ch = sc.peek()
    if ch.isdigit():
        c = sc.integer() % t.p
        sc.eat("*")
        ch = sc.peek()
    if ch == "g":
        sc.i += 1
        k = 1
        if sc.eat("^"):
            neg = sc.eat("-")
            k = -sc.integer() if neg else sc.integer()
        try:
            gk = t.gamma_pow(k)
        except ValueError as exc:
            raise ParseError(str(exc), sc.s, sc.i) from None
        c = gk if c is None else t.mul(c, gk)
        sc.eat("*")
    elif ch == "(" and c is None:
        sc.i += 1
        cs = [sc.integer()]
        while sc.eat(","):
            cs.append(sc.integer())
        sc.expect(")")
        if len(cs) != t.n or any(x >= t.q for x in cs):
            raise ParseError(f"coordinate tuple needs {t.n} entries below {t.q}", sc.s, sc.i)
        c = t.from_coords(cs)
        sc.eat("*")
    return c


def parse_element(text: str, t: Tower) -> int:
    sc = _Scanner(text)
    neg = sc.eat("-")
    c = _coef(sc, t)
    if c is None or not sc.done():
        raise ParseError("malformed element", sc.s, sc.i)
    return t.neg(c) if neg else c


def parse_poly(text: str, t: Tower) -> SkewPoly:
    sc = _Scanner(text)
    coeffs: dict[int, int] = {}
    first = True
    while not sc.done():
        neg = sc.eat("-")
        if not neg and not first:
            sc.expect("+")
            neg = sc.eat("-")
        first = False
        c = _coef(sc, t)
        if sc.eat("X") or sc.eat("x"):
            i = sc.integer() if sc.eat("^") else 1
        elif c is None:
            raise ParseError("expected a coefficient or X", sc.s, sc.i)
        else:
            i = 0
        c = 1 if c is None else c
        if neg:
            c = t.neg(c)
        coeffs[i] = t.add(coeffs.get(i, 0), c)
    if first:
        raise ParseError("empty polynomial", sc.s, 0)
    deg = max(coeffs)
    return SkewPoly(t, [coeffs.get(i, 0) for i in range(deg + 1)])


def parse_list(text: str, t: Tower) -> list[int]:
    """Comma-separated elements; commas inside parentheses belong to tuples."""
    items, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            items.append(cur)
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    items.append(cur)
    return [parse_element(x, t) for x in items if x.strip()]


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError("expected comma-separated integers", text, 0) from None


def parse_tower(spec: str, modulus: str | None = None, intermediate: int | None = None,
                theta_power: int = 1, modulus_K: str | None = None) -> Tower:
    """``p,e,n`` or a JSON object as produced by :meth:`Tower.to_dict`."""
    spec = spec.strip()
    if spec.startswith("{"):
        try:
            return Tower.from_dict(json.loads(spec))
        except (json.JSONDecodeError, KeyError) as exc:
            raise ParseError(f"bad tower JSON ({exc})", spec, 0) from None
    parts = _ints(spec)
    if len(parts) != 3:
        raise ParseError("tower must be 'p,e,n'", spec, 0)
    p, e, n = parts
    return build_tower(p, e, n, _ints(modulus) if modulus else None, intermediate,
                       modulus_K=_ints(modulus_K) if modulus_K else None, theta_power=theta_power)


def _default(o: Any):
    if hasattr(o, "to_dict"):
        return o.to_dict()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, tuple):
        return list(o)
    try:
        import numpy as np

        if isinstance(o, np.integer):
            return int(o)
    except ImportError:  # pragma: no cover
        pass
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def dumps(kind: str, payload: dict, version: int = 1) -> str:
    """Deterministic JSON with a versioned ``schema`` tag."""
    doc = {"schema": f"{SCHEMA_PREFIX}.{kind}/{version}", **payload}
    return json.dumps(doc, default=_default, sort_keys=True, indent=2)


def matrix_to_json(rows: Sequence[Sequence[int]]) -> dict:
    rows = [list(r) for r in rows]
    return {"rows": len(rows), "cols": len(rows[0]) if rows else 0, "data": rows}
