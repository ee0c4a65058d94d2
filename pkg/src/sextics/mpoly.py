"""Sparse multivariate polynomials over Q, for symbolic coefficient work.

Variables are named strings; exponent keys are tuples aligned with a fixed
variable list. Only ring operations are needed (the consumers are linear-form
bookkeeping and small symbolic determinants), so there is no division beyond
exact scalar division.
"""
from __future__ import annotations

from .qq import QQ, is_rat, qq, qq_str


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: dict | None = None) -> None:
        object.__setattr__(self, "vars", tuple(vars))
        clean = {}
        for e, c in (terms or {}).items():
            c = qq(c)
            if c != 0:
                clean[tuple(e)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def const(cls, vars, c) -> "MPoly":
        z = (0,) * len(vars)
        return cls(vars, {z: qq(c)})

    @classmethod
    def var(cls, vars, name) -> "MPoly":
        e = [0] * len(vars)
        e[tuple(vars).index(name)] = 1
        return cls(vars, {tuple(e): qq(1)})

    def _co(self, other) -> "MPoly | None":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError("mixed variable lists")
            return other
        if is_rat(other):
            return MPoly.const(self.vars, other)
        return None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self) -> int:
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, qq(0)) + c
        return MPoly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, qq(0)) + c1 * c2
        return MPoly(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scalar_div(self, c) -> "MPoly":
        c = qq(c)
        return MPoly(self.vars, {e: v / c for e, v in self.terms.items()})

    def eval(self, values: dict):
        """Evaluate with a full {name: rational} assignment."""
        idx = [values[v] for v in self.vars]
        out = qq(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(idx, e):
                for _ in range(k):
                    t = t * x
            out = out + t
        return out

    def divides_exactly(self, other: "MPoly") -> "MPoly | None":
        """other / self when the division is exact (single-divisor reduction)."""
        if not self:
            return None
        lead = max(self.terms)
        lc = self.terms[lead]
        rem = other
        quot: dict = {}
        while rem:
            e = max(rem.terms)
            diff = tuple(a - b for a, b in zip(e, lead))
            if any(d < 0 for d in diff):
                return None
            c = rem.terms[e] / lc
            quot[diff] = quot.get(diff, qq(0)) + c
            rem = rem - MPoly(self.vars, {diff: c}) * self
        return MPoly(self.vars, quot)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.vars, e) if k
            )
            if not mono:
                bits.append(qq_str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{qq_str(c)}*{mono}")
        out = " + ".join(bits)
        return out.replace("+ -", "- ")

    __repr__ = __str__


def det_expansion(rows: list[list[MPoly]]) -> MPoly:
    """Determinant by cofactor expansion; fine for the small symbolic matrices."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return rows[0][0]
    vars = rows[0][0].vars
    out = MPoly(vars)
    sign = 1
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        piece = rows[0][j] * det_expansion(minor)
        out = out + (piece if sign > 0 else -piece)
        sign = -sign
    return out
