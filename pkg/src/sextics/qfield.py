"""Arithmetic in Q(sqrt(D)) for a fixed rational D.

A FieldElem is a + b*sqrt(D) with exact rational a, b. Elements carry their
FieldDescriptor and refuse to mix with a different one; a curve fixes a single
descriptor up front and every coefficient lives in it.
"""
from __future__ import annotations

import re

from .qq import QQ, is_rat, num_den, qq, qq_str, rat_sqrt


class DescriptorMismatch(ValueError):
    pass


class NotInField(ValueError):
    pass


class FieldDescriptor:
    """The radicand D of Q(sqrt(D)). D = 0 means plain Q.

    D must not be a nonzero rational square; equality of descriptors is
    literal equality of D, so Q(sqrt(3)) and Q(sqrt(12)) are distinct even
    though they name the same field.
    """

    __slots__ = ("d",)

    def __init__(self, d) -> None:
        d = qq(d)
        if d != 0 and rat_sqrt(d) is not None:
            raise ValueError(f"square radicand {d}; use D = 0 for plain Q")
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("FieldDescriptor is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldDescriptor) and self.d == other.d

    def __hash__(self) -> int:
        return hash(("FieldDescriptor", self.d))

    def __repr__(self) -> str:
        return f"FieldDescriptor({self.d})"

    def __str__(self) -> str:
        return qq_str(self.d)

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def zero(self) -> "FieldElem":
        return FieldElem(0, 0, self)

    def one(self) -> "FieldElem":
        return FieldElem(1, 0, self)

    def sqrt_d(self) -> "FieldElem":
        if self.d == 0:
            raise NotInField("sqrt(0) descriptor has no adjoined radical")
        return FieldElem(0, 1, self)

    def elem(self, a, b=0) -> "FieldElem":
        return FieldElem(a, b, self)


QQ_DESC = FieldDescriptor(0)


class FieldElem:
    """a + b*sqrt(D), immutable, with exact field arithmetic."""

    __slots__ = ("a", "b", "desc")

    def __init__(self, a, b=0, desc: FieldDescriptor = QQ_DESC) -> None:
        if desc.d == 0 and qq(b) != 0:
            raise DescriptorMismatch("nonzero radical part over plain Q")
        object.__setattr__(self, "a", qq(a))
        object.__setattr__(self, "b", qq(b))
        object.__setattr__(self, "desc", desc)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    # -- coercion ---------------------------------------------------------

    def _co(self, other) -> "FieldElem | None":
        if isinstance(other, FieldElem):
            if other.desc != self.desc:
                raise DescriptorMismatch(
                    f"mixed radicands {self.desc} and {other.desc}"
                )
            return other
        if is_rat(other):
            return FieldElem(other, 0, self.desc)
        return None

    # -- ring structure ---------------------------------------------------

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.a + o.a, self.b + o.b, self.desc)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.a, -self.b, self.desc)

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.a - o.a, self.b - o.b, self.desc)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return FieldElem(
            self.a * o.a + self.desc.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.desc,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero field element")
        c = o.conjugate()
        return FieldElem(
            (self.a * c.a + self.desc.d * self.b * c.b) / n,
            (self.a * c.b + self.b * c.a) / n,
            self.desc,
        )

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = self.desc.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        try:
            o = self._co(other)
        except DescriptorMismatch:
            return False
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.desc.d))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    # -- field-specific ---------------------------------------------------

    def conjugate(self) -> "FieldElem":
        return FieldElem(self.a, -self.b, self.desc)

    def norm(self):
        """Field norm a^2 - D*b^2, a rational."""
        return self.a * self.a - self.desc.d * self.b * self.b

    def is_rational(self) -> bool:
        return self.b == 0

    def rational_value(self):
        if self.b != 0:
            raise NotInField(f"{self} has a radical part")
        return self.a

    def sqrt(self) -> "FieldElem | None":
        """A square root inside the same field, or None."""
        d = self.desc.d
        if self.b == 0:
            r = rat_sqrt(self.a)
            if r is not None:
                return FieldElem(r, 0, self.desc)
            if d != 0:
                r = rat_sqrt(self.a / d)
                if r is not None:
                    return FieldElem(0, r, self.desc)
            return None
        n = rat_sqrt(self.norm())
        if n is None:
            return None
        for sgn in (1, -1):
            s2 = (self.a + sgn * n) / 2
            s = rat_sqrt(s2)
            if s is not None and s != 0:
                cand = FieldElem(s, self.b / (2 * s), self.desc)
                if cand * cand == self:
                    return cand
        return None

    def is_square(self) -> bool:
        return self.sqrt() is not None

    def sign_key(self):
        """Deterministic sign: +1/-1 by (a, b) lexicographic order, 0 for zero.

        Not an embedding-compatible order when D < 0; used only to pick
        canonical representatives.
        """
        if self.a != 0:
            return 1 if self.a > 0 else -1
        if self.b != 0:
            return 1 if self.b > 0 else -1
        return 0

    # -- text form --------------------------------------------------------

    def __str__(self) -> str:
        if self.b == 0:
            return qq_str(self.a)
        rad = f"sqrt({qq_str(self.desc.d)})"
        bn, bd = num_den(self.b)
        mag = abs(self.b)
        bpart = rad if mag == 1 else f"{qq_str(mag)}*{rad}"
        if self.a == 0:
            return bpart if bn > 0 else f"-{bpart}"
        op = "+" if bn > 0 else "-"
        return f"{qq_str(self.a)} {op} {bpart}"

    def __repr__(self) -> str:
        return f"FieldElem({self})"


_RAT = r"-?\d+(?:/\d+)?"
_ELEM_RE = re.compile(
    rf"^\s*(?P<a>{_RAT})?\s*"
    rf"(?:(?P<op>[+-])?\s*(?:(?P<b>{_RAT})\s*\*\s*)?sqrt\((?P<d>{_RAT})\))?\s*$"
)


def parse_elem(text: str, desc: FieldDescriptor) -> FieldElem:
    """Parse 'a + b*sqrt(D)' (any piece optional) against a fixed descriptor."""
    m = _ELEM_RE.match(text)
    if not m or (m.group("a") is None and m.group("d") is None):
        raise ValueError(f"bad field element literal: {text!r}")
    a = qq(m.group("a")) if m.group("a") is not None else qq(0)
    b = qq(0)
    if m.group("d") is not None:
        if qq(m.group("d")) != desc.d:
            raise DescriptorMismatch(
                f"literal radicand {m.group('d')} vs field {desc}"
            )
        b = qq(m.group("b")) if m.group("b") is not None else qq(1)
        if m.group("op") == "-":
            b = -b
    return FieldElem(a, b, desc)
