"""Arithmetic modulo a squarefree univariate modulus, for conjugate
singular-point orbits whose coordinates do not lie in the ambient field.

Elements of K[x]/(Q) are UniPoly residues; no factoring is ever done.
When an inverse is requested for a zero divisor the modulus splits
through the witnessed gcd factor and the computation resumes on each
branch (dynamic evaluation).
"""
from __future__ import annotations

from .polyring import BiPoly, UniPoly
from .qfield import FieldDescriptor


class SplitNeeded(Exception):
    """A zero divisor was hit; .factor is a proper monic divisor of Q."""

    def __init__(self, factor: UniPoly) -> None:
        super().__init__("modulus splits")
        self.factor = factor


def poly_mod(p: UniPoly, Q: UniPoly) -> UniPoly:
    if p.degree < Q.degree:
        return p
    return p.divmod(Q)[1]


def ext_gcd(a: UniPoly, b: UniPoly):
    """(g, u, v) with u*a + v*b = g; g monic unless zero."""
    zero = a.zero
    one_p = UniPoly([zero + 1], zero)
    zero_p = UniPoly([], zero)
    r0, r1 = a, b
    s0, s1 = one_p, zero_p
    t0, t1 = zero_p, one_p
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0:
        c = r0.lc()
        inv = (zero + 1) / c
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)
    return r0, s0, t0


def inv_mod(a: UniPoly, Q: UniPoly) -> UniPoly:
    """Inverse of a in K[x]/(Q); raises SplitNeeded on a zero divisor."""
    a = poly_mod(a, Q)
    if not a:
        raise ZeroDivisionError("inverse of zero residue")
    g, u, _ = ext_gcd(a, Q)
    if g.degree > 0:
        raise SplitNeeded(g)
    return poly_mod(u, Q)


# A polynomial in y over K[x]/(Q) is a list of UniPoly residues, index =
# power of y, trimmed so the last entry is nonzero mod Q.


def _trim(f: list[UniPoly], Q: UniPoly) -> list[UniPoly]:
    f = [poly_mod(c, Q) for c in f]
    while f and not f[-1]:
        f.pop()
    return f


def biv_residue(p: BiPoly, Q: UniPoly) -> list[UniPoly]:
    """p as a y-polynomial with coefficients reduced mod Q."""
    zero = p.zero
    cols: dict[int, dict[int, object]] = {}
    for (i, j), c in p.terms.items():
        cols.setdefault(j, {})[i] = c
    out = []
    for j in range(max(cols) + 1 if cols else 0):
        out.append(UniPoly.from_dict(cols.get(j, {}), zero))
    return _trim(out, Q)


def _y_monic(f: list[UniPoly], Q: UniPoly) -> list[UniPoly]:
    inv = inv_mod(f[-1], Q)
    return [poly_mod(c * inv, Q) for c in f]


def _y_rem(f: list[UniPoly], g: list[UniPoly], Q: UniPoly) -> list[UniPoly]:
    """Remainder of f by monic-normalized g over K[x]/(Q)."""
    g = _y_monic(g, Q)
    f = list(f)
    while len(f) >= len(g) and f:
        lead = f[-1]
        shift = len(f) - len(g)
        for k in range(len(g)):
            f[shift + k] = poly_mod(f[shift + k] - lead * g[k], Q)
        f = _trim(f, Q)
    return f


def fiber_gcd(polys: list[list[UniPoly]], Q: UniPoly) -> list[UniPoly]:
    """Monic y-gcd over K[x]/(Q); raises SplitNeeded through invert calls."""
    f = None
    for g in polys:
        g = _trim(g, Q)
        if f is None:
            f = g
            continue
        while g:
            f, g = g, _y_rem(f, g, Q)
    if not f:
        raise ZeroDivisionError("gcd of zero fiber system")
    return _y_monic(f, Q)


class TriangularOrbit:
    """Points cut out by Q(x) = 0, T(x, y) = 0 with T monic in y.

    Represents deg(Q) * deg_y(T) conjugate points over the ambient field.
    """

    __slots__ = ("Q", "T", "desc")

    def __init__(self, Q: UniPoly, T: list[UniPoly], desc: FieldDescriptor) -> None:
        self.Q = Q
        self.T = T
        self.desc = desc

    @property
    def count(self) -> int:
        return self.Q.degree * (len(self.T) - 1)

    def reduce(self, p: BiPoly) -> list[UniPoly]:
        """Residue of p modulo (Q, T): zero iff p vanishes at every point."""
        return _y_rem(biv_residue(p, self.Q), self.T, self.Q)

    def vanishes(self, p: BiPoly) -> bool:
        return not self.reduce(p)

    def row_coords(self, residue: list[UniPoly]) -> list:
        """Flatten a residue into count field entries (y-power major)."""
        out = []
        zero = self.Q.zero
        for j in range(len(self.T) - 1):
            c = residue[j] if j < len(residue) else UniPoly([], zero)
            for i in range(self.Q.degree):
                out.append(c.coeff(i))
        return out


def triangular_fibers(polys: list[BiPoly], Q: UniPoly,
                      desc: FieldDescriptor) -> list[TriangularOrbit]:
    """Triangular representation of {Q(x) = 0, all polys = 0}, splitting Q
    as dynamic evaluation demands."""
    work = [Q.monic()]
    out = []
    while work:
        q = work.pop()
        try:
            t = fiber_gcd([biv_residue(p, q) for p in polys], q)
        except SplitNeeded as s:
            g1 = s.factor.monic()
            g2, r = q.divmod(g1)
            if r:
                raise ArithmeticError("split factor does not divide modulus")
            work.append(g1)
            work.append(g2.monic())
            continue
        out.append(TriangularOrbit(q, t, desc))
    out.sort(key=lambda o: (o.Q.degree, [str(c) for c in o.Q.coeffs]))
    return out
