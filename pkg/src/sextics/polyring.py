"""Bivariate and univariate polynomial algebra over a coefficient field.

Coefficients are duck-typed: anything with ring dunders (FieldElem, MPoly,
rationals) works for the generic operations. The exact-elimination pieces
(resultants) additionally assume FieldElem coefficients so they can drop to
integer arithmetic in Z[sqrt(D')].

Term order everywhere is graded lex with x > y.
"""
from __future__ import annotations

import itertools

from .qfield import DescriptorMismatch, FieldDescriptor, FieldElem
from .qq import QQ, is_rat, num_den, qq, qq_str


class ZeroPolynomial(ValueError):
    pass


def grlex_key(e: tuple[int, int]) -> tuple[int, int]:
    return (e[0] + e[1], e[0])


class BiPoly:
    """Sparse polynomial in x, y over a commutative coefficient ring."""

    __slots__ = ("terms", "zero")

    def __init__(self, terms: dict, zero) -> None:
        object.__setattr__(self, "zero", zero)
        clean = {}
        for e, c in terms.items():
            if c != zero:
                clean[e] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c, zero) -> "BiPoly":
        return cls({(0, 0): c}, zero)

    @classmethod
    def zero_poly(cls, zero) -> "BiPoly":
        return cls({}, zero)

    @classmethod
    def gens(cls, zero) -> tuple["BiPoly", "BiPoly"]:
        one = zero + 1
        return cls({(1, 0): one}, zero), cls({(0, 1): one}, zero)

    def _co(self, other) -> "BiPoly | None":
        if isinstance(other, BiPoly):
            return other
        if is_rat(other) or isinstance(other, FieldElem) or type(other) is type(self.zero):
            return BiPoly.constant(self.zero + other, self.zero)
        return None

    # -- ring ops ---------------------------------------------------------

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            if e in t:
                t[e] = t[e] + c
            else:
                t[e] = c
        return BiPoly(t, self.zero)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({e: -c for e, c in self.terms.items()}, self.zero)

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
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                e = (i1 + i2, j1 + j2)
                p = c1 * c2
                if e in t:
                    t[e] = t[e] + p
                else:
                    t[e] = p
        return BiPoly(t, self.zero)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BiPoly.constant(self.zero + 1, self.zero)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- structure --------------------------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), self.zero)

    def leading_exponent(self) -> tuple[int, int]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        return max(self.terms, key=grlex_key)

    def leading_coeff(self):
        return self.terms[self.leading_exponent()]

    def lowest_degree_part(self) -> "BiPoly":
        """Homogeneous part of lowest total degree (the cone at the origin)."""
        if not self.terms:
            return self
        m = min(i + j for i, j in self.terms)
        return BiPoly(
            {e: c for e, c in self.terms.items() if e[0] + e[1] == m}, self.zero
        )

    def top_form(self) -> "BiPoly":
        if not self.terms:
            return self
        m = self.total_degree()
        return BiPoly(
            {e: c for e, c in self.terms.items() if e[0] + e[1] == m}, self.zero
        )

    def order_at_origin(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("order of the zero polynomial")
        return min(i + j for i, j in self.terms)

    # -- calculus / maps --------------------------------------------------

    def partial(self, var: str) -> "BiPoly":
        t: dict = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i > 0:
                e = (i - 1, j)
                p = i * c
            elif var == "y" and j > 0:
                e = (i, j - 1)
                p = j * c
            else:
                continue
            if e in t:
                t[e] = t[e] + p
            else:
                t[e] = p
        return BiPoly(t, self.zero)

    def evaluate(self, xv, yv):
        out = self.zero
        xs = {0: self.zero + 1}
        ys = {0: self.zero + 1}

        def pw(cache, base, k):
            if k not in cache:
                cache[k] = pw(cache, base, k - 1) * base
            return cache[k]

        for (i, j), c in self.terms.items():
            out = out + c * pw(xs, xv, i) * pw(ys, yv, j)
        return out

    def substitute(self, px: "BiPoly", py: "BiPoly") -> "BiPoly":
        """Image under x -> px, y -> py."""
        zero = self.zero
        out = BiPoly.zero_poly(zero)
        xp = {0: BiPoly.constant(zero + 1, zero)}
        yp = {0: BiPoly.constant(zero + 1, zero)}

        def pw(cache, base, k):
            if k not in cache:
                cache[k] = pw(cache, base, k - 1) * base
            return cache[k]

        for (i, j), c in self.terms.items():
            out = out + pw(xp, px, i) * pw(yp, py, j) * c
        return out

    def translate(self, a, b) -> "BiPoly":
        """F(x + a, y + b); moves the point (a, b) to the origin."""
        zero = self.zero
        x, y = BiPoly.gens(zero)
        return self.substitute(x + a, y + b)

    def swap_xy(self) -> "BiPoly":
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()}, self.zero)

    def map_coeffs(self, fn, zero) -> "BiPoly":
        return BiPoly({e: fn(c) for e, c in self.terms.items()}, zero)

    def as_unipoly_in(self, var: str) -> "UniPoly":
        """Collect into a UniPoly in `var` whose coefficients are UniPolys
        in the other variable."""
        inner_zero = UniPoly([], self.zero)
        if var == "y":
            deg = self.deg_y()
            coeffs = []
            for j in range(deg + 1):
                cs = {}
                for (i, jj), c in self.terms.items():
                    if jj == j:
                        cs[i] = c
                coeffs.append(UniPoly.from_dict(cs, self.zero))
            return UniPoly(coeffs, inner_zero)
        return self.swap_xy().as_unipoly_in("y")

    def divmod_single(self, divisor: "BiPoly") -> tuple["BiPoly", "BiPoly"]:
        """Division with remainder by one polynomial, graded-lex reduction."""
        if not divisor:
            raise ZeroDivisionError("division by zero polynomial")
        zero = self.zero
        lead = divisor.leading_exponent()
        lc = divisor.terms[lead]
        quot: dict = {}
        rem = self
        while rem:
            e = rem.leading_exponent()
            diff = (e[0] - lead[0], e[1] - lead[1])
            if diff[0] < 0 or diff[1] < 0:
                break
            c = rem.terms[e] / lc
            quot[diff] = quot.get(diff, zero) + c
            rem = rem - BiPoly({diff: c}, zero) * divisor
        return BiPoly(quot, zero), rem

    def divisible_by(self, divisor: "BiPoly") -> bool:
        _, r = self.divmod_single(divisor)
        return not r

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"BiPoly({format_poly(self)})"


class UniPoly:
    """Dense univariate polynomial over a coefficient ring."""

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs, zero) -> None:
        cs = list(coeffs)
        while cs and cs[-1] == zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "zero", zero)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def from_dict(cls, d: dict, zero) -> "UniPoly":
        if not d:
            return cls([], zero)
        deg = max(d)
        return cls([d.get(i, zero) for i in range(deg + 1)], zero)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.zero

    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([self.zero + other], self.zero)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            [self.coeff(i) + other.coeff(i) for i in range(n)], self.zero
        )

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.zero)

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([self.zero + other], self.zero)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.zero)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.zero)
        out = [self.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == self.zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.zero)

    __rmul__ = __mul__

    def scale(self, c) -> "UniPoly":
        return UniPoly([a * c for a in self.coeffs], self.zero)

    def shift(self, k: int) -> "UniPoly":
        return UniPoly([self.zero] * k + list(self.coeffs), self.zero)

    def truncate(self, order: int) -> "UniPoly":
        return UniPoly(self.coeffs[:order], self.zero)

    def eval(self, x):
        out = self.zero
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def derivative(self) -> "UniPoly":
        return UniPoly(
            [i * c for i, c in enumerate(self.coeffs)][1:], self.zero
        )

    def order(self) -> int:
        """Index of the lowest nonzero coefficient; -1 for the zero poly."""
        for i, c in enumerate(self.coeffs):
            if c != self.zero:
                return i
        return -1

    def monic(self) -> "UniPoly":
        l = self.lc()
        return UniPoly([c / l for c in self.coeffs], self.zero)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        d = other.degree
        lc = other.lc()
        if len(rem) - 1 < d:
            return UniPoly([], self.zero), self
        quot = [self.zero] * (len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if c == self.zero:
                continue
            q = c / lc
            quot[k - d] = q
            for i, b in enumerate(other.coeffs):
                rem[k - d + i] = rem[k - d + i] - q * b
        return UniPoly(quot, self.zero), UniPoly(rem, self.zero)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic Euclidean gcd; intended for modest degrees over a field."""
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        if not a:
            return a
        return a.monic()

    def compose_truncated(self, inner: "UniPoly", order: int) -> "UniPoly":
        """self(inner(u)) mod u^order."""
        out = UniPoly([], self.zero)
        for c in reversed(self.coeffs):
            out = (out * inner).truncate(order) + c
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({c})*u^{i}" for i, c in enumerate(self.coeffs) if c != self.zero
        )

    __repr__ = __str__


class ProjPoint:
    """Point of P^2 with coordinates in the curve's field, stored so the last
    nonzero coordinate equals 1."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x: FieldElem, y: FieldElem, z: FieldElem) -> None:
        if not (x or y or z):
            raise ValueError("(0 : 0 : 0) is not a projective point")
        for last in (z, y, x):
            if last:
                x, y, z = x / last, y / last, z / last
                break
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @classmethod
    def affine(cls, x: FieldElem, y: FieldElem) -> "ProjPoint":
        one = x.desc.one()
        return cls(x, y, one)

    @property
    def is_affine(self) -> bool:
        return bool(self.z)

    def affine_coords(self) -> tuple[FieldElem, FieldElem]:
        if not self.z:
            raise ValueError(f"{self} is at infinity")
        return self.x, self.y

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y and self.z == other.z

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.z))

    def sort_key(self) -> tuple:
        return (
            0 if self.z else 1,
            self.x.a, self.x.b, self.y.a, self.y.b, self.z.a, self.z.b,
        )

    def __str__(self) -> str:
        return f"({self.x} : {self.y} : {self.z})"

    __repr__ = __str__


class TernaryForm:
    """Homogeneous form in (X, Y, Z), kept as exponent triples."""

    __slots__ = ("terms", "zero", "degree")

    def __init__(self, terms: dict, zero, degree: int) -> None:
        object.__setattr__(self, "terms", {e: c for e, c in terms.items() if c != zero})
        object.__setattr__(self, "zero", zero)
        object.__setattr__(self, "degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("TernaryForm is immutable")

    def evaluate(self, X, Y, Z):
        out = self.zero
        for (i, j, k), c in self.terms.items():
            out = out + c * X**i * Y**j * Z**k
        return out

    def chart(self, which: str) -> BiPoly:
        """Affine restriction: chart 'z' is (x, y), 'x' is (y, z), 'y' is (x, z)."""
        t: dict = {}
        for (i, j, k), c in self.terms.items():
            if which == "z":
                e = (i, j)
            elif which == "x":
                e = (j, k)
            elif which == "y":
                e = (i, k)
            else:
                raise ValueError(f"unknown chart {which!r}")
            t[e] = t.get(e, self.zero) + c
        return BiPoly(t, self.zero)


def homogenize(p: BiPoly, degree: int | None = None) -> TernaryForm:
    d = p.total_degree()
    if degree is None:
        degree = d
    if degree < d:
        raise ValueError("homogenization degree below total degree")
    return TernaryForm(
        {(i, j, degree - i - j): c for (i, j), c in p.terms.items()},
        p.zero,
        degree,
    )


class Curve:
    """A plane curve over a fixed Q(sqrt(D)): defining polynomial + field."""

    __slots__ = ("poly", "desc", "name", "_cache")

    def __init__(self, poly: BiPoly, desc: FieldDescriptor, name: str = "") -> None:
        if not poly:
            raise ZeroPolynomial("curve needs a nonzero polynomial")
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "desc", desc)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Curve is immutable")

    @property
    def degree(self) -> int:
        return self.poly.total_degree()

    def fx(self) -> BiPoly:
        if "fx" not in self._cache:
            self._cache["fx"] = self.poly.partial("x")
        return self._cache["fx"]

    def fy(self) -> BiPoly:
        if "fy" not in self._cache:
            self._cache["fy"] = self.poly.partial("y")
        return self._cache["fy"]

    def homogeneous(self) -> TernaryForm:
        if "hom" not in self._cache:
            self._cache["hom"] = homogenize(self.poly)
        return self._cache["hom"]

    def local_at(self, pt: ProjPoint) -> tuple[BiPoly, str]:
        """Affine polynomial with pt moved to the origin, plus the chart used."""
        if pt.is_affine:
            a, b = pt.affine_coords()
            return self.poly.translate(a, b), "z"
        hom = self.homogeneous()
        if pt.x:
            g = hom.chart("x")
            return g.translate(pt.y / pt.x, self.desc.zero()), "x"
        g = hom.chart("y")
        return g.translate(pt.x / pt.y, self.desc.zero()), "y"

    def __str__(self) -> str:
        return self.name or format_poly(self.poly)


# ---------------------------------------------------------------------------
# resultants


def _to_int_layer_scaled(p: BiPoly, desc: FieldDescriptor, scale: int):
    """p * scale as integer pairs (A, B) meaning A + B*sqrt(D'), D' = dn*dd."""
    _, dd = num_den(desc.d)
    out = {}
    for e, c in p.terms.items():
        A = qq(c.a) * scale
        An, Ad = num_den(A)
        B = qq(c.b) * scale / dd
        Bn, Bd = num_den(B)
        if Ad != 1 or Bd != 1:
            raise ValueError("scale does not clear denominators")
        out[e] = (An, Bn)
    return out, scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _zsq_mul(u, v, dp):
    return (u[0] * v[0] + dp * u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _zsq_div(u, v, dp):
    nrm = v[0] * v[0] - dp * v[1] * v[1]
    a = u[0] * v[0] - dp * u[1] * v[1]
    b = u[1] * v[0] - u[0] * v[1]
    return (a // nrm, b // nrm)


def _bareiss_det(m: list[list[tuple[int, int]]], dp: int) -> tuple[int, int]:
    n = len(m)
    if n == 0:
        return (1, 0)
    m = [row[:] for row in m]
    sign = 1
    prev = (1, 0)
    for k in range(n - 1):
        if m[k][k] == (0, 0):
            for i in range(k + 1, n):
                if m[i][k] != (0, 0):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return (0, 0)
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = _zsq_mul(m[i][j], piv, dp)
                s = _zsq_mul(m[i][k], m[k][j], dp)
                m[i][j] = _zsq_div((t[0] - s[0], t[1] - s[1]), prev, dp)
            m[i][k] = (0, 0)
        prev = piv
    d = m[n - 1][n - 1]
    return (sign * d[0], sign * d[1])


def _sylvester_int(fc, gc, x0: int):
    """Sylvester matrix of two y-polynomials with Z[sqrt(D')][x] entries,
    evaluated at integer x0. fc/gc: list over y-degree of {x-exp: (A,B)}."""
    n = len(fc) - 1
    m = len(gc) - 1

    def ev(coef_dict):
        A = B = 0
        for i, (a, b) in coef_dict.items():
            p = x0**i
            A += a * p
            B += b * p
        return (A, B)

    fev = [ev(c) for c in fc]
    gev = [ev(c) for c in gc]
    size = n + m
    rows = []
    for r in range(m):
        row = [(0, 0)] * size
        for i, v in enumerate(fev):
            row[r + (n - i)] = v
        rows.append(row)
    for r in range(n):
        row = [(0, 0)] * size
        for i, v in enumerate(gev):
            row[r + (m - i)] = v
        rows.append(row)
    return rows


def resultant(f: BiPoly, g: BiPoly, desc: FieldDescriptor, var: str = "y") -> UniPoly:
    """Res_var(f, g) as a UniPoly in the other variable over Q(sqrt(D)).

    Sylvester determinant with fraction-free (Bareiss) elimination, evaluated
    at integer nodes and interpolated exactly; an extra node cross-checks.
    """
    if not f or not g:
        raise ZeroPolynomial("resultant of a zero polynomial")
    if var == "x":
        return resultant(f.swap_xy(), g.swap_xy(), desc, "y")

    zero = desc.zero()
    one = desc.one()
    n, m = f.deg_y(), g.deg_y()
    if n <= 0 and m <= 0:
        # empty Sylvester matrix
        return UniPoly([one], zero)
    if n <= 0:
        return _unipoly_pow(f.as_unipoly_in("y").coeff(0), m, zero)
    if m <= 0:
        return _unipoly_pow(g.as_unipoly_in("y").coeff(0), n, zero)

    dn, dd = num_den(desc.d)
    dp = dn * dd

    fterms, lf = _to_int_layer_scaled(f, desc, _common_denominator(f, dd))
    gterms, lg = _to_int_layer_scaled(g, desc, _common_denominator(g, dd))

    fc = [dict() for _ in range(n + 1)]
    for (i, j), v in fterms.items():
        fc[j][i] = v
    gc = [dict() for _ in range(m + 1)]
    for (i, j), v in gterms.items():
        gc[j][i] = v

    dxf = max((i for c in fc for i in c), default=0)
    dxg = max((i for c in gc for i in c), default=0)
    # total-degree inputs obey the sharper homogeneous bound m*dt(f)+n*dt(g)-n*m
    dtf = max((i + j for j, c in enumerate(fc) for i in c), default=0)
    dtg = max((i + j for j, c in enumerate(gc) for i in c), default=0)
    bound = min(m * dxf + n * dxg, m * dtf + n * dtg - n * m)

    nodes = []
    k = 0
    while len(nodes) < bound + 2:
        nodes.append(k)
        k = -k if k > 0 else -k + 1

    vals = []
    for x0 in nodes:
        A, B = _bareiss_det(_sylvester_int(fc, gc, x0), dp)
        vals.append((A, B))

    def to_field(v):
        # A + B*sqrt(D') == A + (B*dd)*sqrt(D)
        return FieldElem(qq(v[0]), qq(v[1]) * dd, desc)

    scale = FieldElem(qq(lf), 0, desc) ** m * FieldElem(qq(lg), 0, desc) ** n
    pts = [(FieldElem(qq(x0), 0, desc), to_field(v) / scale) for x0, v in zip(nodes, vals)]
    poly = _newton_interp(pts[:-1], zero, one)
    x_chk, v_chk = pts[-1]
    if poly.eval(x_chk) != v_chk:
        raise ArithmeticError("resultant interpolation failed self-check")
    return poly


def _common_denominator(p: BiPoly, dd: int) -> int:
    lcm = 1
    for c in p.terms.values():
        for q in (c.a, c.b):
            _, den = num_den(q)
            g = _gcd(lcm, den)
            lcm = lcm // g * den
    check = lcm
    # ensure dd divides (b * lcm) for every coefficient
    for c in p.terms.values():
        bq = qq(c.b) * check / dd
        _, den = num_den(bq)
        if den != 1:
            check = lcm * dd
            break
    return check


def _unipoly_pow(p: UniPoly, k: int, zero) -> UniPoly:
    out = UniPoly([zero + 1], zero)
    while k:
        if k & 1:
            out = out * p
        p = p * p
        k >>= 1
    return out


def _newton_interp(points, zero, one) -> UniPoly:
    xs = [p[0] for p in points]
    coef = [p[1] for p in points]
    n = len(points)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly([], zero)
    for i in range(n - 1, -1, -1):
        poly = poly * UniPoly([-xs[i], one], zero) + coef[i]
    return poly


# ---------------------------------------------------------------------------
# text form


class _Tok:
    __slots__ = ("kind", "val")

    def __init__(self, kind, val=None):
        self.kind = kind
        self.val = val


def _tokenize(text: str):
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                out.append(_Tok("num", qq(text[i:k])))
                i = k
            else:
                out.append(_Tok("num", qq(text[i:j])))
                i = j
            continue
        if text.startswith("sqrt", i):
            out.append(_Tok("sqrt"))
            i += 4
            continue
        if ch in "xy":
            out.append(_Tok("var", ch))
            i += 1
            continue
        if ch in "+-*^()":
            out.append(_Tok(ch))
            i += 1
            continue
        raise ValueError(f"bad character {ch!r} in polynomial text")
    out.append(_Tok("end"))
    return out


class _Parser:
    def __init__(self, toks, desc: FieldDescriptor):
        self.toks = toks
        self.pos = 0
        self.desc = desc
        self.zero = desc.zero()
        self.x, self.y = BiPoly.gens(self.zero)

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        t = self.toks[self.pos]
        if kind is not None and t.kind != kind:
            raise ValueError(f"expected {kind}, got {t.kind}")
        self.pos += 1
        return t

    def parse(self) -> BiPoly:
        p = self.expr()
        if self.peek().kind != "end":
            raise ValueError("trailing input in polynomial text")
        return p

    def expr(self) -> BiPoly:
        t = self.term()
        while self.peek().kind in "+-":
            op = self.take().kind
            rhs = self.term()
            t = t + rhs if op == "+" else t - rhs
        return t

    def term(self) -> BiPoly:
        f = self.unary()
        while self.peek().kind == "*":
            self.take()
            f = f * self.unary()
        return f

    def unary(self) -> BiPoly:
        if self.peek().kind == "-":
            self.take()
            return -self.unary()
        if self.peek().kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> BiPoly:
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            neg = False
            if self.peek().kind == "-":
                raise ValueError("negative exponents are not allowed")
            t = self.take("num")
            n, d = num_den(t.val)
            if d != 1 or n < 0:
                raise ValueError("exponents must be nonnegative integers")
            return base**n
        return base

    def atom(self) -> BiPoly:
        t = self.peek()
        if t.kind == "num":
            self.take()
            return BiPoly.constant(FieldElem(t.val, 0, self.desc), self.zero)
        if t.kind == "sqrt":
            self.take()
            self.take("(")
            sign = 1
            if self.peek().kind == "-":
                self.take()
                sign = -1
            r = self.take("num").val * sign
            self.take(")")
            if r != self.desc.d:
                raise DescriptorMismatch(
                    f"sqrt({r}) does not match the curve field sqrt({self.desc.d})"
                )
            return BiPoly.constant(self.desc.sqrt_d(), self.zero)
        if t.kind == "var":
            self.take()
            return self.x if t.val == "x" else self.y
        if t.kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        raise ValueError(f"unexpected token {t.kind}")


def parse_poly(text: str, desc: FieldDescriptor) -> BiPoly:
    return _Parser(_tokenize(text), desc).parse()


def _mono_str(i: int, j: int) -> str:
    bits = []
    if i == 1:
        bits.append("x")
    elif i > 1:
        bits.append(f"x^{i}")
    if j == 1:
        bits.append("y")
    elif j > 1:
        bits.append(f"y^{j}")
    return "*".join(bits)


def format_poly(p: BiPoly) -> str:
    """Canonical text: graded-lex descending, exact round-trip under parse_poly."""
    if not p.terms:
        return "0"
    bits = []
    for e in sorted(p.terms, key=grlex_key, reverse=True):
        c = p.terms[e]
        mono = _mono_str(*e)
        sgn = c.sign_key() if isinstance(c, FieldElem) else (1 if c > 0 else -1)
        mag = c if sgn > 0 else -c
        if isinstance(mag, FieldElem):
            if mag.b != 0 and mag.a != 0:
                ctext = f"({mag})"
            else:
                ctext = str(mag)
        else:
            ctext = qq_str(mag)
        if mono and ctext == "1":
            body = mono
        elif mono:
            body = f"{ctext}*{mono}"
        else:
            body = ctext
        bits.append((sgn, body))
    s0, b0 = bits[0]
    out = ("-" if s0 < 0 else "") + b0
    for s, b in bits[1:]:
        out += (" + " if s > 0 else " - ") + b
    return out
