"""Local analysis of plane-curve singularities over Q(sqrt(D)).

Singular-locus search by resultants plus modular root certificates,
intersection multiplicities by Fulton's cancellation algorithm, Milnor
numbers, tangent cones, the A/D/E decision tree, and maximal-contact
normal-form data for A-type points.
"""
from __future__ import annotations

from math import inf

from .orbits import TriangularOrbit, triangular_fibers
from .polyring import BiPoly, Curve, ProjPoint, UniPoly
from .qfield import FieldDescriptor, FieldElem
from .roots import field_gcd, field_roots


class NonReducedCurve(ValueError):
    pass


class NonIsolated(ArithmeticError):
    pass


class TangentConeNeedsExtension(ArithmeticError):
    pass


class WrongType(ValueError):
    pass


class NotAType(ValueError):
    pass


class IncompleteLocus(ValueError):
    pass


_RHO5 = {"E6": 2}


def rho5_of_label(ade: str) -> int:
    """dim of the k=5 adjunction quotient for sextics; 0 where untabulated."""
    if ade.startswith("A"):
        k = int(ade[1:])
        return (k + 1) // 3
    return _RHO5.get(ade, 0)


class SingularPointRecord:
    __slots__ = ("point", "mult", "mu", "ade", "rho5", "locus_label", "chart")

    def __init__(self, point, mult, mu, ade, rho5, locus_label="unlabeled",
                 chart="z") -> None:
        self.point = point
        self.mult = mult
        self.mu = mu
        self.ade = ade
        self.rho5 = rho5
        self.locus_label = locus_label
        self.chart = chart

    def as_dict(self) -> dict:
        return {
            "point": str(self.point),
            "mult": self.mult,
            "mu": self.mu,
            "ade": self.ade,
            "rho5": self.rho5,
            "locus_label": self.locus_label,
            "chart": self.chart,
        }

    def __repr__(self) -> str:
        return f"<{self.ade} at {self.point}>"


class OrbitRecord:
    """A Galois orbit of singular points rootless over the ambient field,
    classified through shear-invariant resultant valuations."""

    __slots__ = ("parts", "count", "mult", "mu", "ade", "rho5", "locus_label")

    point = None
    chart = "z"

    def __init__(self, parts: list[TriangularOrbit], mu: int) -> None:
        self.parts = parts
        self.count = sum(p.count for p in parts)
        self.mult = 2
        self.mu = mu
        self.ade = f"A{mu}"
        self.rho5 = rho5_of_label(self.ade)
        self.locus_label = "unlabeled"

    def vanishes(self, p: BiPoly) -> bool:
        return all(part.vanishes(p) for part in self.parts)

    def as_dict(self) -> dict:
        return {
            "orbit": [str(part.Q) for part in self.parts],
            "count": self.count,
            "mult": self.mult,
            "mu": self.mu,
            "ade": self.ade,
            "rho5": self.rho5,
            "locus_label": self.locus_label,
        }

    def __repr__(self) -> str:
        return f"<{self.count}x{self.ade} orbit>"


class ContactData:
    __slots__ = ("iota", "tau", "t", "a", "b", "axis")

    def __init__(self, iota, tau, t, a, b, axis) -> None:
        self.iota = iota
        self.tau = tau
        self.t = t
        self.a = a
        self.b = b
        self.axis = axis


class Configuration:
    """Multiset of ADE labels; equality ignores order."""

    __slots__ = ("counts",)

    def __init__(self, labels) -> None:
        counts: dict[str, int] = {}
        for l in labels:
            counts[l] = counts.get(l, 0) + 1
        self.counts = counts

    def __eq__(self, other) -> bool:
        if isinstance(other, Configuration):
            return self.counts == other.counts
        if isinstance(other, (list, tuple)):
            return self == Configuration(other)
        return NotImplemented

    def __len__(self) -> int:
        return sum(self.counts.values())

    def labels(self) -> list[str]:
        out = []
        for l in sorted(self.counts, key=_label_key):
            out.extend([l] * self.counts[l])
        return out

    def __str__(self) -> str:
        if not self.counts:
            return "[]"
        bits = []
        for l in sorted(self.counts, key=_label_key):
            n = self.counts[l]
            bits.append(f"{n}{l}" if n > 1 else l)
        return "[" + "+".join(bits) + "]"

    __repr__ = __str__


def _label_key(label: str):
    # descending Milnor number, then letter; NotSimple sorts last
    if label[0] in "ADE" and label[1:].isdigit():
        return (-int(label[1:]), label[0])
    return (1, label)


# ---------------------------------------------------------------------------
# reducedness


def _content(polys: list[UniPoly]) -> UniPoly:
    g = None
    for p in polys:
        if not p:
            continue
        g = p if g is None else g.gcd(p)
        if g.degree == 0:
            return g
    return g if g is not None else polys[0]


def content_y(F: BiPoly) -> UniPoly:
    """gcd of the coefficient polynomials of the powers of y (a poly in x)."""
    return _content(list(F.as_unipoly_in("y").coeffs)).monic()


def _squarefree_uni(p: UniPoly) -> bool:
    if p.degree <= 0:
        return True
    return p.gcd(p.derivative()).degree == 0


def _eval_x(F: BiPoly, x0) -> UniPoly:
    d: dict = {}
    zero = F.zero
    xs = {0: zero + 1}

    def pw(k):
        if k not in xs:
            xs[k] = pw(k - 1) * x0
        return xs[k]

    for (i, j), c in F.terms.items():
        d[j] = d.get(j, zero) + c * pw(i)
    return UniPoly.from_dict(d, zero)


def _bipoly_from_uni(p: UniPoly, var: str) -> BiPoly:
    if var == "x":
        return BiPoly({(i, 0): c for i, c in enumerate(p.coeffs)}, p.zero)
    return BiPoly({(0, i): c for i, c in enumerate(p.coeffs)}, p.zero)


def is_reduced(curve: Curve) -> bool:
    F = curve.poly
    zero = curve.desc.zero()
    cy = content_y(F)
    if not _squarefree_uni(cy):
        return False
    if cy.degree > 0:
        F, r = F.divmod_single(_bipoly_from_uni(cy, "x"))
        assert not r
    cx = content_y(F.swap_xy()).monic()
    if not _squarefree_uni(cx):
        return False
    if cx.degree > 0:
        F, r = F.divmod_single(_bipoly_from_uni(cx, "y"))
        assert not r
    if F.total_degree() <= 0:
        return True
    dy = F.deg_y()
    lead = F.as_unipoly_in("y").coeff(dy)
    # bad specialization values: roots of disc_y(F) and of the leading
    # y-coefficient, at most 2*dy*dx in all
    bound = 2 * max(dy, 1) * max(F.deg_x(), 1) + 1
    a = 0
    tried = 0
    while tried <= bound:
        x0 = FieldElem(a, 0, curve.desc)
        a = -a if a > 0 else -a + 1
        la = lead.eval(x0)
        spec = _eval_x(F, x0)
        tried += 1
        if la == zero:
            continue
        if spec.gcd(spec.derivative()).degree == 0:
            return True
    return False


# ---------------------------------------------------------------------------
# singular locus


class LocusResult:
    __slots__ = ("points", "orbits", "residual", "certificates")

    def __init__(self, points, residual, certificates, orbits=()) -> None:
        self.points = points
        self.orbits = list(orbits)
        self.residual = residual
        self.certificates = certificates

    @property
    def residual_total(self) -> int:
        return sum(self.residual.values())

    @property
    def complete(self) -> bool:
        return self.residual_total == 0


def singular_points(curve: Curve) -> LocusResult:
    """All singular points with coordinates in the curve's field, plus the
    degree of any residual resultant factor rootless over the field."""
    if not is_reduced(curve):
        raise NonReducedCurve(f"{curve} has a repeated component")
    desc = curve.desc
    zero = desc.zero()
    F = curve.poly
    found: dict = {}
    residual = {"affine_x": 0, "fibers": 0, "infinity": 0}
    certificates: dict = {}

    cy = content_y(F)
    P = F
    if cy.degree > 0:
        P, _ = F.divmod_single(_bipoly_from_uni(cy, "x"))
    cx = content_y(P.swap_xy()).monic()
    if cx.degree > 0:
        P, _ = P.divmod_single(_bipoly_from_uni(cx, "y"))

    vert_roots, horiz_roots = [], []
    if cy.degree > 0:
        res = field_roots([cy], desc)
        vert_roots = res.roots
        residual["affine_x"] += res.residual_degree
    if cx.degree > 0:
        res = field_roots([cx], desc)
        horiz_roots = res.roots
        residual["affine_x"] += res.residual_degree

    def note(x0, y0):
        pt = ProjPoint.affine(x0, y0)
        if pt not in found:
            found[pt] = None

    for r in vert_roots:
        for c in horiz_roots:
            note(r, c)
    for r in vert_roots:
        fib = _eval_x(P, r)
        if fib.degree > 0:
            yres = field_roots([fib], desc)
            residual["fibers"] += yres.residual_degree
            for c in yres.roots:
                note(r, c)
    for c in horiz_roots:
        fib = _eval_x(P.swap_xy(), c)
        if fib.degree > 0:
            xres = field_roots([fib], desc)
            residual["fibers"] += xres.residual_degree
            for r in xres.roots:
                note(r, c)

    orbits: list[OrbitRecord] = []
    if P.total_degree() >= 1 and P.deg_y() >= 1 and P.deg_x() >= 1:
        from .polyring import resultant

        Px = P.partial("x")
        Py = P.partial("y")
        ra = resultant(P, Px, desc, "y") if Px else None
        rb = resultant(P, Py, desc, "y")
        xsys = [r for r in (ra, rb) if r is not None]
        for r in xsys:
            if not r:
                raise ArithmeticError("vanishing resultant on content-free part")
        xres = field_roots(xsys, desc)
        certificates["affine_x"] = xres.certificate
        for x0 in xres.roots:
            fiber = [q for q in (_eval_x(P, x0), _eval_x(Px, x0), _eval_x(Py, x0)) if q]
            yres = field_roots(fiber, desc)
            residual["fibers"] += yres.residual_degree
            for y0 in yres.roots:
                if _is_singular_at(F, x0, y0, zero):
                    note(x0, y0)
        Z = xsys[0] if len(xsys) == 1 else field_gcd(xsys[0], xsys[1], desc)
        Z = Z.monic()
        for x0 in xres.roots:
            Z = _strip_root(Z, x0)
        if Z.degree > 0:
            orbits, leftover = _classify_orbits(P, Z, desc, certificates)
            residual["affine_x"] += leftover
    elif P.total_degree() >= 1:
        # P depends on a single variable: distinct lines, no affine
        # singularities beyond the component crossings handled above
        pass

    inf_pts, rinf, inf_cert = _infinity_singularities(curve)
    residual["infinity"] = rinf
    certificates["infinity"] = inf_cert
    inf_pts.sort(key=ProjPoint.sort_key)
    pts = sorted(found, key=ProjPoint.sort_key) + inf_pts
    out = []
    for pt in pts:
        g, _ = curve.local_at(pt)
        m = g.order_at_origin()
        if m >= 2:
            out.append((pt, m))
    return LocusResult(out, residual, certificates, orbits)


def _strip_root(Z: UniPoly, x0) -> UniPoly:
    zero = Z.zero
    lin = UniPoly([zero - x0, zero + 1], zero)
    while Z.degree > 0:
        q, r = Z.divmod(lin)
        if r:
            break
        Z = q
    return Z


def _squarefree_parts(Z: UniPoly) -> list[tuple[UniPoly, int]]:
    """Musser decomposition: [(factor, multiplicity)] with factors
    squarefree, pairwise coprime, multiplicities ascending."""
    out = []
    if Z.degree <= 0:
        return out
    g = Z.gcd(Z.derivative())
    c = Z.divmod(g)[0]
    i = 1
    while c.degree > 0:
        d = g.gcd(c)
        p = c.divmod(d)[0]
        if p.degree > 0:
            out.append((p.monic(), i))
        i += 1
        c = d
        if g.degree > 0 and d.degree > 0:
            g = g.divmod(d)[0]
    return out


def _valuation(R: UniPoly, Q: UniPoly) -> int:
    e = 0
    while R.degree >= Q.degree:
        q, r = R.divmod(Q)
        if r:
            break
        R = q
        e += 1
    return e


# shear slopes tried for the orbit consensus; three identical signatures
# are required before a classification is accepted
_SHEAR_POOL = (5, 7, 11, 13, 17, 19, 23, 29, 31)


def _rootless_part(A: UniPoly, B: UniPoly, desc) -> UniPoly | None:
    G = field_gcd(A, B, desc).monic()
    rts = field_roots([G], desc)
    Z = G
    for x0 in rts.roots:
        Z = _strip_root(Z, x0)
    return Z


def _shear_sig(P: BiPoly, c_val: int, desc):
    from .polyring import resultant

    zero = desc.zero()
    one = desc.one()
    X = BiPoly({(1, 0): one}, zero)
    Y = BiPoly({(0, 1): one}, zero)
    Fc = P.substitute(X + Y * desc.elem(c_val), Y)
    Fcx = Fc.partial("x")
    Fcy = Fc.partial("y")
    if not Fcx or not Fcy:
        return None
    A = resultant(Fc, Fcy, desc, "y")
    J = resultant(Fcx, Fcy, desc, "y")
    if not A or not J:
        return None
    # singular x-values lie under both; accidental extra common roots of a
    # single shear cannot survive the three-way agreement requirement
    Z = _rootless_part(A, J, desc)
    sig = []
    for Q, e in _squarefree_parts(Z):
        sig.append((Q.degree, e, _valuation(J, Q), _valuation(A, Q)))
    sig.sort()
    return tuple(sig)


def _classify_orbits(P: BiPoly, Z: UniPoly, desc,
                     certificates) -> tuple[list[OrbitRecord], int]:
    """Classify the rootless factor Z of the singular-locus resultant gcd
    as conjugate A-type orbits, or report its degree back as residual.

    Invariants come from resultant valuations in sheared frames: at an
    isolated point of multiplicity m, I(F, F_y) = mu + m - 1 and
    I(F_x, F_y) = mu once the frame is generic, so agreement of three
    shears pins (mu, m) and m = 2 forces type A_mu."""
    from .polyring import resultant

    full = Z.degree
    Px = P.partial("x")
    Py = P.partial("y")
    J0 = resultant(Px, Py, desc, "y")
    comps = _squarefree_parts(Z)
    dy = P.deg_y()
    lead_y = P.as_unipoly_in("y").coeff(dy)
    leads = [lead_y, Px.as_unipoly_in("y").coeff(Px.deg_y()),
             Py.as_unipoly_in("y").coeff(Py.deg_y())]
    kept = []
    kept_deg = 0
    for Q, e in comps:
        regular = all(l.gcd(Q).degree == 0 for l in leads if l)
        if regular and J0 and _valuation(J0, Q) == 0:
            continue  # tangency coincidence, no critical point above
        kept.append((Q, e))
        kept_deg += Q.degree * e
    if not kept:
        return [], 0

    counts: dict[tuple, int] = {}
    target = None
    for c_val in _SHEAR_POOL:
        sig = _shear_sig(P, c_val, desc)
        if sig is None:
            continue
        counts[sig] = counts.get(sig, 0) + 1
        if counts[sig] == 3:
            target = sig
            break
    if target is None:
        return [], kept_deg

    types = set()
    n_total = 0
    for degq, e, v_j, v_a in target:
        if v_j == 0 and v_a == 0:
            continue
        if v_j < 1 or v_a - v_j + 1 != 2:
            return [], kept_deg
        types.add((v_j, v_a))
        n_total += degq
    if len(types) != 1 or n_total == 0:
        return [], kept_deg
    (mu, v_a) = types.pop()
    if kept_deg != n_total * v_a:
        return [], kept_deg

    records = []
    count_total = 0
    for Q, e in kept:
        parts = triangular_fibers([P, Px, Py], Q, desc)
        parts = [p for p in parts if p.count]
        if not parts:
            return [], kept_deg
        rec = OrbitRecord(parts, mu)
        count_total += rec.count
        records.append(rec)
    if count_total != n_total:
        return [], kept_deg
    certificates["orbits"] = {
        "shear_signature": target,
        "agreements": 3,
        "points": n_total,
    }
    return records, 0


def _is_singular_at(F: BiPoly, x0, y0, zero) -> bool:
    return (
        F.evaluate(x0, y0) == zero
        and F.partial("x").evaluate(x0, y0) == zero
        and F.partial("y").evaluate(x0, y0) == zero
    )


def _infinity_singularities(curve: Curve):
    desc = curve.desc
    zero = desc.zero()
    hom = curve.homogeneous()
    G = hom.chart("x")  # variables (y, z); the line z = 0 is infinity
    g0 = _eval_swap_z(G)
    g1 = _eval_swap_z(G.partial("x"))
    g2 = _eval_swap_z(G.partial("y"))
    pts = []
    residual = 0
    cert = None
    sys = [p for p in (g0, g1, g2) if p]
    if g0 and g0.degree >= 1:
        res = field_roots(sys, desc)
        residual += res.residual_degree
        cert = res.certificate
        for t in res.roots:
            pts.append(ProjPoint(desc.one(), t, zero))
    elif not g0:
        raise ArithmeticError("degenerate top form")
    H = hom.chart("y")  # variables (x, z)
    if (
        H.evaluate(zero, zero) == zero
        and H.partial("x").evaluate(zero, zero) == zero
        and H.partial("y").evaluate(zero, zero) == zero
    ):
        pts.append(ProjPoint(zero, desc.one(), zero))
    return pts, residual, cert


def _eval_swap_z(G: BiPoly) -> UniPoly:
    """Restrict a chart polynomial (first-slot, z) to z = 0."""
    d = {i: c for (i, j), c in G.terms.items() if j == 0}
    return UniPoly.from_dict(d, G.zero)


# ---------------------------------------------------------------------------
# intersection multiplicity (Fulton)


def _restrict_y0(f: BiPoly) -> UniPoly:
    return UniPoly.from_dict(
        {i: c for (i, j), c in f.terms.items() if j == 0}, f.zero
    )


def im_origin(f: BiPoly, g: BiPoly):
    """Fulton's intersection number of f and g at the origin; inf if they
    share a component through it."""
    zero = f.zero
    if not f or not g:
        return inf
    bezout = f.total_degree() * g.total_degree()
    total = 0
    while True:
        if f.coeff(0, 0) != zero or g.coeff(0, 0) != zero:
            return total
        if total > bezout:
            return inf
        a = _restrict_y0(f)
        b = _restrict_y0(g)
        if not a and not b:
            return inf
        if not a:
            f, g = g, f
            a, b = b, a
        while b:
            r, s = a.degree, b.degree
            if r > s:
                f, g = g, f
                a, b = b, a
                r, s = s, r
            c = b.lc() / a.lc()
            g = g - BiPoly({(s - r, 0): c}, zero) * f
            b = _restrict_y0(g)
        if not g:
            return inf
        k = min(j for _, j in g.terms)
        g = BiPoly({(i, j - k): c for (i, j), c in g.terms.items()}, zero)
        total += k * a.order()


def intersection_multiplicity(F: BiPoly, G: BiPoly, P) -> int | float:
    """I(F, G; P) for an affine point P (ProjPoint or coordinate pair)."""
    if isinstance(P, ProjPoint):
        a, b = P.affine_coords()
    else:
        a, b = P
    return im_origin(F.translate(a, b), G.translate(a, b))


def milnor_number(curve: Curve, P) -> int:
    g, _ = _local(curve, P)
    mu = im_origin(g.partial("x"), g.partial("y"))
    if mu is inf:
        raise NonIsolated(f"non-isolated singularity at {P}")
    return mu


def _local(curve: Curve, P):
    if isinstance(P, ProjPoint):
        return curve.local_at(P)
    x0, y0 = P
    return curve.poly.translate(x0, y0), "z"


def multiplicity(curve: Curve, P) -> int:
    g, _ = _local(curve, P)
    return g.order_at_origin()


def tangent_cone(curve: Curve, P) -> BiPoly:
    g, _ = _local(curve, P)
    return g.lowest_degree_part()


# ---------------------------------------------------------------------------
# ADE classification


def _cone_root_pattern(cone: BiPoly, desc: FieldDescriptor):
    """Multiplicity multiset of the lines in a binary cubic, with the
    multiple-line roots (always in the field) when present.

    Returns (pattern sorted descending, repeated_root or None) where the
    repeated root r encodes the line x - r*y (r = None with flag 'inf'
    encodes the line y)."""
    zero = desc.zero()
    p = UniPoly.from_dict(
        {i: cone.coeff(i, 3 - i) for i in range(4)}, zero
    )
    m_inf = 3 - (p.degree if p else 0)
    if not p:
        raise ArithmeticError("zero tangent cone")
    fin: list[int] = []
    rep = None
    if p.degree >= 1:
        g = p.gcd(p.derivative())
        if g.degree == 0:
            fin = [1] * p.degree
        elif g.degree == 1:
            fin = [2] + [1] * (p.degree - 2)
            rep = ("fin", -g.coeff(0) / g.coeff(1))
        else:
            # g = (t - r)^2 up to scale: a triple finite root
            fin = [3]
            dg = g.derivative()
            rep = ("fin", -dg.coeff(0) / dg.coeff(1))
    if m_inf >= 2:
        rep = ("inf", None)
    pattern = sorted(fin + ([m_inf] if m_inf else []), reverse=True)
    return pattern, rep


def classify_ade(curve: Curve, P, chart_hint=None) -> SingularPointRecord:
    g, chart = _local(curve, P)
    m = g.order_at_origin()
    if m < 2:
        raise NotAType(f"{P} is a smooth point")
    mu = im_origin(g.partial("x"), g.partial("y"))
    if mu is inf:
        raise NonIsolated(f"non-isolated singularity at {P}")
    pt = P if isinstance(P, ProjPoint) else ProjPoint.affine(P[0], P[1])
    if m == 2:
        ade = f"A{mu}"
    elif m == 3:
        pattern, _ = _cone_root_pattern(g.lowest_degree_part(), curve.desc)
        if pattern == [1, 1, 1]:
            ade = "D4"
        elif pattern == [2, 1]:
            ade = f"D{mu}"
        elif pattern == [3] and mu in (6, 7, 8):
            ade = {6: "E6", 7: "E7", 8: "E8"}[mu]
        else:
            ade = "NotSimple"
    else:
        ade = "NotSimple"
    return SingularPointRecord(pt, m, mu, ade, rho5_of_label(ade), "unlabeled", chart)


def configuration(curve: Curve, locus: LocusResult | None = None):
    """(Configuration, records) over every singular point of the projective
    curve; IncompleteLocus if a residual factor is present."""
    if locus is None:
        locus = singular_points(curve)
    if not locus.complete:
        raise IncompleteLocus(
            f"residual resultant factor of degree {locus.residual_total}"
        )
    records = [classify_ade(curve, pt) for pt, _ in locus.points]
    labels = [r.ade for r in records]
    for orb in locus.orbits:
        labels.extend([orb.ade] * orb.count)
        records.append(orb)
    return Configuration(labels), records


# ---------------------------------------------------------------------------
# maximal contact


def contact_series(g: BiPoly, m: int, desc: FieldDescriptor):
    """Critical-branch series S with t_1..t_tau for a double-point local
    equation g, normal-form data (a, b), swapping axes when the tangent
    line is vertical. Returns (t, a, b, swapped, order)."""
    zero = desc.zero()
    swapped = False
    if g.coeff(0, 2) == zero:
        g = g.swap_xy()
        swapped = True
        if g.coeff(0, 2) == zero:
            raise TangentConeNeedsExtension(
                "tangent cone is not a double line along either axis"
            )
    a = g.coeff(0, 2)
    tau = m // 2
    gy = g.partial("y")
    t: list = []
    for k in range(1, tau + 1):
        s_poly = UniPoly(
            [zero] + t, zero
        )
        comp = _compose_series(gy, s_poly, k + 1, zero)
        rk = comp.coeff(k)
        t.append(-rk / (2 * a))
    s_poly = UniPoly([zero] + t, zero)
    along = _compose_series(g, s_poly, m + 1, zero)
    order = along.order() if along else -1
    b = along.coeff(order) if order >= 0 else zero
    return t, a, b, swapped, order


def _compose_series(g: BiPoly, s: UniPoly, trunc: int, zero) -> UniPoly:
    """g(u, s(u)) mod u^trunc."""
    out = UniPoly([], zero)
    spow = {0: UniPoly([zero + 1], zero)}

    def sp(k):
        if k not in spow:
            spow[k] = (sp(k - 1) * s).truncate(trunc)
        return spow[k]

    for (i, j), c in g.terms.items():
        if i >= trunc:
            continue
        term = (sp(j).shift(i)).truncate(trunc)
        out = out + term.scale(c)
    return out


def maximal_contact(curve: Curve, P, iota: int) -> ContactData:
    """Normal-form contact data for an A_{3*iota-1} point."""
    g, _ = _local(curve, P)
    m = g.order_at_origin()
    if m != 2:
        raise NotAType(f"multiplicity {m} point is not an A type")
    mu = im_origin(g.partial("x"), g.partial("y"))
    if mu != 3 * iota - 1:
        raise NotAType(f"Milnor number {mu} does not match A_{3 * iota - 1}")
    t, a, b, swapped, order = contact_series(g, 3 * iota, curve.desc)
    if order != 3 * iota:
        raise WrongType(
            f"order along the contact series is {order}, expected {3 * iota}"
        )
    axis = "x-as-function-of-y" if swapped else "y-as-function-of-x"
    return ContactData(iota, len(t), t, a, b, axis)
