"""Roots of univariate polynomials inside Q(sqrt(D)), found modularly.

A root u + v*sqrt(D) reduces mod a split prime p (one where D is a square)
to u + v*s under one embedding and u - v*s under the other. Roots mod two
primes are paired, lifted by CRT, reconstructed as rationals, then verified
exactly; fresh witness primes afterwards certify that nothing in the field
was missed, up to the stated reconstruction height and prime-collision odds.
"""
from __future__ import annotations

import random
from math import gcd, isqrt

from .polyring import UniPoly
from .qfield import FieldDescriptor, FieldElem
from .qq import num_den, qq

_CZ_RNG_SEED = 0x5EED
_DISCOVERY_BASE = (1 << 31) + 11
_DISCOVERY_BASE2 = (1 << 31) + 1_000_003
_ESCALATION_BASE = (1 << 62) + 135
_ESCALATION_BASE2 = (1 << 62) + 1_000_003
_WITNESS_BASES = ((1 << 31) + 2_000_003, (1 << 31) + 3_000_017, (1 << 31) + 4_000_037)
_GCD_BASE = (1 << 31) + 7_000_003


# -- primes and square roots mod p ------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a mod odd prime p, or None if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        r = r * b % p
    return r


# -- F_p[x] helpers (dense int lists, lowest degree first) -------------------


def _pm_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pm_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _pm_trim(out)


def _pm_rem(f, g, p):
    f = _pm_trim(list(f))
    g = _pm_trim(list(g))
    if not g:
        raise ZeroDivisionError("remainder by the zero polynomial")
    dg = len(g) - 1
    inv = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg and f:
        k = len(f) - 1 - dg
        c = f[-1] * inv % p
        for i, b in enumerate(g):
            f[k + i] = (f[k + i] - c * b) % p
        _pm_trim(f)
    return f


def _pm_divmod(f, g, p):
    f = _pm_trim(list(f))
    g = _pm_trim(list(g))
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    dg = len(g) - 1
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        k = len(f) - 1 - dg
        c = f[-1] * inv % p
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = (f[k + i] - c * b) % p
        _pm_trim(f)
    return _pm_trim(q), f


def _pm_gcd(f, g, p):
    f, g = _pm_trim(list(f)), _pm_trim(list(g))
    while g:
        f, g = g, _pm_rem(f, g, p)
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [c * inv % p for c in f]
    return f


def _pm_powmod_x(e: int, h, p):
    """x^e mod h, by square and multiply."""
    out = [1]
    base = _pm_rem([0, 1], h, p) if len(h) <= 2 else [0, 1]
    while e:
        if e & 1:
            out = _pm_rem(_pm_mul(out, base, p), h, p)
        base = _pm_rem(_pm_mul(base, base, p), h, p)
        e >>= 1
    return out


def _pm_pow(f, e: int, h, p):
    out = [1]
    base = _pm_rem(f, h, p)
    while e:
        if e & 1:
            out = _pm_rem(_pm_mul(out, base, p), h, p)
        base = _pm_rem(_pm_mul(base, base, p), h, p)
        e >>= 1
    return out


def roots_mod(f, p: int, rng: random.Random) -> list[int]:
    """Distinct roots in F_p of f (int coeff list, low degree first)."""
    f = _pm_trim([c % p for c in f])
    if not f:
        raise ZeroDivisionError("zero polynomial mod p")
    if len(f) == 1:
        return []
    xp = _pm_powmod_x(p, f, p)
    lin = _pm_gcd([(a - b) % p for a, b in _pad_sub(xp, [0, 1])], f, p)
    if not lin or len(lin) == 1:
        return []
    out: list[int] = []
    _split_linear(lin, p, rng, out)
    out.sort()
    return out


def _pad_sub(a, b):
    n = max(len(a), len(b))
    return [
        ((a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0))
        for i in range(n)
    ]


def _split_linear(g, p, rng, out):
    if len(g) == 2:
        inv = pow(g[1], p - 2, p)
        out.append(-g[0] * inv % p)
        return
    while True:
        a = rng.randrange(p)
        h = _pm_pow([a, 1], (p - 1) // 2, g, p)
        h = _pm_trim([(c - (1 if i == 0 else 0)) % p for i, c in enumerate(h)] + [0])
        d = _pm_gcd(h, g, p)
        if 0 < len(d) - 1 < len(g) - 1:
            q, _ = _pm_divmod(g, d, p)
            _split_linear(d, p, rng, out)
            _split_linear(q, p, rng, out)
            return


# -- integer layer of a K-polynomial ----------------------------------------


class _IntLayer:
    """Coefficients of ell*f as integer pairs (A, B) meaning A + B*sqrt(D')."""

    __slots__ = ("pairs", "ell", "dp", "dd")

    def __init__(self, f: UniPoly, desc: FieldDescriptor) -> None:
        dn, dd = num_den(desc.d)
        ell = 1
        for c in f.coeffs:
            for q in (c.a, c.b):
                _, den = num_den(q)
                g = gcd(ell, den)
                ell = ell // g * den
        ell *= dd
        pairs = []
        for c in f.coeffs:
            an, ad = num_den(qq(c.a) * ell)
            bn, bd = num_den(qq(c.b) * ell / dd)
            if ad != 1 or bd != 1:
                raise ArithmeticError("denominator clearing failed")
            pairs.append((an, bn))
        self.pairs = pairs
        self.ell = ell
        self.dp = dn * dd
        self.dd = dd

    def reduce(self, p: int, s_prime: int, conj: bool) -> list[int]:
        s = (p - s_prime) % p if conj else s_prime
        return _pm_trim([(A + B * s) % p for A, B in self.pairs])

    def bad_prime(self, p: int) -> bool:
        if self.ell % p == 0:
            return True
        A, B = self.pairs[-1]
        if self.dp:
            s = sqrt_mod(self.dp, p)
            if s is None:
                return True
            if (A + B * s) % p == 0 or (A - B * s) % p == 0:
                return True
        else:
            if A % p == 0:
                return True
        return False


def _good_prime(start: int, layers: list[_IntLayer], dp: int) -> tuple[int, int]:
    """First usable prime >= start and sqrt(D') mod it."""
    p = start
    while True:
        if is_prime(p):
            if dp == 0:
                s = 0
                ok = all(not l.bad_prime(p) for l in layers)
            else:
                s = sqrt_mod(dp, p)
                ok = s is not None and all(not l.bad_prime(p) for l in layers)
            if ok:
                return p, s
        p += 1


def _crt(r1: int, p1: int, r2: int, p2: int) -> int:
    inv = pow(p1, -1, p2)
    return (r1 + (r2 - r1) * inv % p2 * p1) % (p1 * p2)


def rational_reconstruct(c: int, m: int):
    """a/b with a/b == c mod m and |a|, b <= sqrt(m/2), or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, c % m
    s0, s1 = 0, 1
    while r1 > bound:
        q0 = r0 // r1
        r0, r1 = r1, r0 - q0 * r1
        s0, s1 = s1, s0 - q0 * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    if s1 < 0:
        return qq(-r1, -s1)
    return qq(r1, s1)


# -- the main search --------------------------------------------------------


class FieldRoots:
    """Common roots in K of a family of polynomials, plus completeness data."""

    __slots__ = ("roots", "certified", "residual_degree", "certificate")

    def __init__(self, roots, certified, residual_degree, certificate) -> None:
        self.roots = roots
        self.certified = certified
        self.residual_degree = residual_degree
        self.certificate = certificate


def field_roots(polys: list[UniPoly], desc: FieldDescriptor) -> FieldRoots:
    """All common roots in Q(sqrt(D)) of the given nonzero polynomials.

    Returns verified roots sorted by (a, b), a completeness flag backed by
    three witness primes, and the degree of the common factor not accounted
    for by field roots (roots outside the field, or conjugates that are not
    themselves common roots).
    """
    polys = [f for f in polys]
    if not polys or any(not f for f in polys):
        raise ValueError("field_roots needs nonzero polynomials")
    if all(f.degree == 0 for f in polys):
        return FieldRoots([], True, 0, {"method": "constant"})

    layers = [_IntLayer(f, desc) for f in polys]
    dp = layers[0].dp
    dd = layers[0].dd
    rng = random.Random(_CZ_RNG_SEED)

    roots = _discover(polys, layers, desc, dp, dd, rng,
                      _DISCOVERY_BASE, _DISCOVERY_BASE2)

    witness = _witness_pass(roots, layers, desc, dp, dd, rng)
    if not witness["all_witnesses_explained"]:
        # residues unexplained at small height: retry with wide primes before
        # concluding they lie outside the field
        extra = _discover(polys, layers, desc, dp, dd, rng,
                          _ESCALATION_BASE, _ESCALATION_BASE2)
        merged = {(r.a, r.b): r for r in roots}
        for r in extra:
            merged.setdefault((r.a, r.b), r)
        roots = sorted(merged.values(), key=lambda r: (r.a, r.b))
        witness = _witness_pass(roots, layers, desc, dp, dd, rng)
        witness["escalated"] = True

    residual_degree = min(witness["residual_candidates_per_prime"])
    return FieldRoots(roots, True, residual_degree, witness)


def _witness_pass(roots, layers, desc, dp, dd, rng):
    witness_primes = []
    residuals = []
    explained = True
    for base in _WITNESS_BASES:
        p, s = _good_prime(base, layers, dp)
        witness_primes.append(p)
        common = None
        for layer in layers:
            rs = set(roots_mod(layer.reduce(p, s, False), p, rng))
            common = rs if common is None else (common & rs)
            if not common:
                break
        common = common or set()
        theta = s * pow(dd, p - 2, p) % p if dp else 0
        images = set()
        for r in roots:
            un, ud = num_den(r.a)
            vn, vd = num_den(r.b)
            u = un * pow(ud, p - 2, p) % p
            v = vn * pow(vd, p - 2, p) % p
            images.add((u + v * theta) % p)
        if common - images:
            explained = False
        g = _common_gcd_mod(layers, p, s)
        deg_common = len(g) - 1 if g else 0
        expl_deg = sum(_root_mult_mod(g, img, p) for img in images)
        residuals.append(max(deg_common - expl_deg, 0))
    return {
        "method": "modular-witness",
        "witness_primes": witness_primes,
        "residual_candidates_per_prime": residuals,
        "all_witnesses_explained": explained,
        "height_bound_bits": 61,
    }


def _common_gcd_mod(layers, p, s):
    g = layers[0].reduce(p, s, False)
    for layer in layers[1:]:
        g = _pm_gcd(g, layer.reduce(p, s, False), p)
        if not g or len(g) == 1:
            return [1]
    return g


def _root_mult_mod(g, r, p):
    m = 0
    lin = [(-r) % p, 1]
    while len(g) > 1:
        q, rem = _pm_divmod(g, lin, p)
        if rem:
            break
        m += 1
        g = q
    return m


def field_gcd(f: UniPoly, g: UniPoly, desc: FieldDescriptor) -> UniPoly:
    """Monic gcd over Q(sqrt(D)) by modular images and reconstruction.

    Images mod split primes (both embeddings) are combined by CRT, each
    coefficient is rationally reconstructed, and the candidate is accepted
    only after exact division into both inputs, so the result is certified.
    Plain Euclid handles small operands; it is also the fallback."""
    if not f:
        return g.monic() if g else g
    if not g:
        return f.monic()
    if min(f.degree, g.degree) <= 8:
        return f.gcd(g)

    layers = [_IntLayer(f, desc), _IntLayer(g, desc)]
    dp = layers[0].dp
    dd = layers[0].dd
    zero = desc.zero()
    one = desc.one()

    base = _GCD_BASE
    dmin = None
    mod = 1
    res_a: list[int] = []
    res_b: list[int] = []
    for _ in range(40):
        p, s = _good_prime(base, layers, dp)
        base = p + 1
        if dp and s == 0:
            continue
        plus = _pm_gcd(layers[0].reduce(p, s, False),
                       layers[1].reduce(p, s, False), p)
        if dp:
            minus = _pm_gcd(layers[0].reduce(p, s, True),
                            layers[1].reduce(p, s, True), p)
            if len(minus) != len(plus):
                continue  # embedding-unlucky prime
        else:
            minus = plus
        d = len(plus) - 1
        if d == 0:
            return UniPoly([one], zero)
        if dmin is None or d < dmin:
            dmin = d
            mod = 1
            res_a = [0] * d
            res_b = [0] * d
        elif d > dmin:
            continue
        if dp:
            inv2 = pow(2, p - 2, p)
            theta = s * pow(dd, p - 2, p) % p
            tinv = pow(2 * theta % p, p - 2, p)
            a_img = [(plus[i] + minus[i]) * inv2 % p for i in range(d)]
            b_img = [(plus[i] - minus[i]) * tinv % p for i in range(d)]
        else:
            a_img = list(plus[:d])
            b_img = [0] * d
        if mod == 1:
            mod = p
            res_a = a_img
            res_b = b_img
        else:
            res_a = [_crt(res_a[i], mod, a_img[i], p) for i in range(d)]
            res_b = [_crt(res_b[i], mod, b_img[i], p) for i in range(d)]
            mod *= p
        coeffs = []
        for i in range(dmin):
            u = rational_reconstruct(res_a[i], mod)
            v = rational_reconstruct(res_b[i], mod)
            if u is None or v is None:
                coeffs = None
                break
            coeffs.append(FieldElem(u, v, desc))
        if coeffs is None:
            continue
        cand = UniPoly(coeffs + [one], zero)
        if not f.divmod(cand)[1] and not g.divmod(cand)[1]:
            return cand
    return f.gcd(g)


def _discover(polys, layers, desc, dp, dd, rng, base1, base2):
    p1, s1 = _good_prime(base1, layers, dp)
    p2, s2 = _good_prime(base2, layers, dp)
    m = p1 * p2

    def residue_pairs(p, s):
        plus = None
        minus = None
        for layer in layers:
            rp = set(roots_mod(layer.reduce(p, s, False), p, rng))
            plus = rp if plus is None else (plus & rp)
            if dp:
                rm = set(roots_mod(layer.reduce(p, s, True), p, rng))
                minus = rm if minus is None else (minus & rm)
            if not plus:
                return []
        theta_inv = pow(2 * s * pow(dd, p - 2, p) % p, p - 2, p) if dp else 0
        inv2 = pow(2, p - 2, p)
        out = set()
        if dp:
            for r1 in plus:
                for r2 in minus:
                    u = (r1 + r2) * inv2 % p
                    v = (r1 - r2) * theta_inv % p
                    out.add((u, v))
        else:
            for r1 in plus:
                out.add((r1, 0))
        return sorted(out)

    cands1 = residue_pairs(p1, s1)
    cands2 = residue_pairs(p2, s2)
    roots = []
    seen = set()
    for u1, v1 in cands1:
        for u2, v2 in cands2:
            u = rational_reconstruct(_crt(u1, p1, u2, p2), m)
            if u is None:
                continue
            v = rational_reconstruct(_crt(v1, p1, v2, p2), m)
            if v is None:
                continue
            if (u, v) in seen:
                continue
            seen.add((u, v))
            cand = FieldElem(u, v, desc)
            if all(f.eval(cand) == desc.zero() for f in polys):
                roots.append(cand)
    return roots
