"""Short Weierstrass curves y^2 = x^3 + a4 x + a6 over tower fields,
with division polynomials, torsion sampling, and Velu isogenies.

Characteristic is always at least 5 here, so the short form loses nothing.
"""

from __future__ import annotations

import math
from typing import Optional

from .fields import FieldElement, FieldTower, Poly, make_extension


class CurvePoint:
    """Affine point or the point at infinity (x is None)."""

    __slots__ = ("x", "y")

    def __init__(self, x: Optional[FieldElement], y: Optional[FieldElement]):
        self.x = x
        self.y = y

    @classmethod
    def infinity(cls) -> "CurvePoint":
        return cls(None, None)

    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.is_infinity() or other.is_infinity():
            return self.is_infinity() and other.is_infinity()
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.is_infinity():
            return hash("inf")
        return hash((self.x.level, self.x.value, self.y.value))

    def __neg__(self):
        if self.is_infinity():
            return self
        return CurvePoint(self.x, -self.y)

    def __repr__(self):
        if self.is_infinity():
            return "CurvePoint(inf)"
        return f"CurvePoint({self.x.value}, {self.y.value})"

    def to_json(self):
        if self.is_infinity():
            return "infinity"
        return {"x": self.x.to_json(), "y": self.y.to_json()}


class Curve:
    """y^2 = x^3 + a4 x + a6 over one level of a field tower."""

    def __init__(self, tower: FieldTower, level: int, a4: FieldElement, a6: FieldElement):
        self.tower = tower
        self.level = level
        self.a4 = a4 if isinstance(a4, FieldElement) else FieldElement(tower, level, tower.from_int(a4, level))
        self.a6 = a6 if isinstance(a6, FieldElement) else FieldElement(tower, level, tower.from_int(a6, level))
        disc = 4 * self.a4 ** 3 + 27 * self.a6 ** 2
        if disc.is_zero():
            raise ValueError("singular curve (discriminant zero)")

    def __eq__(self, other):
        return (isinstance(other, Curve) and other.tower == self.tower
                and other.level == self.level
                and other.a4 == self.a4 and other.a6 == self.a6)

    def __repr__(self):
        return f"Curve(level={self.level}, a4={self.a4.value}, a6={self.a6.value})"

    def rhs(self, x: FieldElement) -> FieldElement:
        return x ** 3 + self.a4 * x + self.a6

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity():
            return True
        return P.y * P.y == self.rhs(P.x)

    def point(self, x, y) -> CurvePoint:
        P = CurvePoint(self._coerce(x), self._coerce(y))
        if not self.contains(P):
            raise ValueError("point is not on the curve")
        return P

    def _coerce(self, v) -> FieldElement:
        if isinstance(v, FieldElement):
            return v
        return FieldElement(self.tower, self.level, self.tower.from_int(v, self.level))

    def j_invariant(self) -> FieldElement:
        num = 4 * self.a4 ** 3
        return 1728 * num / (num + 27 * self.a6 ** 2)

    def at_level(self, level: int) -> "Curve":
        if level == self.level:
            return self
        return Curve(self.tower, level, self.a4.at_level(level), self.a6.at_level(level))

    def in_tower(self, tower: FieldTower, level: int) -> "Curve":
        """The same curve viewed in an extension tower built over the same base."""
        a4 = FieldElement(tower, level, tower.lift(self.a4.at_level(0).value, 0, level))
        a6 = FieldElement(tower, level, tower.lift(self.a6.at_level(0).value, 0, level))
        return Curve(tower, level, a4, a6)

    def random_point(self, rng) -> CurvePoint:
        for _ in range(10000):
            x = FieldElement(self.tower, self.level,
                             self.tower.random_value(self.level, rng))
            y = self.rhs(x).sqrt()
            if y is None:
                continue
            if rng.randrange(2):
                y = -y
            return CurvePoint(x, y)
        raise RuntimeError("failed to sample a curve point")

    def to_json(self):
        return {"level": self.level, "a4": self.a4.to_json(), "a6": self.a6.to_json()}


def point_add(E: Curve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_infinity():
        return Q
    if Q.is_infinity():
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return CurvePoint.infinity()
        # doubling
        lam = (3 * P.x * P.x + E.a4) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return CurvePoint(x3, y3)


def scalar_mul(E: Curve, n: int, P: CurvePoint) -> CurvePoint:
    if n < 0:
        return scalar_mul(E, -n, -P)
    acc = CurvePoint.infinity()
    add = P
    while n:
        if n & 1:
            acc = point_add(E, acc, add)
        add = point_add(E, add, add)
        n >>= 1
    return acc


def frobenius_map(P: CurvePoint, q: int) -> CurvePoint:
    """Raise both coordinates to the q-th power; q must be a power of the
    characteristic of the point's field."""
    if P.is_infinity():
        return P
    p = P.x.tower.p
    k = 0
    qq = q
    while qq > 1:
        if qq % p:
            raise ValueError(f"{q} is not a power of the characteristic {p}")
        qq //= p
        k += 1
    return CurvePoint(P.x.frobenius(k), P.y.frobenius(k))


def count_points(E: Curve) -> tuple:
    """(group order, trace) by exhaustive x-sweep. Field size capped at 10^6."""
    tower, level = E.tower, E.level
    S = tower.size(level)
    if S > 10**6:
        raise ValueError("field too large for exhaustive point counting")
    n = 1  # infinity
    if level == 0:
        p = tower.p
        squares = set()
        for v in range(p):
            squares.add((v * v) % p)
        a4 = E.a4.value
        a6 = E.a6.value
        for x in range(p):
            c = (x * x * x + a4 * x + a6) % p
            if c == 0:
                n += 1
            elif c in squares:
                n += 2
    else:
        half = (S - 1) // 2
        for i in range(S):
            x = tower.unrank(i, level)
            c = tower.vadd(level, tower.vmul(level, tower.vmul(level, x, x), x),
                           tower.vadd(level, tower.vmul(level, E.a4.value, x), E.a6.value))
            if tower.is_zero(c, level):
                n += 1
            elif tower.vpow(level, c, half) == tower.one(level):
                n += 2
    t = S + 1 - n
    if t * t > 4 * S:
        raise AssertionError("trace outside the Hasse interval")
    return n, t


def extension_order(q: int, t: int, r: int) -> int:
    """#E(F_{q^r}) from #E(F_q) = q + 1 - t by the trace recurrence."""
    t_prev, t_cur = 2, t
    for _ in range(r - 1):
        t_prev, t_cur = t_cur, t * t_cur - q * t_prev
    return q**r + 1 - t_cur


def gl2_order(m: int) -> int:
    """#GL_2(Z/mZ)."""
    out = 1
    mm = m
    d = 2
    while d * d <= mm:
        if mm % d == 0:
            k = 0
            while mm % d == 0:
                mm //= d
                k += 1
            out *= d ** (4 * k - 3) * (d - 1) * (d * d - 1)
        d += 1
    if mm > 1:
        d = mm
        out *= d * (d - 1) * (d * d - 1)
    return out


class _YPoly:
    """u(x) + v(x)*y with y^2 reduced to the curve cubic; division-polynomial
    arithmetic lives here."""

    __slots__ = ("u", "v", "cubic")

    def __init__(self, u: Poly, v: Poly, cubic: Poly):
        self.u = u
        self.v = v
        self.cubic = cubic

    def __mul__(self, other: "_YPoly") -> "_YPoly":
        u1, v1, u2, v2 = self.u, self.v, other.u, other.v
        u = u1 * u2 + v1 * v2 * self.cubic
        v = u1 * v2 + u2 * v1
        return _YPoly(u, v, self.cubic)

    def __sub__(self, other: "_YPoly") -> "_YPoly":
        return _YPoly(self.u - other.u, self.v - other.v, self.cubic)

    def pow3(self) -> "_YPoly":
        return self * self * self

    def sq(self) -> "_YPoly":
        return self * self


def _division_psis(E: Curve, m: int) -> dict:
    tower, level = E.tower, E.level
    A, B = E.a4, E.a6
    cubic = Poly(tower, level, [B, A, 0, 1])
    zero = Poly(tower, level, [0])
    one = Poly(tower, level, [1])

    def yp(u, v):
        return _YPoly(u, v, cubic)

    psi = {
        0: yp(zero, zero),
        1: yp(one, zero),
        2: yp(zero, Poly(tower, level, [2])),
        3: yp(Poly(tower, level,
                   [-(A * A), 12 * B, 6 * A, 0, 3]), zero),
        4: yp(zero, Poly(tower, level,
                         [-4 * (8 * B * B + A ** 3), -16 * A * B, -20 * A * A,
                          80 * B, 20 * A, 0, 4])),
    }

    inv2 = FieldElement(tower, level, tower.vinv(level, tower.from_int(2, level)))

    def div_2y(w: _YPoly) -> _YPoly:
        # w must be a pure-x multiple of the cubic; w/(2y) is then pure-y
        if not w.v.is_zero():
            raise AssertionError("division polynomial parity broke")
        q, r = w.u.divmod(cubic)
        if not r.is_zero():
            raise AssertionError("division polynomial cubic factor missing")
        return yp(zero, q * inv2)

    def get(n: int) -> _YPoly:
        if n in psi:
            return psi[n]
        k = n // 2
        if n % 2:
            val = get(k + 2) * get(k).pow3() - get(k - 1) * get(k + 1).pow3()
        else:
            val = div_2y(get(k) * (get(k + 2) * get(k - 1).sq()
                                   - get(k - 2) * get(k + 1).sq()))
        psi[n] = val
        return val

    get(m)
    return psi


def division_polynomial(E: Curve, m: int) -> Poly:
    """For odd m, the classical m-division polynomial in x. For even m in
    {2, 4, 8}, the x-coordinate polynomial of the full m-torsion (the
    2-torsion cubic folded in)."""
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return Poly(E.tower, E.level, [1])
    psi = _division_psis(E, m)[m]
    if m % 2:
        if not psi.v.is_zero():
            raise AssertionError("odd-index division polynomial has a y part")
        return psi.u
    if m not in (2, 4, 8):
        raise ValueError("even m supported only for m in {2, 4, 8}")
    if not psi.u.is_zero():
        raise AssertionError("even-index division polynomial has an x part")
    cubic = Poly(E.tower, E.level, [E.a6, E.a4, 0, 1])
    return cubic * psi.v


def torsion_extension_degree(E: Curve, m: int) -> int:
    """Smallest r with E[m] fully rational over the degree-r extension of the
    curve's own field, read off from the splitting of the division polynomial
    and of the y-coordinate squares."""
    tower, level = E.tower, E.level
    q = tower.size(level)
    if math.gcd(m, tower.p) != 1:
        raise ValueError("m must be coprime to the characteristic")
    psi = division_polynomial(E, m).monic()
    cubic = Poly(tower, level, [E.a6, E.a4, 0, 1])
    shared = psi.gcd(cubic)
    psi1 = psi // shared if shared.degree() > 0 else psi
    x = Poly.x(tower, level)
    one = Poly(tower, level, [1])

    cap = gl2_order(m)
    cur = x                     # x^(q^r) mod psi
    ypow = one % psi1           # cubic^((q^r-1)/2) mod psi1
    step = cubic.powmod((q - 1) // 2, psi1)
    r = 0
    while r < cap:
        r += 1
        cur = cur.powmod(q, psi)
        ypow = (ypow.powmod(q, psi1) * step) % psi1
        if cur == x % psi and ypow == one % psi1:
            if cap % r:
                raise AssertionError("torsion field degree does not divide #GL2")
            return r
    raise RuntimeError(f"no extension of degree up to {cap} splits the {m}-torsion")


def sample_m_torsion(E: Curve, m: int, order: int, rng) -> CurvePoint:
    """A uniform-ish point of exact order m (a prime power), given the group
    order of E over its field of definition."""
    ell = None
    d = 2
    mm = m
    while d * d <= mm:
        if mm % d == 0:
            ell = d
            break
        d += 1
    if ell is None:
        ell = mm
    k = 0
    while mm > 1:
        if mm % ell:
            raise ValueError("m must be a prime power")
        mm //= ell
        k += 1
    e = 0
    n = order
    while n % ell == 0:
        n //= ell
        e += 1
    if e < k:
        raise ValueError(f"the {m}-torsion is not rational here")
    cof = order // ell**e
    for _ in range(64):
        R = E.random_point(rng)
        Q = scalar_mul(E, cof, R)
        if Q.is_infinity():
            continue
        # ell-adic order of Q
        chain = [Q]
        while not chain[-1].is_infinity():
            chain.append(scalar_mul(E, ell, chain[-1]))
        j = len(chain) - 1
        if j < k:
            continue
        return chain[j - k]
    raise RuntimeError("torsion sampling failed; group order is inconsistent")


def torsion_basis(E: Curve, m: int, order: int, rng) -> tuple:
    """Two generators of E[m] = (Z/m)^2 for a prime power m, assuming the full
    m-torsion is rational over E's field of size `order` + trace."""
    ell = 2
    while m % ell:
        ell += 1
    P = sample_m_torsion(E, m, order, rng)
    S1 = scalar_mul(E, m // ell, P)
    line = [CurvePoint.infinity()]
    for _ in range(ell - 1):
        line.append(point_add(E, line[-1], S1))
    for _ in range(100):
        Q = sample_m_torsion(E, m, order, rng)
        if scalar_mul(E, m // ell, Q) not in line:
            return P, Q
    raise RuntimeError("no independent torsion point found; is E[m] rational here?")


class Isogeny:
    """Separable isogeny with cyclic kernel of odd prime order, via Velu."""

    def __init__(self, domain: Curve, codomain: Curve, degree: int,
                 kernel_poly: Poly, kernel_points: list):
        self.domain = domain
        self.codomain = codomain
        self.degree = degree
        self.kernel_poly = kernel_poly
        self._kernel_points = kernel_points  # all ell-1 finite kernel points

    def __call__(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity():
            return CurvePoint.infinity()
        ktower = self._kernel_points[0].x.tower
        if P.x.tower is not ktower:
            # points can only cross towers through the shared base field
            P = CurvePoint(
                FieldElement(ktower, 0, P.x.at_level(0).value).at_level(0),
                FieldElement(ktower, 0, P.y.at_level(0).value).at_level(0))
        lv = max(P.x.level, self._kernel_points[0].x.level)
        E = (self.domain.at_level(lv) if self.domain.tower is ktower
             else self.domain.in_tower(ktower, lv))
        X, Y = P.x.at_level(lv), P.y.at_level(lv)
        xs, ys = X, Y
        for Q in self._kernel_points:
            Qx, Qy = Q.x.at_level(lv), Q.y.at_level(lv)
            T = point_add(E, CurvePoint(X, Y), CurvePoint(Qx, Qy))
            if T.is_infinity():
                return CurvePoint.infinity()   # P was a kernel point
            xs = xs + (T.x - Qx)
            ys = ys + (T.y - Qy)
        return CurvePoint(xs, ys)

    def to_json(self):
        return {
            "domain": self.domain.to_json(),
            "degree": self.degree,
            "kernel_poly": self.kernel_poly.to_json(),
        }


def velu_isogeny(E: Curve, K: CurvePoint, ell: Optional[int] = None,
                 rational_codomain: bool = True) -> Isogeny:
    """The quotient isogeny E -> E/<K> for K of odd prime order.

    The order is derived from K when not supplied. With rational_codomain the
    kernel must be stable under the Frobenius of E's own field, and the
    codomain is expressed back at E's level.
    """
    if K.is_infinity():
        raise ValueError("kernel generator must be finite")
    lv = K.x.level
    ktower = K.x.tower
    Eh = E.at_level(lv) if ktower is E.tower else E.in_tower(ktower, lv)
    if not Eh.contains(K):
        raise ValueError("kernel generator is not on the curve")
    mults = [K]
    cap = ell if ell is not None else 300
    while not point_add(Eh, mults[-1], K).is_infinity():
        mults.append(point_add(Eh, mults[-1], K))
        if len(mults) > cap:
            raise ValueError("kernel generator order exceeds the supported bound")
    order = len(mults) + 1
    if ell is not None and order != ell:
        raise ValueError(f"kernel generator does not have order {ell}")
    ell = order
    if ell < 3 or ell % 2 == 0 or any(ell % d == 0
                                      for d in range(3, int(math.isqrt(ell)) + 1, 2)):
        raise ValueError("kernel order must be an odd prime")

    if rational_codomain:
        q = E.tower.size(E.level)
        sigmaK = frobenius_map(K, q)
        if sigmaK not in mults:
            raise ValueError("kernel is not Frobenius-stable over the base field")

    A, B = Eh.a4, Eh.a6
    t_acc = None
    w_acc = None
    half = mults[:(ell - 1) // 2]
    for Q in half:
        tq = 6 * Q.x * Q.x + 2 * A
        uq = 4 * Q.y * Q.y
        wq = uq + Q.x * tq
        t_acc = tq if t_acc is None else t_acc + tq
        w_acc = wq if w_acc is None else w_acc + wq
    A2 = A - 5 * t_acc
    B2 = B - 7 * w_acc

    kernel_poly = Poly(ktower, lv, [1])
    for Q in half:
        kernel_poly = kernel_poly * Poly(ktower, lv, [-Q.x, 1])

    if rational_codomain:
        def home(v: FieldElement) -> FieldElement:
            if ktower is E.tower:
                return v.at_level(E.level)
            base_val = v.at_level(0).value
            return FieldElement(E.tower, E.level, E.tower.lift(base_val, 0, E.level))

        A2 = home(A2)
        B2 = home(B2)
        kernel_poly = Poly(E.tower, E.level,
                           [home(FieldElement(ktower, lv, c))
                            for c in kernel_poly.coeffs])
        codomain = Curve(E.tower, E.level, A2, B2)
    else:
        codomain = Curve(ktower, lv, A2, B2)
    iso = Isogeny(E, codomain, ell, kernel_poly, mults)
    if iso.degree != 2 * iso.kernel_poly.degree() + 1:
        raise AssertionError("kernel polynomial degree is off")
    return iso
