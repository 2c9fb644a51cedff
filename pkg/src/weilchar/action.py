"""Class-group action on Frobenius-oriented curves.

Instances are curves over a prime field F_q oriented by sigma = pi_q + k, so
the order Z[sigma] has discriminant t^2 - 4q = -D regardless of the shift k.
Ideals are applied by locating Frobenius eigenpoints over the smallest usable
extension and running Velu's formulas; all codomains descend back to F_q.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curves import (Curve, CurvePoint, count_points, extension_order,
                     frobenius_map, point_add, sample_m_torsion, scalar_mul,
                     velu_isogeny)
from .fields import (FieldElement, FieldTower, PrimeField, make_extension,
                     _is_prime)
from .quadforms import (Discriminant, QuadForm, compose, enumerate_class_group,
                        principal_form, reduce_form)

_tower_cache: dict = {}
_kernel_cache: dict = {}


def get_tower(p: int, r: int) -> FieldTower:
    """Shared tower F_p or F_{p^r}; one object per (p, r) so that elements,
    cached Frobenius data, and cached kernel points interoperate."""
    key = (p, r)
    if key not in _tower_cache:
        base = FieldTower(PrimeField(p), [])
        _tower_cache[key] = base if r == 1 else make_extension(base, r)
    return _tower_cache[key]


class OrientedCurve:
    """A curve over F_q together with sigma = pi_q + k orienting Z[sigma]."""

    def __init__(self, curve: Curve, q: int, t: int, sigma_k: int = 0):
        if curve.level != 0:
            raise ValueError("instances live over the prime field")
        self.curve = curve
        self.q = q
        self.t = t
        self.sigma_k = sigma_k
        D = 4 * q - t * t
        if D <= 0:
            raise ValueError("trace out of the imaginary range")
        self.D = D

    @property
    def sigma_kind(self) -> str:
        return "frobenius" if self.sigma_k == 0 else "frobenius_shift"

    @property
    def sigma_trace(self) -> int:
        return self.t + 2 * self.sigma_k

    @property
    def sigma_norm(self) -> int:
        return self.q + self.sigma_k * self.t + self.sigma_k ** 2

    @property
    def order_disc(self) -> Discriminant:
        return Discriminant(self.D)

    def group_order(self, r: int = 1) -> int:
        return extension_order(self.q, self.t, r)

    def curve_in(self, r: int) -> Curve:
        """The instance curve base-changed to F_{q^r} in the shared tower."""
        tw = get_tower(self.q, r)
        return self.curve.in_tower(tw, 1 if r > 1 else 0)

    def sigma_eval(self, P: CurvePoint, E_amb: Optional[Curve] = None) -> CurvePoint:
        """ι(sigma)(P) = pi_q(P) + [k]P."""
        fP = frobenius_map(P, self.q)
        if self.sigma_k == 0:
            return fP
        if E_amb is None:
            raise ValueError("the shifted evaluation needs the ambient curve")
        return point_add(E_amb, fP, scalar_mul(E_amb, self.sigma_k, P))

    def shifted(self, extra_k: int) -> "OrientedCurve":
        return OrientedCurve(self.curve, self.q, self.t, self.sigma_k + extra_k)

    def j_invariant(self) -> FieldElement:
        return self.curve.j_invariant()

    def __eq__(self, other):
        return (isinstance(other, OrientedCurve) and other.q == self.q
                and other.t == self.t and other.sigma_k == self.sigma_k
                and other.curve == self.curve)

    def __repr__(self):
        return (f"OrientedCurve(q={self.q}, t={self.t}, D={self.D}, "
                f"a4={self.curve.a4.value}, a6={self.curve.a6.value})")

    def to_json(self) -> dict:
        return {
            "p": self.q,
            "curve": {"a4": int(self.curve.a4.value), "a6": int(self.curve.a6.value)},
            "sigma": {"kind": self.sigma_kind, "k": self.sigma_k},
            "trace": self.sigma_trace,
            "norm": self.sigma_norm,
            "D": self.D,
            "factors": [[p, e] for p, e in self.order_disc.factors],
        }

    @classmethod
    def from_json(cls, data: dict) -> "OrientedCurve":
        q = data["p"]
        tw = get_tower(q, 1)
        k = data["sigma"]["k"]
        t = data["trace"] - 2 * k
        E = Curve(tw, 0,
                  FieldElement(tw, 0, tw.from_int(data["curve"]["a4"], 0)),
                  FieldElement(tw, 0, tw.from_int(data["curve"]["a6"], 0)))
        oc = cls(E, q, t, k)
        if oc.D != data["D"]:
            raise ValueError("inconsistent instance data: discriminant mismatch")
        return oc


@dataclass(frozen=True)
class SmoothIdeal:
    """Product of split prime ideals (ell, sigma - lambda)^e with its reduced
    form image; negative exponents mean the conjugate ideal."""

    factors: tuple
    class_form: QuadForm

    @property
    def norm(self) -> int:
        n = 1
        for ell, _, e in self.factors:
            n *= ell ** abs(e)
        return n

    def to_json(self) -> dict:
        return {"factors": [[ell, lam, e] for ell, lam, e in self.factors]}

    @classmethod
    def from_factors(cls, factors, oc: OrientedCurve) -> "SmoothIdeal":
        form = principal_form(oc.D)
        for ell, lam, e in factors:
            f = prime_ideal_form(oc, ell, lam)
            if e < 0:
                f = f.inverse()
            for _ in range(abs(e)):
                form = compose(form, f)
        return cls(tuple((ell, lam, e) for ell, lam, e in factors), form)

    @classmethod
    def from_json(cls, data: dict, oc: OrientedCurve) -> "SmoothIdeal":
        return cls.from_factors([tuple(f) for f in data["factors"]], oc)


def prime_ideal_form(oc: OrientedCurve, ell: int, lam: int) -> QuadForm:
    """Reduced form of the ideal (ell, sigma - lam): (ell, b, *) with
    b = 2*lam - tr(sigma) mod 2*ell."""
    tr, N = oc.sigma_trace, oc.sigma_norm
    if (lam * lam - tr * lam + N) % ell:
        raise ValueError(f"{lam} is not an eigenvalue mod {ell}")
    b = (2 * lam - tr) % (2 * ell)
    c4 = b * b + oc.D
    if c4 % (4 * ell):
        raise AssertionError("form dictionary arithmetic broke")
    return reduce_form(QuadForm(ell, b, c4 // (4 * ell)))


def gen_supersingular_instance(p: int) -> OrientedCurve:
    """Exhaustive search for a supersingular curve over F_p, p = 1 mod 4; the
    instance is oriented by pi_p with D = 4p and assigned characters
    {chi_p, delta}, which agree on every class."""
    if p > 10**4 or not _is_prime(p) or p < 5:
        raise ValueError("p must be a desk-scale prime at least 5")
    if p % 4 != 1:
        raise ValueError("p = 3 mod 4 leaves no nontrivial attackable character")
    tw = get_tower(p, 1)
    for a4 in range(1, p):
        for a6 in range(1, p):
            try:
                E = Curve(tw, 0, FieldElement(tw, 0, tw.from_int(a4, 0)),
                          FieldElement(tw, 0, tw.from_int(a6, 0)))
            except ValueError:
                continue
            N, t = count_points(E)
            if t != 0:
                continue
            j = E.j_invariant().value
            if j in (0, 1728 % p):
                continue
            return OrientedCurve(E, p, 0)
    raise RuntimeError(f"no supersingular curve with plain j-invariant over F_{p}")


def make_instance(q: int, t: int, rng) -> OrientedCurve:
    """Random-search a curve over F_q with exact trace t (using the quadratic
    twist when the negated trace shows up)."""
    if not _is_prime(q) or q < 5:
        raise ValueError("q must be a prime of at least 5")
    if t == 0 or t % q == 0:
        raise ValueError("ordinary instances need a trace coprime to q")
    if t * t >= 4 * q:
        raise ValueError("trace outside the Hasse interval")
    tw = get_tower(q, 1)
    nonsquare = None
    for c in range(2, q):
        if pow(c, (q - 1) // 2, q) == q - 1:
            nonsquare = c
            break
    for _ in range(40 * q):
        a4 = rng.randrange(1, q)
        a6 = rng.randrange(1, q)
        try:
            E = Curve(tw, 0, FieldElement(tw, 0, tw.from_int(a4, 0)),
                      FieldElement(tw, 0, tw.from_int(a6, 0)))
        except ValueError:
            continue
        if E.j_invariant().value in (0, 1728 % q):
            continue
        # cheap filter before the O(q) exact count: a random point's order
        # must divide (q+1-t)(q+1+t) on the sought curve or its twist
        frng = random.Random(_fold_seed((q, t, a4, a6)))
        P = E.random_point(frng)
        if not scalar_mul(E, (q + 1 - t) * (q + 1 + t), P).is_infinity():
            continue
        N, tc = count_points(E)
        if tc == -t:
            a4, a6 = (a4 * nonsquare**2) % q, (a6 * nonsquare**3) % q
            E = Curve(tw, 0, FieldElement(tw, 0, tw.from_int(a4, 0)),
                      FieldElement(tw, 0, tw.from_int(a6, 0)))
            _, tc = count_points(E)
        if tc == t:
            return OrientedCurve(E, q, t)
    raise RuntimeError(f"no curve with trace {t} found over F_{q}")


def gen_ordinary_instance(q_range, m_target: Optional[int] = None, rng=None,
                          budget: int = 4000) -> OrientedCurve:
    """Random search over primes in q_range for an ordinary instance whose
    discriminant has a usable odd prime divisor (m exactly dividing D, m != q,
    and m <= m_target when a bound is given)."""
    lo, hi = q_range
    primes = [q for q in range(max(lo, 5), hi + 1) if _is_prime(q)]
    if not primes:
        raise ValueError("no usable primes in the requested range")
    best_D = 0
    for _ in range(budget):
        q = rng.choice(primes)
        tw = get_tower(q, 1)
        a4 = rng.randrange(1, q)
        a6 = rng.randrange(1, q)
        try:
            E = Curve(tw, 0, FieldElement(tw, 0, tw.from_int(a4, 0)),
                      FieldElement(tw, 0, tw.from_int(a6, 0)))
        except ValueError:
            continue
        if E.j_invariant().value in (0, 1728 % q):
            continue
        N, t = count_points(E)
        if t == 0 or t % q == 0:
            continue
        D = 4 * q - t * t
        best_D = max(best_D, D)
        ok_m = None
        for m, e in Discriminant(D).factors:
            if m == 2 or m == q or e != 1:
                continue
            if m_target is not None and m > m_target:
                continue
            ok_m = m
            break
        if ok_m is None:
            continue
        return OrientedCurve(E, q, t)
    raise RuntimeError(
        f"search budget exhausted without a usable instance; largest D scanned was {best_D}")


def split_prime(oc: OrientedCurve, ell: int):
    """Splitting of ell in Z[sigma]: ("split", [lam, lam']), ("ramified",
    [lam]), or ("inert", [])."""
    if ell == 2 or not _is_prime(ell):
        raise ValueError("only odd primes split into usable ideals here")
    tr, N = oc.sigma_trace, oc.sigma_norm
    roots = sorted({x for x in range(ell) if (x * x - tr * x + N) % ell == 0})
    if len(roots) == 2:
        return ("split", roots)
    if len(roots) == 1:
        return ("ramified", roots)
    return ("inert", [])


def _mult_order(a: int, n: int) -> int:
    x = a % n
    if math.gcd(x, n) != 1:
        raise ValueError("order of a noninvertible residue")
    k = 1
    while x != 1:
        x = (x * a) % n
        k += 1
        if k > n:
            raise AssertionError("order computation ran away")
    return k


def _fold_seed(key: tuple) -> int:
    s = 0x9E3779B9
    for v in key:
        s = (s * 1000003 + v) % (1 << 63)
    return s


def eigen_kernel(oc: OrientedCurve, ell: int, lam: int) -> CurvePoint:
    """A point K of order ell with sigma(K) = [lam]K, over the smallest
    extension carrying the eigenline; cached per (curve, ell, lam).

    Sampling runs on a generator derived from the cache key, so the caller's
    randomness stream is untouched and repeat calls are free."""
    tr, N = oc.sigma_trace, oc.sigma_norm
    if (lam * lam - tr * lam + N) % ell:
        raise ValueError(f"{lam} is not an eigenvalue of sigma mod {ell}")
    if ell == 2 or ell % oc.q == 0 or oc.D % ell == 0:
        raise ValueError("kernel primes must be odd, split, and unramified")
    lam_pi = (lam - oc.sigma_k) % ell          # eigenvalue of the Frobenius
    other_pi = (oc.t - lam_pi) % ell
    key = (oc.q, oc.t, int(oc.curve.a4.value), int(oc.curve.a6.value), ell, lam_pi)
    hit = _kernel_cache.get(key)
    if hit is not None:
        return hit
    rng = random.Random(_fold_seed(key))
    k_deg = _mult_order(lam_pi, ell)
    Ek = oc.curve_in(k_deg)
    Nk = oc.group_order(k_deg)
    other_rational = pow(other_pi, k_deg, ell) == 1
    for _ in range(64):
        R = sample_m_torsion(Ek, ell, Nk, rng)
        if other_rational:
            T = point_add(Ek, frobenius_map(R, oc.q),
                          scalar_mul(Ek, -other_pi, R))
            if T.is_infinity():
                continue
        else:
            T = R
        if frobenius_map(T, oc.q) != scalar_mul(Ek, lam_pi, T):
            raise RuntimeError(
                f"no eigenpoint for eigenvalue {lam} mod {ell}: inconsistent data")
        _kernel_cache[key] = T
        return T
    raise RuntimeError(f"eigenpoint sampling failed for ell={ell}")


_step_cache: dict = {}


def canonical_model(curve: Curve) -> Curve:
    """The least (a4, a6) among the u-scalings (u^4 a4, u^6 a6), one fixed
    model per F_q-isomorphism class.  Short Weierstrass isomorphisms are
    exactly these scalings, so pinning the model makes walks that arrive at
    the same class through different isogeny routes cache-identical."""
    p = curve.tower.p
    a4, a6 = int(curve.a4.value), int(curve.a6.value)
    best = (a4, a6)
    for u in range(2, p // 2 + 1):
        u2 = u * u % p
        u4 = u2 * u2 % p
        cand = (a4 * u4 % p, a6 * u4 % p * u2 % p)
        if cand < best:
            best = cand
    if best == (a4, a6):
        return curve
    return Curve(curve.tower, 0, best[0], best[1])


def apply_prime_ideal(oc: OrientedCurve, ell: int, lam: int) -> OrientedCurve:
    """The action of the class of (ell, sigma - lam): quotient by the
    eigenline and carry the orientation over to the codomain."""
    lam_pi = (lam - oc.sigma_k) % ell
    key = (oc.q, oc.t, oc.sigma_k,
           int(oc.curve.a4.value), int(oc.curve.a6.value), ell, lam_pi)
    hit = _step_cache.get(key)
    if hit is not None:
        return hit
    K = eigen_kernel(oc, ell, lam)
    phi = velu_isogeny(oc.curve, K, ell)
    out = OrientedCurve(canonical_model(phi.codomain), oc.q, oc.t, oc.sigma_k)
    _step_cache[key] = out
    return out


def apply_smooth_ideal(oc: OrientedCurve, ideal: SmoothIdeal) -> OrientedCurve:
    """Sequential application of the ideal's prime factors; conjugate
    eigenvalues serve the negative exponents."""
    cur = oc
    for ell, lam, e in ideal.factors:
        use = lam if e > 0 else (cur.sigma_trace - lam) % ell
        for _ in range(abs(e)):
            cur = apply_prime_ideal(cur, ell, use)
    return cur


_sampler_cache: dict = {}


def _usable_split_primes(oc: OrientedCurve, degree_cap: int,
                         smooth_bound: int) -> list:
    """Split primes we can afford to act by, sorted cheapest first: odd,
    coprime to qD, with both eigenline extension degrees within the cap.
    Entries are (cost, ell, lam)."""
    candidates = []
    for ell in range(3, smooth_bound + 1, 2):
        if not _is_prime(ell) or oc.q % ell == 0 or oc.D % ell == 0:
            continue
        kind, roots = split_prime(oc, ell)
        if kind != "split":
            continue
        lam, lam2 = roots
        cost = max(_mult_order((lam - oc.sigma_k) % ell, ell),
                   _mult_order((lam2 - oc.sigma_k) % ell, ell))
        if cost > degree_cap:
            continue
        candidates.append((cost, ell, lam))
    candidates.sort()
    return candidates


_word_cache: dict = {}


def smooth_in_class(oc: OrientedCurve, form: QuadForm, degree_cap: int = 12,
                    smooth_bound: int = 50) -> SmoothIdeal:
    """A smooth ideal in the given class, as a short word in the usable split
    primes (breadth-first over the enumerated class group)."""
    key = (oc.q, oc.sigma_trace, oc.sigma_k, degree_cap, smooth_bound)
    words = _word_cache.get(key)
    if words is None:
        candidates = _usable_split_primes(oc, degree_cap, smooth_bound)
        gens = []
        for _, ell, lam in candidates:
            f = prime_ideal_form(oc, ell, lam)
            gens.append((ell, lam, 1, f))
            gens.append((ell, lam, -1, f.inverse()))
        words = {principal_form(oc.D): ()}
        frontier = [principal_form(oc.D)]
        while frontier:
            nxt = []
            for base in frontier:
                for ell, lam, sign, f in gens:
                    reached = compose(base, f)
                    if reached in words:
                        continue
                    words[reached] = words[base] + ((ell, lam, sign),)
                    nxt.append(reached)
            frontier = nxt
        _word_cache[key] = words
    target = reduce_form(form)
    if target not in words:
        raise RuntimeError(
            f"no smooth representative: the split primes below {smooth_bound} "
            f"generate a proper subgroup")
    merged: dict = {}
    for ell, lam, sign in words[target]:
        merged[(ell, lam)] = merged.get((ell, lam), 0) + sign
    factors = [(ell, lam, e) for (ell, lam), e in sorted(merged.items()) if e]
    return SmoothIdeal.from_factors(factors, oc)


def _sampler_config(oc: OrientedCurve, exp_bound: int, degree_cap: int,
                    smooth_bound: int):
    """Pick a prefix of the cheapest usable split primes whose exponent-vector
    distribution over cl(O) is provably close to uniform.

    The distribution is computed exactly by convolving the per-prime uniform
    exponent laws through the enumerated class group; the empirical 10h-sample
    check the tests run is implied by it."""
    key = (oc.q, oc.sigma_trace, exp_bound, degree_cap, smooth_bound)
    hit = _sampler_cache.get(key)
    if hit is not None:
        return hit
    candidates = _usable_split_primes(oc, degree_cap, smooth_bound)
    if len(candidates) < 2:
        raise RuntimeError("fewer than two usable split primes below the bound")
    group = enumerate_class_group(oc.D)
    h = len(group)
    index = {f: i for i, f in enumerate(group)}
    table = [[index[compose(a, b)] for b in group] for a in group]

    def exact_stat_distance(primes):
        dist = [0] * h
        dist[index[principal_form(oc.D)]] = 1
        total = 1
        for _, ell, lam in primes:
            f = prime_ideal_form(oc, ell, lam)
            finv = f.inverse()
            steps = {0: index[principal_form(oc.D)]}
            cur = principal_form(oc.D)
            for e in range(1, exp_bound + 1):
                cur = compose(cur, f)
                steps[e] = index[cur]
            cur = principal_form(oc.D)
            for e in range(1, exp_bound + 1):
                cur = compose(cur, finv)
                steps[-e] = index[cur]
            new = [0] * h
            for c, w in enumerate(dist):
                if not w:
                    continue
                for e in range(-exp_bound, exp_bound + 1):
                    new[table[c][steps[e]]] += w
            dist = new
            total *= 2 * exp_bound + 1
        full = all(dist)
        sd = sum(abs(Fraction(w, total) - Fraction(1, h)) for w in dist) / 2
        return sd, full

    for take in range(1, len(candidates) + 1):
        chosen = candidates[:take]
        sd, full = exact_stat_distance(chosen)
        if full and sd < Fraction(5, 100):
            cfg = ([(ell, lam) for _, ell, lam in chosen], float(sd))
            _sampler_cache[key] = cfg
            return cfg
    raise RuntimeError(
        "the usable split primes only reach a skewed or proper part of cl(O)")


def random_smooth_class(oc: OrientedCurve, rng, exp_bound: int = 5,
                        degree_cap: int = 12, smooth_bound: int = 50) -> SmoothIdeal:
    """A near-uniform random class as a smooth ideal: uniform exponents in
    [-exp_bound, exp_bound] over an enumeration-validated set of split primes."""
    primes, _ = _sampler_config(oc, exp_bound, degree_cap, smooth_bound)
    factors = []
    for ell, lam in primes:
        e = rng.randint(-exp_bound, exp_bound)
        if e:
            factors.append((ell, lam, e))
    return SmoothIdeal.from_factors(factors, oc)


def sampler_primes(oc: OrientedCurve, exp_bound: int = 5, degree_cap: int = 12,
                   smooth_bound: int = 50):
    """The validated sampler configuration: ([(ell, lambda)], exact statistical
    distance of the sampled class distribution from uniform)."""
    return _sampler_config(oc, exp_bound, degree_cap, smooth_bound)
