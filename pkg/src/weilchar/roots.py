"""Square-root disambiguation in the class group.

Knowing [c]^2 and the oriented pair (E, E') with E' = [c]E leaves
#cl(O)[2] square roots to tell apart.  Characters of small odd primes
dividing D, read off the pair itself, cut the candidate set down to a
subgroup G with #G <= 2^(#P2+1); the survivors are settled by applying
each candidate class and comparing j-invariants.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field

from .action import (OrientedCurve, apply_smooth_ideal, canonical_model,
                     smooth_in_class)
from .attack import eval_character
from .quadforms import (Character, Discriminant, QuadForm, char_eval_class,
                        compose, principal_form, reduce_form,
                        two_torsion_and_sqrt)


@dataclass
class RootRecovery:
    target_square: QuadForm
    bound_B: int
    P1: tuple                      # odd primes filtered by characters
    P2: tuple                      # odd primes left to the residual group
    residual_group_size: int
    recovered: QuadForm
    candidates_tested: int
    char_values: dict = dc_field(default_factory=dict)
    timings_ms: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "target_square": self.target_square.to_json(),
            "B": self.bound_B,
            "P1": list(self.P1),
            "P2": list(self.P2),
            "residual_group_size": self.residual_group_size,
            "recovered": self.recovered.to_json(),
            "candidates_tested": self.candidates_tested,
            "char_values": self.char_values,
            "timings_ms": self.timings_ms,
        }


def _normalize_factors(factorization) -> list:
    if isinstance(factorization, Discriminant):
        return list(factorization.factors)
    return [(int(p), int(e)) for p, e in factorization]


def choose_bound(factorization) -> int:
    """B = min(2^omega, max(ell_i | ell_i <= 2^(omega - i))) where omega
    counts every distinct prime of D, the ell_i are the odd ones in
    increasing order, and max of an empty set is +infinity."""
    factors = _normalize_factors(factorization)
    omega = len(factors)
    odd = sorted(p for p, _ in factors if p % 2)
    cap = 2 ** omega
    fitting = [ell for i, ell in enumerate(odd, start=1)
               if ell <= 2 ** (omega - i)]
    if not fitting:
        return cap
    return min(cap, max(fitting))


def _span(basis, D: int) -> list:
    out = [principal_form(D)]
    for g in basis:
        out += [compose(g, s) for s in out]
    return out


def recover_root(ocE: OrientedCurve, ocE2: OrientedCurve, c_squared: QuadForm,
                 D_factorization=None, B="auto", rng=None,
                 use_two_adic: bool = False) -> RootRecovery:
    """Find the class [c] with [c]E = E' among the square roots of c_squared.

    Odd primes ell | D up to B contribute a character value chi_ell([c])
    evaluated on the curve pair; a prime equal to the field characteristic
    cannot be evaluated and is pushed into P2, growing the residual group
    instead of failing.  use_two_adic additionally filters by the assigned
    delta/epsilon characters.
    """
    if rng is None:
        rng = random.Random()
    D = ocE.D
    factors = _normalize_factors(D_factorization) if D_factorization \
        else list(Discriminant(D).factors)
    bound = choose_bound(factors) if B == "auto" else int(B)

    timings: dict = {}
    t0 = time.perf_counter()
    odd_primes = sorted(p for p, _ in factors if p % 2)
    P1, P2 = [], []
    for ell in odd_primes:
        if ell <= bound and ell != ocE.q:
            P1.append(ell)
        else:
            P2.append(ell)

    filter_chars = [Character("chi", ell) for ell in P1]
    if use_two_adic:
        filter_chars += [ch for ch in Discriminant(D).characters()
                         if ch.kind != "chi"]
    values = {}
    for ch in filter_chars:
        values[ch.label] = eval_character(ocE, ocE2, ch, rng).value
    timings["characters_ms"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    basis, root = two_torsion_and_sqrt(D, c_squared)
    if root is None:
        raise ValueError("the target class is not a square in cl(O)")
    two_torsion = _span(basis, D)

    adjusted = None
    for g in two_torsion:
        cand = compose(root, g)
        if all(char_eval_class(ch, cand, D) == values[ch.label]
               for ch in filter_chars):
            adjusted = cand
            break
    if adjusted is None:
        raise RuntimeError("no candidate matched the character filter: "
                           "the pair is not connected by a root of the target")

    G = [g for g in two_torsion
         if all(char_eval_class(ch, g, D) == 1 for ch in filter_chars)]
    assert len(G) <= 2 ** (len(P2) + 1)
    timings["sqrt_ms"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    # twists share a j-invariant when t = 0, so compare full models: one
    # canonical model per F_q-isomorphism class keeps the match unique
    target_model = canonical_model(ocE2.curve)
    matches = []
    candidates = sorted((compose(adjusted, g) for g in G),
                        key=lambda f: (f.a, f.b, f.c))
    for cand in candidates:
        moved = apply_smooth_ideal(ocE, smooth_in_class(ocE, cand))
        if canonical_model(moved.curve) == target_model:
            matches.append(cand)
    timings["verify_ms"] = (time.perf_counter() - t0) * 1000.0

    if not matches:
        raise RuntimeError("no candidate matched: inputs are inconsistent "
                           "with E' = [c]E for a root of the target")
    if len(matches) > 1:
        raise RuntimeError("multiple candidates matched: the action failed "
                           "to separate classes (internal error)")
    return RootRecovery(
        target_square=reduce_form(c_squared),
        bound_B=bound,
        P1=tuple(P1),
        P2=tuple(P2),
        residual_group_size=len(G),
        recovered=matches[0],
        candidates_tested=len(candidates),
        char_values=values,
        timings_ms=timings,
    )
