"""Gröbner bases over finite chain rings via S- and A-polynomials.

Buchberger's loop with the two completeness obligations rings add: for every
pair the S-polynomial, and for every generator the A-polynomial (annihilator
multiple of its head).  Output is fully interreduced with leading
coefficients normalized to pi^val, so golden tests are byte-stable.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DomainError,
    EqualInputs,
    ResourceExceeded,
    WrongOrder,
    ZeroIdeal,
    ZeroPolynomial,
)
from .polys import (
    MultiPoly,
    PolyRing,
    mono_div,
    mono_lcm,
    mono_mul,
    strong_reduce,
)
from .rings import ChainRing


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[MultiPoly, ...]
    ring: PolyRing
    minimal: bool = False

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def reduce(self, f: MultiPoly, full: bool = True) -> MultiPoly:
        return strong_reduce(f, self.generators, full=full)

    def contains(self, f: MultiPoly) -> bool:
        return self.reduce(f).is_zero()


def s_polynomial(g1: MultiPoly, g2: MultiPoly) -> MultiPoly:
    """c1*x^a1*g1 - c2*x^a2*g2 killing the common head lcm exactly."""
    if g1.is_zero() or g2.is_zero():
        raise ZeroPolynomial("S-polynomial of zero polynomial")
    if g1 == g2:
        raise EqualInputs("S-polynomial needs distinct inputs")
    ring = g1.ring
    R = ring.ring
    (e1, c1) = g1.leading_term()
    (e2, c2) = g2.leading_term()
    lcm = mono_lcm(e1, e2)
    l1, l2 = R.valuation(c1), R.valuation(c2)
    l = max(l1, l2)
    # c_i = b_i^{-1} pi^{l-l_i} where lc(g_i) = b_i pi^{l_i}
    k1 = R.mul(R.invert(R.unit_part(c1)), R.pow(R.pi_element, l - l1))
    k2 = R.mul(R.invert(R.unit_part(c2)), R.pow(R.pi_element, l - l2))
    return g1.term_mul(mono_div(lcm, e1), k1) - g2.term_mul(mono_div(lcm, e2), k2)


def a_polynomial(g: MultiPoly) -> MultiPoly:
    """pi^(nu - val(lc(g))) * g; annihilates the leading term."""
    if g.is_zero():
        raise ZeroPolynomial("A-polynomial of zero polynomial")
    R = g.ring.ring
    a = R.pow(R.pi_element, R.nu - R.valuation(g.leading_coefficient()))
    return g.scale(a)


def _normalize_head(g: MultiPoly) -> MultiPoly:
    """Scale by a unit so the leading coefficient becomes pi^val."""
    R = g.ring.ring
    if g.is_zero():
        return g
    return g.scale(R.invert(R.unit_part(g.leading_coefficient())))


def interreduce(polys: Iterable[MultiPoly], ring: PolyRing) -> tuple[MultiPoly, ...]:
    """Canonical form: heads normalized, every element fully reduced by the
    others, sorted by (leading monomial desc, valuation asc)."""
    R = ring.ring
    current = [_normalize_head(p) for p in polys if not p.is_zero()]
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        if rounds > 1000:
            raise ResourceExceeded("interreduction did not stabilize")
        current.sort(key=lambda f: (ring.order.key(f.leading_monomial()), -R.valuation(f.leading_coefficient())))
        nxt: list[MultiPoly] = []
        for i, f in enumerate(current):
            others = current[:i] + current[i + 1 :]
            h = strong_reduce(f, others, full=True)
            if h.is_zero():
                changed = True
                current = others
                break
            h = _normalize_head(h)
            if h != f:
                changed = True
                current = others[:i] + [h] + others[i:]
                break
            nxt.append(f)
        else:
            current = nxt
    # descending lm; among equal lm the smaller valuation first
    current.sort(
        key=lambda f: (ring.order.key(f.leading_monomial()), -R.valuation(f.leading_coefficient())),
        reverse=True,
    )
    return tuple(current)


_MAX_PAIRS = 200_000


def buchberger(
    polys: Sequence[MultiPoly],
    ring: PolyRing | None = None,
    use_criteria: bool = False,
    max_steps: int = _MAX_PAIRS,
) -> GroebnerBasis:
    """Gröbner basis of the ideal generated by polys, interreduced.

    The pending queue holds both S-pairs and A-polynomials, processed in
    normal-selection order (minimal lcm).  use_criteria enables the coprime
    product criterion, applied only when both heads have unit coefficients
    (the coefficient-blind field version is unsound over rings).
    """
    if ring is None:
        if not polys:
            raise DomainError("cannot infer the polynomial ring from an empty list")
        ring = polys[0].ring
    R = ring.ring
    if not isinstance(R, ChainRing):
        raise DomainError("Gröbner bases require a chain ring; split PIRs first")

    basis: list[MultiPoly] = []
    queue: list = []  # (order key of lcm, tiebreak, payload)
    counter = 0

    def push_pairs(new_index: int):
        nonlocal counter
        g = basis[new_index]
        eg = g.leading_monomial()
        for j in range(new_index):
            h = basis[j]
            eh = h.leading_monomial()
            lcm = mono_lcm(eg, eh)
            if use_criteria and lcm == mono_mul(eg, eh):
                cg = R.valuation(g.leading_coefficient())
                ch = R.valuation(h.leading_coefficient())
                if cg == 0 and ch == 0:
                    continue  # coprime monic heads: Spoly reduces to 0
            heapq.heappush(queue, (ring.order.key(lcm), counter, ("s", j, new_index)))
            counter += 1
        heapq.heappush(queue, (ring.order.key(eg), counter, ("a", new_index, -1)))
        counter += 1

    for f in polys:
        if f.is_zero():
            continue
        h = strong_reduce(f, basis)
        if not h.is_zero():
            basis.append(h)
            push_pairs(len(basis) - 1)

    if not basis:
        return GroebnerBasis((), ring, minimal=True)

    steps = 0
    while queue:
        steps += 1
        if steps > max_steps:
            raise ResourceExceeded(
                f"buchberger exceeded {max_steps} pair reductions", tuple(basis)
            )
        _, _, (kind, i, j) = heapq.heappop(queue)
        if kind == "s":
            candidate = s_polynomial(basis[i], basis[j])
        else:
            candidate = a_polynomial(basis[i])
        if candidate.is_zero():
            continue
        h = strong_reduce(candidate, basis)
        if h.is_zero():
            continue
        basis.append(h)
        push_pairs(len(basis) - 1)

    generators = interreduce(basis, ring)
    return GroebnerBasis(generators, ring, minimal=True)


def verify_groebner(G: GroebnerBasis) -> bool:
    """Check the two characterization conditions directly."""
    gens = [g for g in G.generators if not g.is_zero()]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not strong_reduce(s_polynomial(gens[i], gens[j]), gens).is_zero():
                return False
    for g in gens:
        apoly = a_polynomial(g)
        if not apoly.is_zero() and not strong_reduce(apoly, gens).is_zero():
            return False
    return True


def elimination_subbasis(G: GroebnerBasis, keep_from: int) -> GroebnerBasis:
    """Members involving only the variables of priority index >= keep_from.

    Requires a lex basis; the result is a Gröbner basis of the elimination
    ideal in those variables.
    """
    if G.ring.order.kind != "lex":
        raise WrongOrder("elimination requires a lexicographic basis")
    keep = set(G.ring.order.priority[keep_from:])
    members = tuple(g for g in G.generators if g.vars_used() <= keep)
    return GroebnerBasis(members, G.ring, minimal=G.minimal)


@dataclass(frozen=True)
class UnivariateLadder:
    """Minimal univariate basis {pi^{a_i} g_i} plus the derived h_j sequence.

    levels[i] = (a_i, g_i) with a_0 < ... < a_s, g_i monic, degrees strictly
    decreasing.  h[j] = g_i for a_i <= j < a_{i+1} (a_{s+1} = nu).
    """

    levels: tuple[tuple[int, MultiPoly], ...]
    h: tuple[MultiPoly, ...]
    ring: PolyRing
    var: int

    def members(self) -> tuple[MultiPoly, ...]:
        R = self.ring.ring
        return tuple(
            g.scale(R.pow(R.pi_element, a)) for a, g in self.levels
        )


def minimal_univariate_basis(
    polys: Sequence[MultiPoly], var: int | None = None
) -> UnivariateLadder:
    """Canonical ladder for a univariate system over a chain ring.

    Normalizes a_0 = 0 by adjoining the ring's vanishing polynomial when the
    ideal has no unit-valuation member (solution-set preserving).
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ZeroIdeal("the zero ideal: every ring element is a solution")
    ring = polys[0].ring
    R = ring.ring
    used = set()
    for p in polys:
        used |= p.vars_used()
    if var is None:
        var = next(iter(used)) if used else ring.order.priority[-1]
    if not used <= {var}:
        raise DomainError("system is not univariate")

    G = buchberger(polys, ring)
    gens = list(G.generators)
    if not gens:
        raise ZeroIdeal("the zero ideal: every ring element is a solution")

    vals = [R.valuation(g.leading_coefficient()) for g in gens]
    if min(vals) > 0:
        from .solve import ring_vanishing_polynomial

        fm = ring_vanishing_polynomial(R, ring, var)
        G = buchberger(gens + [fm], ring)
        gens = list(G.generators)

    # canonical interreduced univariate GB: degrees strictly decreasing,
    # valuations strictly increasing (heads pairwise non-divisible)
    gens.sort(key=lambda g: g.degree_in(var), reverse=True)
    levels = []
    h: list[MultiPoly | None] = [None] * R.nu
    for g in gens:
        a = R.valuation(g.leading_coefficient())
        monic = g.scale(R.invert(R.unit_part(g.leading_coefficient())))
        monic = _exact_poly_div_pi(monic, a)
        levels.append((a, monic))
    levels.sort(key=lambda t: t[0])
    for idx, (a, g) in enumerate(levels):
        upper = levels[idx + 1][0] if idx + 1 < len(levels) else R.nu
        for j in range(a, upper):
            h[j] = g
    if any(x is None for x in h):
        raise ZeroIdeal("no member at level 0 even after normalization")
    return UnivariateLadder(tuple(levels), tuple(h), ring, var)


def _exact_poly_div_pi(g: MultiPoly, l: int) -> MultiPoly:
    """Divide every coefficient by pi^l exactly (minimal-lex quotients)."""
    if l == 0:
        return g
    R = g.ring.ring
    return g.ring.poly([(e, R.exact_div_pi_power(c, l)) for e, c in g.terms])


def ladder_properties_hold(ladder: UnivariateLadder) -> bool:
    """Conditions (i)-(iv) of the minimal-basis characterization."""
    R = ladder.ring.ring
    var = ladder.var
    levels = ladder.levels
    a_vals = [a for a, _ in levels]
    if a_vals != sorted(set(a_vals)) or (a_vals and not (0 <= a_vals[0] <= R.nu - 1)):
        return False
    degs = [g.degree_in(var) for _, g in levels]
    if any(degs[i] <= degs[i + 1] for i in range(len(degs) - 1)):
        return False
    for _, g in levels:
        if g.is_zero() or not g.leading_coefficient().is_unit():
            return False
    # (iv): pi^{a_{i+1}} g_i lies in the ideal of the higher levels
    for i in range(len(levels) - 1):
        a_next = levels[i + 1][0]
        member = levels[i][1].scale(R.pow(R.pi_element, a_next))
        tail = [g.scale(R.pow(R.pi_element, a)) for a, g in levels[i + 1 :]]
        Gtail = buchberger(tail, ladder.ring)
        if not Gtail.contains(member):
            return False
    return True
