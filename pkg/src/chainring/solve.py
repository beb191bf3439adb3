"""Solution sets of polynomial systems over chain rings and PIRs.

Two independent routes: lexicographic elimination with digit-by-digit
univariate lifting (the canonical-generating-system method), and direct
multivariate lifting from the residue field.  They cross-check each other in
the tests.  Product rings split through the CRT and recombine.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import _unipoly as up
from .errors import (
    DomainError,
    ResourceExceeded,
    TooLarge,
    WrongOrder,
    ZeroIdeal,
)
from .groebner import buchberger, minimal_univariate_basis
from .polys import MultiPoly, PolyRing
from .rings import ChainRing, ProductRing, Ring, RingElement


class _AllOfRing:
    """Marker for a coordinate that ranges over the entire ring."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ALL_OF_RING"


ALL_OF_RING = _AllOfRing()

DEFAULT_SOLUTION_CAP = 1 << 16
DESK_SCALE_RING_CAP = 1 << 16


def enumeration_budget() -> int:
    """Brute-force enumeration cap; CHAINRING_BUDGET overrides."""
    try:
        return int(os.environ.get("CHAINRING_BUDGET", ""))
    except ValueError:
        return 1 << 20


@dataclass(frozen=True)
class SolutionSet:
    """Solutions as tuples over the ring, with ALL_OF_RING markers for free
    coordinates; every listed tuple re-verifies against the input system."""

    ring: Ring
    variables: tuple[str, ...]
    solutions: frozenset
    truncated: bool = False
    cap: int = DEFAULT_SOLUTION_CAP

    def count(self) -> int:
        total = 0
        for sol in self.solutions:
            n = 1
            for x in sol:
                if x is ALL_OF_RING:
                    n *= self.ring.size
            total += n
        return total

    def explicit(self) -> frozenset:
        """Fully expanded tuples (cap-guarded)."""
        if self.count() > self.cap:
            raise ResourceExceeded(f"solution set larger than cap {self.cap}")
        out = set()
        elems = None
        for sol in self.solutions:
            slots = []
            for x in sol:
                if x is ALL_OF_RING:
                    if elems is None:
                        elems = list(self.ring.elements())
                    slots.append(elems)
                else:
                    slots.append([x])
            for combo in itertools.product(*slots):
                out.add(tuple(combo))
        return frozenset(out)

    def __contains__(self, point) -> bool:
        point = tuple(self.ring.coerce(x) for x in point)
        for sol in self.solutions:
            if all(s is ALL_OF_RING or s == x for s, x in zip(sol, point)):
                return True
        return False

    def is_everything(self) -> bool:
        return any(all(x is ALL_OF_RING for x in sol) for sol in self.solutions)

    def to_json(self):
        sols = []
        for sol in sorted(
            self.solutions,
            key=lambda s: tuple(
                (0,) if x is ALL_OF_RING else (1,) + self.ring.sort_key(x) for x in s
            ),
        ):
            sols.append(
                ["*" if x is ALL_OF_RING else self.ring.element_to_json(x) for x in sol]
            )
        return {
            "variables": list(self.variables),
            "solutions": sols,
            "truncated": self.truncated,
            "count": self.count() if not self.truncated else None,
        }


# -- the ring's vanishing polynomial F_m --------------------------------------


def _vanishing_product_length(q: int, nu: int) -> int:
    d = 1
    while True:
        total = d
        qj = q
        while qj <= d:
            total += d // qj
            qj *= q
        if total >= nu:
            return d
        d += 1


def vanishing_coefficients(R: ChainRing) -> list[RingElement]:
    """Coefficients (low to high) of the minimal monic F with F(x) = 0 on R.

    F = T(x^q - x) where T(y) = prod_{i<D} (y - b_i), b_i running through the
    pi-adic digit enumeration of pi*R and D the smallest length making every
    value's valuation reach nu.  Matches x^q - x for fields.
    """
    if R._vanishing is not None:
        return list(R._vanishing)
    if R.size > DESK_SCALE_RING_CAP:
        raise TooLarge(f"|R| = {R.size} exceeds the vanishing-polynomial cap")
    gamma = R.teichmuller_set()
    q, nu = R.q, R.nu
    D = _vanishing_product_length(q, nu)
    e_poly = [R.zero] * (q + 1)
    e_poly[1] = R.neg(R.one)
    e_poly[q] = R.add(e_poly[q], R.one)
    result = [R.one]
    for i in range(D):
        digits = []
        ii = i
        while ii:
            digits.append(ii % q)
            ii //= q
        b = R.zero
        for t, dig in enumerate(digits):
            b = R.add(b, R.mul(gamma[dig], R.pow(R.pi_element, t + 1)))
        factor = up.sub(R, e_poly, [b])
        result = up.mul(R, result, factor)
    assert all(up.evaluate(R, result, x).is_zero() for x in R.elements())
    R._vanishing = tuple(result)
    return list(result)


def ring_vanishing_polynomial(
    R: ChainRing, poly_ring: PolyRing | None = None, var: int = 0
) -> MultiPoly:
    """F_m as a polynomial in poly_ring's var (fresh univariate ring if None)."""
    coeffs = vanishing_coefficients(R)
    if poly_ring is None:
        poly_ring = PolyRing(R, ("x",), "lex")
        var = 0
    terms = []
    for d, c in enumerate(coeffs):
        exps = [0] * poly_ring.nvars
        exps[var] = d
        terms.append((tuple(exps), c))
    return poly_ring.poly(terms)


# -- residue-field linear solving ---------------------------------------------


def residue_linear_solutions(
    R: ChainRing, rows: list[list[RingElement]], rhs: list[RingElement]
) -> Iterator[tuple[RingElement, ...]]:
    """All solutions in Γ^k of A z = b over the residue field.

    The inputs are Teichmüller representatives; Gauss-Jordan over Γ.
    """
    m = len(rows)
    k = len(rows[0]) if rows else 0
    aug = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(k):
        pivot = None
        for i in range(r, m):
            if not aug[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = up.residue_inv(R, aug[r][c])
        aug[r] = [R.mul(inv, x) for x in aug[r]]
        for i in range(m):
            if i != r and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [
                    up.residue_sub(R, a, R.mul(f, b)) for a, b in zip(aug[i], aug[r])
                ]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if not aug[i][k].is_zero():
            return  # inconsistent
    free = [c for c in range(k) if c not in pivots]
    gamma = R.teichmuller_set()
    for combo in itertools.product(gamma, repeat=len(free)):
        z = [R.zero] * k
        for c, val in zip(free, combo):
            z[c] = val
        for row_idx, c in enumerate(pivots):
            acc = aug[row_idx][k]
            for fc, val in zip(free, combo):
                acc = up.residue_sub(R, acc, R.mul(aug[row_idx][fc], val))
            z[c] = acc
        yield tuple(z)


# -- univariate solving (canonical generating system route) --------------------


def univariate_roots(polys: Sequence[MultiPoly], var: int | None = None):
    """All roots in R of a univariate system; ALL_OF_RING for the zero ideal."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return ALL_OF_RING
    ring = polys[0].ring
    R: ChainRing = ring.ring
    if var is None:
        used = set()
        for p in polys:
            used |= p.vars_used()
        var = next(iter(used)) if used else ring.order.priority[-1]
    for p in polys:
        if p.is_constant() and not p.is_zero():
            return []
    try:
        ladder = minimal_univariate_basis(polys, var)
    except ZeroIdeal:
        return ALL_OF_RING
    h = ladder.h
    nu = R.nu
    gamma = R.teichmuller_set()
    derivs = [hj.derivative(var) for hj in h]

    def eval_at(g: MultiPoly, x: RingElement) -> RingElement:
        point = [R.zero] * ring.nvars
        point[var] = x
        return g.evaluate(point)

    top = h[nu - 1]
    branches = []
    for g0 in gamma:
        if R.valuation(eval_at(top, g0)) >= 1:
            branches.append([g0])
    for j in range(1, nu):
        hj = h[nu - j - 1]
        dh = derivs[nu - j - 1]
        new_branches = []
        for digits in branches:
            g0 = digits[0]
            prefix = R.pi_adic_compose(digits)
            a = R.teichmuller_digit(eval_at(dh, g0))
            value = eval_at(hj, prefix)
            rhs = R.teichmuller_digit(R.neg(R.pi_adic_digits(value)[j]))
            if a.is_zero():
                if rhs.is_zero():
                    for g in gamma:
                        new_branches.append(digits + [g])
            else:
                sol = R.mul(up.residue_inv(R, a), rhs)
                new_branches.append(digits + [sol])
        branches = new_branches
    roots = []
    for digits in branches:
        c = R.pi_adic_compose(digits)
        if all(eval_at(p, c).is_zero() for p in polys):
            roots.append(c)
    roots.sort(key=R.sort_key)
    return roots


def solve_univariate(polys: Sequence[MultiPoly], var: int | None = None) -> SolutionSet:
    polys = list(polys)
    if not polys:
        raise DomainError("empty system")
    ring = polys[0].ring
    if var is None:
        used = set()
        for p in polys:
            used |= p.vars_used()
        var = next(iter(used)) if used else 0
    roots = univariate_roots(polys, var)
    name = (ring.variables[var],)
    if roots is ALL_OF_RING:
        return SolutionSet(ring.ring, name, frozenset({(ALL_OF_RING,)}))
    return SolutionSet(ring.ring, name, frozenset((r,) for r in roots))


# -- multivariate elimination solver -------------------------------------------


def solve_system(
    polys: Sequence[MultiPoly],
    field_equations: bool = False,
    max_solutions: int = DEFAULT_SOLUTION_CAP,
) -> SolutionSet:
    """Exact solution set via lex Gröbner elimination and back-substitution."""
    polys = list(polys)
    if not polys:
        raise DomainError("empty system")
    ring = polys[0].ring
    if any(p.ring != ring for p in polys):
        raise DomainError("mixed polynomial rings")
    if isinstance(ring.ring, ProductRing):
        return _solve_product(polys, ring, field_equations, max_solutions)
    if ring.order.kind != "lex":
        raise WrongOrder("solve_system requires a lex order")
    R: ChainRing = ring.ring
    original = [p for p in polys if not p.is_zero()]
    work = list(original)
    if field_equations:
        for i in range(ring.nvars):
            work.append(ring_vanishing_polynomial(R, ring, i))
    found: list[tuple] = []
    truncated = [False]

    def emitted_count() -> int:
        total = 0
        for sol in found:
            n = 1
            for x in sol:
                if x is ALL_OF_RING:
                    n *= R.size
            total += n
        return total

    def rec(system: list[MultiPoly], remaining: list[int], assignment: dict):
        if truncated[0]:
            return
        system = [p for p in system if not p.is_zero()]
        for p in system:
            if p.is_constant():
                return  # nonzero constant: dead branch
        if not remaining:
            found.append(_assemble(ring, assignment))
            return
        if not system:
            for v in remaining:
                assignment[v] = ALL_OF_RING
            found.append(_assemble(ring, assignment))
            for v in remaining:
                del assignment[v]
            if emitted_count() > max_solutions:
                truncated[0] = True
            return
        last = remaining[-1]
        if len(remaining) == 1:
            roots = univariate_roots(system, last)
            if roots is ALL_OF_RING:
                assignment[last] = ALL_OF_RING
                found.append(_assemble(ring, assignment))
                del assignment[last]
            else:
                for rt in roots:
                    assignment[last] = rt
                    found.append(_assemble(ring, assignment))
                    del assignment[last]
            if emitted_count() > max_solutions:
                truncated[0] = True
            return
        G = buchberger(system, ring)
        gens = list(G.generators)
        for g in gens:
            if g.is_constant() and not g.is_zero():
                return
        univ = [g for g in gens if g.vars_used() <= {last}]
        if univ:
            roots = univariate_roots(univ, last)
            candidates = list(R.elements()) if roots is ALL_OF_RING else roots
        else:
            candidates = list(R.elements())
        for c in candidates:
            specialized = [g.substitute(last, c) for g in gens]
            assignment[last] = c
            rec(specialized, remaining[:-1], assignment)
            del assignment[last]
            if truncated[0]:
                return

    rec(work, list(ring.order.priority), {})
    solutions = frozenset(found)
    _verify_solutions(ring, original, solutions)
    return SolutionSet(R, ring.variables, solutions, truncated[0], max_solutions)


def _assemble(ring: PolyRing, assignment: dict) -> tuple:
    return tuple(assignment[i] for i in range(ring.nvars))


def _verify_solutions(ring: PolyRing, original: list[MultiPoly], solutions):
    R = ring.ring
    for sol in solutions:
        fixed = [(i, x) for i, x in enumerate(sol) if x is not ALL_OF_RING]
        if len(fixed) == len(sol):
            for p in original:
                assert p.evaluate(list(sol)).is_zero(), "solver emitted a non-solution"
        else:
            for p in original:
                q = p
                for i, x in fixed:
                    q = q.substitute(i, x)
                assert q.is_zero(), "free coordinates must satisfy the system identically"


def _solve_product(polys, ring: PolyRing, field_equations, max_solutions) -> SolutionSet:
    """CRT split, solve per chain component, cartesian recombination.

    A coordinate stays symbolic only when it is free in every component;
    mixed free/fixed coordinates are expanded.
    """
    product: ProductRing = ring.ring
    comp_sets = []
    for idx, comp in enumerate(product.components):
        comp_ring = PolyRing(comp, ring.variables, ring.order)
        comp_polys = [
            comp_ring.poly([(e, c.data[idx]) for e, c in p.terms]) for p in polys
        ]
        comp_sets.append(solve_system(comp_polys, field_equations, max_solutions))
    sols = set()
    truncated = any(s.truncated for s in comp_sets)
    count = 0
    ordered = [
        sorted(s.solutions, key=lambda t: tuple(repr(x) for x in t)) for s in comp_sets
    ]
    for combo in itertools.product(*ordered):
        slots = []
        for coord in range(ring.nvars):
            parts = [sol[coord] for sol in combo]
            if all(p is ALL_OF_RING for p in parts):
                slots.append([ALL_OF_RING])
            elif any(p is ALL_OF_RING for p in parts):
                per_comp = [
                    list(comp.elements()) if p is ALL_OF_RING else [p]
                    for p, comp in zip(parts, product.components)
                ]
                slots.append(
                    [
                        RingElement(product, tuple(vals))
                        for vals in itertools.product(*per_comp)
                    ]
                )
            else:
                slots.append([RingElement(product, tuple(parts))])
        for entry in itertools.product(*slots):
            sols.add(tuple(entry))
            count += 1
            if count > max_solutions:
                truncated = True
                break
        if truncated:
            break
    return SolutionSet(product, ring.variables, frozenset(sols), truncated, max_solutions)


# -- multivariate lifting solver (independent second route) --------------------


def solve_system_lifting(
    polys: Sequence[MultiPoly], max_solutions: int = DEFAULT_SOLUTION_CAP
) -> SolutionSet:
    """Residue-field solutions lifted level by level through the linear
    congruences D f(γ0) z = -γ_j(f(c^[j])); exact and independent of the
    elimination route."""
    polys = list(polys)
    if not polys:
        raise DomainError("empty system")
    ring = polys[0].ring
    if isinstance(ring.ring, ProductRing):
        product = ring.ring
        comp_sets = []
        for idx, comp in enumerate(product.components):
            comp_ring = PolyRing(comp, ring.variables, ring.order)
            comp_polys = [
                comp_ring.poly([(e, c.data[idx]) for e, c in p.terms]) for p in polys
            ]
            comp_sets.append(solve_system_lifting(comp_polys, max_solutions))
        merged = set()
        for combo in itertools.product(*[s.explicit() for s in comp_sets]):
            merged.add(
                tuple(
                    RingElement(product, tuple(sol[c] for sol in combo))
                    for c in range(ring.nvars)
                )
            )
        return SolutionSet(product, ring.variables, frozenset(merged))
    R: ChainRing = ring.ring
    k = ring.nvars
    work = [p for p in polys if not p.is_zero()]
    if not work:
        if R.size**k > enumeration_budget():
            raise ResourceExceeded("zero system over a too-large domain")
        return SolutionSet(
            R, ring.variables, frozenset({(ALL_OF_RING,) * k})
        )
    gamma = R.teichmuller_set()
    if R.q**k > enumeration_budget():
        raise ResourceExceeded("residue enumeration exceeds the budget")

    # an identically-zero projection makes the level-0 congruence vacuous:
    # every Γ^k point seeds the lifting (the ZeroProjection fallback)
    level0 = []
    for combo in itertools.product(gamma, repeat=k):
        if all(R.valuation(p.evaluate(list(combo))) >= 1 for p in work):
            level0.append(combo)

    jac = [[p.derivative(s) for s in range(k)] for p in work]
    solutions = set()
    for g0 in level0:
        rows = [
            [R.teichmuller_digit(jac[i][s].evaluate(list(g0))) for s in range(k)]
            for i in range(len(work))
        ]
        branches = [[list(g0)]]
        for j in range(1, R.nu):
            next_branches = []
            for digit_seq in branches:
                prefix = tuple(
                    R.pi_adic_compose([digit_seq[t][s] for t in range(len(digit_seq))])
                    for s in range(k)
                )
                rhs = [
                    R.teichmuller_digit(
                        R.neg(R.pi_adic_digits(p.evaluate(list(prefix)))[j])
                    )
                    for p in work
                ]
                for z in residue_linear_solutions(R, rows, rhs):
                    next_branches.append(digit_seq + [list(z)])
                    if len(next_branches) > max_solutions:
                        raise ResourceExceeded("lifting branch count exceeds cap")
            branches = next_branches
        for digit_seq in branches:
            c = tuple(
                R.pi_adic_compose([digit_seq[t][s] for t in range(len(digit_seq))])
                for s in range(k)
            )
            if all(p.evaluate(list(c)).is_zero() for p in work):
                solutions.add(c)
    return SolutionSet(R, ring.variables, frozenset(solutions))
