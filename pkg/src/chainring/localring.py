"""Finite commutative local rings presented as direct sums of cyclic modules
over a Galois subring, and the transformation of polynomial systems over them
into systems over that subring.

The presentation (base ring R0, basis theta_1..theta_gamma, annihilator
exponents, structure constants) is user-supplied input; a helper builds the
one for quotients Z_{p^k}[X]/(f(X), p^t X).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, NotARing, ParseError
from .polys import MultiPoly, PolyRing
from .rings import ChainRing, Ring, RingElement, Zpk, ring_from_json


class LocalRingPresentation(Ring):
    """R = R0*theta_1 + ... + R0*theta_gamma with p^{s_j} R0 = Ann(theta_j).

    Elements are coordinate vectors over R0, coordinate j reduced modulo
    p^{s_j} (the unique representative of Lemma-4.1 type).  Multiplication
    routes through the structure-constants tensor.
    """

    kind = "local"

    def __init__(
        self,
        base: ChainRing,
        ann_exponents: Sequence[int],
        structure_constants,
        unity: Sequence,
        validate: bool = True,
    ):
        self.base = base
        self.gamma_count = len(ann_exponents)
        if self.gamma_count < 1:
            raise DomainError("need at least one basis element")
        self.ann_exponents = tuple(int(s) for s in ann_exponents)
        if any(not (1 <= s <= base.nu) for s in self.ann_exponents):
            raise DomainError("annihilator exponents must lie in [1, nu]")
        g = self.gamma_count
        self.structure = tuple(
            tuple(
                tuple(base.coerce(c) for c in structure_constants[i][j])
                for j in range(g)
            )
            for i in range(g)
        )
        for i in range(g):
            for j in range(g):
                if len(self.structure[i][j]) != g:
                    raise DomainError("structure tensor has wrong shape")
        self.size = 1
        for s in self.ann_exponents:
            self.size *= base.q ** (s * _residue_degree(base))
        self.zero = RingElement(self, (base.zero,) * g)
        self._zero_data = self.zero.data
        self.one = self.element(unity)
        if validate:
            problem = self.first_violation()
            if problem is not None:
                raise NotARing(problem)

    # -- ring protocol --------------------------------------------------------

    def _reduce(self, coords):
        return tuple(
            self.base.reduce_mod_pi_power(c, s)
            for c, s in zip(coords, self.ann_exponents)
        )

    def element(self, coords) -> RingElement:
        coords = [self.base.coerce(c) for c in coords]
        if len(coords) != self.gamma_count:
            raise DomainError(f"expected {self.gamma_count} coordinates")
        return RingElement(self, self._reduce(coords))

    def from_int(self, n: int) -> RingElement:
        return self.mul_scalar(self.base.from_int(n), self.one)

    def add(self, a, b):
        return RingElement(
            self,
            self._reduce([self.base.add(x, y) for x, y in zip(a.data, b.data)]),
        )

    def sub(self, a, b):
        return RingElement(
            self,
            self._reduce([self.base.sub(x, y) for x, y in zip(a.data, b.data)]),
        )

    def neg(self, a):
        return RingElement(self, self._reduce([self.base.neg(x) for x in a.data]))

    def mul(self, a, b):
        base = self.base
        g = self.gamma_count
        out = [base.zero] * g
        for i in range(g):
            if a.data[i].is_zero():
                continue
            for j in range(g):
                if b.data[j].is_zero():
                    continue
                c = base.mul(a.data[i], b.data[j])
                for s in range(g):
                    t = self.structure[i][j][s]
                    if not t.is_zero():
                        out[s] = base.add(out[s], base.mul(c, t))
        return RingElement(self, self._reduce(out))

    def mul_scalar(self, c: RingElement, a: RingElement) -> RingElement:
        c = self.base.coerce(c)
        return RingElement(self, self._reduce([self.base.mul(c, x) for x in a.data]))

    def is_unit(self, a):
        return any(self.mul(a, b) == self.one for b in self.elements())

    def invert(self, a):
        for b in self.elements():
            if self.mul(a, b) == self.one:
                return b
        raise DomainError(f"{a!r} is not a unit")

    def elements(self):
        slots = []
        for s in self.ann_exponents:
            slots.append(
                [x for x in self.base.elements() if self.base.reduce_mod_pi_power(x, s) == x]
            )
        for combo in itertools.product(*slots):
            yield RingElement(self, tuple(combo))

    def sort_key(self, a):
        key = ()
        for x in a.data:
            key += self.base.sort_key(x)
        return key

    def descriptor(self):
        return (
            self.base.descriptor(),
            self.ann_exponents,
            tuple(
                tuple(tuple(c.data for c in row) for row in plane)
                for plane in self.structure
            ),
            tuple(c.data for c in self.one.data),
        )

    def short_name(self):
        return f"Local({self.base.short_name()},g={self.gamma_count})"

    def format_element(self, a):
        parts = []
        for j, c in enumerate(a.data):
            if c.is_zero():
                continue
            cs = self.base.format_element(c)
            name = f"t{j + 1}"
            parts.append(f"{cs}*{name}" if cs != "1" else name)
        return " + ".join(parts) if parts else "0"

    def element_to_json(self, a):
        return [self.base.element_to_json(x) for x in a.data]

    def element_from_json(self, obj):
        if not isinstance(obj, list):
            raise ParseError("local-ring element must be a coordinate list")
        return self.element([self.base.element_from_json(x) for x in obj])

    def to_json(self):
        return {
            "kind": "local",
            "base": self.base.to_json(),
            "gamma": self.gamma_count,
            "ann": list(self.ann_exponents),
            "mul": [
                [[self.base.element_to_json(c) for c in row] for row in plane]
                for plane in self.structure
            ],
            "one": [self.base.element_to_json(c) for c in self.one.data],
        }

    # -- validation -------------------------------------------------------------

    def basis_element(self, j: int) -> RingElement:
        coords = [self.base.zero] * self.gamma_count
        coords[j] = self.base.one
        return RingElement(self, self._reduce(coords))

    def first_violation(self):
        """None if the presentation satisfies the ring axioms, else a message
        naming the first failing triple."""
        g = self.gamma_count
        thetas = [self.basis_element(j) for j in range(g)]
        for i in range(g):
            for j in range(g):
                if self.mul(thetas[i], thetas[j]) != self.mul(thetas[j], thetas[i]):
                    return f"commutativity fails on (theta_{i+1}, theta_{j+1})"
        for i in range(g):
            for j in range(g):
                for l in range(g):
                    lhs = self.mul(self.mul(thetas[i], thetas[j]), thetas[l])
                    rhs = self.mul(thetas[i], self.mul(thetas[j], thetas[l]))
                    if lhs != rhs:
                        return (
                            f"associativity fails on (theta_{i+1}, theta_{j+1},"
                            f" theta_{l+1})"
                        )
        for j in range(g):
            if self.mul(self.one, thetas[j]) != thetas[j]:
                return f"unity does not fix theta_{j+1}"
        # p^{s_j} theta_j = 0 must be consistent with the products
        p_elt = self.base.pi_element
        for i in range(g):
            for j in range(g):
                scaled = self.mul_scalar(
                    self.base.pow(p_elt, self.ann_exponents[j]),
                    self.mul(thetas[i], thetas[j]),
                )
                if not self.is_zero(scaled):
                    return f"p^{self.ann_exponents[j]}*theta_{i+1}*theta_{j+1} != 0"
        return None

    def is_zero(self, u: RingElement) -> bool:
        """Condition (c): p^{nu - s_j} u_j = 0 for every coordinate."""
        base = self.base
        for s, c in zip(self.ann_exponents, u.data):
            if not base.mul(base.pow(base.pi_element, base.nu - s), c).is_zero():
                return False
        return True


def _residue_degree(base: ChainRing) -> int:
    # log_p of the residue field size
    d = 0
    q = base.q
    while q > 1:
        q //= base.p
        d += 1
    return d


def validate_presentation(pres: LocalRingPresentation):
    """Raise NotARing with the failing axiom, or return None when consistent."""
    problem = pres.first_violation()
    if problem is not None:
        raise NotARing(problem)


def quotient_presentation(p: int, k: int, f_coeffs: Sequence[int], t: int) -> LocalRingPresentation:
    """Presentation of Z_{p^k}[X]/(f(X), p^t * X) with theta = X.

    f monic of degree d gives the basis (1, theta, ..., theta^{d-1}) with
    annihilator exponents (k, t, ..., t).
    """
    base = Zpk(p, k)
    f = [base.element(c) for c in f_coeffs]
    if not f or f[-1] != base.one:
        raise DomainError("f must be monic")
    d = len(f) - 1
    if d < 1:
        raise DomainError("f must have degree >= 1")
    from . import _unipoly as up

    g = d
    ann = [k] + [t] * (g - 1)
    # theta^i * theta^j reduced modulo f
    structure = []
    for i in range(g):
        plane = []
        for j in range(g):
            prod = [base.zero] * (i + j) + [base.one]
            _, rem = up.divmod_monic(base, prod, f)
            rem = list(rem) + [base.zero] * (g - len(rem))
            plane.append(rem[:g])
        structure.append(plane)
    unity = [base.one] + [base.zero] * (g - 1)
    return LocalRingPresentation(base, ann, structure, unity)


def presentation_from_json(obj) -> LocalRingPresentation:
    if obj.get("kind") != "local":
        raise ParseError("expected a local-ring descriptor")
    base = ring_from_json(obj["base"])
    if not isinstance(base, ChainRing):
        raise ParseError("local-ring base must be a chain ring")
    ann = obj["ann"]
    mul = [
        [[base.element_from_json(c) for c in row] for row in plane]
        for plane in obj["mul"]
    ]
    one = [base.element_from_json(c) for c in obj["one"]]
    return LocalRingPresentation(base, ann, mul, one)


# -- system expansion and contraction ------------------------------------------


@dataclass(frozen=True)
class ExpandedSystem:
    presentation: LocalRingPresentation
    source_ring: PolyRing
    target_ring: PolyRing
    equations: tuple[MultiPoly, ...]


def expand_system(system: Sequence[MultiPoly]) -> ExpandedSystem:
    """Replace each variable x_i over R by gamma variables x_i_j over R0 and
    split every equation into gamma coordinate equations scaled by
    p^{nu - s_s}; the solution sets correspond exactly."""
    system = list(system)
    if not system:
        raise DomainError("empty system")
    src = system[0].ring
    pres = src.ring
    if not isinstance(pres, LocalRingPresentation):
        raise DomainError("expand_system expects polynomials over a local ring")
    base = pres.base
    g = pres.gamma_count
    names = []
    for v in src.variables:
        for j in range(g):
            names.append(f"{v}_{j + 1}")
    target = PolyRing(base, names, src.order.kind)

    def var_index(i, j):
        return i * g + j

    # symbolic elements of R: vectors of g polynomials over R0
    def vec_add(a, b):
        return [x + y for x, y in zip(a, b)]

    def vec_mul(a, b):
        out = [target.zero] * g
        for i in range(g):
            if a[i].is_zero():
                continue
            for j in range(g):
                if b[j].is_zero():
                    continue
                prod = a[i] * b[j]
                for s in range(g):
                    t = pres.structure[i][j][s]
                    if not t.is_zero():
                        out[s] = out[s] + prod.scale(t)
        return out

    def const_vec(c: RingElement):
        return [target.constant(x) for x in c.data]

    x_vecs = [
        [target.gen(var_index(i, j)) for j in range(g)] for i in range(src.nvars)
    ]
    equations = []
    for f in system:
        total = [target.zero] * g
        for exps, coeff in f.terms:
            term_vec = const_vec(coeff)
            for i, e in enumerate(exps):
                for _ in range(e):
                    term_vec = vec_mul(term_vec, x_vecs[i])
            total = vec_add(total, term_vec)
        for s in range(g):
            mult = base.pow(base.pi_element, base.nu - pres.ann_exponents[s])
            equations.append(total[s].scale(mult))
    return ExpandedSystem(pres, src, target, tuple(equations))


def contract_solutions(expanded: ExpandedSystem, solutions) -> frozenset:
    """Map solutions over R0^{k*gamma} back to R^k, reducing coordinate j
    modulo p^{s_j} and deduplicating."""
    pres = expanded.presentation
    g = pres.gamma_count
    k = expanded.source_ring.nvars
    out = set()
    for sol in solutions:
        point = []
        for i in range(k):
            coords = sol[i * g : (i + 1) * g]
            point.append(pres.element(coords))
        out.add(tuple(point))
    return frozenset(out)


def solve_local_system(system: Sequence[MultiPoly], field_equations: bool = False):
    """Expand to the Galois subring, solve there, contract back; exact."""
    from .solve import solve_system

    expanded = expand_system(system)
    inner = solve_system(list(expanded.equations), field_equations=field_equations)
    return contract_solutions(expanded, inner.explicit())
