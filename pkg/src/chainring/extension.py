"""Galois extensions S/R of chain rings with Frobenius generator, vector
rank/support over S, matrix representations, and Plücker coordinates.

build_extension constructs S = R[X]/(h) by Hensel-lifting the
coefficient-lex smallest primitive polynomial of the residue field, so h
divides X^{q^m - 1} - 1 and the Frobenius is alpha -> alpha^q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import _unipoly as up
from .errors import DomainError, NotFree, ParseError
from .linalg import RingMatrix, determinant, is_free_rows, rank as matrix_rank, reduced_row_echelon
from .rings import (
    ChainRing,
    ExtensionChainRing,
    ProductRing,
    RingElement,
    ring_from_json,
)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _residue_xgcd(R: ChainRing, f, g):
    """Extended Euclid in Γ[x]: returns (d, a, b) with a*f + b*g = d."""
    r0, r1 = up.trim(f), up.trim(g)
    a0, a1 = [R.one], []
    b0, b1 = [], [R.one]
    while r1:
        q, r = up.residue_divmod(R, r0, r1)
        r0, r1 = r1, r
        qa = up.residue_poly_mul(R, q, a1)
        qb = up.residue_poly_mul(R, q, b1)
        a0, a1 = a1, _residue_poly_sub(R, a0, qa)
        b0, b1 = b1, _residue_poly_sub(R, b0, qb)
    return r0, a0, b0


def _residue_poly_sub(R, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        x = f[i] if i < len(f) else R.zero
        y = g[i] if i < len(g) else R.zero
        out.append(up.residue_sub(R, x, y))
    return up.trim(out)


def _is_primitive(R: ChainRing, g) -> bool:
    """g (monic over Γ, degree m) irreducible with X of order q^m - 1."""
    q = R.q
    m = len(g) - 1
    order = q**m - 1
    x_poly = [R.zero, R.one]
    if up.residue_poly_powmod(R, x_poly, order, g) != [R.one]:
        return False
    for ell in _prime_factors(order):
        if up.residue_poly_powmod(R, x_poly, order // ell, g) == [R.one]:
            return False
    # order q^m - 1 forces irreducibility for degree m: any proper factor
    # would bound the order of X strictly below q^m - 1, except split cases
    # with equal-degree factors; rule those out by an explicit root check.
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(R.teichmuller_set(), repeat=d):
            cand = list(tail) + [R.one]
            if not up.residue_divmod(R, g, cand)[1]:
                return False
    return True


def _hensel_lift_factor(R: ChainRing, g, m: int):
    """Monic h over R with h = g mod pi and h | X^{q^m - 1} - 1 exactly."""
    Q = R.q**m
    F = up.x_power_minus_one(R, Q - 1)
    Fbar = [R.teichmuller_digit(c) for c in F]
    w = up.residue_divmod(R, Fbar, g)[0]
    d, A, B = _residue_xgcd(R, g, w)
    if len(d) != 1:
        raise DomainError("factor and cofactor are not coprime mod pi")
    d_inv = up.residue_inv(R, d[0])
    A = up.scale(R, d_inv, A)
    B = up.scale(R, d_inv, B)
    G, W = list(g), list(w)
    for _ in range(R.nu - 1):
        E = up.sub(R, F, up.mul(R, G, W))
        if not E:
            break
        # delta_G = B*Ebar mod g, delta_W = A*Ebar + w*(B*Ebar div g), all mod pi
        v = min(R.valuation(c) for c in E if not c.is_zero())
        scaled = [R.exact_div_pi_power(c, v) for c in E]
        ebar = [R.teichmuller_digit(c) for c in scaled]
        be = up.residue_poly_mul(R, B, ebar)
        quo, delta_g = up.residue_divmod(R, be, g)
        delta_w = up.residue_poly_add(
            R, up.residue_poly_mul(R, A, ebar), up.residue_poly_mul(R, w, quo)
        )
        pv = R.pow(R.pi_element, v)
        G = up.add(R, G, up.scale(R, pv, delta_g))
        W = up.add(R, W, up.scale(R, pv, delta_w))
    if up.sub(R, F, up.mul(R, G, W)):
        raise DomainError("Hensel lifting failed to converge")
    return G


class GaloisExtension(ExtensionChainRing):
    """S = R[X]/(h) with h | X^{q^m-1} - 1; sigma maps alpha to alpha^q."""

    def __init__(self, base: ChainRing, modulus: Sequence[RingElement]):
        super().__init__(base, modulus)
        Q = self.q  # residue size of S = q_base^m
        _, rem = up.divmod_monic(base, up.x_power_minus_one(base, Q - 1), list(self.modulus_poly))
        if rem:
            raise DomainError("modulus must divide X^(q^m - 1) - 1 over the base")
        m = self.degree
        self._sigma_mats: list[list[tuple[RingElement, ...]]] = []
        mat = []
        for i in range(m):
            power = self.pow(self.alpha, i * base.q)
            mat.append(power.data)
        self._sigma_mats.append(mat)
        for _ in range(1, m):
            prev = self._sigma_mats[-1]
            nxt = []
            for i in range(m):
                # sigma of alpha^i coordinates, one more application
                coords = prev[i]
                img = self.frobenius_from_mat(self._sigma_mats[0], RingElement(self, coords))
                nxt.append(img.data)
            self._sigma_mats.append(nxt)

    def frobenius_from_mat(self, mat, x: RingElement) -> RingElement:
        base = self.base
        m = self.degree
        out = [base.zero] * m
        for i, coeff in enumerate(x.data):
            if coeff.is_zero():
                continue
            for t in range(m):
                out[t] = base.add(out[t], base.mul(coeff, mat[i][t]))
        return RingElement(self, tuple(out))

    def frobenius(self, x: RingElement, l: int = 1) -> RingElement:
        """sigma^l(x); negative l wraps around the cyclic Galois group."""
        l %= self.degree
        if l == 0:
            return x
        return self.frobenius_from_mat(self._sigma_mats[l - 1], x)

    def to_json(self):
        return {
            "base": self.base.to_json(),
            "m": self.degree,
            "modulus": [self.base.element_to_json(c) for c in self.modulus_poly],
        }


def build_extension(base: ChainRing, m: int) -> GaloisExtension:
    """Degree-m Galois extension with the deterministic primitive modulus."""
    if m < 1:
        raise DomainError("extension degree must be >= 1")
    gamma = base.teichmuller_set()
    # coefficient-lex smallest primitive polynomial: minimize
    # (c_{m-1}, ..., c_1, c_0) by canonical representative order
    for high_to_low in itertools.product(gamma, repeat=m):
        tail = list(reversed(high_to_low))
        g = tail + [base.one]
        if _is_primitive(base, g):
            h = _hensel_lift_factor(base, g, m)
            return GaloisExtension(base, h)
    raise DomainError("no primitive polynomial found")


def frobenius_apply(ext: GaloisExtension, x: RingElement, l: int = 1) -> RingElement:
    return ext.frobenius(x, l)


# -- vectors over the extension -------------------------------------------------


def matrix_representation(ext: GaloisExtension, u: Sequence[RingElement]) -> RingMatrix:
    """m x n matrix over R whose column j holds the coordinates of u_j."""
    base = ext.base
    cols = [ext.coerce(x).data for x in u]
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(ext.degree)]
    return RingMatrix(base, rows)


def vector_rank(ext: GaloisExtension, u: Sequence[RingElement]) -> int:
    return matrix_rank(matrix_representation(ext, u))


def vector_support(ext: GaloisExtension, u: Sequence[RingElement]) -> list[RingElement]:
    """Smith-canonical generators of the R-submodule of S spanned by the
    entries of u."""
    rep = matrix_representation(ext, u).transpose()
    gens = reduced_row_echelon(rep)
    return [RingElement(ext, tuple(row)) for row in gens.rows]


@dataclass(frozen=True)
class PluckerCoordinates:
    """r x r minors by column subset, scaled so the first unit minor is 1."""

    r: int
    coords: tuple[tuple[tuple[int, ...], RingElement], ...]

    def as_dict(self):
        return dict(self.coords)

    def __getitem__(self, subset):
        return self.as_dict()[tuple(subset)]

    def values(self):
        return tuple(v for _, v in self.coords)


def plucker_coordinates(B: RingMatrix) -> PluckerCoordinates:
    """All maximal minors of a basis matrix, unit-normalized; NotFree if the
    rows are dependent."""
    if not is_free_rows(B):
        raise NotFree("rows are not linearly independent")
    R = B.ring
    r, n = B.m, B.n
    coords = []
    first_unit = None
    for subset in itertools.combinations(range(n), r):
        minor = determinant(B.submatrix(range(r), subset))
        coords.append((subset, minor))
        if first_unit is None and minor.is_unit():
            first_unit = minor
    if first_unit is None:
        raise NotFree("no unit maximal minor; basis is not free over a chain ring")
    scale = R.invert(first_unit)
    coords = [(s, R.mul(scale, v)) for s, v in coords]
    return PluckerCoordinates(r, tuple(coords))


# -- product extensions (PIR support) --------------------------------------------


class ProductExtension:
    """Componentwise Galois extensions of a product of chain rings."""

    def __init__(self, components: Sequence[GaloisExtension]):
        if not components:
            raise DomainError("need at least one component")
        degrees = {c.degree for c in components}
        if len(degrees) != 1:
            raise DomainError("components must share the extension degree")
        self.components = tuple(components)
        self.degree = components[0].degree
        self.ring = ProductRing([c for c in components])
        self.base_ring = ProductRing([c.base for c in components])

    def frobenius(self, x: RingElement, l: int = 1) -> RingElement:
        parts = [c.frobenius(p, l) for c, p in zip(self.components, x.data)]
        return RingElement(self.ring, tuple(parts))

    def to_json(self):
        return {
            "base": self.base_ring.to_json(),
            "m": self.degree,
            "modulus": [
                [c.base.element_to_json(x) for x in c.modulus_poly]
                for c in self.components
            ],
        }


def extension_from_json(obj):
    """{"base": ring, "m": int, "modulus": coeffs?}; product bases give a
    ProductExtension with per-component moduli."""
    if "base" not in obj or "m" not in obj:
        raise ParseError("extension descriptor needs base and m")
    base = ring_from_json(obj["base"])
    m = int(obj["m"])
    if isinstance(base, ProductRing):
        mods = obj.get("modulus")
        comps = []
        for idx, comp in enumerate(base.components):
            if mods is None:
                comps.append(build_extension(comp, m))
            else:
                comps.append(
                    GaloisExtension(comp, [comp.element_from_json(c) for c in mods[idx]])
                )
        return ProductExtension(comps)
    if not isinstance(base, ChainRing):
        raise ParseError("extension base must be a chain ring or product")
    if obj.get("modulus") is None:
        return build_extension(base, m)
    return GaloisExtension(base, [base.element_from_json(c) for c in obj["modulus"]])
