"""Rank-metric decoding over Galois extensions of finite PIRs.

Four solver routes, all re-verified against the rank bound: the skew
key-equation solved by linearization (Hermite form) or by Gröbner expansion
over the base ring, the Support-Minors modeling with Plücker variables, and
the reduction to MinRank.  Product extensions split through the CRT.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DomainError,
    Inconclusive,
    MultipleSolutions,
    NoSolution,
    ParseError,
    ResourceExceeded,
)
from .extension import (
    GaloisExtension,
    ProductExtension,
    extension_from_json,
    matrix_representation,
    vector_rank,
)
from .groebner import buchberger, elimination_subbasis
from .linalg import RingMatrix, hermite_form
from .minrank import MinRankInstance, solve_minrank
from .polys import MultiPoly, PolyRing
from .rings import RingElement
from .solve import enumeration_budget, ring_vanishing_polynomial, solve_system

FIELD_EQUATION_RING_CAP = 512


@dataclass(frozen=True)
class RankDecodingInstance:
    """Find c = xG with rank(y - c) <= r over the extension S of R."""

    ext: GaloisExtension | ProductExtension
    generator: tuple[tuple[RingElement, ...], ...]
    received: tuple[RingElement, ...]
    radius: int

    def __post_init__(self):
        S = self._ring()
        if not self.generator or not self.received:
            raise DomainError("empty generator or received word")
        n = len(self.received)
        if any(len(row) != n for row in self.generator):
            raise DomainError("generator width must match the received word")
        if self.radius < 0:
            raise DomainError("radius must be >= 0")

    def _ring(self):
        return self.ext.ring if isinstance(self.ext, ProductExtension) else self.ext

    @property
    def k(self) -> int:
        return len(self.generator)

    @property
    def n(self) -> int:
        return len(self.received)

    def codeword(self, x: Sequence[RingElement]) -> tuple[RingElement, ...]:
        S = self._ring()
        x = [S.coerce(v) for v in x]
        return tuple(
            S.sum(S.mul(x[i], self.generator[i][j]) for i in range(self.k))
            for j in range(self.n)
        )

    def error_of(self, x: Sequence[RingElement]) -> tuple[RingElement, ...]:
        S = self._ring()
        c = self.codeword(x)
        return tuple(S.sub(yj, cj) for yj, cj in zip(self.received, c))

    def check(self, x: Sequence[RingElement]) -> bool:
        e = self.error_of(x)
        if isinstance(self.ext, ProductExtension):
            return all(
                vector_rank(comp, tuple(v.data[idx] for v in e)) <= self.radius
                for idx, comp in enumerate(self.ext.components)
            )
        return vector_rank(self.ext, e) <= self.radius

    def to_json(self):
        S = self._ring()
        return {
            "extension": self.ext.to_json(),
            "generator": [[S.element_to_json(v) for v in row] for row in self.generator],
            "received": [S.element_to_json(v) for v in self.received],
            "radius": self.radius,
        }

    @classmethod
    def from_json(cls, obj) -> "RankDecodingInstance":
        ext = extension_from_json(obj["extension"])
        S = ext.ring if isinstance(ext, ProductExtension) else ext
        gen = tuple(
            tuple(S.element_from_json(v) for v in row) for row in obj["generator"]
        )
        rec = tuple(S.element_from_json(v) for v in obj["received"])
        if "radius" not in obj:
            raise ParseError("instance needs the radius")
        return cls(ext, gen, rec, int(obj["radius"]))


# -- reduction to MinRank ---------------------------------------------------------


def to_minrank(rd: RankDecodingInstance) -> MinRankInstance:
    """M0 = rep(-y), M_(i,u) = rep(alpha^u * g_i); x-coordinates recombine as
    x_i = sum_u x_(i,u) alpha^u."""
    ext = rd.ext
    if isinstance(ext, ProductExtension):
        raise DomainError("split product instances before the MinRank reduction")
    S = ext
    base = S.base
    m = S.degree
    mats = []
    for i in range(rd.k):
        for u in range(m):
            scaled = tuple(S.mul(S.pow(S.alpha, u), g) for g in rd.generator[i])
            mats.append(matrix_representation(S, scaled))
    neg_y = tuple(S.neg(v) for v in rd.received)
    m0 = matrix_representation(S, neg_y)
    return MinRankInstance(base, tuple(mats), max(rd.radius, 0), m0)


def minrank_x_to_codeword_x(
    rd: RankDecodingInstance, x_flat: Sequence[RingElement]
) -> tuple[RingElement, ...]:
    S = rd.ext
    m = S.degree
    out = []
    for i in range(rd.k):
        coords = x_flat[i * m : (i + 1) * m]
        acc = S.zero
        for u, c in enumerate(coords):
            acc = S.add(acc, S.scalar_mul(c, S.pow(S.alpha, u)))
        out.append(acc)
    return tuple(out)


# -- shared expansion helpers ------------------------------------------------------


def _x_names(k: int, m: int) -> list[str]:
    if k == 1:
        return [f"x{u}" for u in range(m)]
    return [f"x{i + 1}_{u}" for i in range(k) for u in range(m)]


def _z_tilde_names(r: int, m: int) -> list[str]:
    if r == 1:
        return [f"t{v}" for v in range(m)]
    return [f"z{l}_{v}" for l in range(r) for v in range(m)]


def expand_to_base(poly: MultiPoly, target: PolyRing) -> list[MultiPoly]:
    """Coordinate polynomials of an S-coefficient polynomial whose variables
    are R-valued, in the alpha basis."""
    ext: GaloisExtension = poly.ring.ring
    m = ext.degree
    coords = [[] for _ in range(m)]
    for exps, coeff in poly.terms:
        for t in range(m):
            c = coeff.data[t]
            if not c.is_zero():
                coords[t].append((exps, c))
    return [target.poly(terms) for terms in coords]


# -- Support-Minors modeling -------------------------------------------------------


@dataclass(frozen=True)
class SMRDModel:
    s_ring: PolyRing
    s_equations: tuple[MultiPoly, ...]
    r_ring: PolyRing
    r_equations: tuple[MultiPoly, ...]
    subsets: tuple[tuple[int, ...], ...]
    z_vars: tuple[int, ...]
    x_vars: tuple[int, ...]
    unit_subset: tuple[int, ...] | None


def sm_rd_model(
    rd: RankDecodingInstance, unit_subset: Sequence[int] | None = None
) -> SMRDModel:
    """Alternating relations between (xG - y) entries and Plücker variables,
    expanded over R in the alpha basis.

    The z_J are single R-valued unknowns; x_i splits into m coordinates.
    With unit_subset = J the coordinate z_J is normalized to 1 (the unit
    case split; Plücker coordinates are unique up to a unit factor).
    """
    if isinstance(rd.ext, ProductExtension):
        raise DomainError("split product instances before modeling")
    S: GaloisExtension = rd.ext
    base = S.base
    m = S.degree
    r = rd.radius
    n = rd.n
    k = rd.k
    subsets = tuple(itertools.combinations(range(n), r))
    z_names = ["z" + "_".join(str(j + 1) for j in s) if s else "z0" for s in subsets]
    x_names = _x_names(k, m)
    names = z_names + x_names
    s_ring = PolyRing(S, names, "lex")
    r_ring = PolyRing(base, names, "lex")
    z_vars = tuple(range(len(subsets)))
    x_vars = tuple(range(len(subsets), len(names)))
    z_index = {s: i for i, s in enumerate(subsets)}
    unit_idx = None
    if unit_subset is not None:
        unit_idx = z_index[tuple(unit_subset)]

    def zvar_poly(subset):
        idx = z_index[subset]
        if idx == unit_idx:
            return s_ring.one
        return s_ring.gen(idx)

    # (xG - y)_j as an S-coefficient polynomial in the x-coordinates
    alpha_pows = [S.pow(S.alpha, u) for u in range(m)]
    xg_minus_y = []
    for j in range(n):
        acc = s_ring.constant(S.neg(rd.received[j]))
        for i in range(k):
            gij = rd.generator[i][j]
            for u in range(m):
                c = S.mul(alpha_pows[u], gij)
                if not c.is_zero():
                    acc = acc + s_ring.gen(x_vars[i * m + u]).scale(c)
        xg_minus_y.append(acc)

    s_equations = []
    for bigset in itertools.combinations(range(n), r + 1):
        eq = s_ring.zero
        for s_pos, j in enumerate(bigset):
            rest = tuple(c for c in bigset if c != j)
            term = xg_minus_y[j] * zvar_poly(rest)
            eq = eq + (term if s_pos % 2 == 0 else -term)
        s_equations.append(eq)
    r_equations = []
    for eq in s_equations:
        r_equations.extend(expand_to_base(eq, r_ring))
    return SMRDModel(
        s_ring,
        tuple(s_equations),
        r_ring,
        tuple(r_equations),
        subsets,
        z_vars,
        x_vars,
        tuple(unit_subset) if unit_subset is not None else None,
    )


def solve_sm_rd(
    rd: RankDecodingInstance, field_equations: bool | None = None
) -> list[tuple[RingElement, ...]]:
    """All x recovered from the SM model, one unit-z_J case at a time."""
    S: GaloisExtension = rd.ext
    base = S.base
    use_fm = (
        base.size <= FIELD_EQUATION_RING_CAP if field_equations is None else field_equations
    )
    found = {}
    for subset in itertools.combinations(range(rd.n), rd.radius):
        model = sm_rd_model(rd, subset)
        for x_flat in _x_block_solutions(
            model.r_ring, model.r_equations, model.x_vars, use_fm
        ):
            x = _coords_to_x(rd, x_flat)
            key = tuple(S.sort_key(v) for v in x)
            if key not in found and rd.check(x):
                found[key] = x
    return [found[k] for k in sorted(found)]


def _coords_to_x(rd: RankDecodingInstance, x_flat) -> tuple[RingElement, ...]:
    S = rd.ext
    m = S.degree
    out = []
    for i in range(rd.k):
        acc = S.zero
        for u in range(m):
            acc = S.add(acc, S.scalar_mul(x_flat[i * m + u], S.pow(S.alpha, u)))
        out.append(acc)
    return tuple(out)


def _x_block_solutions(r_ring: PolyRing, equations, x_vars, use_fm: bool):
    """Exact solutions of the x-only elimination subsystem (explicit tuples)."""
    base = r_ring.ring
    work = list(equations)
    if use_fm:
        for v in range(r_ring.nvars):
            work.append(ring_vanishing_polynomial(base, r_ring, v))
    work = [w for w in work if not w.is_zero()]
    if any(w.is_constant() for w in work):
        return []
    G = buchberger(work, r_ring)
    sub = elimination_subbasis(G, r_ring.nvars - len(x_vars))
    x_ring = PolyRing(base, [r_ring.variables[v] for v in x_vars], "lex")
    var_map = {v: i for i, v in enumerate(x_vars)}
    polys = [
        g.map_to(x_ring, [var_map.get(i, 0) for i in range(r_ring.nvars)])
        for g in sub.generators
    ]
    if not polys:
        if base.size ** len(x_vars) > enumeration_budget():
            raise ResourceExceeded("unconstrained x block exceeds the budget")
        return [
            tuple(c)
            for c in itertools.product(list(base.elements()), repeat=len(x_vars))
        ]
    return [tuple(s) for s in solve_system(polys).explicit()]


# -- skew key equation --------------------------------------------------------------


@dataclass(frozen=True)
class KeyEquationSystem:
    """sum_l z_l sigma^l(y) = sum_l z_l sigma^l(xG) with z_r = 1, plus its
    R-expansion (x~ (x) z~) A + x~ B + z~ C + D = 0 in the Kronecker layout
    x~ = (x_{1,1}..x_{k,m}), z~ = (z_{0,1}..z_{r-1,m})."""

    rd: RankDecodingInstance
    s_ring: PolyRing
    s_equations: tuple[MultiPoly, ...]
    r_ring: PolyRing
    r_equations: tuple[MultiPoly, ...]
    z_vars: tuple[int, ...]
    x_vars: tuple[int, ...]
    a: RingMatrix
    b: RingMatrix
    c: RingMatrix
    d: RingMatrix


def key_equation_model(rd: RankDecodingInstance) -> KeyEquationSystem:
    if isinstance(rd.ext, ProductExtension):
        raise DomainError("split product instances before modeling")
    S: GaloisExtension = rd.ext
    base = S.base
    m = S.degree
    r = rd.radius
    n = rd.n
    k = rd.k
    z_names = _z_tilde_names(r, m)
    x_names = _x_names(k, m)
    names = z_names + x_names
    s_ring = PolyRing(S, names, "lex")
    r_ring = PolyRing(base, names, "lex")
    z_vars = tuple(range(len(z_names)))
    x_vars = tuple(range(len(z_names), len(names)))
    alpha_pows = [S.pow(S.alpha, u) for u in range(m)]

    def sigma_x_poly(i: int, l: int):
        """sigma^l(x_i) as an S-linear combination of the x coordinates."""
        acc = s_ring.zero
        for u in range(m):
            acc = acc + s_ring.gen(x_vars[i * m + u]).scale(S.frobenius(alpha_pows[u], l))
        return acc

    def z_poly(l: int):
        if l == r:
            return s_ring.one
        acc = s_ring.zero
        for v in range(m):
            acc = acc + s_ring.gen(z_vars[l * m + v]).scale(alpha_pows[v])
        return acc

    s_equations = []
    for j in range(n):
        eq = s_ring.zero
        for l in range(r + 1):
            inner = s_ring.constant(S.neg(S.frobenius(rd.received[j], l)))
            for i in range(k):
                gl = S.frobenius(rd.generator[i][j], l)
                if not gl.is_zero():
                    inner = inner + sigma_x_poly(i, l).scale(gl)
            eq = eq + z_poly(l) * inner
        s_equations.append(eq)
    r_equations = []
    for eq in s_equations:
        r_equations.extend(expand_to_base(eq, r_ring))

    # coefficient matrices of the expansion, mn columns
    km, rm = k * m, r * m
    cols = n * m
    a_rows = [[base.zero] * cols for _ in range(km * rm)]
    b_rows = [[base.zero] * cols for _ in range(km)]
    c_rows = [[base.zero] * cols for _ in range(rm)]
    d_row = [base.zero] * cols
    for e_idx, eq in enumerate(r_equations):
        for exps, coeff in eq.terms:
            zs = [(i, exps[v]) for i, v in enumerate(z_vars) if exps[v]]
            xs = [(i, exps[v]) for i, v in enumerate(x_vars) if exps[v]]
            deg = sum(e for _, e in zs) + sum(e for _, e in xs)
            if deg == 0:
                d_row[e_idx] = base.add(d_row[e_idx], coeff)
            elif deg == 1 and xs:
                b_rows[xs[0][0]][e_idx] = base.add(b_rows[xs[0][0]][e_idx], coeff)
            elif deg == 1 and zs:
                c_rows[zs[0][0]][e_idx] = base.add(c_rows[zs[0][0]][e_idx], coeff)
            elif deg == 2 and len(xs) == 1 and len(zs) == 1:
                row = xs[0][0] * rm + zs[0][0]
                a_rows[row][e_idx] = base.add(a_rows[row][e_idx], coeff)
            else:
                raise DomainError("key equation expansion is not bilinear")
    return KeyEquationSystem(
        rd,
        s_ring,
        tuple(s_equations),
        r_ring,
        tuple(r_equations),
        z_vars,
        x_vars,
        RingMatrix(base, a_rows) if a_rows else RingMatrix.zeros(base, 0, cols),
        RingMatrix(base, b_rows),
        RingMatrix(base, c_rows) if c_rows else RingMatrix.zeros(base, 0, cols),
        RingMatrix(base, [d_row]),
    )


def linearization_matrix(rd: RankDecodingInstance) -> RingMatrix:
    """Columns -sigma^0(y^T) .. -sigma^(r-1)(y^T) | sigma^0(G^T) ..
    sigma^r(G^T) | -sigma^r(y^T), one row per code position."""
    S: GaloisExtension = rd.ext
    r = rd.radius
    cols: list[tuple[RingElement, ...]] = []
    for l in range(r):
        cols.append(tuple(S.neg(S.frobenius(v, l)) for v in rd.received))
    for l in range(r + 1):
        for i in range(rd.k):
            cols.append(tuple(S.frobenius(v, l) for v in rd.generator[i]))
    cols.append(tuple(S.neg(S.frobenius(v, r)) for v in rd.received))
    rows = [[cols[c][j] for c in range(len(cols))] for j in range(rd.n)]
    return RingMatrix(S, rows)


def solve_key_linearization(rd: RankDecodingInstance) -> tuple[RingElement, ...]:
    """Hermite-form shortcut: when T ends in a block (I_k | b), the solution
    is x = -sigma^(-r)(b^T).  Raises Inconclusive when the shape is absent."""
    S: GaloisExtension = rd.ext
    r = rd.radius
    k = rd.k
    A = linearization_matrix(rd)
    T = hermite_form(A).t
    top = r * (k + 1)
    width = (k + 1) * (r + 1)
    if A.n != width or T.m < top + k:
        raise Inconclusive("not enough rows for the block shape")
    ident = RingMatrix.identity(S, k)
    for i in range(k):
        row = T.rows[top + i]
        if any(not v.is_zero() for v in row[:top]):
            raise Inconclusive("T3 block not isolated")
        for j in range(k):
            if row[top + j] != ident.rows[i][j]:
                raise Inconclusive("T3 block is not (I | b)")
    for i in range(top + k, T.m):
        if any(not v.is_zero() for v in T.rows[i]):
            raise Inconclusive("nonzero rows below the block")
    b = [T.rows[top + i][width - 1] for i in range(k)]
    x = tuple(S.neg(S.frobenius(v, -r)) for v in b)
    if not rd.check(x):
        raise Inconclusive("linearization candidate fails the rank bound")
    return x


def solve_key_groebner(
    rd: RankDecodingInstance, field_equations: bool = False
) -> tuple[RingElement, ...]:
    """Gröbner basis of the R-expansion under lex z~ > x~; the x-part of the
    elimination ideal pins x.  MultipleSolutions carries the verified set when
    the instance is ambiguous; NoSolution when the (complete) search is empty."""
    model = key_equation_model(rd)
    S: GaloisExtension = rd.ext
    candidates = _x_block_solutions(
        model.r_ring, model.r_equations, model.x_vars, field_equations
    )
    verified = {}
    for x_flat in candidates:
        x = _coords_to_x(rd, x_flat)
        key = tuple(S.sort_key(v) for v in x)
        if key not in verified and rd.check(x):
            verified[key] = x
    solutions = [verified[k] for k in sorted(verified)]
    if not solutions:
        raise NoSolution("no x satisfies the key equation within the rank bound")
    if len(solutions) > 1:
        raise MultipleSolutions("instance is ambiguous", solutions)
    return solutions[0]


# -- the decoding pipeline ------------------------------------------------------------


@dataclass(frozen=True)
class DecodeResult:
    solutions: tuple  # tuples (x, c, e), every one rank-verified
    strategy_used: str

    @property
    def unique(self) -> bool:
        return len(self.solutions) == 1

    @property
    def x(self):
        return self.solutions[0][0]

    @property
    def c(self):
        return self.solutions[0][1]

    @property
    def e(self):
        return self.solutions[0][2]


_AUTO_ORDER = ("linearization", "sm", "groebner", "minrank-ks")


def decode(rd: RankDecodingInstance, strategy: str = "auto") -> DecodeResult:
    """Decoding pipeline: CRT split, per-component strategy chain
    (linearization, Support-Minors, Gröbner expansion, MinRank-KS), exact
    recombination; NoSolution only after brute-force confirmation."""
    if isinstance(rd.ext, ProductExtension):
        return _decode_product(rd, strategy)
    order = _AUTO_ORDER if strategy == "auto" else (strategy,)
    last_error: Exception | None = None
    for strat in order:
        try:
            xs = _decode_single_strategy(rd, strat)
        except (Inconclusive, ResourceExceeded) as exc:
            last_error = exc
            continue
        except NoSolution:
            xs = []
        if xs:
            sols = tuple((x, rd.codeword(x), rd.error_of(x)) for x in xs)
            return DecodeResult(sols, strat)
        # an empty but complete search certifies emptiness; confirm by brute
        # force within the budget before giving up
        if strat in ("sm", "groebner", "minrank-ks"):
            _confirm_empty(rd)
            raise NoSolution("no codeword within the radius (brute-confirmed)")
    if last_error is not None:
        raise Inconclusive(f"all strategies inconclusive: {last_error}")
    _confirm_empty(rd)
    raise NoSolution("no codeword within the radius (brute-confirmed)")


def _decode_single_strategy(rd: RankDecodingInstance, strat: str):
    S = rd.ext
    if strat == "linearization":
        return [solve_key_linearization(rd)]
    if strat == "sm":
        return solve_sm_rd(rd)
    if strat == "groebner":
        try:
            return [solve_key_groebner(rd)]
        except MultipleSolutions as exc:
            return list(exc.solutions)
    if strat == "minrank-ks":
        inst = to_minrank(rd)
        xs = []
        seen = set()
        for flat in solve_minrank(inst, "ks"):
            x = minrank_x_to_codeword_x(rd, flat)
            key = tuple(S.sort_key(v) for v in x)
            if key not in seen and rd.check(x):
                seen.add(key)
                xs.append(x)
        return xs
    raise DomainError(f"unknown strategy {strat!r}")


def _confirm_empty(rd: RankDecodingInstance):
    S = rd.ext
    if S.size**rd.k > enumeration_budget():
        raise ResourceExceeded("cannot brute-confirm emptiness within the budget")
    for combo in itertools.product(list(S.elements()), repeat=rd.k):
        if rd.check(combo):
            raise Inconclusive(
                "strategies missed an existing solution; instance kept for analysis"
            )


def _decode_product(rd: RankDecodingInstance, strategy: str) -> DecodeResult:
    ext: ProductExtension = rd.ext
    ring = ext.ring
    results = []
    for idx, comp in enumerate(ext.components):
        gen = tuple(
            tuple(v.data[idx] for v in row) for row in rd.generator
        )
        rec = tuple(v.data[idx] for v in rd.received)
        sub = RankDecodingInstance(comp, gen, rec, rd.radius)
        results.append(decode(sub, strategy))
    combined = []
    for combo in itertools.product(*[res.solutions for res in results]):
        x = tuple(
            RingElement(ring, tuple(sol[0][i] for sol in combo))
            for i in range(rd.k)
        )
        combined.append((x, rd.codeword(x), rd.error_of(x)))
    strategies = ",".join(sorted({res.strategy_used for res in results}))
    return DecodeResult(tuple(combined), strategies)
