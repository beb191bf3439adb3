"""MinRank instances over chain rings/PIRs with Kipnis-Shamir and
Support-Minors modelings and solvers.

Every solver re-verifies each candidate with an actual rank computation, so
the permutation schedule / unit case split can only lose completeness, never
soundness; completeness is certified against the brute-force oracle in the
tests (the paper leaves a selection rule open).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, Inconclusive, ParseError, ResourceExceeded
from .groebner import buchberger, elimination_subbasis
from .linalg import RingMatrix, rank, reduced_row_echelon
from .polys import MultiPoly, PolyRing
from .rings import ProductRing, Ring, RingElement, ring_from_json
from .solve import enumeration_budget, ring_vanishing_polynomial, solve_system

FIELD_EQUATION_RING_CAP = 512


@dataclass(frozen=True)
class MinRankInstance:
    """Find x with rank(M0 + sum x_l M_l) <= r; homogeneous when M0 = 0."""

    ring: Ring
    matrices: tuple[RingMatrix, ...]
    r: int
    m0: RingMatrix | None = None

    def __post_init__(self):
        if not self.matrices:
            raise DomainError("need at least one matrix")
        shape = (self.matrices[0].m, self.matrices[0].n)
        for M in self.matrices:
            if (M.m, M.n) != shape or M.ring != self.ring:
                raise DomainError("inconsistent matrix dimensions or rings")
        if self.m0 is not None and ((self.m0.m, self.m0.n) != shape or self.m0.ring != self.ring):
            raise DomainError("M0 shape mismatch")
        # r = 0 is admitted for the rank-decoding reduction (y in C, no error)
        if self.r < 0:
            raise DomainError("target rank must be >= 0")

    @property
    def k(self) -> int:
        return len(self.matrices)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.matrices[0].m, self.matrices[0].n)

    @property
    def homogeneous(self) -> bool:
        return self.m0 is None or self.m0.is_zero()

    def mx(self, x: Sequence[RingElement]) -> RingMatrix:
        R = self.ring
        x = [R.coerce(v) for v in x]
        if len(x) != self.k:
            raise DomainError("wrong number of coefficients")
        acc = self.m0 if self.m0 is not None else RingMatrix.zeros(R, *self.shape)
        for v, M in zip(x, self.matrices):
            acc = acc + M.scale(v)
        return acc

    def is_solution(self, x: Sequence[RingElement]) -> bool:
        return rank(self.mx(x)) <= self.r

    def to_json(self):
        out = {
            "ring": self.ring.to_json(),
            "r": self.r,
            "matrices": [
                [[self.ring.element_to_json(v) for v in row] for row in M.rows]
                for M in self.matrices
            ],
        }
        if self.m0 is not None:
            out["m0"] = [
                [self.ring.element_to_json(v) for v in row] for row in self.m0.rows
            ]
        return out

    @classmethod
    def from_json(cls, obj) -> "MinRankInstance":
        ring = ring_from_json(obj["ring"])
        mats = tuple(
            RingMatrix(ring, [[ring.element_from_json(v) for v in row] for row in M])
            for M in obj["matrices"]
        )
        m0 = None
        if obj.get("m0") is not None:
            m0 = RingMatrix(
                ring, [[ring.element_from_json(v) for v in row] for row in obj["m0"]]
            )
        if "r" not in obj:
            raise ParseError("instance needs the target rank r")
        return cls(ring, mats, int(obj["r"]), m0)


def transpose_instance(inst: MinRankInstance) -> MinRankInstance:
    """Same solution set (rank is transpose-invariant), fewer variables when
    m < n after modeling."""
    return MinRankInstance(
        inst.ring,
        tuple(M.transpose() for M in inst.matrices),
        inst.r,
        inst.m0.transpose() if inst.m0 is not None else None,
    )


# -- Kipnis-Shamir modeling -----------------------------------------------------


@dataclass(frozen=True)
class KSModel:
    poly_ring: PolyRing
    equations: tuple[MultiPoly, ...]
    zprime_rows: tuple[int, ...]
    x_vars: tuple[int, ...]
    z_vars: tuple[int, ...]


def _x_names(k: int) -> list[str]:
    return [f"x{l + 1}" for l in range(k)]


def ks_model(inst: MinRankInstance, zprime_rows: Sequence[int] | None = None) -> KSModel:
    """Bilinear system M_x @ Z = 0 with Z = P (I; Z'); zprime_rows are the
    rows of Z holding Z' (default: the bottom r rows, the identity placement)."""
    m, n = inst.shape
    r = inst.r
    k = inst.k
    R = inst.ring
    if zprime_rows is None:
        zprime_rows = tuple(range(n - r, n))
    zprime_rows = tuple(sorted(zprime_rows))
    if len(zprime_rows) != r or any(not 0 <= i < n for i in zprime_rows):
        raise DomainError("zprime_rows must be r distinct row indices")
    if r == 1:
        z_names = [f"z{j + 1}" for j in range(n - r)]
    else:
        z_names = [f"z{i + 1}_{j + 1}" for i in range(r) for j in range(n - r)]
    names = z_names + _x_names(k)
    ring = PolyRing(R, names, "lex")
    nz = len(z_names)
    z_vars = tuple(range(nz))
    x_vars = tuple(range(nz, nz + k))

    def zvar(i, j):
        return ring.gen(i * (n - r) + j)

    ident_rows = [i for i in range(n) if i not in zprime_rows]
    zmat = [[None] * (n - r) for _ in range(n)]
    for pos, i in enumerate(ident_rows):
        for j in range(n - r):
            zmat[i][j] = ring.one if pos == j else ring.zero
    for pos, i in enumerate(zprime_rows):
        for j in range(n - r):
            zmat[i][j] = zvar(pos, j)

    def mx_entry(i, t):
        acc = (
            ring.constant(inst.m0.rows[i][t])
            if inst.m0 is not None
            else ring.zero
        )
        for l, M in enumerate(inst.matrices):
            c = M.rows[i][t]
            if not c.is_zero():
                acc = acc + ring.gen(x_vars[l]).scale(c)
        return acc

    equations = []
    for i in range(m):
        row_entries = [mx_entry(i, t) for t in range(n)]
        for j in range(n - r):
            eq = ring.zero
            for t in range(n):
                if not zmat[t][j].is_zero():
                    eq = eq + row_entries[t] * zmat[t][j]
            equations.append(eq)
    return KSModel(ring, tuple(equations), zprime_rows, x_vars, z_vars)


def ks_permutation_schedule(n: int, r: int) -> list[tuple[int, ...]]:
    """Identity placement first, then every other Z'-row subset in lex order."""
    identity = tuple(range(n - r, n))
    rest = [s for s in itertools.combinations(range(n), r) if s != identity]
    return [identity] + rest


# -- Support-Minors modeling -----------------------------------------------------


@dataclass(frozen=True)
class SMModel:
    poly_ring: PolyRing
    equations: tuple[MultiPoly, ...]
    subsets: tuple[tuple[int, ...], ...]  # r-subsets indexing the z variables
    x_vars: tuple[int, ...]
    z_vars: tuple[int, ...]


def _z_subset_name(subset: tuple[int, ...]) -> str:
    return "z" + "_".join(str(j + 1) for j in subset)


def sm_model(inst: MinRankInstance) -> SMModel:
    """For every row i and (r+1)-subset J', the alternating-sign relation
    between M_x entries and the Plücker variables z_J."""
    m, n = inst.shape
    r = inst.r
    k = inst.k
    R = inst.ring
    subsets = tuple(itertools.combinations(range(n), r))
    z_names = [_z_subset_name(s) for s in subsets]
    names = z_names + _x_names(k)
    ring = PolyRing(R, names, "lex")
    z_index = {s: i for i, s in enumerate(subsets)}
    z_vars = tuple(range(len(subsets)))
    x_vars = tuple(range(len(subsets), len(subsets) + k))

    def mx_entry(i, t):
        acc = (
            ring.constant(inst.m0.rows[i][t]) if inst.m0 is not None else ring.zero
        )
        for l, M in enumerate(inst.matrices):
            c = M.rows[i][t]
            if not c.is_zero():
                acc = acc + ring.gen(x_vars[l]).scale(c)
        return acc

    equations = []
    for i in range(m):
        for bigset in itertools.combinations(range(n), r + 1):
            eq = ring.zero
            for s, j in enumerate(bigset):
                rest = tuple(c for c in bigset if c != j)
                term = mx_entry(i, j) * ring.gen(z_index[rest])
                eq = eq + (term if s % 2 == 0 else -term)
            equations.append(eq)
    return SMModel(ring, tuple(equations), subsets, x_vars, z_vars)


def sm_linearization_matrix(inst: MinRankInstance):
    """Coefficient matrix of the SM system in the monomials x_l*z_J (grouped
    by J, then l) followed by the plain z_J columns for inhomogeneous
    instances.  Equations ordered by (row, (r+1)-subset lex)."""
    m, n = inst.shape
    r = inst.r
    k = inst.k
    R = inst.ring
    subsets = tuple(itertools.combinations(range(n), r))
    z_index = {s: i for i, s in enumerate(subsets)}
    bil_cols = len(subsets) * k
    z_cols = 0 if inst.homogeneous else len(subsets)
    rows = []
    for i in range(m):
        for bigset in itertools.combinations(range(n), r + 1):
            row = [R.zero] * (bil_cols + z_cols)
            for s, j in enumerate(bigset):
                rest = tuple(c for c in bigset if c != j)
                sign = 1 if s % 2 == 0 else -1
                for l, M in enumerate(inst.matrices):
                    c = M.rows[i][j]
                    if not c.is_zero():
                        col = z_index[rest] * k + l
                        val = c if sign > 0 else R.neg(c)
                        row[col] = R.add(row[col], val)
                if inst.m0 is not None:
                    c = inst.m0.rows[i][j]
                    if not c.is_zero():
                        col = bil_cols + z_index[rest]
                        val = c if sign > 0 else R.neg(c)
                        row[col] = R.add(row[col], val)
            rows.append(row)
    return RingMatrix(R, rows), subsets


# -- solvers ---------------------------------------------------------------------


def _x_only_candidates(model_ring: PolyRing, equations, x_vars, field_equations: bool):
    """Lex GB, x-elimination subbasis, and the exact solution set of that
    subsystem as explicit x tuples."""
    work = list(equations)
    R = model_ring.ring
    if field_equations:
        for v in range(model_ring.nvars):
            work.append(ring_vanishing_polynomial(R, model_ring, v))
    G = buchberger(work, model_ring)
    sub = elimination_subbasis(G, len(model_ring.variables) - len(x_vars))
    x_ring = PolyRing(R, [model_ring.variables[v] for v in x_vars], "lex")
    var_map = {v: i for i, v in enumerate(x_vars)}
    polys = []
    for g in sub.generators:
        polys.append(g.map_to(x_ring, [var_map.get(i, 0) for i in range(model_ring.nvars)]))
    if not polys:
        if R.size ** len(x_vars) > enumeration_budget():
            raise ResourceExceeded("unconstrained x block exceeds the budget")
        return [tuple(c) for c in itertools.product(list(R.elements()), repeat=len(x_vars))]
    sol = solve_system(polys)
    return [tuple(s) for s in sol.explicit()]


def _auto_field_equations(ring: Ring, flag: bool | None) -> bool:
    if flag is None:
        return ring.size <= FIELD_EQUATION_RING_CAP
    return flag


def split_instance(inst: MinRankInstance) -> list[MinRankInstance]:
    """CRT components of a product-ring instance."""
    ring: ProductRing = inst.ring
    out = []
    for idx, comp in enumerate(ring.components):
        mats = tuple(
            RingMatrix(comp, [[v.data[idx] for v in row] for row in M.rows])
            for M in inst.matrices
        )
        m0 = None
        if inst.m0 is not None:
            m0 = RingMatrix(
                comp, [[v.data[idx] for v in row] for row in inst.m0.rows]
            )
        out.append(MinRankInstance(comp, mats, inst.r, m0))
    return out


def solve_minrank(
    inst: MinRankInstance,
    strategy: str = "ks",
    field_equations: bool | None = None,
    schedule: Sequence[Sequence[int]] | None = None,
) -> list[tuple[RingElement, ...]]:
    """All x with rank(M_x) <= r found by the chosen modeling; every returned
    tuple is rank-verified.  Product-ring instances split through the CRT and
    the component solutions recombine by cartesian product (rank over a PIR
    is the max over components)."""
    if strategy == "brute":
        from .oracles import brute_minrank

        return brute_minrank(inst)
    if isinstance(inst.ring, ProductRing):
        ring: ProductRing = inst.ring
        comp_solutions = [
            solve_minrank(ci, strategy, field_equations, schedule)
            for ci in split_instance(inst)
        ]
        combined = []
        for combo in itertools.product(*comp_solutions):
            combined.append(
                tuple(
                    RingElement(ring, tuple(sol[i] for sol in combo))
                    for i in range(inst.k)
                )
            )
        return sorted(
            combined, key=lambda x: tuple(ring.sort_key(v) for v in x)
        )
    use_fm = _auto_field_equations(inst.ring, field_equations)
    found: set = set()
    if strategy == "ks":
        n = inst.shape[1]
        subsets = (
            [tuple(s) for s in schedule]
            if schedule is not None
            else ks_permutation_schedule(n, inst.r)
        )
        for sub in subsets:
            model = ks_model(inst, sub)
            for x in _x_only_candidates(
                model.poly_ring, model.equations, model.x_vars, use_fm
            ):
                if x not in found and inst.is_solution(x):
                    found.add(x)
    elif strategy == "sm-groebner":
        model = sm_model(inst)
        for x in _x_only_candidates(
            model.poly_ring, model.equations, model.x_vars, use_fm
        ):
            if x not in found and inst.is_solution(x):
                found.add(x)
    elif strategy == "sm-linearization":
        found = set(solve_sm_linearization(inst))
    else:
        raise DomainError(f"unknown strategy {strategy!r}")
    R = inst.ring
    return sorted(found, key=lambda x: tuple(R.sort_key(v) for v in x))


def solve_sm_linearization(inst: MinRankInstance) -> list[tuple[RingElement, ...]]:
    """Echelonize the linearized SM system; rows supported in a single z_J
    block become linear conditions on x after the unit-z_J case split.

    Every returned x is rank-verified, so the union over isolating blocks is
    always sound.  When every block is isolated the union is provably
    complete (each solution has a unit Plücker coordinate somewhere).  When
    some blocks carry no isolating rows, a solution whose witnesses live
    only there could be missed, so the result is certified against the
    brute-force oracle before being reported; Inconclusive is raised when
    nothing isolates, when certification fails, or when the instance is too
    large to certify (the caller falls back to a Gröbner strategy).
    """
    R = inst.ring
    k = inst.k
    A, subsets = sm_linearization_matrix(inst)
    echelon = reduced_row_echelon(A)
    bil_cols = len(subsets) * k
    if R.size**k > enumeration_budget():
        raise ResourceExceeded("x enumeration exceeds the budget")
    all_x = [tuple(c) for c in itertools.product(list(R.elements()), repeat=k)]
    found = set()
    silent = False
    isolated_any = False
    for jidx in range(len(subsets)):
        block = set(range(jidx * k, (jidx + 1) * k))
        if not inst.homogeneous:
            block.add(bil_cols + jidx)
        linear_rows = []
        for row in echelon.rows:
            support = {c for c, v in enumerate(row) if not v.is_zero()}
            if support and support <= block:
                coeffs = [row[jidx * k + l] for l in range(k)]
                const = row[bil_cols + jidx] if not inst.homogeneous else R.zero
                linear_rows.append((coeffs, const))
        if not linear_rows:
            silent = True
            continue
        isolated_any = True
        for x in all_x:
            ok = True
            for coeffs, const in linear_rows:
                acc = const
                for c, v in zip(coeffs, x):
                    acc = R.add(acc, R.mul(c, v))
                if not acc.is_zero():
                    ok = False
                    break
            if ok and x not in found and inst.is_solution(x):
                found.add(x)
    if not isolated_any:
        raise Inconclusive("no echelon row is supported in a single z block")
    if silent:
        from .oracles import brute_minrank

        if set(found) != set(brute_minrank(inst)):
            raise Inconclusive(
                "isolated blocks do not determine the full solution set"
            )
    return sorted(found, key=lambda x: tuple(R.sort_key(v) for v in x))
