"""
The third exterior power of H and the quotient U = wedge^3 H / (H wedge Omega).

Wedge coordinates are indexed by lexicographic triples ``i < j < k`` of basis
positions. ``e_i ^ e_j ^ e_k`` for unsorted indices is stored at the sorted
triple with the sign of the sorting permutation.

U is presented through a Smith decomposition of the embedding matrix ``E`` of
``x -> x ^ Omega``: with ``D = S E T`` the rows of ``S`` past ``2g`` give a
projection ``P`` onto U and the matching columns of ``S^{-1}`` give a section
``Q`` with ``P Q = I``. U coordinates depend on that choice of section; ranks,
memberships and lattice equalities do not.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import DimensionError, InvalidInputError
from .linalg import (
    IntMatrix,
    LatticeBasis,
    kernel_lattice,
    lattice_contains,
    lattice_equal,
    lattice_from_generators,
    snf_with_inverse,
)
from .symplectic import HVector, SpElement, SymplecticContext, is_symplectic, transvection

__all__ = [
    "USpace",
    "UVector",
    "wedge3",
    "exterior_cube",
    "u_space",
    "induced_on_U",
    "fixed_sublattice_check",
    "FixedSublatticeReport",
    "ua_lattice",
    "ub_lattice",
    "in_Ua",
    "in_Ub",
]


@lru_cache(maxsize=None)
def _triples(n):
    trip = tuple(itertools.combinations(range(n), 3))
    return trip, {t: k for k, t in enumerate(trip)}


def _coords(v):
    return v.coords if isinstance(v, HVector) else tuple(v)


def wedge3(u, v, w):
    """Coordinates of ``u ^ v ^ w`` in the lexicographic triple basis."""
    u, v, w = _coords(u), _coords(v), _coords(w)
    n = len(u)
    if len(v) != n or len(w) != n:
        raise DimensionError("wedge factors of different lengths")
    trip, index = _triples(n)
    out = [0] * len(trip)
    nu = [(i, x) for i, x in enumerate(u) if x]
    nv = [(j, y) for j, y in enumerate(v) if y]
    nw = [(k, z) for k, z in enumerate(w) if z]
    for i, x in nu:
        for j, y in nv:
            if j == i:
                continue
            xy = x * y
            for k, z in nw:
                if k == i or k == j:
                    continue
                # parity of the permutation sorting (i, j, k)
                inversions = (i > j) + (i > k) + (j > k)
                key = tuple(sorted((i, j, k)))
                c = xy * z
                out[index[key]] += -c if inversions % 2 else c
    return tuple(out)


def exterior_cube(M: IntMatrix) -> IntMatrix:
    """Matrix of the map induced by ``M`` on the third exterior power."""
    if not M.is_square:
        raise DimensionError("exterior power of a non-square matrix")
    trip, _ = _triples(M.rows)
    cols = [M.col(j) for j in range(M.cols)]
    return IntMatrix.from_columns(
        [wedge3(cols[i], cols[j], cols[k]) for i, j, k in trip], rows=len(trip)
    )


@dataclass(frozen=True, eq=False)
class USpace:
    g: int
    embedding: IntMatrix  # C(2g,3) x 2g, columns e_c ^ Omega
    projection: IntMatrix  # r x C(2g,3)
    section: IntMatrix  # C(2g,3) x r
    elementary_divisors: tuple

    @property
    def rank(self):
        return self.projection.rows

    @property
    def wedge_dim(self):
        return self.embedding.rows

    @property
    def fingerprint(self):
        return hashlib.sha256(self.section.to_text().encode()).hexdigest()[:16]

    def class_of(self, wedge_vector) -> "UVector":
        """The image in U of a vector of wedge coordinates."""
        w = tuple(wedge_vector)
        if len(w) != self.wedge_dim:
            raise DimensionError(f"expected {self.wedge_dim} wedge coordinates, got {len(w)}")
        return UVector(self.g, self.projection @ w, self.fingerprint)

    def lift(self, theta: "UVector"):
        self._check(theta)
        return self.section @ theta.coords

    def _check(self, theta):
        if theta.g != self.g or theta.section != self.fingerprint:
            raise DimensionError("U vector belongs to a different genus or section")


@dataclass(frozen=True)
class UVector:
    g: int
    coords: tuple
    section: str

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) != comb(2 * self.g, 3) - 2 * self.g:
            raise DimensionError("U vector has the wrong length for its genus")

    def is_zero(self):
        return not any(self.coords)

    def to_json(self):
        return {"g": self.g, "section": self.section, "coords": list(self.coords)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["g"], obj["coords"], obj["section"])


def omega_embedding(ctx: SymplecticContext) -> IntMatrix:
    """Columns ``e_c ^ Omega`` with ``Omega = sum_i A_i ^ B_i``."""
    n = ctx.dim
    trip, index = _triples(n)
    cols = []
    for c in range(n):
        col = [0] * len(trip)
        for i in range(1, ctx.g + 1):
            for k, x in enumerate(wedge3(ctx.basis_vector(c), ctx.A(i), ctx.B(i))):
                if x:
                    col[k] += x
        cols.append(col)
    return IntMatrix.from_columns(cols, rows=len(trip))


@lru_cache(maxsize=None)
def _u_space(g):
    ctx = SymplecticContext(g)
    E = omega_embedding(ctx)
    D, S, _T, S_inv = snf_with_inverse(E)
    n = ctx.dim
    divisors = tuple(D[i, i] for i in range(n))
    wdim = E.rows
    rows = S.rows_tuple()[n:]
    P = IntMatrix(rows, cols=wdim)
    Q = S_inv.submatrix(range(wdim), range(n, wdim))
    us = USpace(g, E, P, Q, divisors)
    r = comb(n, 3) - n
    # invariants of the construction; failure means a bug, not bad input
    assert all(d == 1 for d in divisors), divisors
    assert P.rows == r
    assert P @ E == IntMatrix.zeros(r, n)
    assert P @ Q == IntMatrix.identity(r)
    return us


def u_space(ctx: SymplecticContext) -> USpace:
    return _u_space(ctx.g)


def induced_on_U(X: SpElement, us: USpace) -> IntMatrix:
    """Matrix of the action of ``X`` on U, namely ``P (wedge^3 X) Q``."""
    M = X.matrix if isinstance(X, SpElement) else X
    if M.shape != (2 * us.g, 2 * us.g):
        raise DimensionError(f"expected a {2 * us.g}x{2 * us.g} matrix")
    if not is_symplectic(SymplecticContext(us.g), M):
        raise InvalidInputError("the action on U is defined for symplectic matrices only")
    return us.projection @ exterior_cube(M) @ us.section


def _basis_pairs(basis: SpElement):
    g = basis.g
    M = basis.matrix
    a = [HVector(g, M.col(2 * i)) for i in range(g)]
    b = [HVector(g, M.col(2 * i + 1)) for i in range(g)]
    return a, b


@dataclass(frozen=True)
class FixedSublatticeReport:
    g: int
    computed: LatticeBasis
    claimed: LatticeBasis
    equal: bool
    rank: int
    generator_count: int

    def to_json(self):
        return {
            "g": self.g,
            "rank": self.rank,
            "generator_count": self.generator_count,
            "equal": self.equal,
        }


def fixed_sublattice_check(ctx: SymplecticContext, basis: SpElement | None = None):
    """Compare the elements of U fixed by every T_{a_i} with the lattice generated
    by the classes of a_i^a_j^a_k (i<j<k) and a_i^a_j^b_j (i != j).

    ``basis`` is a symplectic matrix whose columns are a_1, b_1, ..., a_g, b_g;
    the standard basis is used when omitted.
    """
    if basis is None:
        basis = SpElement.identity(ctx)
    if basis.g != ctx.g:
        raise DimensionError("basis of the wrong genus")
    us = u_space(ctx)
    a, b = _basis_pairs(basis)
    r = us.rank
    ident = IntMatrix.identity(r)
    stacked = IntMatrix.vstack(
        *[induced_on_U(transvection(ctx, ai), us) - ident for ai in a]
    )
    computed = kernel_lattice(stacked)
    g = ctx.g
    gens = [wedge3(a[i], a[j], a[k]) for i, j, k in itertools.combinations(range(g), 3)]
    gens += [wedge3(a[i], a[j], b[j]) for i in range(g) for j in range(g) if i != j]
    claimed = lattice_from_generators([us.projection @ w for w in gens], r)
    return FixedSublatticeReport(
        g=g,
        computed=computed,
        claimed=claimed,
        equal=lattice_equal(computed, claimed),
        rank=computed.rank,
        generator_count=len(gens),
    )


@lru_cache(maxsize=64)
def _split_lattices(g, basis_matrix):
    us = _u_space(g)
    a, b = _basis_pairs(SpElement(basis_matrix))
    pairs = list(itertools.combinations(range(g), 2))
    ua = [wedge3(a[i], a[j], a[k]) for i, j, k in itertools.combinations(range(g), 3)]
    ua += [wedge3(a[i], a[j], b[k]) for i, j in pairs for k in range(g)]
    ub = [wedge3(a[i], b[j], b[k]) for j, k in pairs for i in range(g)]
    ub += [wedge3(b[i], b[j], b[k]) for i, j, k in itertools.combinations(range(g), 3)]
    proj = us.projection
    return (
        lattice_from_generators([proj @ w for w in ua], us.rank),
        lattice_from_generators([proj @ w for w in ub], us.rank),
    )


def ua_lattice(ctx: SymplecticContext, basis: SpElement | None = None) -> LatticeBasis:
    basis = basis or SpElement.identity(ctx)
    return _split_lattices(ctx.g, basis.matrix)[0]


def ub_lattice(ctx: SymplecticContext, basis: SpElement | None = None) -> LatticeBasis:
    basis = basis or SpElement.identity(ctx)
    return _split_lattices(ctx.g, basis.matrix)[1]


def in_Ua(theta: UVector, basis: SpElement | None = None) -> bool:
    ctx = SymplecticContext(theta.g)
    u_space(ctx)._check(theta)
    return lattice_contains(ua_lattice(ctx, basis), theta.coords)


def in_Ub(theta: UVector, basis: SpElement | None = None) -> bool:
    ctx = SymplecticContext(theta.g)
    u_space(ctx)._check(theta)
    return lattice_contains(ub_lattice(ctx, basis), theta.coords)
