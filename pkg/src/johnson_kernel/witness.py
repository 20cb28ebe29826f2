"""
Generic homology classes for a family of pairwise distinct splittings.

Given splittings W_0, ..., W_N, we look for x whose component in every summand
of every splitting is nonzero and whose unordered component sets differ
between splittings. The search imposes the stronger linear conditions

    Pi_{s,i} x != 0                          for all s, i
    (Pi_{s,i(s,q)} - Pi_{q,j}) x != 0          for s < q and all j

where i(s,q) is the first summand of W_s missing from W_q. Each bad set is a
proper sublattice, so some point of a large enough box avoids them all.
Candidates are scanned box by box (max |coordinate| = 1, 2, ...) in
lexicographic order inside each box, which makes the result reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DimensionError, InvalidInputError, NoDistinguishingIndexError
from .linalg import IntMatrix
from .splittings import Splitting
from .symplectic import HVector, SymplecticContext, intersection, primitive_part

__all__ = [
    "WitnessProblem",
    "WitnessResult",
    "projections",
    "distinguishing_index",
    "find_generic_x",
    "verify_generic",
    "components",
]


def projections(S: Splitting):
    """Projections onto each summand along the others, in summand order.

    For a summand with basis (u, v) the projection is
    x -> ((x . v) u - (x . u) v) / (u . v); orthogonality of the splitting
    makes u . v = +-1, so the division is exact.
    """
    ctx = SymplecticContext(S.g)
    out = []
    for summand in S.summands:
        u, v = (HVector(S.g, w) for w in summand.vectors)
        uv = intersection(ctx, u, v)
        if abs(uv) != 1:
            raise InvalidInputError("summand is not unimodular for the intersection form")
        cols = []
        for k in range(ctx.dim):
            e = ctx.basis_vector(k)
            cols.append((uv * intersection(ctx, e, v) * u - uv * intersection(ctx, e, u) * v).coords)
        out.append(IntMatrix.from_columns(cols))
    return out


def distinguishing_index(S: Splitting, Q: Splitting) -> int:
    """Smallest 1-based i such that summand i of S is no summand of Q."""
    if S.g != Q.g:
        raise DimensionError(f"genus mismatch {S.g} vs {Q.g}")
    others = set(Q.summand_keys())
    for i, key in enumerate(S.summand_keys(), start=1):
        if key not in others:
            return i
    raise NoDistinguishingIndexError("the splittings coincide")


@dataclass(frozen=True, eq=False)
class WitnessProblem:
    splittings: tuple

    def __post_init__(self):
        splittings = tuple(self.splittings)
        object.__setattr__(self, "splittings", splittings)
        if not splittings:
            raise InvalidInputError("need at least one splitting")
        if len({S.g for S in splittings}) != 1:
            raise DimensionError("splittings of different genus")
        # raises NoDistinguishingIndexError on duplicates
        index = {
            (s, q): distinguishing_index(splittings[s], splittings[q])
            for s, q in itertools.combinations(range(len(splittings)), 2)
        }
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_proj", tuple(projections(S) for S in splittings))

    @property
    def g(self):
        return self.splittings[0].g

    def to_json(self):
        return {"g": self.g, "splittings": [S.to_json()["summands"] for S in self.splittings]}

    @classmethod
    def from_json(cls, obj):
        g = obj["g"]
        return cls(tuple(Splitting(g, tuple(map(tuple, s))) for s in obj["splittings"]))


@dataclass(frozen=True)
class WitnessResult:
    x: HVector
    components: tuple  # components[s][i] = Pi_{s,i} x
    decomposition: tuple  # decomposition[s][i] = (n, a) with n * a = components[s][i]

    def to_json(self):
        return {
            "x": list(self.x.coords),
            "components": [[list(c.coords) for c in row] for row in self.components],
            "decomposition": [
                [{"n": n, "a": list(a.coords)} for n, a in row] for row in self.decomposition
            ],
        }


def components(x: HVector, P: WitnessProblem):
    return tuple(
        tuple(HVector(P.g, Pi @ x.coords) for Pi in proj) for proj in P._proj
    )


def _bad_maps(P: WitnessProblem):
    maps = [Pi for proj in P._proj for Pi in proj]
    for (s, q), i in P._index.items():
        Ps = P._proj[s][i - 1]
        for Pj in P._proj[q]:
            maps.append(Ps - Pj)
    return maps


def _candidates(dim):
    m = 1
    while True:
        for c in itertools.product(range(-m, m + 1), repeat=dim):
            if max(map(abs, c)) == m:
                yield c
        m += 1


def find_generic_x(P: WitnessProblem) -> WitnessResult:
    maps = [M.rows_tuple() for M in _bad_maps(P)]
    for c in _candidates(2 * P.g):
        if all(any(sum(a * b for a, b in zip(row, c)) for row in M) for M in maps):
            x = HVector(P.g, c)
            comps = components(x, P)
            decomp = tuple(tuple(primitive_part(v) for v in row) for row in comps)
            return WitnessResult(x, comps, decomp)
    raise AssertionError("unreachable: the candidate stream is infinite")


def verify_generic(x: HVector, P: WitnessProblem) -> bool:
    """Check both conditions literally: nonzero components, distinct component sets."""
    if x.g != P.g:
        raise DimensionError("x and problem have different genus")
    comps = components(x, P)
    if any(v.is_zero() for row in comps for v in row):
        return False
    sets = [sorted(v.coords for v in row) for row in comps]
    return all(sets[s] != sets[q] for s, q in itertools.combinations(range(len(sets)), 2))
