"""
Genus-one splittings H = W_1 + ... + W_g and left cosets of their stabilizer.

A left coset X*Stab(W_0) is identified with the image splitting X(W_0), so two
symplectic matrices lie in the same coset exactly when they move the standard
splitting to the same unordered set of summands. Unordered sets are compared
through a signature: the sorted tuple of the summands' Hermite bases.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import DimensionError, ExhaustionError, InvalidInputError
from .linalg import IntMatrix, LatticeBasis, det, hnf_rows
from .symplectic import SpElement, SymplecticContext, intersection, transvection

__all__ = [
    "Splitting",
    "standard_splitting",
    "signature",
    "apply",
    "in_stabilizer",
    "same_left_coset",
    "default_generators",
    "enumerate_coset_reps",
    "coset_reps_to_json",
]


def _summand_key(basis: LatticeBasis):
    return hnf_rows(basis.vectors, basis.ambient_rank)


@dataclass(frozen=True, eq=False)
class Splitting:
    """An orthogonal decomposition of Z^{2g} into g rank-2 summands.

    Summands keep the order they were built in (so ``W_{s,i}`` has a meaning),
    but equality and hashing go through the order-free :attr:`signature`.
    """

    g: int
    summands: tuple

    def __post_init__(self):
        ctx = SymplecticContext(self.g)
        summands = tuple(
            s if isinstance(s, LatticeBasis) else LatticeBasis(ctx.dim, s) for s in self.summands
        )
        object.__setattr__(self, "summands", summands)
        if len(summands) != self.g:
            raise InvalidInputError(f"need {self.g} summands, got {len(summands)}")
        for s in summands:
            if s.ambient_rank != ctx.dim:
                raise DimensionError("summand lives in the wrong ambient lattice")
            if s.rank != 2:
                raise InvalidInputError("every summand must have rank 2")
        vecs = [ctx.vector(v) for s in summands for v in s.vectors]
        for i in range(self.g):
            for j in range(i + 1, self.g):
                for x in vecs[2 * i:2 * i + 2]:
                    for y in vecs[2 * j:2 * j + 2]:
                        if intersection(ctx, x, y):
                            raise InvalidInputError(f"summands {i + 1} and {j + 1} are not orthogonal")
        if abs(det(IntMatrix.from_columns([v.coords for v in vecs]))) != 1:
            raise InvalidInputError("summands do not span Z^{2g}")

    @cached_property
    def signature(self):
        return tuple(sorted(_summand_key(s) for s in self.summands))

    def summand_keys(self):
        """Hermite bases of the summands, in construction order."""
        return [_summand_key(s) for s in self.summands]

    def __eq__(self, other):
        if not isinstance(other, Splitting):
            return NotImplemented
        return self.g == other.g and self.signature == other.signature

    def __hash__(self):
        return hash((self.g, self.signature))

    def to_json(self):
        return {"g": self.g, "summands": [[list(v) for v in s.vectors] for s in self.summands]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["g"], tuple(tuple(tuple(v) for v in s) for s in obj["summands"]))


def signature(S: Splitting):
    return S.signature


def standard_splitting(ctx: SymplecticContext) -> Splitting:
    return Splitting(
        ctx.g, tuple((ctx.A(i).coords, ctx.B(i).coords) for i in range(1, ctx.g + 1))
    )


def apply(X: SpElement, S: Splitting) -> Splitting:
    if X.g != S.g:
        raise DimensionError(f"genus mismatch {X.g} vs {S.g}")
    M = X.matrix
    return Splitting(S.g, tuple(tuple(M @ v for v in s.vectors) for s in S.summands))


def in_stabilizer(X: SpElement) -> bool:
    W0 = standard_splitting(SymplecticContext(X.g))
    return apply(X, W0).signature == W0.signature


def same_left_coset(X: SpElement, Y: SpElement) -> bool:
    return in_stabilizer(X.inverse() @ Y)


def default_generators(ctx: SymplecticContext):
    """Transvections along A_i, B_i, then A_i + A_{i+1}, B_i + B_{i+1}."""
    A, B = ctx.A, ctx.B
    vecs = []
    for i in range(1, ctx.g + 1):
        vecs += [A(i), B(i)]
    for i in range(1, ctx.g):
        vecs += [A(i) + A(i + 1), B(i) + B(i + 1)]
    return [transvection(ctx, v) for v in vecs]


def enumerate_coset_reps(ctx: SymplecticContext, N: int, generators=None):
    """First ``N`` left-coset representatives found by breadth-first search.

    Words are extended on the left by each generator in order; a word is kept
    when the splitting it produces has not been seen. The result starts with
    the identity and is reproducible for a fixed generator list.
    """
    if N < 1:
        raise InvalidInputError("N must be at least 1")
    if generators is None:
        generators = default_generators(ctx)
    for h in generators:
        if h.g != ctx.g:
            raise DimensionError("generator of the wrong genus")
    W0 = standard_splitting(ctx)
    identity = SpElement.identity(ctx)
    reps = [identity]
    seen = {W0.signature}
    queue = deque([(identity, W0)])
    while queue and len(reps) < N:
        X, S = queue.popleft()
        for h in generators:
            image = apply(h, S)
            if image.signature in seen:
                continue
            seen.add(image.signature)
            Y = h @ X
            reps.append(Y)
            queue.append((Y, image))
            if len(reps) == N:
                break
    if len(reps) < N:
        raise ExhaustionError(
            f"only {len(reps)} distinct cosets reachable with these generators", len(reps)
        )
    return reps


def coset_reps_to_json(reps):
    W0 = None
    out = []
    for X in reps:
        if W0 is None:
            W0 = standard_splitting(SymplecticContext(X.g))
        sig = apply(X, W0).signature
        out.append(
            {"matrix": X.to_json(), "signature": [[list(v) for v in summand] for summand in sig]}
        )
    return out

