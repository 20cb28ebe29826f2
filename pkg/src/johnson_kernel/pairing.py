"""
Products of one-dimensional classes evaluated on abelian cycles.

For homomorphisms k_1..k_n and commuting h_1..h_n the pairing is
``(-1)^{C(n,2)} det(k_i(h_j))``. The cocycles here are the lambda_{p,q}
homomorphisms and the cycles are built from separating twists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import DimensionError, InvalidInputError
from .linalg import IntMatrix, LatticeBasis, det, kernel_lattice, rank
from .seifert import SeparatingTwistSpec, delta_spec, epsilon_spec, morita_lambda, seifert_pq
from .symplectic import SymplecticContext

__all__ = [
    "CocycleRef",
    "AbelianCycleSpec",
    "pairing_matrix",
    "abelian_pairing",
    "phi_cocycles",
    "a0_twists",
    "Prop22Report",
    "verify_prop22",
]


@dataclass(frozen=True)
class CocycleRef:
    """lambda_{p,q}, 1 <= p < q."""

    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int) and 1 <= self.p < self.q):
            raise InvalidInputError(f"need 1 <= p < q, got ({self.p}, {self.q})")

    def __str__(self):
        return f"lambda_{self.p},{self.q}"


def _contained(inner: LatticeBasis, outer: LatticeBasis):
    # outer is a direct summand, so rational containment is integral containment
    M = IntMatrix(outer.vectors + inner.vectors, cols=outer.ambient_rank)
    return rank(M) == outer.rank


def _orth_complement(ctx, W: LatticeBasis):
    return kernel_lattice(IntMatrix(W.vectors, cols=W.ambient_rank) @ ctx.J)


def _orthogonal(ctx, W1: LatticeBasis, W2: LatticeBasis):
    J = ctx.J
    return all(
        sum(x * y for x, y in zip(u, J @ v)) == 0 for u in W1.vectors for v in W2.vectors
    )


def _compatible(ctx, W1, W2):
    """Homology shadow of two disjoint separating curves: the chosen sides are
    nested or disjoint, or the complementary sides are."""
    if _orthogonal(ctx, W1, W2) or _contained(W1, W2) or _contained(W2, W1):
        return True
    return _contained(_orth_complement(ctx, W1), W2)


@dataclass(frozen=True)
class AbelianCycleSpec:
    twists: tuple

    def __post_init__(self):
        twists = tuple(self.twists)
        object.__setattr__(self, "twists", twists)
        if not twists:
            raise InvalidInputError("an abelian cycle needs at least one twist")
        if any(not isinstance(t, SeparatingTwistSpec) for t in twists):
            raise InvalidInputError("twists must be SeparatingTwistSpec instances")
        if len({t.g for t in twists}) != 1:
            raise DimensionError("twists of different genus")
        ctx = SymplecticContext(twists[0].g)
        summands = [t.summand() for t in twists]
        for i, j in itertools.combinations(range(len(summands)), 2):
            if not _compatible(ctx, summands[i], summands[j]):
                raise InvalidInputError(f"twists {i + 1} and {j + 1} cannot be disjoint")

    @property
    def g(self):
        return self.twists[0].g

    def __len__(self):
        return len(self.twists)


def pairing_matrix(ctx: SymplecticContext, cocycles, twists: AbelianCycleSpec) -> IntMatrix:
    """C[i][j] = lambda_{p_i, q_i}(h_j)."""
    cocycles = list(cocycles)
    if len(cocycles) != len(twists):
        raise InvalidInputError(
            f"{len(cocycles)} cocycles against {len(twists)} twists"
        )
    if twists.g != ctx.g:
        raise DimensionError("twists and context have different genus")
    for c in cocycles:
        if c.q > ctx.g:
            raise InvalidInputError(f"{c} is out of range for genus {ctx.g}")
    rows = []
    for c in cocycles:
        L = seifert_pq(ctx, c.p, c.q)
        rows.append([morita_lambda(L, h) for h in twists.twists])
    return IntMatrix(rows)


def abelian_pairing(C: IntMatrix) -> int:
    if not C.is_square:
        raise DimensionError(f"pairing matrix must be square, got {C.shape}")
    return (-1) ** (comb(C.rows, 2) % 2) * det(C)


def phi_cocycles(ctx: SymplecticContext):
    """lambda_{1,2}, ..., lambda_{1,g}, then lambda_{2,3}, ..., lambda_{g-1,g}."""
    first = [CocycleRef(1, q) for q in range(2, ctx.g + 1)]
    chain = [CocycleRef(p, p + 1) for p in range(2, ctx.g)]
    return first + chain


def a0_twists(ctx: SymplecticContext) -> AbelianCycleSpec:
    """Twists about delta_1..delta_g followed by epsilon_2..epsilon_{g-2}."""
    return AbelianCycleSpec(
        tuple(delta_spec(ctx, i) for i in range(1, ctx.g + 1))
        + tuple(epsilon_spec(ctx, i) for i in range(2, ctx.g - 1))
    )


@dataclass(frozen=True)
class Prop22Report:
    g: int
    det_c: int
    pairing: int
    expected: int
    expected_det: int

    @property
    def passed(self):
        return self.pairing == self.expected and self.det_c == self.expected_det

    def to_json(self):
        return {
            "g": self.g,
            "detC": self.det_c,
            "pairing": self.pairing,
            "expected": self.expected,
            "pass": self.passed,
        }


def verify_prop22(ctx: SymplecticContext) -> Prop22Report:
    if ctx.g < 3:
        raise InvalidInputError("the product class needs g >= 3")
    C = pairing_matrix(ctx, phi_cocycles(ctx), a0_twists(ctx))
    g = ctx.g
    return Prop22Report(
        g=g,
        det_c=det(C),
        pairing=abelian_pairing(C),
        expected=(-1) ** (g - 1) * 2 ** (g - 2),
        expected_det=-(2 ** (g - 2)),
    )
