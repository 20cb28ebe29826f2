"""
Seifert forms of Heegaard embeddings and the Casson-derived homomorphisms on
twists about separating curves.

A Seifert form is stored as the matrix ``L[i][j] = l(e_i, e_j)``; the relation
``l(y, x) = l(x, y) + x . y`` reads ``L^T - L = J``. A separating curve enters
only through a symplectic basis of the homology of one of its sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DimensionError, InvalidInputError
from .linalg import IntMatrix, LatticeBasis, elementary_divisors
from .symplectic import HVector, SpElement, SymplecticContext, intersection, is_symplectic, psi_pq

__all__ = [
    "SeifertForm",
    "SeparatingTwistSpec",
    "base_seifert",
    "pullback",
    "seifert_pq",
    "morita_lambda",
    "morita_lambda_expanded",
    "delta_spec",
    "epsilon_spec",
    "LambdaTable",
    "lambda_pq_table",
]


@dataclass(frozen=True)
class SeifertForm:
    matrix: IntMatrix

    def __post_init__(self):
        L = self.matrix
        if not L.is_square or L.rows % 2 or L.rows < 4:
            raise DimensionError(f"Seifert matrix must be 2g x 2g, got {L.shape}")
        if L.T - L != SymplecticContext(self.g).J:
            raise InvalidInputError("matrix violates L^T - L = J")

    @property
    def g(self):
        return self.matrix.rows // 2

    def __call__(self, x: HVector, y: HVector) -> int:
        if x.g != self.g or y.g != self.g:
            raise DimensionError("vector genus differs from the form's genus")
        L = self.matrix
        ys = [(j, c) for j, c in enumerate(y.coords) if c]
        total = 0
        for i, a in enumerate(x.coords):
            if a:
                row = L.row(i)
                total += a * sum(c * row[j] for j, c in ys)
        return total

    def to_json(self):
        return self.matrix.to_json()


@dataclass(frozen=True)
class SeparatingTwistSpec:
    """Symplectic basis (a_1, b_1, ..., a_h, b_h) of one side of a separating curve."""

    g: int
    pairs: tuple

    def __post_init__(self):
        ctx = SymplecticContext(self.g)
        pairs = tuple((a, b) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise InvalidInputError("a separating twist needs a nonempty subsurface")
        for a, b in pairs:
            if a.g != self.g or b.g != self.g:
                raise DimensionError("pair vector of the wrong genus")
        dot = lambda x, y: intersection(ctx, x, y)  # noqa: E731
        for s, (a_s, b_s) in enumerate(pairs):
            for t, (a_t, b_t) in enumerate(pairs):
                if dot(a_s, a_t) or dot(b_s, b_t) or dot(a_s, b_t) != int(s == t):
                    raise InvalidInputError("pairs are not a symplectic family")
        cols = [v.coords for pair in pairs for v in pair]
        divisors = elementary_divisors(IntMatrix.from_columns(cols))
        if len(divisors) != len(cols) or any(d != 1 for d in divisors):
            raise InvalidInputError("pairs do not span a direct summand")

    @property
    def subgenus(self):
        return len(self.pairs)

    def summand(self) -> LatticeBasis:
        return LatticeBasis(2 * self.g, [v.coords for pair in self.pairs for v in pair])

    def to_json(self):
        return {
            "g": self.g,
            "pairs": [[list(a.coords), list(b.coords)] for a, b in self.pairs],
        }


def base_seifert(ctx: SymplecticContext) -> SeifertForm:
    """Form of the standard embedding: l(B_i, A_i) = 1, every other basis value 0."""
    rows = [[0] * ctx.dim for _ in range(ctx.dim)]
    for i in range(ctx.g):
        rows[2 * i + 1][2 * i] = 1
    return SeifertForm(IntMatrix(rows))


def pullback(Lf: SeifertForm, psi) -> SeifertForm:
    """The form (x, y) -> l(psi x, psi y), i.e. psi^T L psi."""
    M = psi.matrix if isinstance(psi, SpElement) else psi
    if M.shape != Lf.matrix.shape:
        raise DimensionError("transformation and form have different genus")
    if not isinstance(psi, SpElement) and not is_symplectic(SymplecticContext(Lf.g), M):
        raise InvalidInputError("pullback along a non-symplectic matrix")
    return SeifertForm(M.T @ Lf.matrix @ M)


@lru_cache(maxsize=None)
def _seifert_pq(g, p, q):
    ctx = SymplecticContext(g)
    return pullback(base_seifert(ctx), psi_pq(ctx, p, q))


def seifert_pq(ctx: SymplecticContext, p: int, q: int) -> SeifertForm:
    return _seifert_pq(ctx.g, p, q)


def _check_spec(Lf, spec):
    if not isinstance(spec, SeparatingTwistSpec):
        raise InvalidInputError("expected a SeparatingTwistSpec")
    if spec.g != Lf.g:
        raise DimensionError("spec and form have different genus")


def morita_lambda(Lf: SeifertForm, spec: SeparatingTwistSpec) -> int:
    """Value of the homomorphism on the left twist about the separating curve.

    sum over i, j of l(a_i,a_j) l(b_i,b_j) - l(a_i,b_j) l(b_i,a_j).
    """
    _check_spec(Lf, spec)
    l = Lf
    total = 0
    for a_i, b_i in spec.pairs:
        for a_j, b_j in spec.pairs:
            total += l(a_i, a_j) * l(b_i, b_j) - l(a_i, b_j) * l(b_i, a_j)
    return total


def morita_lambda_expanded(Lf: SeifertForm, spec: SeparatingTwistSpec) -> int:
    """Same value, written as diagonal terms plus twice the i < j terms."""
    _check_spec(Lf, spec)
    l = Lf
    P = spec.pairs
    total = sum(l(a, a) * l(b, b) - l(a, b) * l(b, a) for a, b in P)
    for i in range(len(P)):
        for j in range(i + 1, len(P)):
            (a_i, b_i), (a_j, b_j) = P[i], P[j]
            total += 2 * (l(a_i, a_j) * l(b_i, b_j) - l(a_i, b_j) * l(a_j, b_i))
    return total


def delta_spec(ctx: SymplecticContext, i: int) -> SeparatingTwistSpec:
    """delta_i bounds the one-holed torus carrying handle i."""
    if not (isinstance(i, int) and 1 <= i <= ctx.g):
        raise InvalidInputError(f"delta index {i} outside 1..{ctx.g}")
    return SeparatingTwistSpec(ctx.g, ((ctx.A(i), ctx.B(i)),))


def epsilon_spec(ctx: SymplecticContext, i: int) -> SeparatingTwistSpec:
    """epsilon_i cuts off handles 1..i."""
    if not (isinstance(i, int) and 2 <= i <= ctx.g - 2):
        raise InvalidInputError(f"epsilon index {i} outside 2..{ctx.g - 2}")
    return SeparatingTwistSpec(ctx.g, tuple((ctx.A(k), ctx.B(k)) for k in range(1, i + 1)))


@dataclass(frozen=True)
class LambdaTable:
    g: int
    p: int
    q: int
    delta: tuple  # values on delta_1..delta_g
    epsilon: tuple  # values on epsilon_2..epsilon_{g-2}

    def rows(self):
        out = [(f"delta_{i}", v) for i, v in enumerate(self.delta, start=1)]
        out += [(f"epsilon_{i}", v) for i, v in enumerate(self.epsilon, start=2)]
        return out

    def to_json(self):
        return {
            "g": self.g,
            "p": self.p,
            "q": self.q,
            "values": {name: v for name, v in self.rows()},
        }


def lambda_pq_table(ctx: SymplecticContext, p: int, q: int) -> LambdaTable:
    L = seifert_pq(ctx, p, q)
    return LambdaTable(
        ctx.g,
        p,
        q,
        tuple(morita_lambda(L, delta_spec(ctx, i)) for i in range(1, ctx.g + 1)),
        tuple(morita_lambda(L, epsilon_spec(ctx, i)) for i in range(2, ctx.g - 1)),
    )
