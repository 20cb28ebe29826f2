"""
The symplectic lattice H = Z^{2g}.

Coordinates are ordered ``(A_1, B_1, A_2, B_2, ..., A_g, B_g)`` and the
intersection form is ``x . y = x^T J y`` with ``A_i . B_i = +1``, so ``J`` is
block diagonal with blocks ``[[0, 1], [-1, 0]]``. Mathematical indices
(handles, ``p``, ``q``) are 1-based throughout the package.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import DimensionError, InvalidInputError
from .linalg import IntMatrix

__all__ = [
    "SymplecticContext",
    "HVector",
    "SpElement",
    "intersection",
    "transvection",
    "is_symplectic",
    "psi_pq",
    "primitive_part",
    "symplectic_form",
]


@lru_cache(maxsize=None)
def symplectic_form(g):
    rows = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return IntMatrix(rows)


@dataclass(frozen=True)
class SymplecticContext:
    g: int

    def __post_init__(self):
        if not isinstance(self.g, int) or self.g < 2:
            raise InvalidInputError(f"genus must be an integer >= 2, got {self.g!r}")

    @property
    def dim(self):
        return 2 * self.g

    @cached_property
    def J(self) -> IntMatrix:
        return symplectic_form(self.g)

    def vector(self, coords):
        return HVector(self.g, coords)

    def zero(self):
        return HVector(self.g, (0,) * self.dim)

    def basis_vector(self, k):
        """The k-th coordinate vector (0-based position in the ordering)."""
        return HVector(self.g, tuple(int(j == k) for j in range(self.dim)))

    def A(self, i):
        self._check_handle(i)
        return self.basis_vector(2 * i - 2)

    def B(self, i):
        self._check_handle(i)
        return self.basis_vector(2 * i - 1)

    def _check_handle(self, i):
        if not 1 <= i <= self.g:
            raise InvalidInputError(f"handle index {i} outside 1..{self.g}")


@dataclass(frozen=True)
class HVector:
    """An element of H_1 in the (A_1, B_1, ...) coordinates."""

    g: int
    coords: tuple

    def __post_init__(self):
        coords = tuple(operator.index(c) for c in self.coords)
        if len(coords) != 2 * self.g:
            raise DimensionError(f"expected {2 * self.g} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    def _same(self, other):
        if not isinstance(other, HVector):
            return NotImplemented
        if other.g != self.g:
            raise DimensionError(f"genus mismatch {self.g} vs {other.g}")
        return other

    def __add__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return HVector(self.g, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return HVector(self.g, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return HVector(self.g, tuple(-a for a in self.coords))

    def __rmul__(self, n):
        return HVector(self.g, tuple(n * a for a in self.coords))

    def is_zero(self):
        return not any(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def to_json(self):
        return {"g": self.g, "coords": list(self.coords)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["g"], obj["coords"])


def _check_ctx_vec(ctx, *vs):
    for v in vs:
        if v.g != ctx.g:
            raise DimensionError(f"vector of genus {v.g} used in genus-{ctx.g} context")


def intersection(ctx: SymplecticContext, x: HVector, y: HVector) -> int:
    _check_ctx_vec(ctx, x, y)
    xs, ys = x.coords, y.coords
    return sum(xs[2 * i] * ys[2 * i + 1] - xs[2 * i + 1] * ys[2 * i] for i in range(ctx.g))


def is_symplectic(ctx: SymplecticContext, M: IntMatrix) -> bool:
    if M.shape != (ctx.dim, ctx.dim):
        raise DimensionError(f"expected {ctx.dim}x{ctx.dim}, got {M.shape}")
    return M.T @ ctx.J @ M == ctx.J


@dataclass(frozen=True)
class SpElement:
    """An element of Sp(2g, Z); the symplectic condition is checked on construction."""

    matrix: IntMatrix

    def __post_init__(self):
        M = self.matrix
        if not isinstance(M, IntMatrix):
            M = IntMatrix(M)
            object.__setattr__(self, "matrix", M)
        if not M.is_square or M.rows % 2 or M.rows < 4:
            raise DimensionError(f"not a 2g x 2g matrix with g >= 2: {M.shape}")
        J = symplectic_form(M.rows // 2)
        if M.T @ J @ M != J:
            raise InvalidInputError("matrix is not symplectic")

    @property
    def g(self):
        return self.matrix.rows // 2

    @classmethod
    def identity(cls, ctx):
        return cls(IntMatrix.identity(ctx.dim))

    def __matmul__(self, other):
        if isinstance(other, SpElement):
            if other.g != self.g:
                raise DimensionError(f"genus mismatch {self.g} vs {other.g}")
            return SpElement(self.matrix @ other.matrix)
        if isinstance(other, HVector):
            if other.g != self.g:
                raise DimensionError(f"genus mismatch {self.g} vs {other.g}")
            return HVector(self.g, self.matrix @ other.coords)
        return NotImplemented

    def inverse(self):
        # M^T J M = J gives M^{-1} = J^{-1} M^T J = -J M^T J
        J = symplectic_form(self.g)
        return SpElement(-(J @ self.matrix.T @ J))

    def to_json(self):
        return self.matrix.to_json()

    @classmethod
    def from_json(cls, obj):
        return cls(IntMatrix.from_json(obj))


def transvection(ctx: SymplecticContext, a: HVector) -> SpElement:
    """Matrix of x -> x + (x . a) a, i.e. I + a (J a)^T."""
    _check_ctx_vec(ctx, a)
    if a.is_zero():
        raise InvalidInputError("transvection along the zero vector")
    Ja = ctx.J @ a.coords
    n = ctx.dim
    rows = [[int(i == j) + a.coords[i] * Ja[j] for j in range(n)] for i in range(n)]
    return SpElement(IntMatrix(rows))


def psi_pq(ctx: SymplecticContext, p: int, q: int) -> SpElement:
    """The symplectic map mixing handles p and q used to build the embeddings f_{p,q}.

    A_p -> A_p + A_q + B_q, B_p -> A_p + B_p, A_q -> A_q + A_p + B_p,
    B_q -> A_q + B_q, identity on the other handles.
    """
    if not (isinstance(p, int) and isinstance(q, int) and 1 <= p < q <= ctx.g):
        raise InvalidInputError(f"need 1 <= p < q <= {ctx.g}, got p={p}, q={q}")
    A, B = ctx.A, ctx.B
    images = {
        2 * p - 2: A(p) + A(q) + B(q),
        2 * p - 1: A(p) + B(p),
        2 * q - 2: A(q) + A(p) + B(p),
        2 * q - 1: A(q) + B(q),
    }
    cols = [images.get(k, ctx.basis_vector(k)).coords for k in range(ctx.dim)]
    return SpElement(IntMatrix.from_columns(cols))


def primitive_part(x: HVector):
    """Split x = n * a with n > 0 and a primitive."""
    n = math.gcd(*x.coords)
    if n == 0:
        raise InvalidInputError("the zero vector has no primitive part")
    return n, HVector(x.g, tuple(c // n for c in x.coords))
