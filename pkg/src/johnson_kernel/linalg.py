"""
Exact integer linear algebra.

Everything here works on Python ints, so entries never overflow. Matrices are
immutable; all routines copy into plain lists internally and return new
objects.

Conventions:

* Hermite normal form is row style: pivots are positive, each pivot sits
  strictly to the right of the one above it, and entries above a pivot lie in
  ``[0, pivot)``. Zero rows are dropped, so the result is a basis.
* ``snf(M)`` returns ``(D, S, T)`` with ``D == S @ M @ T``; ``S`` and ``T`` are
  unimodular and the diagonal of ``D`` is non-negative with each entry dividing
  the next.
* ``kernel_lattice`` returns the full integer kernel, which is automatically
  saturated (``k * x`` in the kernel implies ``x`` in the kernel).
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, InvalidInputError

__all__ = [
    "IntMatrix",
    "LatticeBasis",
    "det",
    "hnf",
    "hnf_rows",
    "snf",
    "elementary_divisors",
    "kernel_lattice",
    "lattice_equal",
    "lattice_from_generators",
    "lattice_contains",
    "rank",
]


def _as_int(x):
    if isinstance(x, bool):
        raise InvalidInputError("booleans are not matrix entries")
    try:
        return operator.index(x)
    except TypeError:
        raise InvalidInputError(f"matrix entries must be integers, got {x!r}") from None


class IntMatrix:
    """Dense immutable matrix of arbitrary-precision integers."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Iterable[Sequence[int]] = (), cols: int | None = None):
        data = tuple(tuple(_as_int(x) for x in row) for row in entries)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise DimensionError("ragged rows")
        object.__setattr__(self, "_data", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def _raw(cls, data, cols):
        # trusted constructor: data is a tuple of int tuples of length cols
        m = object.__new__(cls)
        object.__setattr__(m, "_data", data)
        object.__setattr__(m, "rows", len(data))
        object.__setattr__(m, "cols", cols)
        return m

    @classmethod
    def _from_lists(cls, rows, cols):
        return cls._raw(tuple(tuple(r) for r in rows), cols)

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, rows, cols):
        return cls._raw(tuple((0,) * cols for _ in range(rows)), cols)

    @classmethod
    def diag(cls, values):
        values = [_as_int(v) for v in values]
        n = len(values)
        return cls._raw(
            tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [tuple(_as_int(x) for x in c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(c) != rows for c in columns):
            raise DimensionError("columns of unequal length")
        return cls._raw(tuple(tuple(c[i] for c in columns) for i in range(rows)), len(columns))

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def col(self, j):
        return tuple(r[j] for r in self._data)

    def tolist(self):
        return [list(r) for r in self._data]

    def rows_tuple(self):
        return self._data

    @property
    def T(self):
        if not (self.rows and self.cols):
            return IntMatrix.zeros(self.cols, self.rows)
        return IntMatrix._raw(tuple(zip(*self._data)), self.rows)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same_shape(other)
        return IntMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        return IntMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __neg__(self):
        return IntMatrix._raw(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def scale(self, c):
        c = _as_int(c)
        return IntMatrix._raw(tuple(tuple(c * a for a in r) for r in self._data), self.cols)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            other_rows = other._data
            n = other.cols
            out = []
            for r in self._data:
                acc = [0] * n
                for k, a in enumerate(r):
                    if a:
                        orow = other_rows[k]
                        for j in range(n):
                            b = orow[j]
                            if b:
                                acc[j] += a * b
                out.append(tuple(acc))
            return IntMatrix._raw(tuple(out), n)
        vec = tuple(_as_int(x) for x in other)
        if len(vec) != self.cols:
            raise DimensionError(f"cannot apply {self.shape} matrix to length-{len(vec)} vector")
        return tuple(sum(a * b for a, b in zip(r, vec) if a) for r in self._data)

    def submatrix(self, row_idx, col_idx):
        return IntMatrix._raw(
            tuple(tuple(self._data[i][j] for j in col_idx) for i in row_idx), len(col_idx)
        )

    @staticmethod
    def vstack(*mats):
        cols = {m.cols for m in mats}
        if len(cols) > 1:
            raise DimensionError("vstack needs equal column counts")
        return IntMatrix._raw(tuple(r for m in mats for r in m._data), cols.pop() if cols else 0)

    @staticmethod
    def hstack(*mats):
        rows = {m.rows for m in mats}
        if len(rows) > 1:
            raise DimensionError("hstack needs equal row counts")
        n = rows.pop() if rows else 0
        return IntMatrix._raw(
            tuple(tuple(x for m in mats for x in m._data[i]) for i in range(n)),
            sum(m.cols for m in mats),
        )

    # -- serialization -------------------------------------------------

    def to_text(self):
        lines = [f"{self.rows} {self.cols}"]
        lines.extend(" ".join(str(x) for x in r) for r in self._data)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        tokens = text.split()
        if len(tokens) < 2:
            raise InvalidInputError("matrix text needs a 'rows cols' header")
        try:
            nums = [int(t) for t in tokens]
        except ValueError as exc:
            raise InvalidInputError(f"bad matrix token: {exc}") from None
        r, c = nums[0], nums[1]
        if r < 0 or c < 0:
            raise InvalidInputError("negative matrix dimensions")
        body = nums[2:]
        if len(body) != r * c:
            raise DimensionError(f"expected {r * c} entries, found {len(body)}")
        return cls((body[i * c:(i + 1) * c] for i in range(r)), cols=c)

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols, "entries": self.tolist()}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            r, c, entries = obj["rows"], obj["cols"], obj["entries"]
        except (KeyError, TypeError):
            raise InvalidInputError("matrix JSON needs rows, cols and entries") from None
        m = cls(entries, cols=c)
        if m.rows != r:
            raise DimensionError(f"header says {r} rows, found {m.rows}")
        return m

    @classmethod
    def parse(cls, text):
        """Read either the JSON or the plain-text matrix format."""
        stripped = text.lstrip()
        if stripped.startswith("{"):
            return cls.from_json(json.loads(stripped))
        return cls.from_text(text)


@dataclass(frozen=True)
class LatticeBasis:
    """Linearly independent integer vectors spanning a sublattice of Z^n."""

    ambient_rank: int
    vectors: tuple

    def __post_init__(self):
        vecs = tuple(tuple(_as_int(x) for x in v) for v in self.vectors)
        if any(len(v) != self.ambient_rank for v in vecs):
            raise DimensionError("basis vector length differs from ambient rank")
        object.__setattr__(self, "vectors", vecs)
        if len(_echelon([list(v) for v in vecs], self.ambient_rank)[1]) != len(vecs):
            raise InvalidInputError("basis vectors are linearly dependent")

    @property
    def rank(self):
        return len(self.vectors)

    def as_matrix(self):
        """Basis vectors as the rows of a matrix."""
        return IntMatrix(self.vectors, cols=self.ambient_rank)

    def to_json(self):
        return {"ambient_rank": self.ambient_rank, "vectors": [list(v) for v in self.vectors]}


# -- determinant -------------------------------------------------------------


def det(M: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if not M.is_square:
        raise DimensionError(f"determinant of non-square {M.shape} matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                # exact division is the Bareiss (Sylvester) identity
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


# -- echelon / Hermite -------------------------------------------------------


def _echelon(a, ncols, reduce_above=True):
    """Row-reduce ``a`` in place over Z using only its first ``ncols`` columns.

    Returns ``(a, pivots)``: rows ``0..len(pivots)-1`` carry the pivots, later
    rows vanish on the first ``ncols`` columns. Only unimodular row operations
    are used, so trailing columns record the transformation when augmented.
    """
    m = len(a)
    r = 0
    pivots = []
    for col in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][col]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(a[i][col]))
            if k != r:
                a[r], a[k] = a[k], a[r]
                nz = [r if i == k else (k if i == r else i) for i in nz]
            prow = a[r]
            p = prow[col]
            clean = True
            for i in nz:
                if i == r:
                    continue
                q = a[i][col] // p
                if q:
                    row = a[i]
                    a[i] = [x - q * y for x, y in zip(row, prow)]
                if a[i][col]:
                    clean = False
            if clean:
                break
        if r < m and a[r][col]:
            if a[r][col] < 0:
                a[r] = [-x for x in a[r]]
            if reduce_above:
                p = a[r][col]
                prow = a[r]
                for i in range(r):
                    q = a[i][col] // p
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], prow)]
            pivots.append(col)
            r += 1
    return a, pivots


def hnf_rows(rows, ncols):
    """Hermite normal form basis (tuple of row tuples) of the span of ``rows``."""
    a, pivots = _echelon([list(map(_as_int, r)) for r in rows], ncols)
    return tuple(tuple(a[i]) for i in range(len(pivots)))


def hnf(B: LatticeBasis) -> LatticeBasis:
    """Canonical row-style HNF basis of the lattice spanned by ``B``."""
    return LatticeBasis(B.ambient_rank, hnf_rows(B.vectors, B.ambient_rank))


def lattice_from_generators(vectors, ambient_rank) -> LatticeBasis:
    """HNF basis of the lattice generated by an arbitrary (possibly dependent) set."""
    return LatticeBasis(ambient_rank, hnf_rows(vectors, ambient_rank))


def rank(M: IntMatrix) -> int:
    return len(_echelon(M.tolist(), M.cols, reduce_above=False)[1])


def lattice_equal(B1: LatticeBasis, B2: LatticeBasis) -> bool:
    if B1.ambient_rank != B2.ambient_rank:
        raise DimensionError(
            f"ambient ranks differ: {B1.ambient_rank} vs {B2.ambient_rank}"
        )
    return hnf_rows(B1.vectors, B1.ambient_rank) == hnf_rows(B2.vectors, B2.ambient_rank)


def lattice_contains(B: LatticeBasis, v) -> bool:
    v = tuple(_as_int(x) for x in v)
    if len(v) != B.ambient_rank:
        raise DimensionError("vector length differs from ambient rank")
    base = hnf_rows(B.vectors, B.ambient_rank)
    return hnf_rows(base + (v,), B.ambient_rank) == base


def kernel_lattice(M: IntMatrix) -> LatticeBasis:
    """HNF basis of ``{x in Z^n : M x = 0}``."""
    m, n = M.shape
    # rows of [M^T | I]; unimodular reduction leaves kernel vectors in the tail
    aug = [[M[i, k] for i in range(m)] + [int(j == k) for j in range(n)] for k in range(n)]
    aug, pivots = _echelon(aug, m, reduce_above=False)
    kernel = [row[m:] for row in aug[len(pivots):]]
    return lattice_from_generators(kernel, n)


# -- Smith -------------------------------------------------------------------


def _snf_work(M: IntMatrix, track=True, track_inverse=False):
    m, n = M.shape
    a = M.tolist()
    S = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    Sinv = [[int(i == j) for j in range(m)] for i in range(m)] if track_inverse else None
    T = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if S is not None:
            S[i], S[j] = S[j], S[i]
        if Sinv is not None:
            for row in Sinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if T is not None:
            for row in T:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        if S is not None:
            S[dst] = [x + c * y for x, y in zip(S[dst], S[src])]
        if Sinv is not None:
            for row in Sinv:
                if row[dst]:
                    row[src] -= c * row[dst]

    def add_col(dst, src, c):
        for row in a:
            if row[src]:
                row[dst] += c * row[src]
        if T is not None:
            for row in T:
                if row[src]:
                    row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if S is not None:
            S[i] = [-x for x in S[i]]
        if Sinv is not None:
            for row in Sinv:
                row[i] = -row[i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i0, j0 = best
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        add_row(i, t, -q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        add_col(j, t, -q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a smaller remainder exists in row t or column t; make it the pivot
                cands = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i0, j0 = min(cands)
                if i0 != t:
                    swap_rows(t, i0)
                if j0 != t:
                    swap_cols(t, j0)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            negate_row(t)
    return a, S, T, Sinv


def snf(M: IntMatrix):
    """Smith normal form ``(D, S, T)`` with ``D == S @ M @ T``."""
    a, S, T, _ = _snf_work(M)
    m, n = M.shape
    return (
        IntMatrix._from_lists(a, n),
        IntMatrix._from_lists(S, m),
        IntMatrix._from_lists(T, n),
    )


def snf_with_inverse(M: IntMatrix):
    """Like :func:`snf` but also returns ``S^{-1}``, accumulated alongside ``S``."""
    a, S, T, Sinv = _snf_work(M, track_inverse=True)
    m, n = M.shape
    return (
        IntMatrix._from_lists(a, n),
        IntMatrix._from_lists(S, m),
        IntMatrix._from_lists(T, n),
        IntMatrix._from_lists(Sinv, m),
    )


def elementary_divisors(M: IntMatrix):
    """Nonzero diagonal entries of the Smith form, in divisibility order."""
    a, _, _, _ = _snf_work(M, track=False)
    out = []
    for i in range(min(M.shape)):
        if a[i][i]:
            out.append(a[i][i])
    return tuple(out)
