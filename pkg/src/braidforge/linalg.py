"""Exact-rational and floating dense linear algebra kernels.

Everything downstream of the numeric braid checks runs over exact rationals:
relation-set equality is exact or meaningless.  Rationals are ``fractions.
Fraction`` (always lowest terms, positive denominator).  The float lane is
plain numpy and is used only for the spectral-parameter (theta-dependent)
matrix identities.

Conventions frozen here:

* A two-site index pair (i, j) with i, j in {1..n} maps to the row-major
  index n*(i-1) + (j-1).  All matrix displays and embeddings are read with
  this convention.
* Row reduction is deterministic: leftmost nonzero column becomes the next
  pivot, rows are consumed in the order given.  The resulting reduced row
  echelon basis is a canonical form, so two subspaces are equal iff their
  bases compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random

import numpy as np

QQ = Fraction


def _as_qq(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


class Matrix:
    """Dense matrix over exact rationals."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        self.rows = [[_as_qq(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        assert all(len(r) == self.ncols for r in self.rows)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[QQ(1) if i == j else QQ(0) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[QQ(0)] * ncols for _ in range(nrows)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.rows[i][j] = _as_qq(value)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __add__(self, other: "Matrix") -> "Matrix":
        assert self.shape == other.shape
        return Matrix([[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        assert self.shape == other.shape
        return Matrix([[a - b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __rmul__(self, scalar) -> "Matrix":
        c = _as_qq(scalar)
        return Matrix([[c * x for x in row] for row in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        assert self.ncols == other.nrows, (self.shape, other.shape)
        cols = list(zip(*other.rows))
        return Matrix([[sum(a * b for a, b in zip(row, col) if a) or QQ(0)
                        for col in cols] for row in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix([list(col) for col in zip(*self.rows)])

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.nrows)

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.rows])

    def inverse(self) -> "Matrix":
        n = self.nrows
        assert n == self.ncols
        aug = [list(row) + [QQ(1) if i == j else QQ(0) for j in range(n)]
               for i, row in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise ValueError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return Matrix([row[n:] for row in aug])

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


def kron(a, b):
    """Kronecker product; block (i, j) of the result equals a[i][j] * b.

    Both operands must live in the same scalar lane (two exact matrices or
    two float arrays); mixing the lanes is an error.
    """
    if isinstance(a, Matrix) and isinstance(b, Matrix):
        out = []
        for arow in a.rows:
            for brow in b.rows:
                out.append([x * y for x in arow for y in brow])
        return Matrix(out)
    if isinstance(a, np.ndarray) and isinstance(b, np.ndarray):
        return np.kron(a, b)
    raise TypeError("kron operands mix exact and float scalar kinds")


def permutation_matrix(n: int):
    """The two-site flip P with P[(i,j),(k,l)] = [i==l][j==k]; P @ P = I."""
    assert n >= 1
    size = n * n
    P = Matrix.zeros(size, size)
    for i in range(n):
        for j in range(n):
            P[i * n + j, j * n + i] = 1
    return P


def embed_site(a, slot: str, n: int = 3):
    """Embed an n^2 x n^2 two-site operator into the triple tensor product.

    slot "12" -> a (x) I_n, slot "23" -> I_n (x) a, and slot "13" conjugates
    the 12-embedding by the flip on the last two factors:
    (I (x) P)(a (x) I)(I (x) P).
    """
    exact = isinstance(a, Matrix)
    size = a.nrows if exact else a.shape[0]
    if size != n * n:
        raise ValueError(f"expected a {n * n}x{n * n} operator, got {size}")
    eye = Matrix.identity(n) if exact else np.eye(n)
    if slot == "12":
        return kron(a, eye)
    if slot == "23":
        return kron(eye, a)
    if slot == "13":
        P = permutation_matrix(n)
        if not exact:
            P = P.to_float()
        conj = kron(eye, P)
        return conj @ kron(a, eye) @ conj
    raise ValueError(f"unknown slot {slot!r}")


def embed_site_13_alt(a, n: int = 3):
    """Equivalent site-13 embedding through the flip on the first two factors."""
    exact = isinstance(a, Matrix)
    eye = Matrix.identity(n) if exact else np.eye(n)
    P = permutation_matrix(n)
    if not exact:
        P = P.to_float()
    conj = kron(P, eye)
    return conj @ kron(eye, a) @ conj


# ---------------------------------------------------------------------------
# sparse exact vectors and reduced row echelon subspaces

SparseVec = dict  # column index -> Fraction, zero entries never stored


def vec_from_dense(values) -> SparseVec:
    return {i: _as_qq(v) for i, v in enumerate(values) if v}


def vec_scale(v: SparseVec, c: Fraction) -> SparseVec:
    return {} if not c else {k: c * x for k, x in v.items()}


def vec_add_scaled(dst: SparseVec, src: SparseVec, c: Fraction) -> None:
    """dst += c * src, dropping entries that cancel."""
    if not c:
        return
    for k, x in src.items():
        val = dst.get(k, QQ(0)) + c * x
        if val:
            dst[k] = val
        else:
            dst.pop(k, None)


@dataclass(frozen=True)
class Subspace:
    """Row space in canonical reduced row echelon form.

    ``rows[i]`` is a sparse vector whose leading (pivot) column is
    ``pivots[i]``; pivots are strictly increasing, each pivot entry is 1 and
    its column is zero in every other row.  Equality of the frozen bases is
    equality of subspaces.
    """

    ambient: int
    rows: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: SparseVec) -> SparseVec:
        """Residual of vec after eliminating all pivot coordinates."""
        out = dict(vec)
        for piv, row in zip(self.pivots, self.rows):
            c = out.get(piv)
            if c:
                vec_add_scaled(out, row, -c)
        return out

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.rows)

    def non_pivots(self):
        pivset = set(self.pivots)
        return [j for j in range(self.ambient) if j not in pivset]


def rref(vectors, ambient: int) -> Subspace:
    """Canonical RREF span of the given sparse vectors.

    Deterministic: vectors are consumed in order, the leftmost nonzero
    column of each residual becomes its pivot, and existing rows are
    back-eliminated immediately, so the result is the canonical form of the
    span no matter how the spanning set was ordered.  A column-occupancy
    index keeps the cost proportional to the support actually touched,
    which matters for the large graded-ideal computations.
    """
    pivot_rows = {}   # pivot column -> sparse row
    occupants = {}    # column -> set of pivot columns whose rows touch it
    for vec in vectors:
        work = dict(vec)
        # pivot rows never contain other pivot columns, so eliminating the
        # pivots present in the input support is a single pass
        for piv in sorted(k for k in work if k in pivot_rows):
            c = work.get(piv)
            if c:
                vec_add_scaled(work, pivot_rows[piv], -c)
        if not work:
            continue
        lead = min(work)
        inv = 1 / work[lead]
        work = vec_scale(work, inv)
        for piv in list(occupants.get(lead, ())):
            row = pivot_rows[piv]
            c = row.get(lead)
            if c:
                vec_add_scaled(row, work, -c)
                for col in work:
                    bucket = occupants.setdefault(col, set())
                    if col in row:
                        bucket.add(piv)
                    else:
                        bucket.discard(piv)
        for col in work:
            occupants.setdefault(col, set()).add(lead)
        pivot_rows[lead] = work
    pivots = tuple(sorted(pivot_rows))
    rows = tuple(dict(pivot_rows[p]) for p in pivots)
    return Subspace(ambient=ambient, rows=rows, pivots=pivots)


def rref_dense_shuffled(vectors, ambient: int, seed: int = 1) -> Subspace:
    """Independent RREF strategy: dense Gauss-Jordan over a shuffled row order.

    Used as a cross-check oracle; the canonical form must agree with
    :func:`rref` regardless of row order.
    """
    rows = [[QQ(0)] * ambient for _ in vectors]
    for out, vec in zip(rows, vectors):
        for k, x in vec.items():
            out[k] = x
    random.Random(seed).shuffle(rows)
    pivots = []
    r = 0
    for col in range(ambient):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    out_rows = tuple({j: x for j, x in enumerate(rows[i]) if x} for i in range(r))
    return Subspace(ambient=ambient, rows=out_rows, pivots=tuple(pivots))


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    if a.ambient != b.ambient:
        raise ValueError("ambient dimensions differ")
    return a.pivots == b.pivots and a.rows == b.rows


class QuotientMap:
    """Surjection of the ambient space onto coordinates of M / R.

    Quotient coordinates are indexed by the non-pivot columns of the
    relation subspace; q(v) reads off those coordinates after reducing v by
    the relation basis.  ker(q) is exactly the relation subspace and
    rank(q) + dim(R) = ambient.
    """

    def __init__(self, relations: Subspace):
        self.relations = relations
        self.coords = relations.non_pivots()
        self.coord_pos = {c: i for i, c in enumerate(self.coords)}

    @property
    def rank(self) -> int:
        return len(self.coords)

    def apply(self, vec: SparseVec) -> SparseVec:
        red = self.relations.reduce(vec)
        return {self.coord_pos[c]: x for c, x in red.items()}

    def matrix(self) -> Matrix:
        """Dense matrix of the map, rows indexed by non-pivot columns."""
        m = Matrix.zeros(self.rank, self.relations.ambient)
        for i, c in enumerate(self.coords):
            m[i, c] = 1
        for piv, row in zip(self.relations.pivots, self.relations.rows):
            for c, x in row.items():
                if c in self.coord_pos:
                    m[self.coord_pos[c], piv] = -x
        return m


def quotient_projection(relations: Subspace) -> QuotientMap:
    return QuotientMap(relations)
