"""Exact rational linear algebra: matrices, canonical subspaces, duality.

Every value is exact (Python ints and ``fractions.Fraction``); there is no
floating point anywhere in this package.  Scalars that happen to be integral
are normalized back to ``int`` so that all-integer data stays on the fast
integer path.

A :class:`Subspace` is stored through the unique reduced row echelon basis of
its row space, with zero rows dropped.  Two subspaces are equal iff their
canonical bases are identical, which makes subspaces hashable and usable in
sets and dict keys.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]
Vector = tuple[Scalar, ...]


class DimensionMismatch(ValueError):
    """Operands live in different ambient spaces."""


def _norm(x: Scalar) -> Scalar:
    """Collapse integral Fractions to int."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def as_scalar(value) -> Scalar:
    """Coerce ints, Fractions and "p/q" strings to a normalized scalar."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return _norm(value)
    if isinstance(value, str):
        return _norm(Fraction(value))
    raise TypeError(f"cannot interpret {value!r} as a rational scalar")


def format_scalar(x: Scalar) -> str:
    """Render a scalar as "p" or "p/q" (the JSON wire format)."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def vec_sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(_norm(a - b) for a, b in zip(u, v))


def vec_add(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(_norm(a + b) for a, b in zip(u, v))


def vec_scale(c: Scalar, v: Sequence[Scalar]) -> Vector:
    return tuple(_norm(c * a) for a in v)


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return all(a == 0 for a in v)


def primitive_vector(v: Sequence[Scalar]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector.

    The result has coprime integer entries and a positive leading nonzero
    entry, so two vectors are proportional over Q iff their primitive forms
    are equal.  Raises on the zero vector.
    """
    fracs = [Fraction(a) for a in v]
    denom = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * denom) for f in fracs]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [a // g for a in ints]
    lead = next(a for a in ints if a != 0)
    if lead < 0:
        ints = [-a for a in ints]
    return tuple(ints)


class Matrix:
    """Immutable dense matrix of rational scalars, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        self.rows = rows
        self.cols = cols
        self.entries = tuple(_norm(as_scalar(e) if isinstance(e, str) else e) for e in entries)
        if len(self.entries) != rows * cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: int | None = None) -> "Matrix":
        rows = [tuple(r) for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        flat = [e for r in rows for e in r]
        return cls(len(rows), cols, flat)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def apply(self, v: Sequence[Scalar]) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        e = self.entries
        c = self.cols
        out = []
        for i in range(self.rows):
            base = i * c
            s = 0
            for j in range(c):
                s += e[base + j] * v[j]
            out.append(_norm(s))
        return tuple(out)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        a, b = self.entries, other.entries
        n, k, m = self.rows, self.cols, other.cols
        out = []
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            for j in range(m):
                s = 0
                for t in range(k):
                    s += arow[t] * b[t * m + j]
                out.append(_norm(s))
        return Matrix(n, m, out)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("shapes differ")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        rows = [" ".join(format_scalar(x) for x in self.row(i)) for i in range(self.rows)]
        return "Matrix[" + "; ".join(rows) + f"]({self.rows}x{self.cols})"

    def transpose(self) -> "Matrix":
        out = [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)]
        return Matrix(self.cols, self.rows, out)

    def inverse(self) -> "Matrix":
        """Exact inverse via Gauss-Jordan on the augmented matrix."""
        if self.rows != self.cols:
            raise ValueError("only square matrices can be inverted")
        n = self.rows
        aug = [list(self.row(i)) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise ValueError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            if pv != 1:
                inv = Fraction(1, 1) / pv
                aug[col] = [_norm(x * inv) for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [_norm(x - f * y) for x, y in zip(aug[r], aug[col])]
        return Matrix.from_rows([row[n:] for row in aug])

    def is_invertible(self) -> bool:
        if self.rows != self.cols:
            return False
        r, _ = rref(self)
        return r.rows == self.rows

    def to_lists(self) -> list[list[str]]:
        return [[format_scalar(x) for x in self.row(i)] for i in range(self.rows)]


def matrix_from_lists(data: Sequence[Sequence], cols: int | None = None) -> Matrix:
    """Build a matrix from nested lists of ints / "p/q" strings."""
    rows = [[as_scalar(x) for x in row] for row in data]
    return Matrix.from_rows(rows, cols=cols)


def _rref_rows(rows: list[list[Scalar]], cols: int) -> tuple[list[Vector], list[int]]:
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(cols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        if pv != 1:
            inv = Fraction(1, 1) / pv
            rows[r] = [_norm(x * inv) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [_norm(x - f * y) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in rows[:r]], pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Unique reduced row echelon form with zero rows dropped, plus pivots."""
    rows = [list(m.row(i)) for i in range(m.rows)]
    reduced, pivots = _rref_rows(rows, m.cols)
    return Matrix.from_rows(reduced, cols=m.cols), pivots


class Subspace:
    """A linear subspace of Q^n through its canonical RREF basis.

    ``basis`` is a (dim x ambient_dim) matrix whose rows are the unique
    reduced-echelon basis; equality and hashing are literal equality of that
    matrix.  Instances are immutable.
    """

    __slots__ = ("ambient_dim", "basis", "dim", "pivots", "_ann", "_int_rows", "_hash")

    def __init__(self, ambient_dim: int, basis: Matrix, pivots: Sequence[int]):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.dim = basis.rows
        self.pivots = tuple(pivots)
        self._ann: "Subspace | None" = None
        self._int_rows: tuple[tuple[int, ...], ...] | None = None
        self._hash: int | None = None

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable[Sequence[Scalar]]) -> "Subspace":
        rows = [list(v) for v in vectors]
        for row in rows:
            if len(row) != ambient_dim:
                raise DimensionMismatch("vector length does not match ambient dimension")
        reduced, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, Matrix.from_rows(reduced, cols=ambient_dim), pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.from_rows([], cols=ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim), range(ambient_dim))

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def basis_rows(self) -> list[Vector]:
        return self.basis.row_list()

    def int_rows(self) -> tuple[tuple[int, ...], ...]:
        """Primitive integer scaling of the basis rows (cached)."""
        if self._int_rows is None:
            self._int_rows = tuple(primitive_vector(r) for r in self.basis_rows())
        return self._int_rows

    def contains_vector(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        w = list(v)
        for row, p in zip(self.basis_rows(), self.pivots):
            c = w[p]
            if c != 0:
                for j in range(p, self.ambient_dim):
                    w[j] -= c * row[j]
        return all(x == 0 for x in w)

    def __contains__(self, v) -> bool:
        return self.contains_vector(v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis.entries == other.basis.entries
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.basis.entries))
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def sort_key(self):
        """Deterministic ordering key: by dimension, then basis entries."""
        ent = tuple((Fraction(x).numerator, Fraction(x).denominator) for x in self.basis.entries)
        return (self.dim, ent)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "dim": self.dim, "basis": self.basis.to_lists()}


def kernel(m: Matrix) -> Subspace:
    """The canonical solution space of M v = 0 in Q^cols."""
    reduced, pivots = rref(m)
    n = m.cols
    free = [c for c in range(n) if c not in pivots]
    vectors = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = _norm(-reduced.entries[i * n + f])
        vectors.append(v)
    return Subspace.from_vectors(n, vectors)


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("subspaces live in different ambient spaces")


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Canonical intersection, computed through the annihilators."""
    _check_same_ambient(a, b)
    if a == b:
        return a
    rows = annihilator(a).basis_rows() + annihilator(b).basis_rows()
    return kernel(Matrix.from_rows(rows, cols=a.ambient_dim))


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    """Canonical sum A + B."""
    _check_same_ambient(a, b)
    return Subspace.from_vectors(a.ambient_dim, a.basis_rows() + b.basis_rows())


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff B is a subspace of A."""
    _check_same_ambient(a, b)
    if b.dim > a.dim:
        return False
    return all(a.contains_vector(r) for r in b.basis_rows())


def annihilator(a: Subspace) -> Subspace:
    """Functionals vanishing on A, as a subspace of the dual (cached)."""
    if a._ann is None:
        a._ann = kernel(a.basis) if a.dim else Subspace.full(a.ambient_dim)
    return a._ann


def quotient_coords(u: Subspace) -> Matrix:
    """Deterministic coordinates on V/U: a (codim x ambient) matrix Q.

    Q v = 0 exactly for v in U, and Q v represents the class of v.  The rows
    are the primitive integer scaling of the annihilator basis, so integer
    vectors keep integer quotient coordinates.
    """
    ann = annihilator(u)
    if ann.dim == 0:
        return Matrix.from_rows([], cols=u.ambient_dim)
    return Matrix.from_rows([primitive_vector(r) for r in ann.basis_rows()])


def transform_subspace(m: Matrix, s: Subspace) -> Subspace:
    """Image of a subspace under an invertible matrix."""
    return Subspace.from_vectors(s.ambient_dim, [m.apply(r) for r in s.basis_rows()])


def quotient_lift(u: Subspace) -> Matrix:
    """An integer right inverse L of quotient_coords(U) up to positive scale.

    quotient_coords(U) @ (L r) is a positive multiple of r, so L lifts
    projective quotient classes back to V.  Rows of Q are scaled RREF rows of
    the annihilator; the lift puts r_i / (pivot scale) at the pivot column,
    cleared to integers by the common pivot lcm.
    """
    q = quotient_coords(u)
    ann = annihilator(u)
    if ann.dim == 0:
        return Matrix.from_rows([], cols=0)
    pivots = ann.pivots
    scales = [q.entries[i * q.cols + p] for i, p in enumerate(pivots)]
    common = lcm(*(int(s) for s in scales))
    cols = q.rows
    rows = [[0] * cols for _ in range(q.cols)]
    for i, p in enumerate(pivots):
        rows[p][i] = common // int(scales[i])
    return Matrix.from_rows(rows, cols=cols)
