"""Exact rational linear algebra on dense matrices.

Everything in this package computes over the rationals with arbitrary
precision (`fractions.Fraction`); there is no floating point and no rounding
anywhere. This module provides the dense matrix type, Gauss-Jordan reduction,
kernels, a canonical subspace representation with lattice operations, and the
quotient-space machinery the dilation constructions are built on.

All values are immutable after construction and all operations are pure
functions, so everything here is safe to share between threads.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

Rational = Fraction

Scalar = Fraction | int | str


def rat(value: Scalar) -> Fraction:
    """Coerce an int, a Fraction, or a string like ``"-3/7"`` to a rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(value: Fraction) -> str:
    """Render a rational as ``"p/q"``, or just ``"p"`` when q = 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a structural validation; truthy iff no problems were found."""

    problems: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return not self.problems

    @property
    def ok(self) -> bool:
        return not self.problems

    def message(self) -> str:
        return "; ".join(self.problems) if self.problems else "ok"


class RationalMatrix:
    """Immutable dense matrix of exact rationals, stored row-major."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        flat = tuple(rat(x) for x in entries)
        if len(flat) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_entries", flat)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "RationalMatrix":
        if not rows:
            raise ValueError("from_rows needs at least one row; use the constructor for empty matrices")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def column(cls, entries: Sequence[Scalar]) -> "RationalMatrix":
        return cls(len(entries), 1, entries)

    @classmethod
    def row_vector(cls, entries: Sequence[Scalar]) -> "RationalMatrix":
        return cls(1, len(entries), entries)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {key} out of range for {self.rows}x{self.cols} matrix")
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return self._entries[j :: self.cols] if self.cols else ()

    def to_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows, [self._entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)]
        )

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace needs a square matrix")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self._entries)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(self.rows, self.cols, [a + b for a, b in zip(self._entries, other._entries)])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(self.rows, self.cols, [a - b for a, b in zip(self._entries, other._entries)])

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, [-a for a in self._entries])

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            return self._matmul(other)
        return RationalMatrix(self.rows, self.cols, [a * rat(other) for a in self._entries])

    def __rmul__(self, other):
        return RationalMatrix(self.rows, self.cols, [rat(other) * a for a in self._entries])

    def _matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            left = self.row(i)
            for j in range(other.cols):
                acc = Fraction(0)
                for k, lv in enumerate(left):
                    if lv:
                        acc += lv * other._entries[k * other.cols + j]
                out.append(acc)
        return RationalMatrix(self.rows, other.cols, out)

    def apply(self, vector: Sequence[Scalar]) -> tuple[Fraction, ...]:
        """Matrix-vector product as a plain tuple."""
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} incompatible with {self.rows}x{self.cols}")
        vec = [rat(x) for x in vector]
        return tuple(
            sum((lv * vec[k] for k, lv in enumerate(self.row(i)) if lv), Fraction(0)) for i in range(self.rows)
        )

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ValueError("hstack needs matching row counts")
        out = []
        for i in range(self.rows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        return RationalMatrix(self.rows, self.cols + other.cols, out)

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise ValueError("vstack needs matching column counts")
        return RationalMatrix(self.rows + other.rows, self.cols, self._entries + other._entries)

    def take_rows(self, indices: Sequence[int]) -> "RationalMatrix":
        out = []
        for i in indices:
            out.extend(self.row(i))
        return RationalMatrix(len(indices), self.cols, out)

    def take_cols(self, indices: Sequence[int]) -> "RationalMatrix":
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(r[j] for j in indices)
        return RationalMatrix(self.rows, len(indices), out)

    def rank(self) -> int:
        return rref(self).rank

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._entries == other._entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rat_str(x) for x in self.row(i)) for i in range(self.rows))
        return f"RationalMatrix({self.rows}x{self.cols}: {body})"

    def _same_shape(self, other: "RationalMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")


def hstack_all(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    out = blocks[0]
    for b in blocks[1:]:
        out = out.hstack(b)
    return out


def vstack_all(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    out = blocks[0]
    for b in blocks[1:]:
        out = out.vstack(b)
    return out


def kron(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Kronecker product; block (i, j) of the result is a[i, j] * b."""
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            brow = b.row(k)
            for j in range(a.cols):
                aij = a[i, j]
                if aij:
                    out.extend(aij * x for x in brow)
                else:
                    out.extend([Fraction(0)] * b.cols)
    return RationalMatrix(a.rows * b.rows, a.cols * b.cols, out)


class RrefResult(NamedTuple):
    reduced: RationalMatrix
    pivot_cols: tuple[int, ...]
    rank: int


def rref(m: RationalMatrix) -> RrefResult:
    """Reduced row echelon form by Gauss-Jordan elimination.

    The RREF of a matrix over a field is unique, which makes it usable as a
    canonical form: two row spaces agree iff their RREFs agree.
    """
    a = [list(m.row(i)) for i in range(m.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, m.rows):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = a[r][c]
        if inv != 1:
            a[r] = [x / inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    reduced = RationalMatrix(m.rows, m.cols, [x for row in a for x in row])
    return RrefResult(reduced, tuple(pivots), r)


class Subspace:
    """A linear subspace of Q^n held in canonical form.

    The basis is the reduced row echelon form of any spanning set, one basis
    vector per row, pivot columns strictly increasing. Uniqueness of the RREF
    makes equality of ``Subspace`` values decide equality of the underlying
    point sets, which is what the classification results require.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: RationalMatrix):
        if basis.cols != ambient_dim:
            raise ValueError("basis width must equal the ambient dimension")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Sequence[Sequence[Scalar]]) -> "Subspace":
        vectors = [list(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise ValueError("vector length differs from the ambient dimension")
        if not vectors:
            return cls.zero(ambient_dim)
        m = RationalMatrix.from_rows(vectors)
        red = rref(m)
        return cls(ambient_dim, red.reduced.take_rows(range(red.rank)))

    @classmethod
    def from_matrix_rows(cls, m: RationalMatrix) -> "Subspace":
        red = rref(m)
        return cls(m.cols, red.reduced.take_rows(range(red.rank)))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RationalMatrix(0, ambient_dim, ()))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RationalMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def pivot_columns(self) -> tuple[int, ...]:
        pivots = []
        for i in range(self.basis.rows):
            row = self.basis.row(i)
            pivots.append(next(j for j, x in enumerate(row) if x != 0))
        return tuple(pivots)

    def contains_vector(self, vector: Sequence[Scalar]) -> bool:
        w = [rat(x) for x in vector]
        if len(w) != self.ambient_dim:
            raise ValueError("vector length differs from the ambient dimension")
        for i, p in enumerate(self.pivot_columns()):
            coeff = w[p]
            if coeff:
                row = self.basis.row(i)
                w = [x - coeff * y for x, y in zip(w, row)]
        return all(x == 0 for x in w)

    def contains(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        return all(self.contains_vector(other.basis.row(i)) for i in range(other.dim))

    def coordinates_of(self, vector: Sequence[Scalar]) -> tuple[Fraction, ...]:
        """Coefficients of ``vector`` in the canonical basis; the vector must lie in the subspace."""
        if not self.contains_vector(vector):
            raise ValueError("vector is not in the subspace")
        w = [rat(x) for x in vector]
        return tuple(w[p] for p in self.pivot_columns())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"

    def _same_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")


def kernel(m: RationalMatrix) -> Subspace:
    """Null space {v : m v = 0}, in canonical form."""
    red, pivots, rank = rref(m)
    free_cols = [c for c in range(m.cols) if c not in pivots]
    vectors = []
    for f in free_cols:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r, f]
        vectors.append(v)
    return Subspace.from_vectors(m.cols, vectors)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._same_ambient(b)
    rows = [a.basis.row(i) for i in range(a.dim)] + [b.basis.row(i) for i in range(b.dim)]
    return Subspace.from_vectors(a.ambient_dim, rows)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """Exact intersection via the kernel of [A^t | -B^t]."""
    a._same_ambient(b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    stacked = a.basis.transpose().hstack(-b.basis.transpose())
    null = kernel(stacked)
    vectors = []
    for i in range(null.dim):
        coeffs = null.basis.row(i)[: a.dim]
        vec = [Fraction(0)] * a.ambient_dim
        for r, c in enumerate(coeffs):
            if c:
                row = a.basis.row(r)
                vec = [x + c * y for x, y in zip(vec, row)]
        vectors.append(vec)
    return Subspace.from_vectors(a.ambient_dim, vectors)


class SubspaceOps(NamedTuple):
    sum: Subspace
    intersection: Subspace
    contains: bool
    equals: bool


def subspace_ops(a: Subspace, b: Subspace) -> SubspaceOps:
    """Sum, intersection, containment (a contains b) and set equality in one call."""
    return SubspaceOps(subspace_sum(a, b), subspace_intersection(a, b), a.contains(b), a == b)


def quotient(ambient_dim: int, k: Subspace) -> tuple[RationalMatrix, RationalMatrix]:
    """Projection/section pair for the quotient Q^n / k.

    The quotient coordinates are the non-pivot coordinates of k's canonical
    basis. Returns ``(projection, section)`` where projection is
    (n - dim k) x n with kernel exactly k, and projection * section is the
    identity on the quotient.
    """
    if k.ambient_dim != ambient_dim:
        raise ValueError("ambient dimensions differ")
    pivots = k.pivot_columns()
    nonpivots = [c for c in range(ambient_dim) if c not in pivots]
    proj_rows = []
    for q in nonpivots:
        row = [Fraction(0)] * ambient_dim
        row[q] = Fraction(1)
        for r, p in enumerate(pivots):
            row[p] = -k.basis[r, q]
        proj_rows.append(row)
    projection = RationalMatrix(len(nonpivots), ambient_dim, [x for row in proj_rows for x in row])
    section = RationalMatrix(
        ambient_dim,
        len(nonpivots),
        [1 if (i == q) else 0 for i in range(ambient_dim) for q in nonpivots],
    )
    return projection, section


def induced_map(m: RationalMatrix, k_dom: Subspace, k_cod: Subspace) -> RationalMatrix:
    """The map induced by ``m`` on the quotients by ``k_dom`` and ``k_cod``.

    Requires m(k_dom) to be contained in k_cod; otherwise the quotient map is
    not well defined and a ValueError("map does not descend") is raised.
    """
    if m.cols != k_dom.ambient_dim or m.rows != k_cod.ambient_dim:
        raise ValueError("matrix shape incompatible with the quotient ambient dimensions")
    for i in range(k_dom.dim):
        image = m.apply(k_dom.basis.row(i))
        if not k_cod.contains_vector(image):
            raise ValueError("map does not descend")
    p_cod, _ = quotient(k_cod.ambient_dim, k_cod)
    _, j_dom = quotient(k_dom.ambient_dim, k_dom)
    return p_cod * m * j_dom


def solve_right(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix | None:
    """One exact solution X of a X = b (free variables set to zero), or None."""
    if a.rows != b.rows:
        raise ValueError("row counts differ")
    red, pivots, rank = rref(a.hstack(b))
    if any(p >= a.cols for p in pivots):
        return None
    entries = [[Fraction(0)] * b.cols for _ in range(a.cols)]
    for r, p in enumerate(pivots):
        for j in range(b.cols):
            entries[p][j] = red[r, a.cols + j]
    return RationalMatrix(a.cols, b.cols, [x for row in entries for x in row])


def right_inverse(a: RationalMatrix) -> RationalMatrix | None:
    """X with a X = I, which exists iff a has full row rank."""
    return solve_right(a, RationalMatrix.identity(a.rows))


def inverse(a: RationalMatrix) -> RationalMatrix | None:
    if a.rows != a.cols:
        raise ValueError("only square matrices can be inverted")
    x = right_inverse(a)
    if x is None:
        return None
    return x if (x * a) == RationalMatrix.identity(a.rows) else None


def characteristic_polynomial(m: RationalMatrix) -> tuple[Fraction, ...]:
    """Monic characteristic polynomial det(xI - m), coefficients by descending power.

    Uses the Faddeev-LeVerrier recursion, which stays in exact rational
    arithmetic throughout.
    """
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = m.rows
    coeffs = [Fraction(1)]
    b = RationalMatrix.identity(n)
    for k in range(1, n + 1):
        ab = m * b
        c = -ab.trace() / k
        coeffs.append(c)
        b = ab + c * RationalMatrix.identity(n)
    return tuple(coeffs)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _poly_deflate(coeffs: list[Fraction], root: Fraction) -> list[Fraction]:
    # synthetic division by (x - root); assumes root is exact
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * root)
    return out


def rational_roots(coeffs: Sequence[Fraction]) -> tuple[list[tuple[Fraction, int]], int]:
    """All rational roots with multiplicities, plus the degree of the rootless remainder.

    A remainder degree of zero means the polynomial splits into linear factors
    over the rationals.
    """
    work = [rat(c) for c in coeffs]
    while len(work) > 1 and work[0] == 0:
        work.pop(0)
    roots: list[tuple[Fraction, int]] = []
    # root 0 first: strip trailing zero coefficients
    zero_mult = 0
    while len(work) > 1 and work[-1] == 0:
        work.pop()
        zero_mult += 1
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    if len(work) <= 1:
        return roots, 0
    # clear denominators so the rational root theorem applies
    from math import lcm

    denom = lcm(*[c.denominator for c in work]) if len(work) > 1 else 1
    iwork = [c * denom for c in work]
    lead = int(iwork[0])
    const = int(iwork[-1])
    candidates = []
    for p in _divisors(const):
        for q in _divisors(lead):
            candidates.append(Fraction(p, q))
            candidates.append(Fraction(-p, q))
    seen = set()
    for cand in candidates:
        if cand in seen:
            continue
        seen.add(cand)
        mult = 0
        while len(work) > 1 and _poly_eval(work, cand) == 0:
            work = _poly_deflate(work, cand)
            mult += 1
        if mult:
            roots.append((cand, mult))
        if len(work) <= 1:
            break
    return roots, len(work) - 1


def seeded_random_vector(dim: int, seed: int) -> tuple[Fraction, ...]:
    """Deterministic vector of small integer entries in [-10, 10].

    The output is a pure function of ``(dim, seed)``; identical calls produce
    identical vectors across runs.
    """
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    rng = random.Random(1_000_003 * seed + dim)
    return tuple(Fraction(rng.randint(-10, 10)) for _ in range(dim))
