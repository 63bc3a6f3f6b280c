"""Finite-dimensional unital associative algebras given by structure constants.

An algebra is described by a basis g_0, ..., g_{d-1}, the structure tensor
c with g_i g_j = sum_k c[i][j][k] g_k, and the coordinates of the identity
element. Builtin constructors cover the full matrix algebras M_n and the
upper triangular algebras T_n in fixed basis orders chosen so that the
left regular representation reproduces the familiar block displays.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Sequence

from .qlinalg import CheckResult, RationalMatrix, Scalar, Subspace, kernel, rat, vstack_all

if TYPE_CHECKING:  # pragma: no cover
    from .dilation import Representation
    from .linsys import LinearSystem

Coordinates = tuple[Fraction, ...]


class Algebra:
    """Unital associative algebra over the rationals, by structure constants."""

    __slots__ = ("dim", "labels", "structure", "unit")

    def __init__(
        self,
        dim: int,
        structure: Sequence[Sequence[Sequence[Scalar]]],
        unit: Sequence[Scalar],
        labels: Sequence[str] | None = None,
    ):
        if dim < 1:
            raise ValueError("algebra dimension must be at least 1")
        if len(structure) != dim or any(len(row) != dim for row in structure):
            raise ValueError("structure tensor must be dim x dim x dim")
        table = tuple(
            tuple(self._coords(entry, dim, f"structure[{i}][{j}]") for j, entry in enumerate(row))
            for i, row in enumerate(structure)
        )
        if labels is None:
            labels = tuple(f"g{i}" for i in range(dim))
        if len(labels) != dim:
            raise ValueError("one label per basis element")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "structure", table)
        object.__setattr__(self, "unit", self._coords(unit, dim, "unit"))
        object.__setattr__(self, "labels", tuple(labels))

    def __setattr__(self, name, value):
        raise AttributeError("Algebra is immutable")

    @staticmethod
    def _coords(entry: Sequence[Scalar], dim: int, what: str) -> Coordinates:
        coords = tuple(rat(x) for x in entry)
        if len(coords) != dim:
            raise ValueError(f"{what}: expected {dim} coordinates, got {len(coords)}")
        return coords

    def basis_vector(self, i: int) -> Coordinates:
        return tuple(Fraction(1) if j == i else Fraction(0) for j in range(self.dim))

    def product_coords(self, i: int, j: int) -> Coordinates:
        return self.structure[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Algebra)
            and self.dim == other.dim
            and self.structure == other.structure
            and self.unit == other.unit
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.structure, self.unit))

    def __repr__(self) -> str:
        return f"Algebra(dim {self.dim}, basis {', '.join(self.labels)})"


def mul(a: Algebra, x: Sequence[Scalar], y: Sequence[Scalar]) -> Coordinates:
    """Bilinear product of coordinate vectors via the structure constants."""
    xs = [rat(v) for v in x]
    ys = [rat(v) for v in y]
    if len(xs) != a.dim or len(ys) != a.dim:
        raise ValueError(f"coordinate vectors must have length {a.dim}")
    out = [Fraction(0)] * a.dim
    for i, xi in enumerate(xs):
        if not xi:
            continue
        for j, yj in enumerate(ys):
            if not yj:
                continue
            f = xi * yj
            for k, c in enumerate(a.structure[i][j]):
                if c:
                    out[k] += f * c
    return tuple(out)


def validate_algebra(a: Algebra) -> CheckResult:
    """Check associativity and the unit laws on every basis combination."""
    problems: list[str] = []
    for i in range(a.dim):
        e = a.basis_vector(i)
        if mul(a, a.unit, e) != e:
            problems.append(f"unit law fails on the left at basis element {a.labels[i]}")
            break
        if mul(a, e, a.unit) != e:
            problems.append(f"unit law fails on the right at basis element {a.labels[i]}")
            break
    for i in range(a.dim):
        for j in range(a.dim):
            left = a.structure[i][j]
            for k in range(a.dim):
                lhs = mul(a, left, a.basis_vector(k))
                rhs = mul(a, a.basis_vector(i), a.structure[j][k])
                if lhs != rhs:
                    problems.append(
                        f"associativity fails at triple ({a.labels[i]}, {a.labels[j]}, {a.labels[k]})"
                    )
                    return CheckResult(tuple(problems))
    return CheckResult(tuple(problems))


def _matrix_unit_algebra(pairs: list[tuple[int, int]], labels: list[str]) -> Algebra:
    # E_{ab} E_{cd} = delta_{bc} E_{ad}; any product landing outside the basis is zero
    index = {pair: k for k, pair in enumerate(pairs)}
    dim = len(pairs)
    structure = []
    for (r1, c1) in pairs:
        row = []
        for (r2, c2) in pairs:
            coords = [Fraction(0)] * dim
            if c1 == r2 and (r1, c2) in index:
                coords[index[(r1, c2)]] = Fraction(1)
            row.append(coords)
        structure.append(row)
    unit = [Fraction(0)] * dim
    for (r, c), k in index.items():
        if r == c:
            unit[k] = Fraction(1)
    return Algebra(dim, structure, unit, labels)


def full_matrix_algebra(n: int) -> Algebra:
    """M_n with the column-major matrix-unit basis E11, E21, ..., En1, E12, ..."""
    if n < 1:
        raise ValueError("n must be at least 1")
    pairs = [(r, c) for c in range(1, n + 1) for r in range(1, n + 1)]
    return _matrix_unit_algebra(pairs, [f"E{r}{c}" for (r, c) in pairs])


def upper_triangular_algebra(n: int) -> Algebra:
    """T_n with the basis read off by column blocks: E11; E12, E22; E13, E23, E33; ..."""
    if n < 1:
        raise ValueError("n must be at least 1")
    pairs = [(r, c) for c in range(1, n + 1) for r in range(1, c + 1)]
    return _matrix_unit_algebra(pairs, [f"E{r}{c}" for (r, c) in pairs])


def custom_algebra(
    dim: int,
    structure_constants: Iterable[tuple[int, int, int, Scalar]],
    unit: Sequence[Scalar],
    labels: Sequence[str] | None = None,
    validate: bool = True,
) -> Algebra:
    """Algebra from a sparse list of (i, j, k, value) structure constants, 0-indexed.

    Triples not listed are zero. With ``validate`` the associativity and unit
    laws are checked and a ValueError is raised on the first violation.
    """
    structure = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j, k, value) in structure_constants:
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise ValueError(f"structure constant index ({i}, {j}, {k}) out of range")
        structure[i][j][k] = rat(value)
    algebra = Algebra(dim, structure, unit, labels)
    if validate:
        result = validate_algebra(algebra)
        if not result:
            raise ValueError(f"invalid algebra: {result.message()}")
    return algebra


def left_regular_representation(a: Algebra) -> "Representation":
    """Matrices of x -> g_i x on the algebra itself, one per basis element."""
    from .dilation import Representation

    matrices = []
    for i in range(a.dim):
        entries = []
        for k in range(a.dim):
            entries.extend(a.structure[i][j][k] for j in range(a.dim))
        matrices.append(RationalMatrix(a.dim, a.dim, entries))
    return Representation(a, a.dim, tuple(matrices))


def largest_left_ideal_in_kernel(sys: "LinearSystem") -> Subspace:
    """The largest left ideal of the algebra contained in ker(phi).

    Computed as {a : phi(b a) = 0 for every basis element b}; unitality of the
    system makes this a subset of ker(phi), and left multiplication clearly
    preserves it.
    """
    from .linsys import apply_phi

    a = sys.algebra
    blocks = []
    for i in range(a.dim):
        entries = []
        images = [apply_phi(sys, a.structure[i][j]) for j in range(a.dim)]
        for r in range(sys.dim_v):
            for c in range(sys.dim_v):
                entries.extend(img[r, c] for img in images)
        blocks.append(RationalMatrix(sys.dim_v * sys.dim_v, a.dim, entries))
    return kernel(vstack_all(blocks))
