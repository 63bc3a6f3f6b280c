"""Classification of linearly minimal dilation systems.

Every linearly minimal dilation of a system is, up to equivalence, the
universal dilation reduced by an invariant subspace of ker(S_u); that
subspace (the reduced subspace) is a complete equivalence invariant. This
module computes reduced subspaces, decides equivalence with an explicit
witness, solves intertwiner spaces, semi-decides invertibility inside a
matrix space, decides strong isomorphism of invariant subspaces, and finds
the one-dimensional invariant-line families with rational characters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Literal, Sequence

from .algebra import largest_left_ideal_in_kernel
from .dilation import (
    DilationSystem,
    Representation,
    is_invariant,
    is_linearly_minimal,
    maximal_invariant_subspace,
    spanning_matrix,
    universal_dilation,
    validate_dilation,
)
from .linsys import LinearSystem
from .qlinalg import (
    RationalMatrix,
    Subspace,
    characteristic_polynomial,
    kernel,
    kron,
    quotient,
    rational_roots,
    right_inverse,
    seeded_random_vector,
    subspace_intersection,
    vstack_all,
)

# exact invertibility decision is used whenever the evaluation grid stays this small
_GRID_BUDGET = 2500


@dataclass(frozen=True)
class EquivalenceWitness:
    """Bijection R with R T1 = T2, S2 R = S1 and R pi1(a) = pi2(a) R for all a."""

    r: RationalMatrix


def spanning_map(d: DilationSystem, sys: LinearSystem) -> RationalMatrix:
    """The dim_W x (dim_A * dim_V) matrix with columns pi(g_i) T e_j.

    In the universal tensor coordinates this is the map a tensor x ->
    pi(a) T x; its kernel is the reduced subspace of the dilation.
    """
    check = validate_dilation(d, sys)
    if not check:
        raise ValueError(f"not a dilation of the system: {check.message()}")
    return spanning_matrix(d)


def reduced_subspace(d: DilationSystem, sys: LinearSystem) -> Subspace:
    """Kernel of the spanning map: the complete equivalence invariant.

    Only defined for linearly minimal dilations. The result is always
    invariant under the universal homomorphism and contained in ker(S_u);
    both facts are re-checked on every call.
    """
    if not is_linearly_minimal(d):
        raise ValueError("dilation is not linearly minimal")
    k = kernel(spanning_map(d, sys))
    u = universal_dilation(sys)
    if not is_invariant(u.rep, k):
        raise RuntimeError("reduced subspace is not invariant under the universal homomorphism")
    if not kernel(u.s).contains(k):
        raise RuntimeError("reduced subspace is not contained in ker(S_u)")
    return k


def are_equivalent(
    d1: DilationSystem, d2: DilationSystem, sys: LinearSystem
) -> EquivalenceWitness | None:
    """Equivalence witness between two linearly minimal dilations, or None.

    The two systems are equivalent exactly when their reduced subspaces
    coincide; in that case the witness is the unique solution R of
    R Phi_1 = Phi_2 for the spanning maps Phi_i. All four witness equations
    are verified before returning, including S2 R = S1, which already follows
    from R T1 = T2 and the intertwining relation.
    """
    for which, d in (("first", d1), ("second", d2)):
        check = validate_dilation(d, sys)
        if not check:
            raise ValueError(f"{which} dilation is invalid: {check.message()}")
        if not is_linearly_minimal(d):
            raise ValueError(f"{which} dilation is not linearly minimal")
    k1 = reduced_subspace(d1, sys)
    k2 = reduced_subspace(d2, sys)
    if k1 != k2:
        return None
    phi1 = spanning_matrix(d1)
    phi2 = spanning_matrix(d2)
    phi1_right_inverse = right_inverse(phi1)
    if phi1_right_inverse is None:  # impossible: linear minimality is full row rank
        raise RuntimeError("spanning map of a linearly minimal dilation lost full row rank")
    r = phi2 * phi1_right_inverse
    _assert_witness(r, d1, d2)
    return EquivalenceWitness(r)


def _assert_witness(r: RationalMatrix, d1: DilationSystem, d2: DilationSystem) -> None:
    if r.rank() != d1.dim_w or d1.dim_w != d2.dim_w:
        raise RuntimeError("equivalence witness is not bijective")
    if r * d1.t != d2.t:
        raise RuntimeError("equivalence witness fails R T1 = T2")
    if d2.s * r != d1.s:
        raise RuntimeError("equivalence witness fails S2 R = S1")
    for m1, m2 in zip(d1.rep.pi, d2.rep.pi):
        if r * m1 != m2 * r:
            raise RuntimeError("equivalence witness fails the intertwining relation")


def intertwiner_space(rep1: Representation, rep2: Representation) -> list[RationalMatrix]:
    """Basis of {X : pi2(g_i) X = X pi1(g_i) for all i}, solved exactly.

    The constraints are vectorized row-major, so pi2 X - X pi1 = 0 becomes
    (pi2 kron I - I kron pi1^t) vec(X) = 0, stacked over the basis.
    """
    if rep1.algebra != rep2.algebra:
        raise ValueError("representations must share the algebra")
    w1, w2 = rep1.dim_w, rep2.dim_w
    eye1 = RationalMatrix.identity(w1)
    eye2 = RationalMatrix.identity(w2)
    blocks = [kron(m2, eye1) - kron(eye2, m1.transpose()) for m1, m2 in zip(rep1.pi, rep2.pi)]
    null = kernel(vstack_all(blocks))
    return [
        RationalMatrix(w2, w1, null.basis.row(i))
        for i in range(null.dim)
    ]


@dataclass(frozen=True)
class InvertibilityVerdict:
    status: Literal["yes", "no", "unknown"]
    witness: RationalMatrix | None = None
    trials: int = 0

    def __bool__(self) -> bool:
        return self.status == "yes"


def contains_invertible(basis: Sequence[RationalMatrix], seed: int = 0) -> InvertibilityVerdict:
    """Decide whether the span of the given square matrices contains an invertible one.

    When the evaluation grid (n+1)^m is small the question is decided
    exactly: det of a combination is a polynomial of degree at most n in each
    of the m coefficients, so vanishing on the grid {0..n}^m proves the span
    singular, and any non-vanishing grid point is a witness. Larger spaces
    fall back to up to 32 seeded random combinations and answer "unknown"
    when none of them is invertible.
    """
    if not basis:
        return InvertibilityVerdict("no")
    n = basis[0].rows
    for m in basis:
        if m.rows != n or m.cols != n:
            raise ValueError("all basis matrices must be square and of equal size")
    dim = len(basis)

    def combine(coeffs: Sequence[Fraction]) -> RationalMatrix:
        out = RationalMatrix.zeros(n, n)
        for c, m in zip(coeffs, basis):
            if c:
                out = out + c * m
        return out

    grid_size = (n + 1) ** dim
    if grid_size <= _GRID_BUDGET or (dim <= 3 and n <= 8):
        for point in product(range(n + 1), repeat=dim):
            candidate = combine([Fraction(p) for p in point])
            if candidate.rank() == n:
                return InvertibilityVerdict("yes", candidate)
        return InvertibilityVerdict("no")

    for trial in range(32):
        coeffs = seeded_random_vector(dim, 1000 * seed + trial)
        candidate = combine(coeffs)
        if candidate.rank() == n:
            return InvertibilityVerdict("yes", candidate, trial + 1)
    return InvertibilityVerdict("unknown", None, 32)


@dataclass(frozen=True)
class StrongIsomorphismVerdict:
    """Outcome of the strong-isomorphism test between two invariant subspaces.

    On "yes" the ambient map R is invertible, maps the first subspace onto
    the second, and commutes with the universal homomorphism modulo the
    second subspace; the intertwiner is the induced map on the quotients.
    """

    status: Literal["yes", "no", "unknown"]
    ambient_map: RationalMatrix | None = None
    intertwiner: RationalMatrix | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.status == "yes"


def _pivot_selector(k: Subspace) -> RationalMatrix:
    rows = []
    for p in k.pivot_columns():
        row = [Fraction(0)] * k.ambient_dim
        row[p] = Fraction(1)
        rows.append(row)
    return RationalMatrix(k.dim, k.ambient_dim, [x for row in rows for x in row])


def _quotient_representation(rep: Representation, k: Subspace) -> tuple[Representation, RationalMatrix, RationalMatrix]:
    projection, section = quotient(rep.dim_w, k)
    pi = tuple(projection * m * section for m in rep.pi)
    return Representation(rep.algebra, rep.dim_w - k.dim, pi), projection, section


def are_strongly_isomorphic(
    k1: Subspace, k2: Subspace, sys: LinearSystem, seed: int = 0
) -> StrongIsomorphismVerdict:
    """Strong isomorphism of two invariant subspaces of ker(S_u).

    Decided through the quotient criterion: the subspaces are strongly
    isomorphic exactly when their dimensions agree and the universal
    homomorphism induces equivalent representations on the two quotients.
    The verdict inherits "unknown" from the invertibility search inside the
    intertwiner space.
    """
    u = universal_dilation(sys)
    ker_s = kernel(u.s)
    for name, k in (("first", k1), ("second", k2)):
        if k.ambient_dim != u.dim_w:
            raise ValueError(f"{name} subspace does not live in the universal dilation space")
        if not ker_s.contains(k):
            raise ValueError(f"{name} subspace is not contained in ker(S_u)")
        if not is_invariant(u.rep, k):
            raise ValueError(f"{name} subspace is not invariant under the universal homomorphism")
    if k1.dim != k2.dim:
        return StrongIsomorphismVerdict("no", detail="subspace dimensions differ")
    if k1 == k2:
        eye = RationalMatrix.identity(u.dim_w)
        _, projection, section = _quotient_representation(u.rep, k1)
        return StrongIsomorphismVerdict("yes", eye, projection * section, "identical subspaces")

    q1, p1, j1 = _quotient_representation(u.rep, k1)
    q2, p2, j2 = _quotient_representation(u.rep, k2)
    space = intertwiner_space(q1, q2)
    verdict = contains_invertible(space, seed)
    if verdict.status == "no":
        return StrongIsomorphismVerdict("no", detail="quotient representations admit no invertible intertwiner")
    if verdict.status == "unknown":
        return StrongIsomorphismVerdict(
            "unknown", detail=f"no invertible intertwiner found in {verdict.trials} seeded trials"
        )
    intertwiner = verdict.witness
    ambient = _lift_quotient_isomorphism(intertwiner, k1, k2, p1, j2)
    _assert_strong_witness(ambient, k1, k2, u.rep, p2)
    return StrongIsomorphismVerdict("yes", ambient, intertwiner)


def _lift_quotient_isomorphism(
    intertwiner: RationalMatrix,
    k1: Subspace,
    k2: Subspace,
    p1: RationalMatrix,
    j2: RationalMatrix,
) -> RationalMatrix:
    # section-lift on a complement of k1 plus a basis-to-basis map k1 -> k2
    n = k1.ambient_dim
    eye = RationalMatrix.identity(n)
    _, j1 = quotient(n, k1)
    k1_part = k2.basis.transpose() * _pivot_selector(k1) * (eye - j1 * p1)
    return j2 * intertwiner * p1 + k1_part


def _assert_strong_witness(
    ambient: RationalMatrix,
    k1: Subspace,
    k2: Subspace,
    rep: Representation,
    p2: RationalMatrix,
) -> None:
    if ambient.rank() != ambient.rows:
        raise RuntimeError("strong-isomorphism witness is not invertible")
    image = Subspace.from_vectors(
        k2.ambient_dim, [ambient.apply(k1.basis.row(i)) for i in range(k1.dim)]
    )
    if image != k2:
        raise RuntimeError("strong-isomorphism witness does not map K1 onto K2")
    for m in rep.pi:
        if not (p2 * (m * ambient - ambient * m)).is_zero():
            raise RuntimeError("strong-isomorphism witness does not commute modulo K2")


class CharacterLine:
    """A maximal subspace on which every pi(g_i) acts by a rational scalar.

    Every nonzero vector in the eigenspace spans an invariant line, and all
    those lines share the stored character.
    """

    __slots__ = ("character", "eigenspace")

    def __init__(self, character: Sequence[Fraction], eigenspace: Subspace):
        object.__setattr__(self, "character", tuple(character))
        object.__setattr__(self, "eigenspace", eigenspace)

    def __setattr__(self, name, value):
        raise AttributeError("CharacterLine is immutable")

    def __repr__(self) -> str:
        return f"CharacterLine(character {self.character}, eigenspace dim {self.eigenspace.dim})"


@dataclass(frozen=True)
class UnresolvedPiece:
    """A refinement piece whose remaining lines, if any, have irrational characters."""

    subspace: Subspace
    partial_character: tuple[Fraction, ...]
    generator_index: int
    residual_dim: int


@dataclass(frozen=True)
class CharacterDecomposition:
    lines: tuple[CharacterLine, ...]
    unresolved: tuple[UnresolvedPiece, ...] = field(default=())

    def __iter__(self):
        return iter(self.lines)

    def __len__(self) -> int:
        return len(self.lines)


def character_lines(rep: Representation, within: Subspace) -> CharacterDecomposition:
    """All rational-character line families inside an invariant subspace.

    Refines ``within`` generator by generator: a piece splits into its
    intersections with the rational eigenspaces of pi(g_i). Any invariant
    line with rational character survives the refinement into exactly one
    returned eigenspace. When a characteristic polynomial does not split over
    the rationals, the part of a piece that fails to land in any rational
    eigenspace is reported as unresolved rather than silently dropped; when
    it does split, that part provably contains no invariant line at all.
    """
    if within.ambient_dim != rep.dim_w:
        raise ValueError("subspace ambient dimension differs from dim_W")
    if not is_invariant(rep, within):
        raise ValueError("character lines are only computed inside an invariant subspace")

    pieces: list[tuple[Subspace, tuple[Fraction, ...]]] = [(within, ())]
    unresolved: list[UnresolvedPiece] = []
    for gen_index, m in enumerate(rep.pi):
        roots, remainder_degree = rational_roots(characteristic_polynomial(m))
        next_pieces: list[tuple[Subspace, tuple[Fraction, ...]]] = []
        for piece, partial in pieces:
            if piece.dim == 0:
                continue
            covered = 0
            for value, _mult in roots:
                shifted = m - value * RationalMatrix.identity(rep.dim_w)
                eigen = subspace_intersection(piece, kernel(shifted))
                if eigen.dim:
                    next_pieces.append((eigen, partial + (value,)))
                    covered += eigen.dim
            if covered < piece.dim and remainder_degree > 0:
                unresolved.append(UnresolvedPiece(piece, partial, gen_index, piece.dim - covered))
        pieces = next_pieces

    lines = []
    for eigenspace, character in pieces:
        unit_value = sum((c * x for c, x in zip(rep.algebra.unit, character)), Fraction(0))
        if unit_value != 1:  # cannot happen for a unital representation
            raise RuntimeError("character does not evaluate to 1 at the identity")
        lines.append(CharacterLine(character, eigenspace))
    return CharacterDecomposition(tuple(lines), tuple(unresolved))


def has_unique_dilation_class(sys: LinearSystem) -> bool:
    """True iff the system has a single equivalence class of linearly minimal dilations.

    Equivalent to the maximal invariant subspace of ker(S_u) being zero. For
    one-dimensional V this is cross-checked against the left-ideal criterion:
    uniqueness holds exactly when ker(phi) contains no proper left ideal.
    """
    u = universal_dilation(sys)
    m = maximal_invariant_subspace(u.rep, kernel(u.s))
    unique = m.dim == 0
    if sys.dim_v == 1:
        ideal = largest_left_ideal_in_kernel(sys)
        if ideal.dim != m.dim:
            raise RuntimeError("left-ideal cross-check disagrees with the invariant-subspace computation")
    return unique
