"""Homomorphism dilation systems: construction, validation and reduction.

A dilation system for a linear system (phi, A, V) is a quadruple
(pi, S, T, W): a unital homomorphism pi of the algebra on a space W, an
injective analysis operator T: V -> W and a surjective synthesis operator
S: W -> V with S pi(a) T = phi(a) for every a. This module builds the two
distinguished dilations (universal and canonical), computes invariant
subspaces of ker(S), and reduces dilations by quotients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import Algebra, left_regular_representation
from .linsys import LinearSystem
from .qlinalg import (
    CheckResult,
    RationalMatrix,
    Scalar,
    Subspace,
    hstack_all,
    inverse,
    kernel,
    kron,
    quotient,
    rat,
    solve_right,
    vstack_all,
)


class Representation:
    """A unital homomorphism of the algebra into dim_w x dim_w matrices."""

    __slots__ = ("algebra", "dim_w", "pi")

    def __init__(self, algebra: Algebra, dim_w: int, pi: Sequence[RationalMatrix]):
        if dim_w < 0:
            raise ValueError("dim_w must be nonnegative")
        if len(pi) != algebra.dim:
            raise ValueError("pi needs one matrix per algebra basis element")
        for i, m in enumerate(pi):
            if m.rows != dim_w or m.cols != dim_w:
                raise ValueError(f"pi[{i}] must be {dim_w}x{dim_w}")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "dim_w", dim_w)
        object.__setattr__(self, "pi", tuple(pi))

    def __setattr__(self, name, value):
        raise AttributeError("Representation is immutable")

    def apply(self, coords: Sequence[Scalar]) -> RationalMatrix:
        cs = [rat(c) for c in coords]
        if len(cs) != self.algebra.dim:
            raise ValueError(f"coordinates must have length {self.algebra.dim}")
        out = RationalMatrix.zeros(self.dim_w, self.dim_w)
        for c, m in zip(cs, self.pi):
            if c:
                out = out + c * m
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Representation)
            and self.algebra == other.algebra
            and self.pi == other.pi
        )

    def __repr__(self) -> str:
        return f"Representation(dim_W {self.dim_w})"


def validate_representation(rep: Representation) -> CheckResult:
    """Check pi(I) = identity and pi(g_i) pi(g_j) = pi(g_i g_j) for all basis pairs."""
    a = rep.algebra
    if rep.apply(a.unit) != RationalMatrix.identity(rep.dim_w):
        return CheckResult(("pi is not unital: pi(I) differs from the identity",))
    for i in range(a.dim):
        for j in range(a.dim):
            if rep.pi[i] * rep.pi[j] != rep.apply(a.structure[i][j]):
                return CheckResult(
                    (f"homomorphism law fails at pair ({a.labels[i]}, {a.labels[j]})",)
                )
    return CheckResult()


class DilationSystem:
    """The quadruple (pi, S, T, W); W is implicit as Q^dim_w."""

    __slots__ = ("rep", "s", "t")

    def __init__(self, rep: Representation, s: RationalMatrix, t: RationalMatrix):
        if s.cols != rep.dim_w or t.rows != rep.dim_w:
            raise ValueError("S and T must act on the representation space")
        if s.rows != t.cols:
            raise ValueError("S and T must agree on dim V")
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    def __setattr__(self, name, value):
        raise AttributeError("DilationSystem is immutable")

    @property
    def dim_w(self) -> int:
        return self.rep.dim_w

    @property
    def dim_v(self) -> int:
        return self.s.rows

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DilationSystem)
            and self.rep == other.rep
            and self.s == other.s
            and self.t == other.t
        )

    def __repr__(self) -> str:
        return f"DilationSystem(dim_W {self.dim_w}, dim_V {self.dim_v})"


def validate_dilation(d: DilationSystem, sys: LinearSystem) -> CheckResult:
    """Full structural check of a dilation system against its linear system.

    Verifies, in order: matching algebra and dim_v, the representation laws,
    the dilation identity S pi(g_i) T = phi(g_i) on every basis element
    (linearity extends this to the whole algebra), injectivity of T and
    surjectivity of S. The first failing law is named in the diagnostics.
    """
    if d.rep.algebra != sys.algebra:
        return CheckResult(("dilation and system use different algebras",))
    if d.dim_v != sys.dim_v:
        return CheckResult((f"dilation has dim_V {d.dim_v}, system has {sys.dim_v}",))
    rep_result = validate_representation(d.rep)
    if not rep_result:
        return rep_result
    for i in range(sys.algebra.dim):
        if d.s * d.rep.pi[i] * d.t != sys.phi[i]:
            return CheckResult(
                (f"dilation identity fails at basis element {sys.algebra.labels[i]}",)
            )
    if d.t.rank() != d.dim_v:
        return CheckResult(("T is not injective",))
    if d.s.rank() != d.dim_v:
        return CheckResult(("S is not surjective",))
    return CheckResult()


def spanning_matrix(d: DilationSystem) -> RationalMatrix:
    """Columns pi(g_i) T e_j in algebra-major order (index i*dim_v + j)."""
    return hstack_all([d.rep.pi[i] * d.t for i in range(d.rep.algebra.dim)])


def is_linearly_minimal(d: DilationSystem) -> bool:
    """True iff span{pi(A) T V} is all of W."""
    return spanning_matrix(d).rank() == d.dim_w


def universal_dilation(sys: LinearSystem) -> DilationSystem:
    """The linearly minimal dilation on A tensor V of maximal dimension.

    The tensor basis is algebra-major: g_i tensor e_j sits at index
    i*dim_v + j. The homomorphism is left multiplication on the algebra
    factor, T x = I tensor x, and S(a tensor x) = phi(a) x.
    """
    a = sys.algebra
    dv = sys.dim_v
    left = left_regular_representation(a)
    eye_v = RationalMatrix.identity(dv)
    pi = tuple(kron(left.pi[i], eye_v) for i in range(a.dim))
    s = hstack_all(list(sys.phi))
    t_entries = []
    for i in range(a.dim):
        for j in range(dv):
            t_entries.extend(a.unit[i] if j == j2 else Fraction(0) for j2 in range(dv))
    t = RationalMatrix(a.dim * dv, dv, t_entries)
    return DilationSystem(Representation(a, a.dim * dv, pi), s, t)


def _functional_vectors(sys: LinearSystem) -> list[tuple[Fraction, ...]]:
    # vectorization of the functional b -> phi(b g_i) e_j, stacked over the
    # algebra basis; index i*dim_v + j, matching the universal tensor order
    from .linsys import apply_phi

    a = sys.algebra
    dv = sys.dim_v
    vecs = []
    for i in range(a.dim):
        blocks = [apply_phi(sys, a.structure[k][i]) for k in range(a.dim)]
        for j in range(dv):
            vec: list[Fraction] = []
            for block in blocks:
                vec.extend(block.col(j))
            vecs.append(tuple(vec))
    return vecs


def canonical_dilation(sys: LinearSystem) -> DilationSystem:
    """The dilation carried by the span of the functionals b -> phi(b a) x.

    Each generating functional is stored as the stacked vector of its values
    on the algebra basis. The basis of W is chosen greedily: the first
    linearly independent generators in algebra-major order. The homomorphism
    sends the functional of (a, x) to that of (g a, x), T x is the functional
    of (I, x), and S evaluates a functional at the identity element; the
    evaluation is well defined on W because a functional vanishing on the
    whole algebra vanishes at I in particular.

    Built independently of the universal dilation so that their equivalence
    is a genuine cross-check rather than a tautology.
    """
    a = sys.algebra
    dv = sys.dim_v
    n = a.dim * dv
    vecs = _functional_vectors(sys)

    basis_rows: list[tuple[Fraction, ...]] = []
    basis_pairs: list[tuple[int, int]] = []
    current_rank = 0
    for i in range(a.dim):
        for j in range(dv):
            candidate = vecs[i * dv + j]
            trial = RationalMatrix(len(basis_rows) + 1, n, [x for row in basis_rows for x in row] + list(candidate))
            if trial.rank() > current_rank:
                basis_rows.append(candidate)
                basis_pairs.append((i, j))
                current_rank += 1
    dim_w = current_rank
    basis = RationalMatrix(dim_w, n, [x for row in basis_rows for x in row])
    basis_t = basis.transpose()

    def coordinates(targets: list[Sequence[Fraction]]) -> RationalMatrix:
        flat = [x for coordinate_row in zip(*targets) for x in coordinate_row]
        target_matrix = RationalMatrix(n, len(targets), flat)
        solved = solve_right(basis_t, target_matrix)
        if solved is None:  # cannot happen: targets lie in the span by construction
            raise RuntimeError("functional outside the generated space")
        return solved

    pi = []
    for g in range(a.dim):
        targets = []
        for (i, j) in basis_pairs:
            image = [Fraction(0)] * n
            for m, c in enumerate(a.structure[g][i]):
                if c:
                    src = vecs[m * dv + j]
                    image = [x + c * y for x, y in zip(image, src)]
            targets.append(tuple(image))
        pi.append(coordinates(targets))

    t_targets = []
    for j in range(dv):
        image = [Fraction(0)] * n
        for m, c in enumerate(a.unit):
            if c:
                src = vecs[m * dv + j]
                image = [x + c * y for x, y in zip(image, src)]
        t_targets.append(tuple(image))
    t = coordinates(t_targets)

    s_entries = []
    for r in range(dv):
        for w_idx in range(dim_w):
            row = basis.row(w_idx)
            value = Fraction(0)
            for k, c in enumerate(a.unit):
                if c:
                    value += c * row[k * dv + r]
            s_entries.append(value)
    s = RationalMatrix(dv, dim_w, s_entries)

    return DilationSystem(Representation(a, dim_w, tuple(pi)), s, t)


def is_invariant(rep: Representation, k: Subspace) -> bool:
    """True iff pi(g_i) maps k into k for every basis element."""
    if k.ambient_dim != rep.dim_w:
        raise ValueError("subspace ambient dimension differs from dim_W")
    for i in range(k.dim):
        v = k.basis.row(i)
        for m in rep.pi:
            if not k.contains_vector(m.apply(v)):
                return False
    return True


def invariant_closure(rep: Representation, seed_vectors: Sequence[Sequence[Scalar]]) -> Subspace:
    """Smallest invariant subspace containing the seeds (stabilizes in <= dim_W rounds)."""
    current = Subspace.from_vectors(rep.dim_w, [list(v) for v in seed_vectors])
    while True:
        vectors = [current.basis.row(i) for i in range(current.dim)]
        extended = list(vectors)
        for v in vectors:
            for m in rep.pi:
                extended.append(m.apply(v))
        bigger = Subspace.from_vectors(rep.dim_w, extended)
        if bigger == current:
            return current
        current = bigger


def _membership_equations(k: Subspace) -> RationalMatrix:
    # rows f with f.v = 0 exactly on k; for the full space this is 0 x n
    return kernel(k.basis).basis if k.dim else RationalMatrix.identity(k.ambient_dim)


def maximal_invariant_subspace(rep: Representation, k0: Subspace) -> Subspace:
    """Largest pi-invariant subspace contained in k0, by fixed-point refinement.

    Iterates K_{m+1} = {w in K_m : pi(g_i) w in K_m for all i}; the dimension
    strictly decreases until the fixed point, so at most dim_W rounds run.
    """
    if k0.ambient_dim != rep.dim_w:
        raise ValueError("subspace ambient dimension differs from dim_W")
    current = k0
    while current.dim > 0:
        eqs = _membership_equations(current)
        blocks = [eqs] + [eqs * m for m in rep.pi]
        refined = kernel(vstack_all(blocks))
        if refined == current:
            break
        current = refined
    return current


def maximal_invariant_in_synthesis_kernel(d: DilationSystem) -> Subspace:
    """One-shot formula for the largest invariant subspace of ker(S).

    Because w, pi(g)w, pi(g')pi(g)w, ... all have to stay inside ker(S) and
    pi is multiplicative, the fixed point collapses to the joint kernel of
    the maps S pi(g_i).
    """
    return kernel(vstack_all([d.s * m for m in d.rep.pi]))


def is_irreducible(d: DilationSystem) -> bool:
    """True iff ker(S) contains no nonzero invariant subspace.

    Runs both the fixed-point refinement and the one-shot joint-kernel
    formula and insists they agree; a mismatch would mean a bug, not a
    property of the input.
    """
    by_fixed_point = maximal_invariant_subspace(d.rep, kernel(d.s))
    by_formula = maximal_invariant_in_synthesis_kernel(d)
    if by_fixed_point != by_formula:
        raise RuntimeError("invariant-subspace algorithms disagree")
    return by_fixed_point.dim == 0


def reduce(d: DilationSystem, k: Subspace) -> DilationSystem:
    """Quotient dilation on W/K for an invariant K inside ker(S)."""
    if k.ambient_dim != d.dim_w:
        raise ValueError("subspace ambient dimension differs from dim_W")
    if not is_invariant(d.rep, k):
        raise ValueError("reduction subspace is not invariant under the representation")
    if not kernel(d.s).contains(k):
        raise ValueError("reduction subspace is not contained in ker(S)")
    projection, section = quotient(d.dim_w, k)
    pi = tuple(projection * m * section for m in d.rep.pi)
    rep = Representation(d.rep.algebra, d.dim_w - k.dim, pi)
    return DilationSystem(rep, d.s * section, projection * d.t)


def principle_dilation(sys: LinearSystem) -> DilationSystem:
    """Reduce the universal dilation by its maximal invariant subspace.

    The result is linearly minimal and irreducible, hence equivalent to the
    canonical dilation and to every other principle dilation of the system.
    """
    u = universal_dilation(sys)
    m = maximal_invariant_subspace(u.rep, kernel(u.s))
    return reduce(u, m)


def vector_major_permutation(dim_a: int, dim_v: int) -> RationalMatrix:
    """Change of basis from algebra-major to vector-major tensor coordinates.

    Algebra-major puts g_i tensor e_j at index i*dim_v + j; vector-major puts
    it at j*dim_a + i. Some of the worked-example displays use the latter
    layout, so reports conjugate through this permutation before comparing.
    """
    n = dim_a * dim_v
    entries = [Fraction(0)] * (n * n)
    for i in range(dim_a):
        for j in range(dim_v):
            entries[(j * dim_a + i) * n + (i * dim_v + j)] = Fraction(1)
    return RationalMatrix(n, n, entries)


def conjugate_dilation(d: DilationSystem, r: RationalMatrix) -> DilationSystem:
    """Transport a dilation along an invertible coordinate change R of W."""
    r_inv = inverse(r)
    if r_inv is None:
        raise ValueError("coordinate change must be invertible")
    pi = tuple(r * m * r_inv for m in d.rep.pi)
    rep = Representation(d.rep.algebra, d.dim_w, pi)
    return DilationSystem(rep, d.s * r_inv, r * d.t)
