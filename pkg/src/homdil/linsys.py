"""Linear systems: a unital linear map phi from an algebra into L(V).

The map is stored extensionally as one dim_v x dim_v matrix per algebra basis
element. Builtin constructors provide the worked-example maps: normalized
traces, transpose maps, trace-times-identity, the general coefficient map on
M_2, and the parametrized diagonal-pair maps.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import Algebra, full_matrix_algebra, upper_triangular_algebra, validate_algebra
from .qlinalg import CheckResult, RationalMatrix, Scalar, rat


class LinearSystem:
    """The triple (phi, algebra, V) with phi given per basis element."""

    __slots__ = ("algebra", "dim_v", "phi")

    def __init__(self, algebra: Algebra, dim_v: int, phi: Sequence[RationalMatrix]):
        if dim_v < 1:
            raise ValueError("dim_v must be at least 1")
        if len(phi) != algebra.dim:
            raise ValueError("phi needs one matrix per algebra basis element")
        for i, m in enumerate(phi):
            if m.rows != dim_v or m.cols != dim_v:
                raise ValueError(f"phi[{i}] must be {dim_v}x{dim_v}, got {m.rows}x{m.cols}")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "dim_v", dim_v)
        object.__setattr__(self, "phi", tuple(phi))

    def __setattr__(self, name, value):
        raise AttributeError("LinearSystem is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearSystem)
            and self.algebra == other.algebra
            and self.dim_v == other.dim_v
            and self.phi == other.phi
        )

    def __repr__(self) -> str:
        return f"LinearSystem(dim_A {self.algebra.dim}, dim_V {self.dim_v})"


def apply_phi(sys: LinearSystem, coords: Sequence[Scalar]) -> RationalMatrix:
    """phi at the algebra element with the given coordinates."""
    cs = [rat(c) for c in coords]
    if len(cs) != sys.algebra.dim:
        raise ValueError(f"coordinates must have length {sys.algebra.dim}")
    out = RationalMatrix.zeros(sys.dim_v, sys.dim_v)
    for c, m in zip(cs, sys.phi):
        if c:
            out = out + c * m
    return out


def validate_system(sys: LinearSystem) -> CheckResult:
    """Check the underlying algebra plus unitality phi(I) = identity on V."""
    algebra_result = validate_algebra(sys.algebra)
    if not algebra_result:
        return algebra_result
    problems = []
    if apply_phi(sys, sys.algebra.unit) != RationalMatrix.identity(sys.dim_v):
        problems.append("phi is not unital: phi(I) differs from the identity on V")
    return CheckResult(tuple(problems))


def _matrix_unit_pairs(a: Algebra) -> list[tuple[int, int]]:
    # builtin algebras label basis elements "Erc" with 1-indexed r, c
    pairs = []
    for label in a.labels:
        if not (label.startswith("E") and len(label) == 3):
            raise ValueError("builtin map needs a matrix-unit algebra")
        pairs.append((int(label[1]), int(label[2])))
    return pairs


def _normalized_trace(params: Mapping) -> LinearSystem:
    kind = params.get("algebra", "full_matrix")
    n = int(params["n"])
    if kind == "full_matrix":
        a = full_matrix_algebra(n)
    elif kind == "upper_triangular":
        a = upper_triangular_algebra(n)
    else:
        raise ValueError(f"unknown algebra kind {kind!r}")
    phi = []
    for (r, c) in _matrix_unit_pairs(a):
        phi.append(RationalMatrix(1, 1, [Fraction(1, n) if r == c else Fraction(0)]))
    return LinearSystem(a, 1, phi)


def _unit_matrix(n: int, r: int, c: int) -> RationalMatrix:
    return RationalMatrix(n, n, [1 if (i + 1, j + 1) == (r, c) else 0 for i in range(n) for j in range(n)])


def _transpose_t_to_m(params: Mapping) -> LinearSystem:
    n = int(params["n"])
    a = upper_triangular_algebra(n)
    phi = [_unit_matrix(n, c, r) for (r, c) in _matrix_unit_pairs(a)]
    return LinearSystem(a, n, phi)


def _transpose_full(params: Mapping) -> LinearSystem:
    n = int(params["n"])
    a = full_matrix_algebra(n)
    phi = [_unit_matrix(n, c, r) for (r, c) in _matrix_unit_pairs(a)]
    return LinearSystem(a, n, phi)


def _trace_identity(params: Mapping) -> LinearSystem:
    n = int(params["n"])
    a = full_matrix_algebra(n)
    phi = []
    for (r, c) in _matrix_unit_pairs(a):
        scale = Fraction(1, n) if r == c else Fraction(0)
        phi.append(scale * RationalMatrix.identity(n))
    return LinearSystem(a, n, phi)


def _coefficient_map(params: Mapping) -> LinearSystem:
    coeffs = {}
    for key in ("a", "b", "c", "d"):
        vec = [rat(x) for x in params[key]]
        if len(vec) != 4:
            raise ValueError(f"parameter {key!r} must have 4 entries")
        coeffs[key] = vec
    a = full_matrix_algebra(2)
    # the map reads its argument entrywise as (alpha1, alpha2; alpha3, alpha4)
    alpha_pos = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    phi = []
    for (r, c) in _matrix_unit_pairs(a):
        p = alpha_pos[(r, c)]
        phi.append(
            RationalMatrix(2, 2, [coeffs["a"][p], coeffs["b"][p], coeffs["c"][p], coeffs["d"][p]])
        )
    return LinearSystem(a, 2, phi)


def _diag_pair_map(params: Mapping) -> LinearSystem:
    vecs = {}
    for key in ("xi", "gamma", "alpha", "beta"):
        vec = [rat(x) for x in params[key]]
        if len(vec) != 2:
            raise ValueError(f"parameter {key!r} must have 2 entries")
        vecs[key] = vec
    xi, gamma, alpha, beta = vecs["xi"], vecs["gamma"], vecs["alpha"], vecs["beta"]
    a = full_matrix_algebra(2)
    phi = []
    for (r, c) in _matrix_unit_pairs(a):
        entry_a = Fraction(1) if (r, c) == (1, 1) else Fraction(0)
        entry_b = Fraction(1) if (r, c) == (1, 2) else Fraction(0)
        entry_c = Fraction(1) if (r, c) == (2, 1) else Fraction(0)
        entry_d = Fraction(1) if (r, c) == (2, 2) else Fraction(0)
        top = alpha[0] * (xi[0] * entry_a + xi[1] * entry_b) + alpha[1] * (xi[0] * entry_c + xi[1] * entry_d)
        bottom = beta[0] * (gamma[0] * entry_a + gamma[1] * entry_b) + beta[1] * (
            gamma[0] * entry_c + gamma[1] * entry_d
        )
        phi.append(RationalMatrix(2, 2, [top, 0, 0, bottom]))
    return LinearSystem(a, 2, phi)


def _diag_map_d(params: Mapping) -> LinearSystem:
    return _diag_pair_map({"xi": [1, 0], "gamma": [0, 1], "alpha": [1, 0], "beta": [0, 1]})


def _corner_scalar_map(params: Mapping) -> LinearSystem:
    return _diag_pair_map({"xi": [1, 0], "gamma": [1, 0], "alpha": [1, 0], "beta": [1, 0]})


def _identity_full(params: Mapping) -> LinearSystem:
    n = int(params["n"])
    a = full_matrix_algebra(n)
    phi = [_unit_matrix(n, r, c) for (r, c) in _matrix_unit_pairs(a)]
    return LinearSystem(a, n, phi)


BUILTIN_SYSTEMS = {
    "normalized_trace": _normalized_trace,
    "transpose_t_to_m": _transpose_t_to_m,
    "transpose_full": _transpose_full,
    "trace_identity": _trace_identity,
    "coefficient_map": _coefficient_map,
    "diag_pair_map": _diag_pair_map,
    "diag_map_d": _diag_map_d,
    "corner_scalar_map": _corner_scalar_map,
    "identity_full": _identity_full,
}


def builtin_system(name: str, params: Mapping | None = None) -> LinearSystem:
    """Construct and validate one of the named builtin systems."""
    if name not in BUILTIN_SYSTEMS:
        known = ", ".join(sorted(BUILTIN_SYSTEMS))
        raise ValueError(f"unknown builtin system {name!r} (known: {known})")
    sys = BUILTIN_SYSTEMS[name](params or {})
    result = validate_system(sys)
    if not result:
        raise ValueError(f"builtin system {name!r} failed validation: {result.message()}")
    return sys
