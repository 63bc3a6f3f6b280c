"""Machine-checked reports for the bundled worked examples.

Each report constructs the universal and canonical dilations of a worked
example, verifies every reference matrix display shipped in the data
directory, runs the classification machinery, and emits one entry per
claim. Entries are PASS when the computation agrees with the reference,
FAIL when an internal consistency check breaks (which should never happen),
and DISCREPANCY when the exact computation contradicts a reference prose
claim; discrepancies are reported with the computed value and do not fail
the run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .classify import (
    are_equivalent,
    are_strongly_isomorphic,
    character_lines,
    has_unique_dilation_class,
    reduced_subspace,
)
from .dilation import (
    DilationSystem,
    canonical_dilation,
    conjugate_dilation,
    is_invariant,
    is_irreducible,
    is_linearly_minimal,
    maximal_invariant_subspace,
    principle_dilation,
    reduce as reduce_dilation,
    universal_dilation,
    validate_dilation,
    vector_major_permutation,
)
from .jsonio import parse_dilation, parse_system
from .linsys import LinearSystem, builtin_system
from .qlinalg import RationalMatrix, Subspace, kernel, rat_str, seeded_random_vector

EXAMPLE_IDS = ("4.4", "4.5i", "4.5ii", "4.6", "4.7i", "4.7ii", "4.8")


@dataclass(frozen=True)
class ReportEntry:
    claim: str
    status: str  # PASS | FAIL | DISCREPANCY
    detail: str = ""


@dataclass
class Report:
    example: str
    seed: int
    entries: list[ReportEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.status != "FAIL" for e in self.entries)

    def check(self, claim: str, holds: bool, detail: str = "") -> None:
        self.entries.append(ReportEntry(claim, "PASS" if holds else "FAIL", detail))

    def prose(self, claim: str, agrees: bool, computed: str) -> None:
        status = "PASS" if agrees else "DISCREPANCY"
        self.entries.append(ReportEntry(claim, status, computed))

    def to_doc(self) -> dict:
        return {
            "example": self.example,
            "seed": self.seed,
            "ok": self.ok,
            "entries": [
                {"claim": e.claim, "status": e.status, "detail": e.detail} for e in self.entries
            ],
        }


def _load(name: str) -> dict:
    text = resources.files("homdil").joinpath("data", name).read_text()
    return json.loads(text)


def load_example_system(name: str) -> LinearSystem:
    return parse_system(_load(name), name)


def load_example_dilation(name: str, system: LinearSystem) -> DilationSystem:
    return parse_dilation(_load(name), system.algebra, name)


def _vector_str(row) -> str:
    parts: list[str] = []
    for idx, x in enumerate(row):
        if x == 0:
            continue
        sign = "-" if x < 0 else "+"
        mag = abs(x)
        term = f"e{idx + 1}" if mag == 1 else f"{rat_str(mag)}*e{idx + 1}"
        if not parts:
            parts.append(term if sign == "+" else f"-{term}")
        else:
            parts.append(f" {sign} {term}")
    return "".join(parts) if parts else "0"


def _subspace_str(s: Subspace) -> str:
    if s.dim == 0:
        return "{0}"
    return "span{" + ", ".join(_vector_str(s.basis.row(i)) for i in range(s.dim)) + "}"


def _span(ambient: int, *vectors) -> Subspace:
    return Subspace.from_vectors(ambient, list(vectors))


def _unit_vec(ambient: int, index1: int) -> list[int]:
    return [1 if i == index1 - 1 else 0 for i in range(ambient)]


def _verify_reference(report: Report, label: str, d: DilationSystem, sys: LinearSystem) -> bool:
    check = validate_dilation(d, sys)
    report.check(f"{label} satisfies all dilation laws", bool(check), check.message())
    if not check:
        return False
    report.check(f"{label} is linearly minimal", is_linearly_minimal(d))
    return True


def _report_44(report: Report) -> None:
    sys = load_example_system("ex44_system.json")
    u = universal_dilation(sys)
    report.check("universal dilation dimension is 4", u.dim_w == 4)
    c = canonical_dilation(sys)
    report.check("canonical dilation dimension is 4 (universal and canonical coincide)", c.dim_w == 4)
    ref = load_example_dilation("ex44_reference.json", sys)
    if _verify_reference(report, "reference dilation", ref, sys):
        report.check("reference dilation is irreducible", is_irreducible(ref))
        witness = are_equivalent(ref, u, sys)
        report.check(
            "reference dilation is equivalent to the constructed universal (witness computed)",
            witness is not None,
        )
    m = maximal_invariant_subspace(u.rep, kernel(u.s))
    report.prose(
        "ker(S_u) contains no nonzero invariant subspace", m.dim == 0, f"computed M = {_subspace_str(m)}"
    )
    report.prose(
        "the system has a single equivalence class of linearly minimal dilations",
        has_unique_dilation_class(sys),
        "left-ideal criterion cross-checked",
    )


def _report_45i(report: Report) -> None:
    sys = load_example_system("ex45i_system.json")
    u = universal_dilation(sys)
    ref_u = load_example_dilation("ex45i_universal.json", sys)
    report.check(
        "constructed universal equals the reference display entry for entry",
        u.rep.pi == ref_u.rep.pi and u.s == ref_u.s and u.t == ref_u.t,
    )
    c = canonical_dilation(sys)
    ref_c = load_example_dilation("ex45i_canonical.json", sys)
    report.check(
        "constructed canonical equals the reference display entry for entry",
        c.rep.pi == ref_c.rep.pi and c.s == ref_c.s and c.t == ref_c.t,
    )
    ker_s = kernel(u.s)
    m = maximal_invariant_subspace(u.rep, ker_s)
    report.check("maximal invariant subspace of ker(S_u) is span{e2}", m == _span(3, _unit_vec(3, 2)))
    dec = character_lines(u.rep, m)
    report.prose(
        "the only invariant subspaces of ker(S_u) are {0} and span{e2}, so there are exactly two classes",
        m.dim == 1 and len(dec) == 1 and dec.lines[0].eigenspace == m and not dec.unresolved,
        f"computed M = {_subspace_str(m)}; every invariant line lies in the single character family",
    )
    witness = are_equivalent(c, reduce_dilation(u, m), sys)
    report.check("canonical equals the universal reduced by M up to equivalence", witness is not None)


def _report_45ii(report: Report) -> None:
    sys = load_example_system("ex45ii_system.json")
    u = universal_dilation(sys)
    ref_u = load_example_dilation("ex45ii_universal.json", sys)
    report.check(
        "constructed universal equals the reference display entry for entry",
        u.rep.pi == ref_u.rep.pi and u.s == ref_u.s and u.t == ref_u.t,
    )
    c = canonical_dilation(sys)
    ref_c = load_example_dilation("ex45ii_canonical.json", sys)
    report.check(
        "constructed canonical equals the reference display entry for entry",
        c.rep.pi == ref_c.rep.pi and c.s == ref_c.s and c.t == ref_c.t,
    )
    ker_s = kernel(u.s)
    report.prose(
        "reference states ker(S_u) = span{e2, e4, e5}",
        ker_s == _span(6, _unit_vec(6, 2), _unit_vec(6, 4), _unit_vec(6, 5)),
        f"computed ker(S_u) = {_subspace_str(ker_s)} (dimension {ker_s.dim})",
    )
    m = maximal_invariant_subspace(u.rep, ker_s)
    report.prose(
        "reference states the maximal invariant subspace is span{e2, e4}",
        m == _span(6, _unit_vec(6, 2), _unit_vec(6, 4)),
        f"computed M = {_subspace_str(m)} (dimension {m.dim}); "
        f"consistent with the canonical dimension 6 - {m.dim} = {6 - m.dim}",
    )
    reduced = reduce_dilation(u, m)
    witness = are_equivalent(reduced, c, sys)
    report.check("universal reduced by M is equivalent to the canonical dilation", witness is not None)

    expected_k = {
        "ex45ii_dim4.json": _span(6, _unit_vec(6, 2), _unit_vec(6, 4)),
        "ex45ii_dim5_1.json": _span(6, _unit_vec(6, 2)),
        "ex45ii_dim5_2.json": _span(6, _unit_vec(6, 4)),
    }
    loaded = {}
    for name, expected in expected_k.items():
        d = load_example_dilation(name, sys)
        loaded[name] = d
        if _verify_reference(report, f"reference system {name.split('_', 1)[1].split('.')[0]}", d, sys):
            k = reduced_subspace(d, sys)
            report.check(
                f"reduced subspace of {name.split('_', 1)[1].split('.')[0]} is {_subspace_str(expected)}",
                k == expected,
                f"computed {_subspace_str(k)}",
            )
    pair = are_equivalent(loaded["ex45ii_dim5_1.json"], loaded["ex45ii_dim5_2.json"], sys)
    report.check("the two reference 5-dimensional systems are inequivalent", pair is None)

    dec = character_lines(u.rep, m)
    plane = _span(6, _unit_vec(6, 2), _unit_vec(6, 4))
    line_ok = any(l.eigenspace.contains(plane) for l in dec)
    report.check("every line of span{e2, e4} is invariant (single character family)", line_ok)
    samples = [(1, 0), (0, 1), (1, 1), (1, 2)]
    ks = []
    for alpha, beta in samples:
        vec = [0] * 6
        vec[1], vec[3] = alpha, beta
        ks.append(Subspace.from_vectors(6, [vec]))
    distinct = all(ks[i] != ks[j] for i in range(len(ks)) for j in range(i + 1, len(ks)))
    round_trip = all(reduced_subspace(reduce_dilation(u, k), sys) == k for k in ks)
    report.check(
        "sample lines (1,0), (0,1), (1,1), (1,2) in span{e2, e4} give pairwise distinct reduced "
        "subspaces, so there are infinitely many inequivalent 5-dimensional classes",
        distinct and round_trip,
    )

    plane2 = _span(6, _unit_vec(6, 4), _unit_vec(6, 5))
    both_invariant = is_invariant(u.rep, plane) and is_invariant(u.rep, plane2)
    second_class = reduced_subspace(reduce_dilation(u, plane2), sys)
    report.prose(
        "reference states there is only one equivalence class of 4-dimensional dilations",
        not both_invariant,
        "computed two distinct invariant planes inside ker(S_u): "
        f"{_subspace_str(plane)} and {_subspace_str(plane2)}; reducing by the second gives a "
        f"4-dimensional system with reduced subspace {_subspace_str(second_class)}, a second class",
    )

    k1 = _span(6, _unit_vec(6, 2))
    k2 = _span(6, _unit_vec(6, 4))
    verdict = are_strongly_isomorphic(k1, k2, sys, seed=report.seed)
    report.prose(
        "reference suggests span{e2} and span{e4} are strongly isomorphic",
        verdict.status == "yes",
        f"computed verdict: {verdict.status} ({verdict.detail}); the quotient by span{{e4}} kills the "
        "action of E13 while the quotient by span{e2} does not, so no invertible intertwiner exists",
    )
    k3 = _span(6, [0, 1, 0, 1, 0, 0])
    verdict2 = are_strongly_isomorphic(k1, k3, sys, seed=report.seed)
    report.check(
        "distinct reduced subspaces can be strongly isomorphic: span{e2} and span{e2 + e4} "
        "(witness computed)",
        verdict2.status == "yes" and verdict2.ambient_map is not None,
    )


def _coefficient_display_su(a, b, c, d) -> RationalMatrix:
    # reference layout of the synthesis operator for the general map on M_2,
    # vector-major tensor coordinates
    return RationalMatrix.from_rows(
        [
            [a[0], a[2], a[1], a[3], b[0], b[2], b[1], b[3]],
            [c[0], c[2], c[1], c[3], d[0], d[2], d[1], d[3]],
        ]
    )


_DISPLAY_TU = RationalMatrix.from_rows(
    [[1, 0], [0, 0], [0, 0], [1, 0], [0, 1], [0, 0], [0, 0], [0, 1]]
)


def _blockdiag_family(sys: LinearSystem, copies: int) -> list[RationalMatrix]:
    # the argument matrix repeated along the diagonal, one matrix per basis element
    from .qlinalg import kron

    out = []
    for label in sys.algebra.labels:
        r, c = int(label[1]), int(label[2])
        unit = RationalMatrix.from_rows(
            [[1 if (i + 1, j + 1) == (r, c) else 0 for j in range(2)] for i in range(2)]
        )
        out.append(kron(RationalMatrix.identity(copies), unit))
    return out


def _report_46(report: Report) -> None:
    instances = [
        ("transpose map", "ex46_tau_system.json", ([1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1])),
        (
            "half-trace-times-identity map",
            "ex46_sigma_system.json",
            (
                [Fraction(1, 2), 0, 0, Fraction(1, 2)],
                [0, 0, 0, 0],
                [0, 0, 0, 0],
                [Fraction(1, 2), 0, 0, Fraction(1, 2)],
            ),
        ),
    ]
    perm = vector_major_permutation(4, 2)
    for label, name, coeffs in instances:
        sys = load_example_system(name)
        u = universal_dilation(sys)
        report.check(f"{label}: universal dilation dimension is 8", u.dim_w == 8)
        m = maximal_invariant_subspace(u.rep, kernel(u.s))
        report.prose(
            f"{label}: ker(S_u) contains no nontrivial invariant subspace, so universal = canonical",
            m.dim == 0,
            f"computed M = {_subspace_str(m)}",
        )
        v = conjugate_dilation(u, perm)
        a, b, c, d = coeffs
        report.check(
            f"{label}: reference S_u and T_u verify against the constructed universal",
            v.s == _coefficient_display_su(a, b, c, d) and v.t == _DISPLAY_TU,
        )
        report.check(
            f"{label}: constructed homomorphism is block-diagonal with four copies of the argument",
            list(v.rep.pi) == _blockdiag_family(sys, 4),
        )
    report.prose(
        "reference display of the universal homomorphism is block-diagonal",
        False,
        "the display carries two stray symbols at positions (4,5) and (6,7) that are not functions "
        "of the map argument; treated as typographical, and the corrected block-diagonal display "
        "verifies exactly",
    )
    # a seeded generic instance of the coefficient map, kept unital by construction
    rnd = seeded_random_vector(12, report.seed)
    a = [rnd[0], rnd[1], rnd[2], 1 - rnd[0]]
    b = [rnd[3], rnd[4], rnd[5], -rnd[3]]
    c = [rnd[6], rnd[7], rnd[8], -rnd[6]]
    d = [rnd[9], rnd[10], rnd[11], 1 - rnd[9]]
    sys = builtin_system("coefficient_map", {"a": a, "b": b, "c": c, "d": d})
    v = conjugate_dilation(universal_dilation(sys), perm)
    report.check(
        "sampled coefficient map: reference S_u and T_u formulas verify against the constructed universal",
        v.s == _coefficient_display_su(a, b, c, d) and v.t == _DISPLAY_TU,
    )


def _report_47i(report: Report) -> None:
    sys = load_example_system("ex47i_system.json")
    u = universal_dilation(sys)
    perm = vector_major_permutation(3, 2)
    v = conjugate_dilation(u, perm)
    ref_u = load_example_dilation("ex47i_universal.json", sys)
    report.check(
        "constructed universal equals the reference display entry for entry (vector-major layout)",
        v.rep.pi == ref_u.rep.pi and v.s == ref_u.s and v.t == ref_u.t,
    )
    ker_s = kernel(v.s)
    report.check(
        "ker(S_u) = span{e2 - e6, e3, e4, e5}",
        ker_s == _span(6, [0, 1, 0, 0, 0, -1], _unit_vec(6, 3), _unit_vec(6, 4), _unit_vec(6, 5)),
        f"computed {_subspace_str(ker_s)}",
    )
    m = maximal_invariant_subspace(v.rep, ker_s)
    report.check(
        "maximal invariant subspace of ker(S_u) is span{e4, e5}",
        m == _span(6, _unit_vec(6, 4), _unit_vec(6, 5)),
        f"computed {_subspace_str(m)}",
    )
    c = canonical_dilation(sys)
    report.check("canonical dilation dimension is 4", c.dim_w == 4)
    ref_c = load_example_dilation("ex47i_canonical.json", sys)
    if _verify_reference(report, "reference canonical display", ref_c, sys):
        witness = are_equivalent(ref_c, c, sys)
        report.check("reference canonical is equivalent to the constructed canonical", witness is not None)

    d5 = {}
    for name, expected_paper in (
        ("ex47i_dim5_a.json", _span(6, _unit_vec(6, 4))),
        ("ex47i_dim5_b.json", _span(6, _unit_vec(6, 5))),
    ):
        d = load_example_dilation(name, sys)
        d5[name] = d
        short = name.split("_", 1)[1].split(".")[0]
        if _verify_reference(report, f"reference system {short}", d, sys):
            k = reduced_subspace(d, sys)
            k_paper = Subspace.from_vectors(
                6, [perm.apply(k.basis.row(i)) for i in range(k.dim)]
            )
            report.check(
                f"reduced subspace of {short} is {_subspace_str(expected_paper)} in the display layout",
                k_paper == expected_paper,
                f"computed {_subspace_str(k_paper)}",
            )
    pair = are_equivalent(d5["ex47i_dim5_a.json"], d5["ex47i_dim5_b.json"], sys)
    report.check("the two reference 5-dimensional systems are inequivalent", pair is None)

    dec = character_lines(v.rep, m)
    report.check(
        "every line of span{e4, e5} is invariant with character A -> a (one family, full plane)",
        len(dec) == 1
        and dec.lines[0].eigenspace == m
        and dec.lines[0].character == (Fraction(1), Fraction(0), Fraction(0))
        and not dec.unresolved,
    )
    samples = [(1, 0), (0, 1), (1, 1), (1, 2)]
    ks_paper = []
    for alpha, beta in samples:
        vec = [0] * 6
        vec[3], vec[4] = alpha, beta
        ks_paper.append(_span(6, vec))
    perm_t = perm.transpose()
    ks_ours = [
        Subspace.from_vectors(6, [perm_t.apply(k.basis.row(i)) for i in range(k.dim)])
        for k in ks_paper
    ]
    distinct = all(ks_ours[i] != ks_ours[j] for i in range(4) for j in range(i + 1, 4))
    round_trip = all(reduced_subspace(reduce_dilation(u, k), sys) == k for k in ks_ours)
    report.check(
        "sample lines (1,0), (0,1), (1,1), (1,2) of the invariant plane give pairwise distinct "
        "reduced subspaces, hence pairwise inequivalent 5-dimensional dilations",
        distinct and round_trip,
    )


def _report_47ii(report: Report) -> None:
    sys = load_example_system("ex47ii_system.json")
    u = universal_dilation(sys)
    report.check("universal dilation dimension is 18 = 6 x 3", u.dim_w == 18)
    ref_c = load_example_dilation("ex47ii_canonical.json", sys)
    if _verify_reference(report, "reference canonical display", ref_c, sys):
        report.check("reference canonical display is irreducible", is_irreducible(ref_c))
    p = principle_dilation(sys)
    report.check("constructed principle dilation has dimension 10", p.dim_w == 10)
    witness = are_equivalent(ref_c, p, sys)
    report.check(
        "reference canonical is equivalent to the constructed principle dilation", witness is not None
    )


def _report_48(report: Report) -> None:
    zero2 = RationalMatrix.zeros(2, 2)
    for label, sys_name, dil_name, expected_phi in (
        (
            "diagonal-truncation parameters",
            "ex48_d_system.json",
            "ex48_d_dilation.json",
            # maps A = (a b; c d) to diag(a, d); basis order E11, E21, E12, E22
            [RationalMatrix.from_rows([[1, 0], [0, 0]]), zero2, zero2,
             RationalMatrix.from_rows([[0, 0], [0, 1]])],
        ),
        (
            "corner-scalar parameters",
            "ex48_phi_system.json",
            "ex48_phi_dilation.json",
            # maps A to diag(a, a)
            [RationalMatrix.identity(2), zero2, zero2, zero2],
        ),
    ):
        sys = load_example_system(sys_name)
        report.check(
            f"{label}: builtin map equals the reference instantiation",
            list(sys.phi) == expected_phi,
        )
        d = load_example_dilation(dil_name, sys)
        if _verify_reference(report, f"reference dilation ({label})", d, sys):
            report.check(
                f"reference dilation ({label}) is irreducible, hence a principle dilation",
                is_irreducible(d),
            )
            witness = are_equivalent(d, principle_dilation(sys), sys)
            report.check(
                f"reference dilation ({label}) is equivalent to the constructed principle dilation",
                witness is not None,
            )
    # a seeded generic parameter choice, normalized so the map stays unital
    rnd = [x if x != 0 else Fraction(1) for x in seeded_random_vector(8, report.seed)]
    xi, gamma = [rnd[0], rnd[1]], [rnd[2], rnd[3]]
    alpha_raw, beta_raw = [rnd[4], rnd[5]], [rnd[6], rnd[7]]
    alpha = [a / (alpha_raw[0] * xi[0] + alpha_raw[1] * xi[1]) for a in alpha_raw]
    beta = [b / (beta_raw[0] * gamma[0] + beta_raw[1] * gamma[1]) for b in beta_raw]
    sys = builtin_system(
        "diag_pair_map", {"xi": xi, "gamma": gamma, "alpha": alpha, "beta": beta}
    )
    pi = _blockdiag_family(sys, 2)
    s = RationalMatrix.from_rows([[alpha[0], alpha[1], 0, 0], [0, 0, beta[0], beta[1]]])
    t = RationalMatrix.from_rows([[xi[0], 0], [xi[1], 0], [0, gamma[0]], [0, gamma[1]]])
    from .dilation import Representation

    d = DilationSystem(Representation(sys.algebra, 4, pi), s, t)
    check = validate_dilation(d, sys)
    report.check(
        "sampled parameters: the reference dilation formula validates against the builtin map",
        bool(check),
        check.message(),
    )


_RUNNERS = {
    "4.4": _report_44,
    "4.5i": _report_45i,
    "4.5ii": _report_45ii,
    "4.6": _report_46,
    "4.7i": _report_47i,
    "4.7ii": _report_47ii,
    "4.8": _report_48,
}


def run_report(example_id: str, seed: int = 0) -> Report:
    """Run the full verification pipeline for one worked example."""
    if example_id not in _RUNNERS:
        known = ", ".join(EXAMPLE_IDS)
        raise ValueError(f"unknown example id {example_id!r} (known: {known})")
    report = Report(example=example_id, seed=seed)
    _RUNNERS[example_id](report)
    return report
