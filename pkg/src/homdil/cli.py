"""Command-line front end.

Commands load systems, dilations and subspaces from JSON files, run the
constructions and classification machinery, and print either human-readable
text or deterministic JSON (identical invocations with the same --seed
produce byte-identical output). Exit code 0 means every check in the
invocation passed; DISCREPANCY entries against reference prose do not fail
a run, internal consistency failures do.
"""

from __future__ import annotations

import argparse
import sys as _sys
from dataclasses import dataclass

from .classify import (
    are_equivalent,
    are_strongly_isomorphic,
    character_lines,
    reduced_subspace,
)
from .dilation import (
    DilationSystem,
    canonical_dilation,
    is_invariant,
    is_irreducible,
    is_linearly_minimal,
    maximal_invariant_subspace,
    principle_dilation,
    universal_dilation,
    validate_dilation,
)
from .jsonio import (
    FormatError,
    dump_json,
    format_dilation,
    format_matrix,
    format_subspace,
    load_json,
    parse_dilation,
    parse_subspace,
    parse_system,
)
from .linsys import LinearSystem, validate_system
from .qlinalg import Subspace, kernel
from .reports import EXAMPLE_IDS, run_report


@dataclass(frozen=True)
class RunConfig:
    command: str
    paths: tuple[str, ...]
    seed: int = 0
    output: str = "text"  # text | json


def _load_system(path: str) -> LinearSystem:
    sys_obj = parse_system(load_json(path), path)
    check = validate_system(sys_obj)
    if not check:
        raise FormatError(f"{path}: invalid system: {check.message()}")
    return sys_obj


def _load_dilation(path: str, system: LinearSystem) -> DilationSystem:
    return parse_dilation(load_json(path), system.algebra, path)


def _dilation_doc(d: DilationSystem) -> dict:
    return format_dilation(
        d,
        {
            "linearly_minimal": is_linearly_minimal(d),
            "irreducible": is_irreducible(d),
        },
    )


def _print_dilation_text(doc: dict, out) -> None:
    print(f"dilation dimension: {doc['dim_w']}", file=out)
    print(f"linearly minimal:   {doc['linearly_minimal']}", file=out)
    print(f"irreducible:        {doc['irreducible']}", file=out)
    for i, m in enumerate(doc["pi"]):
        print(f"pi[{i}]: {m}", file=out)
    print(f"S: {doc['S']}", file=out)
    print(f"T: {doc['T']}", file=out)


def _cmd_info(config: RunConfig) -> tuple[dict, int]:
    system = _load_system(config.paths[0])
    doc = {
        "valid": True,
        "dim_a": system.algebra.dim,
        "dim_v": system.dim_v,
        "labels": list(system.algebra.labels),
        "universal_dimension": system.algebra.dim * system.dim_v,
    }
    return doc, 0


def _cmd_construct(config: RunConfig) -> tuple[dict, int]:
    system = _load_system(config.paths[0])
    builder = {
        "universal": universal_dilation,
        "canonical": canonical_dilation,
        "principle": principle_dilation,
    }[config.command]
    return _dilation_doc(builder(system)), 0


def _cmd_verify(config: RunConfig) -> tuple[dict, int]:
    system = _load_system(config.paths[0])
    d = _load_dilation(config.paths[1], system)
    check = validate_dilation(d, system)
    doc: dict = {"valid": bool(check), "dim_w": d.dim_w}
    if not check:
        doc["problems"] = list(check.problems)
        return doc, 1
    minimal = is_linearly_minimal(d)
    doc["linearly_minimal"] = minimal
    doc["irreducible"] = is_irreducible(d)
    if minimal:
        doc["reduced_subspace"] = format_subspace(reduced_subspace(d, system))
    else:
        doc["reduced_subspace"] = None
    return doc, 0


def _cmd_equiv(config: RunConfig) -> tuple[dict, int]:
    system = _load_system(config.paths[0])
    d1 = _load_dilation(config.paths[1], system)
    d2 = _load_dilation(config.paths[2], system)
    witness = are_equivalent(d1, d2, system)
    if witness is not None:
        return {"verdict": "EQUIVALENT", "witness": format_matrix(witness.r)}, 0
    doc = {
        "verdict": "INEQUIVALENT",
        "reduced_subspace_1": format_subspace(reduced_subspace(d1, system)),
        "reduced_subspace_2": format_subspace(reduced_subspace(d2, system)),
    }
    return doc, 0


def _invariant_classes(system: LinearSystem, u, m: Subspace, decomposition) -> list[Subspace]:
    classes = [Subspace.zero(u.dim_w), m]
    for line in decomposition:
        classes.append(line.eigenspace)
        if line.eigenspace.dim >= 2:
            for i in range(line.eigenspace.dim):
                classes.append(
                    Subspace.from_vectors(u.dim_w, [line.eigenspace.basis.row(i)])
                )
    unique: list[Subspace] = []
    for k in classes:
        if k not in unique:
            unique.append(k)
    return unique


def _cmd_classify(config: RunConfig) -> tuple[dict, int]:
    system = _load_system(config.paths[0])
    u = universal_dilation(system)
    ker_s = kernel(u.s)
    m = maximal_invariant_subspace(u.rep, ker_s)
    within = m
    if len(config.paths) > 1:
        within = parse_subspace(load_json(config.paths[1]), config.paths[1])
        if not is_invariant(u.rep, within):
            raise FormatError(f"{config.paths[1]}: subspace is not invariant under the universal homomorphism")
    decomposition = character_lines(u.rep, within)
    classes = _invariant_classes(system, u, m, decomposition)
    verdicts = []
    for k1 in classes:
        row = []
        for k2 in classes:
            row.append(are_strongly_isomorphic(k1, k2, system, seed=config.seed).status)
        verdicts.append(row)
    doc = {
        "ker_S_dim": ker_s.dim,
        "M_basis": format_subspace(m)["basis"],
        "character_lines": [
            {
                "character": [str(x) for x in line.character],
                "eigenspace": format_subspace(line.eigenspace),
            }
            for line in decomposition
        ],
        "unresolved": [
            {
                "subspace": format_subspace(piece.subspace),
                "generator_index": piece.generator_index,
                "residual_dim": piece.residual_dim,
            }
            for piece in decomposition.unresolved
        ],
        "classes": [
            {"K_basis": format_subspace(k)["basis"], "dilation_dim": u.dim_w - k.dim} for k in classes
        ],
        "strong_isomorphism_matrix": verdicts,
    }
    return doc, 0


def _cmd_strong_iso(config: RunConfig) -> tuple[dict, int]:
    system = _load_system(config.paths[0])
    k1 = parse_subspace(load_json(config.paths[1]), config.paths[1])
    k2 = parse_subspace(load_json(config.paths[2]), config.paths[2])
    verdict = are_strongly_isomorphic(k1, k2, system, seed=config.seed)
    doc: dict = {"verdict": verdict.status}
    if verdict.detail:
        doc["detail"] = verdict.detail
    if verdict.ambient_map is not None:
        doc["ambient_map"] = format_matrix(verdict.ambient_map)
    if verdict.intertwiner is not None:
        doc["intertwiner"] = format_matrix(verdict.intertwiner)
    return doc, 0


def _cmd_report(config: RunConfig) -> tuple[dict, int]:
    report = run_report(config.paths[0], seed=config.seed)
    return report.to_doc(), 0 if report.ok else 1


_COMMANDS = {
    "info": _cmd_info,
    "universal": _cmd_construct,
    "canonical": _cmd_construct,
    "principle": _cmd_construct,
    "verify": _cmd_verify,
    "equiv": _cmd_equiv,
    "classify": _cmd_classify,
    "strong-iso": _cmd_strong_iso,
    "report": _cmd_report,
}


def _render_text(command: str, doc: dict, out) -> None:
    if command == "report":
        print(f"report for worked example {doc['example']} (seed {doc['seed']})", file=out)
        for entry in doc["entries"]:
            line = f"[{entry['status']}] {entry['claim']}"
            print(line, file=out)
            if entry["detail"]:
                print(f"        {entry['detail']}", file=out)
        print(f"result: {'ok' if doc['ok'] else 'FAILED'}", file=out)
    elif command in ("universal", "canonical", "principle"):
        _print_dilation_text(doc, out)
    elif command == "verify":
        for key in ("valid", "dim_w", "linearly_minimal", "irreducible"):
            if key in doc:
                print(f"{key}: {doc[key]}", file=out)
        if doc.get("problems"):
            for p in doc["problems"]:
                print(f"problem: {p}", file=out)
        if doc.get("reduced_subspace") is not None:
            print(f"reduced subspace basis: {doc['reduced_subspace']['basis']}", file=out)
    elif command == "equiv":
        print(doc["verdict"], file=out)
        if "witness" in doc:
            print(f"witness R: {doc['witness']}", file=out)
        else:
            print(f"reduced subspace 1: {doc['reduced_subspace_1']['basis']}", file=out)
            print(f"reduced subspace 2: {doc['reduced_subspace_2']['basis']}", file=out)
    else:
        for key, value in doc.items():
            print(f"{key}: {value}", file=out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homdil",
        description="Construct, verify and classify homomorphism dilation systems in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit deterministic JSON instead of text")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized verdicts (default 0)")

    p = sub.add_parser("info", help="validate a system file and print basic facts")
    p.add_argument("--system", required=True)
    common(p)
    for name, help_text in (
        ("universal", "construct the universal dilation of a system"),
        ("canonical", "construct the canonical dilation of a system"),
        ("principle", "construct the principle dilation of a system"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--system", required=True)
        common(p)
    p = sub.add_parser("verify", help="check a dilation file against a system file")
    p.add_argument("--system", required=True)
    p.add_argument("--dilation", required=True)
    common(p)
    p = sub.add_parser("equiv", help="decide equivalence of two dilations of one system")
    p.add_argument("--system", required=True)
    p.add_argument("dilations", nargs=2, metavar="DILATION")
    common(p)
    p = sub.add_parser("classify", help="classification report for a system")
    p.add_argument("--system", required=True)
    p.add_argument("--lines-within", help="subspace file to search for character lines (default: M)")
    common(p)
    p = sub.add_parser("strong-iso", help="strong isomorphism of two invariant subspaces")
    p.add_argument("--system", required=True)
    p.add_argument("--k1", required=True)
    p.add_argument("--k2", required=True)
    common(p)
    p = sub.add_parser("report", help="run the verification report for a worked example")
    p.add_argument("example", choices=EXAMPLE_IDS)
    common(p)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    command = args.command
    if command in ("info", "universal", "canonical", "principle"):
        paths: tuple[str, ...] = (args.system,)
    elif command == "verify":
        paths = (args.system, args.dilation)
    elif command == "equiv":
        paths = (args.system, *args.dilations)
    elif command == "classify":
        paths = (args.system,) + ((args.lines_within,) if args.lines_within else ())
    elif command == "strong-iso":
        paths = (args.system, args.k1, args.k2)
    else:
        paths = (args.example,)
    return RunConfig(command, paths, args.seed, "json" if args.json else "text")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = _config_from_args(args)
    try:
        doc, code = _COMMANDS[config.command](config)
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2
    if config.output == "json":
        print(dump_json(doc))
    else:
        _render_text(config.command, doc, _sys.stdout)
    return code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
