"""JSON reading and writing for algebras, systems, dilations and subspaces.

Rationals serialize as strings "p/q" (just "p" when q = 1); matrices as
row-major nested arrays. Integers are accepted on input anywhere a rational
is expected. Structure-constant triples are 0-indexed and omitted triples
are zero. Parse failures raise FormatError naming the offending field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebra import Algebra, custom_algebra, full_matrix_algebra, upper_triangular_algebra
from .dilation import DilationSystem, Representation
from .linsys import LinearSystem, builtin_system
from .qlinalg import RationalMatrix, Subspace, rat, rat_str


class FormatError(ValueError):
    """A JSON document does not match the expected shape."""


def _fail(path: str, message: str) -> FormatError:
    return FormatError(f"{path}: {message}")


def parse_rational(obj: Any, path: str = "value") -> Fraction:
    if isinstance(obj, bool) or not isinstance(obj, (int, str)):
        raise _fail(path, f"expected an integer or a 'p/q' string, got {obj!r}")
    try:
        return rat(obj)
    except (ValueError, ZeroDivisionError) as exc:
        raise _fail(path, f"not a rational: {obj!r} ({exc})")


def format_rational(value: Fraction) -> str:
    return rat_str(value)


def parse_matrix(obj: Any, path: str = "matrix") -> RationalMatrix:
    if not isinstance(obj, list) or not obj:
        raise _fail(path, "expected a non-empty array of rows")
    if any(not isinstance(row, list) for row in obj):
        raise _fail(path, "rows must be arrays")
    width = len(obj[0])
    if width == 0 or any(len(row) != width for row in obj):
        raise _fail(path, "rows must be non-empty and of equal length")
    entries = []
    for i, row in enumerate(obj):
        for j, cell in enumerate(row):
            entries.append(parse_rational(cell, f"{path}[{i}][{j}]"))
    return RationalMatrix(len(obj), width, entries)


def format_matrix(m: RationalMatrix) -> list[list[str]]:
    return [[rat_str(x) for x in m.row(i)] for i in range(m.rows)]


def parse_vector(obj: Any, path: str = "vector") -> list[Fraction]:
    if not isinstance(obj, list):
        raise _fail(path, "expected an array")
    return [parse_rational(x, f"{path}[{i}]") for i, x in enumerate(obj)]


def parse_algebra(obj: Any, path: str = "algebra") -> Algebra:
    if not isinstance(obj, dict):
        raise _fail(path, "expected an object")
    if "builtin" in obj:
        kind = obj["builtin"]
        n = obj.get("n")
        if not isinstance(n, int) or n < 1:
            raise _fail(f"{path}.n", "expected a positive integer")
        if kind == "full_matrix":
            return full_matrix_algebra(n)
        if kind == "upper_triangular":
            return upper_triangular_algebra(n)
        raise _fail(f"{path}.builtin", f"unknown builtin algebra {kind!r}")
    if "custom" in obj:
        spec = obj["custom"]
        if not isinstance(spec, dict):
            raise _fail(f"{path}.custom", "expected an object")
        dim = spec.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise _fail(f"{path}.custom.dim", "expected a positive integer")
        unit = parse_vector(spec.get("unit"), f"{path}.custom.unit")
        raw = spec.get("structure_constants")
        if not isinstance(raw, list):
            raise _fail(f"{path}.custom.structure_constants", "expected an array of [i, j, k, value]")
        triples = []
        for idx, item in enumerate(raw):
            where = f"{path}.custom.structure_constants[{idx}]"
            if not isinstance(item, list) or len(item) != 4:
                raise _fail(where, "expected [i, j, k, value]")
            i, j, k, value = item
            if not all(isinstance(x, int) for x in (i, j, k)):
                raise _fail(where, "indices must be integers")
            triples.append((i, j, k, parse_rational(value, f"{where}[3]")))
        labels = spec.get("labels")
        try:
            return custom_algebra(dim, triples, unit, labels)
        except ValueError as exc:
            raise _fail(f"{path}.custom", str(exc))
    raise _fail(path, "expected a 'builtin' or 'custom' algebra spec")


def parse_system(obj: Any, path: str = "system") -> LinearSystem:
    if not isinstance(obj, dict):
        raise _fail(path, "expected an object")
    if "builtin" in obj:
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise _fail(f"{path}.params", "expected an object")
        try:
            return builtin_system(obj["builtin"], params)
        except (ValueError, KeyError) as exc:
            raise _fail(path, str(exc))
    algebra = parse_algebra(obj.get("algebra"), f"{path}.algebra")
    dim_v = obj.get("dim_v")
    if not isinstance(dim_v, int) or dim_v < 1:
        raise _fail(f"{path}.dim_v", "expected a positive integer")
    raw_phi = obj.get("phi")
    if not isinstance(raw_phi, list) or len(raw_phi) != algebra.dim:
        raise _fail(f"{path}.phi", f"expected {algebra.dim} matrices, one per basis element")
    phi = [parse_matrix(m, f"{path}.phi[{i}]") for i, m in enumerate(raw_phi)]
    for i, m in enumerate(phi):
        if m.rows != dim_v or m.cols != dim_v:
            raise _fail(f"{path}.phi[{i}]", f"expected {dim_v}x{dim_v}, got {m.rows}x{m.cols}")
    return LinearSystem(algebra, dim_v, phi)


def format_system(sys: LinearSystem) -> dict:
    return {
        "algebra": {
            "custom": {
                "dim": sys.algebra.dim,
                "labels": list(sys.algebra.labels),
                "unit": [rat_str(x) for x in sys.algebra.unit],
                "structure_constants": [
                    [i, j, k, rat_str(c)]
                    for i in range(sys.algebra.dim)
                    for j in range(sys.algebra.dim)
                    for k, c in enumerate(sys.algebra.structure[i][j])
                    if c
                ],
            }
        },
        "dim_v": sys.dim_v,
        "phi": [format_matrix(m) for m in sys.phi],
    }


def parse_dilation(obj: Any, algebra: Algebra, path: str = "dilation") -> DilationSystem:
    if not isinstance(obj, dict):
        raise _fail(path, "expected an object")
    raw_pi = obj.get("pi")
    if not isinstance(raw_pi, list) or len(raw_pi) != algebra.dim:
        raise _fail(f"{path}.pi", f"expected {algebra.dim} matrices, one per basis element")
    pi = [parse_matrix(m, f"{path}.pi[{i}]") for i, m in enumerate(raw_pi)]
    dim_w = pi[0].rows
    for i, m in enumerate(pi):
        if m.rows != dim_w or m.cols != dim_w:
            raise _fail(f"{path}.pi[{i}]", f"expected {dim_w}x{dim_w}, got {m.rows}x{m.cols}")
    s = parse_matrix(obj.get("S"), f"{path}.S")
    t = parse_matrix(obj.get("T"), f"{path}.T")
    if s.cols != dim_w:
        raise _fail(f"{path}.S", f"expected {s.rows}x{dim_w}, got {s.rows}x{s.cols}")
    if t.rows != dim_w or t.cols != s.rows:
        raise _fail(f"{path}.T", f"expected {dim_w}x{s.rows}, got {t.rows}x{t.cols}")
    return DilationSystem(Representation(algebra, dim_w, pi), s, t)


def format_dilation(d: DilationSystem, extra: dict | None = None) -> dict:
    doc = {
        "pi": [format_matrix(m) for m in d.rep.pi],
        "S": format_matrix(d.s),
        "T": format_matrix(d.t),
        "dim_w": d.dim_w,
    }
    if extra:
        doc.update(extra)
    return doc


def parse_subspace(obj: Any, path: str = "subspace") -> Subspace:
    if not isinstance(obj, dict):
        raise _fail(path, "expected an object")
    ambient = obj.get("ambient_dim")
    if not isinstance(ambient, int) or ambient < 0:
        raise _fail(f"{path}.ambient_dim", "expected a nonnegative integer")
    raw = obj.get("basis")
    if not isinstance(raw, list):
        raise _fail(f"{path}.basis", "expected an array of vectors")
    vectors = [parse_vector(v, f"{path}.basis[{i}]") for i, v in enumerate(raw)]
    for i, v in enumerate(vectors):
        if len(v) != ambient:
            raise _fail(f"{path}.basis[{i}]", f"expected length {ambient}, got {len(v)}")
    return Subspace.from_vectors(ambient, vectors)


def format_subspace(s: Subspace) -> dict:
    return {
        "ambient_dim": s.ambient_dim,
        "basis": [[rat_str(x) for x in s.basis.row(i)] for i in range(s.dim)],
    }


def load_json(path: str | Path) -> Any:
    """Read a JSON file, turning decode errors into FormatError with position info."""
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")


def dump_json(doc: Any) -> str:
    """Deterministic JSON rendering: sorted keys, no whitespace variation."""
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1)
