"""JSON instance files: parsing, validation and canonical emission.

Field elements are written as integral-basis coordinates; every number is a
decimal string ("3", "-1/2") so that nothing passes through a float.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .enumeration import DEFAULT_BUDGET
from .fields import FieldError, NumberField, make_field
from .forms import BinaryForm
from .poly import QPoly
from .solver import ThueInstance

SCHEMA_VERSION = 1
BUNDLED = ("example3.json", "example4.json", "phi5.json", "phi13.json")


class SchemaError(ValueError):
    """Malformed instance document."""


class InvariantError(ValueError):
    """Well-formed document whose contents violate a mathematical invariant."""


def _num(v, where: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise SchemaError(f"{where}: expected a number encoded as a string, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: {v!r} is not an exact rational") from exc


def _int(v, where: str) -> int:
    q = _num(v, where)
    if q.denominator != 1:
        raise InvariantError(f"{where}: {v!r} is not an integer")
    return int(q)


def _vec(v, n: int, where: str) -> list[Fraction]:
    if not isinstance(v, list):
        raise SchemaError(f"{where}: expected a list of {n} coordinates")
    if len(v) != n:
        raise SchemaError(f"{where}: expected {n} coordinates, got {len(v)}")
    return [_num(c, f"{where}[{i}]") for i, c in enumerate(v)]


def _require(doc: dict, key: str, kind, where: str = ""):
    if key not in doc:
        raise SchemaError(f"missing field {where}{key}")
    if not isinstance(doc[key], kind):
        raise SchemaError(f"field {where}{key} has the wrong type")
    return doc[key]


def resolve_path(path: str | Path) -> Path:
    """A filesystem path, or the name of a bundled instance."""
    p = Path(path)
    if p.exists():
        return p
    if p.name in BUNDLED:
        return Path(str(resources.files("thuecm") / "data" / p.name))
    raise FileNotFoundError(f"no such instance file: {path}")


def load_document(path: str | Path) -> dict:
    try:
        with open(resolve_path(path)) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    return doc


def parse_document(doc: dict) -> ThueInstance:
    version = _require(doc, "schema_version", (int, str))
    if str(version) != str(SCHEMA_VERSION):
        raise SchemaError(f"unsupported schema_version {version!r}")
    bf = _require(doc, "base_field", dict)
    mp = _require(bf, "min_poly", list, "base_field.")
    if len(mp) < 2:
        raise SchemaError("base_field.min_poly must have degree >= 1")
    min_poly = QPoly([_int(c, f"base_field.min_poly[{i}]") for i, c in enumerate(mp)])
    d = min_poly.degree
    basis = bf.get("integral_basis")
    if basis is not None:
        if not isinstance(basis, list) or len(basis) != d:
            raise SchemaError(f"base_field.integral_basis must list {d} elements")
        basis = [_vec(row, d, f"base_field.integral_basis[{i}]") for i, row in enumerate(basis)]
    try:
        K = make_field(min_poly, basis, name=str(doc.get("name", "")))
    except FieldError as exc:
        raise InvariantError(f"base field: {exc}") from exc

    form = _require(doc, "form", dict)
    coeffs = _require(form, "coefficients", list, "form.")
    elems = [K.from_integral(_vec(c, d, f"form.coefficients[{i}]")) for i, c in enumerate(coeffs)]
    try:
        F = BinaryForm(K, tuple(elems))
    except FieldError as exc:
        raise InvariantError(f"form: {exc}") from exc
    b = K.from_integral(_vec(_require(doc, "rhs_b", list), d, "rhs_b"))
    if not b.has_integral_coords():
        raise InvariantError("rhs_b is not in O_K")
    if b.is_zero():
        raise InvariantError("rhs_b must be nonzero")
    graw = _require(doc, "cm_factor_g", list)
    g = [K.from_integral(_vec(c, d, f"cm_factor_g[{i}]")) for i, c in enumerate(graw)]

    opts = doc.get("options", {}) or {}
    if not isinstance(opts, dict):
        raise SchemaError("options must be an object")
    budget = opts.get("enumeration_budget", DEFAULT_BUDGET)
    budget = None if budget is None else _int(budget, "options.enumeration_budget")
    prec = _int(opts.get("precision_bits", 64), "options.precision_bits")
    strict = opts.get("strict_paper_mode", False)
    if not isinstance(strict, bool):
        raise SchemaError("options.strict_paper_mode must be a boolean")
    return ThueInstance(K, F, b, g, budget=budget, strict_paper_mode=strict,
                        precision_bits=prec, name=str(doc.get("name", "")))


def parse_instance(path: str | Path) -> ThueInstance:
    return parse_document(load_document(path))


def _s(q: Fraction) -> str:
    return str(Fraction(q))


def _coords(z) -> list[str]:
    return [_s(c) for c in z.integral_coords()]


def emit_document(inst: ThueInstance) -> dict:
    K = inst.K
    return {
        "schema_version": SCHEMA_VERSION,
        "name": inst.name,
        "base_field": {
            "min_poly": [_s(c) for c in K.min_poly.coeffs],
            "integral_basis": [[_s(c) for c in row] for row in K.basis],
        },
        "form": {"coefficients": [_coords(a) for a in inst.F.coeffs]},
        "rhs_b": _coords(inst.b),
        "cm_factor_g": [_coords(c) for c in inst.g],
        "options": {
            "precision_bits": str(inst.precision_bits),
            "enumeration_budget": None if inst.budget is None else str(inst.budget),
            "strict_paper_mode": inst.strict_paper_mode,
        },
    }


def write_instance(inst: ThueInstance, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(emit_document(inst), fh, indent=2)
        fh.write("\n")


def elem_from_coords(K: NumberField, coords) -> "object":
    return K.from_integral([_num(c, "coordinate") for c in coords])
