"""JSON file format for r-matrices.

Schema:

    {
      "algebra": "cur_sl2" | "vir",
      "parameters": ["alpha", ...],          # optional
      "entries": [
        {"left": "h", "right": "e", "coeff": "1 + d1^2"},
        ...
      ]
    }

Coefficients are expression strings in d1, d2 and the declared
parameters; parameters must be declared before use.
"""

from __future__ import annotations

import json
from typing import Union

from .conformal import ConfAlgebra
from .exactpoly import ParseError, SymbolRegistry
from .liealg import sl2
from .ybe import RMat

ALGEBRAS = ("cur_sl2", "vir")


class RMatFileError(ValueError):
    """Malformed r-matrix file."""


def make_algebra(name: str, reg: SymbolRegistry) -> ConfAlgebra:
    if name == "cur_sl2":
        return ConfAlgebra.cur(sl2(), reg)
    if name == "vir":
        return ConfAlgebra.vir(reg)
    raise RMatFileError(f"unknown algebra {name!r} (expected one of {ALGEBRAS})")


def loads(text: str, reg: SymbolRegistry = None) -> RMat:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise RMatFileError(f"invalid JSON: {err}") from err
    return from_dict(data, reg)


def from_dict(data: dict, reg: SymbolRegistry = None) -> RMat:
    reg = reg or SymbolRegistry()
    if not isinstance(data, dict):
        raise RMatFileError("top level must be an object")
    alg = make_algebra(data.get("algebra", ""), reg)
    parameters = data.get("parameters", [])
    if not isinstance(parameters, list):
        raise RMatFileError("parameters must be a list of symbol names")
    allowed = {"d1", "d2"}
    for name in parameters:
        if name in ("d1", "d2", "d3", "lam", "mu", "x", "y", "z"):
            raise RMatFileError(f"parameter name {name!r} is reserved")
        reg.sym(name)
        allowed.add(name)
    entries = {}
    for item in data.get("entries", []):
        left, right = item.get("left"), item.get("right")
        if left not in alg.basis_names or right not in alg.basis_names:
            raise RMatFileError(
                f"unknown basis pair ({left!r}, {right!r}) for algebra {data['algebra']}"
            )
        try:
            poly = reg.parse(str(item.get("coeff", "0")))
        except ParseError as err:
            raise RMatFileError(
                f"entry ({left}, {right}): {err}"
            ) from err
        used = {s.name for s in poly.symbols()}
        undeclared = used - allowed
        if undeclared:
            raise RMatFileError(
                f"entry ({left}, {right}) uses undeclared symbols {sorted(undeclared)}"
            )
        key = (left, right)
        entries[key] = entries.get(key, reg.zero()) + poly
    return RMat(alg, entries)


def load(path: str, reg: SymbolRegistry = None) -> RMat:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read(), reg)


def to_dict(r: RMat, parameters: Union[list, tuple] = ()) -> dict:
    name = "cur_sl2" if r.alg.kind == "cur" else "vir"
    entries = [
        {"left": q, "right": l, "coeff": poly.to_string()}
        for (q, l), poly in sorted(r.entries.items())
    ]
    out = {"algebra": name, "entries": entries}
    if parameters:
        out["parameters"] = list(parameters)
    return out


def dump(r: RMat, path: str, parameters: Union[list, tuple] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_dict(r, parameters), fh, indent=2, sort_keys=True)
        fh.write("\n")
