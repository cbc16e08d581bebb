"""JSON file formats for lattices, function tables, polynomial forms and factorizations."""
from __future__ import annotations

import json
import os
from typing import Any

import jsonschema
import numpy as np

from .lattice import Lattice, LatticeError, SizeGuardError, UnaryMap, make_lattice
from .polyfn import FunctionTable, PolynomialForm
from .quasipoly import Factorization


class InputError(ValueError):
    """Malformed input; the message starts with a location."""


LATTICE_SCHEMA: dict = {
    "$defs": {
        "lattice": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": ["chain", "boolean", "product", "explicit"]}},
            "allOf": [
                {"if": {"properties": {"kind": {"const": "chain"}}},
                 "then": {"required": ["size"], "properties": {"size": {"type": "integer", "minimum": 1}}}},
                {"if": {"properties": {"kind": {"const": "boolean"}}},
                 "then": {"required": ["atoms"],
                          "properties": {"atoms": {"type": "integer", "minimum": 0, "maximum": 4}}}},
                {"if": {"properties": {"kind": {"const": "product"}}},
                 "then": {"required": ["factors"],
                          "properties": {"factors": {"type": "array", "minItems": 1,
                                                     "items": {"$ref": "#/$defs/lattice"}}}}},
                {"if": {"properties": {"kind": {"const": "explicit"}}},
                 "then": {"required": ["leq"],
                          "properties": {"size": {"type": "integer", "minimum": 1},
                                         "leq": {"type": "array", "minItems": 1,
                                                 "items": {"type": "array",
                                                           "items": {"enum": [0, 1, True, False]}}}}}},
            ],
        }
    },
    "$ref": "#/$defs/lattice",
}

_INDEX_LIST = {"type": "array", "items": {"type": "integer", "minimum": 0}}

FUNCTION_SCHEMA: dict = {
    "$defs": LATTICE_SCHEMA["$defs"],
    "type": "object",
    "required": ["arity", "domain", "codomain", "values"],
    "properties": {
        "arity": {"type": "integer", "minimum": 1},
        "domain": {"$ref": "#/$defs/lattice"},
        "codomain": {"$ref": "#/$defs/lattice"},
        "values": _INDEX_LIST,
    },
}

FORM_SCHEMA: dict = {
    "$defs": LATTICE_SCHEMA["$defs"],
    "type": "object",
    "required": ["arity", "lattice", "alpha"],
    "properties": {
        "arity": {"type": "integer", "minimum": 0},
        "lattice": {"$ref": "#/$defs/lattice"},
        "alpha": _INDEX_LIST,
        "beta": _INDEX_LIST,
    },
}

FACTORIZATION_SCHEMA: dict = {
    "$defs": LATTICE_SCHEMA["$defs"],
    "type": "object",
    "required": ["kind", "p", "phi"],
    "properties": {
        "kind": {"enum": ["generic", "sugeno", "transformed"]},
        "p": {k: v for k, v in FORM_SCHEMA.items() if k != "$defs"},
        "phi": {"type": "object", "required": ["table"], "properties": {"table": _INDEX_LIST}},
    },
}


def _validate(obj: Any, schema: dict, where: str) -> None:
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as e:
        raise InputError(f"{where}: at {e.json_path}: {e.message}") from None


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def parse_lattice(obj: Any, where: str = "$") -> Lattice:
    _validate(obj, LATTICE_SCHEMA, where)
    try:
        return make_lattice(obj)
    except (LatticeError, ValueError) as e:
        raise InputError(f"{where}: {e}") from None


def parse_lattice_arg(text: str) -> Lattice:
    """``chain:K``, ``boolean:K``, inline JSON, or a path to a lattice file."""
    if ":" in text and not text.lstrip().startswith("{") and not os.path.exists(text):
        kind, _, arg = text.partition(":")
        key = {"chain": "size", "boolean": "atoms"}.get(kind)
        if key is None or not arg.isdigit():
            raise InputError(f"{text!r}: expected chain:K, boolean:K, JSON or a file path")
        return parse_lattice({"kind": kind, key: int(arg)}, text)
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"<arg>:{e.lineno}:{e.colno}: {e.msg}") from None
        return parse_lattice(obj, "<arg>")
    return parse_lattice(load_json(text), text)


def _file_to_canonical(L: Lattice) -> dict[int, int]:
    """Map from file row index to canonical element index."""
    if L.relabeling is None:
        return {i: i for i in L.elements}
    return {old: new for new, old in enumerate(L.relabeling)}


def parse_function(obj: Any, where: str = "$") -> FunctionTable:
    _validate(obj, FUNCTION_SCHEMA, where)
    X = parse_lattice(obj["domain"], f"{where}.domain")
    Y = parse_lattice(obj["codomain"], f"{where}.codomain")
    n = obj["arity"]
    try:
        total = X.check_tuple_space(n)
    except SizeGuardError as e:
        raise InputError(f"{where}.arity: {e}") from None
    vals = obj["values"]
    if len(vals) != total:
        raise InputError(f"{where}.values: expected {total} entries, got {len(vals)}")
    for i, v in enumerate(vals):
        if v >= Y.size:
            raise InputError(f"{where}.values[{i}]: {v} is not an element of the codomain")
    ymap = _file_to_canonical(Y)
    vals = [ymap[v] for v in vals]
    if X.relabeling is not None:
        xmap = _file_to_canonical(X)
        grid = np.array(np.unravel_index(np.arange(total), (X.size,) * n)).T
        new_idx = np.zeros(total, dtype=np.int64)
        for k in range(n):
            new_idx = new_idx * X.size + np.array([xmap[int(a)] for a in grid[:, k]])
        out = np.zeros(total, dtype=np.int32)
        out[new_idx] = vals
        vals = out
    return FunctionTable(n, X, Y, vals)


def load_function(path: str) -> FunctionTable:
    return parse_function(load_json(path), path)


def function_to_json(f: FunctionTable) -> dict:
    return {"arity": f.arity, "domain": f.domain.spec, "codomain": f.codomain.spec,
            "values": f.values.tolist()}


def form_to_json(p: PolynomialForm) -> dict:
    out = {"arity": p.arity, "lattice": p.lattice.spec, "alpha": list(p.alpha)}
    if p.beta is not None:
        out["beta"] = list(p.beta)
    return out


def parse_form(obj: Any, where: str = "$") -> PolynomialForm:
    _validate(obj, FORM_SCHEMA, where)
    L = parse_lattice(obj["lattice"], f"{where}.lattice")
    n = obj["arity"]
    for key in ("alpha", "beta"):
        if key in obj:
            if len(obj[key]) != 1 << n:
                raise InputError(f"{where}.{key}: expected {1 << n} coefficients")
            for i, v in enumerate(obj[key]):
                if v >= L.size:
                    raise InputError(f"{where}.{key}[{i}]: {v} is not an element")
    return PolynomialForm(n, L, tuple(obj["alpha"]), tuple(obj["beta"]) if "beta" in obj else None)


def factorization_to_json(fac: Factorization) -> dict:
    return {"kind": fac.kind, "p": form_to_json(fac.p), "phi": {"table": fac.phi.table.tolist()}}


def parse_factorization(obj: Any, domain: Lattice, codomain: Lattice, where: str = "$") -> Factorization:
    """The phi entry carries only a table; its lattices come from the function it factorizes."""
    _validate(obj, FACTORIZATION_SCHEMA, where)
    p = parse_form(obj["p"], f"{where}.p")
    try:
        phi = UnaryMap(domain, codomain, obj["phi"]["table"])
    except ValueError as e:
        raise InputError(f"{where}.phi.table: {e}") from None
    try:
        return Factorization(p, phi, obj["kind"])
    except ValueError as e:
        raise InputError(f"{where}.phi.table: {e}") from None
