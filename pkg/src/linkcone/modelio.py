"""JSON file formats for models, inequalities, and maps.

All structured output is JSON with sorted keys, so emit-parse-emit is a
fixed point and the files are friendly to golden-file testing.  Rational
values are written as plain integers when integral and as ``"p/q"``
strings otherwise; link weights additionally allow ``"inf"``.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .certificates import IndicatorEntry, OracularIndicatorTable, TritContractionMap, Trits
from .core import Bits, party_index, party_letter
from .graphs import WeightedGraph
from .hypergraphs import Hypergraph
from .links import INFINITE, AtomicLinkages, ConnectivityTable, LinkModel, _Infinite


class ModelFileError(ValueError):
    """Unreadable or schema-invalid model/map file."""


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise ModelFileError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ModelFileError(f"bad rational {value!r}") from exc
    raise ModelFileError(f"expected an integer or 'p/q' string, got {value!r}")


def format_rational(value: Fraction):
    value = Fraction(value)
    return int(value) if value.denominator == 1 else str(value)


def _parse_external(obj) -> dict[int, str]:
    if not isinstance(obj, dict) or not obj:
        raise ModelFileError("external mapping must be a nonempty object")
    parties = len(obj)
    mapping: dict[int, str] = {}
    for letter, name in obj.items():
        try:
            idx = party_index(letter, parties)
        except ValueError as exc:
            raise ModelFileError(f"bad external party letter {letter!r}") from exc
        if not isinstance(name, str):
            raise ModelFileError(f"external target for {letter!r} must be a name")
        mapping[idx] = name
    if sorted(mapping) != list(range(1, parties + 1)):
        raise ModelFileError("external letters must be consecutive from 'A'")
    return mapping


def _format_external(mapping: dict[int, str]) -> dict[str, str]:
    return {party_letter(i): name for i, name in sorted(mapping.items())}


def model_from_json(obj) -> WeightedGraph | Hypergraph | LinkModel:
    if not isinstance(obj, dict):
        raise ModelFileError("model file must contain a JSON object")
    kind = obj.get("kind")
    try:
        if kind == "graph":
            return WeightedGraph(
                vertices=tuple(obj["vertices"]),
                external=_parse_external(obj["external"]),
                edges=tuple((u, v, parse_rational(w)) for u, v, w in obj["edges"]),
            )
        if kind == "hypergraph":
            return Hypergraph(
                vertices=tuple(obj["vertices"]),
                external=_parse_external(obj["external"]),
                hyperedges=tuple(
                    (frozenset(e["members"]), parse_rational(e["weight"]))
                    for e in obj["hyperedges"]
                ),
            )
        if kind == "link":
            weights = {}
            for name, w in obj["weights"].items():
                weights[name] = INFINITE if w == "inf" else parse_rational(w)
            structure_obj = obj["structure"]
            if "atoms" in structure_obj:
                structure = AtomicLinkages(tuple(frozenset(a) for a in structure_obj["atoms"]))
            elif "table" in structure_obj:
                table = {}
                for key, blocks in structure_obj["table"].items():
                    subset = frozenset(x for x in key.split(",") if x)
                    table[subset] = tuple(frozenset(b) for b in blocks)
                structure = ConnectivityTable(table)
            else:
                raise ModelFileError("link structure needs either 'atoms' or 'table'")
            return LinkModel(
                loops=tuple(obj["loops"]),
                weights=weights,
                external=_parse_external(obj["external"]),
                structure=structure,
            )
    except ModelFileError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFileError(f"invalid {kind or 'model'} file: {exc}") from exc
    raise ModelFileError(f"unknown model kind {kind!r}")


def model_to_json(model) -> dict:
    if isinstance(model, WeightedGraph):
        return {
            "kind": "graph",
            "vertices": list(model.vertices),
            "external": _format_external(model.external),
            "edges": [[u, v, format_rational(w)] for u, v, w in model.edges],
        }
    if isinstance(model, Hypergraph):
        return {
            "kind": "hypergraph",
            "vertices": list(model.vertices),
            "external": _format_external(model.external),
            "hyperedges": [
                {"members": sorted(members), "weight": format_rational(w)}
                for members, w in model.hyperedges
            ],
        }
    if isinstance(model, LinkModel):
        weights = {
            name: ("inf" if isinstance(w, _Infinite) else format_rational(w))
            for name, w in model.weights.items()
        }
        if isinstance(model.structure, AtomicLinkages):
            structure = {
                "atoms": sorted(
                    sorted(atom, key=model.loop_index) for atom in model.structure.atoms
                )
            }
        else:
            structure = {
                "table": {
                    ",".join(sorted(subset, key=model.loop_index)): sorted(
                        (sorted(b, key=model.loop_index) for b in blocks),
                        key=lambda b: model.loop_index(b[0]),
                    )
                    for subset, blocks in sorted(
                        model.structure.blocks_by_subset.items(),
                        key=lambda kv: (len(kv[0]), sorted(kv[0])),
                    )
                }
            }
        return {
            "kind": "link",
            "loops": list(model.loops),
            "weights": weights,
            "external": _format_external(model.external),
            "structure": structure,
        }
    raise TypeError(f"not a model: {model!r}")


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_model(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            obj = json.load(handle)
    except OSError as exc:
        raise ModelFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"{path} is not valid JSON: {exc}") from exc
    return model_from_json(obj)


def save_model(model, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_json(model_to_json(model)))


def file_digest(path: str) -> str:
    with open(path, "rb") as handle:
        return "sha256:" + hashlib.sha256(handle.read()).hexdigest()


def text_digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# bitstring and trit-string map files


def _bits_from_key(key: str, name: str) -> Bits:
    if not key or any(ch not in "01" for ch in key):
        raise ModelFileError(f"bad {name} bitstring {key!r}")
    return tuple(int(ch) for ch in key)


def bit_map_from_json(obj) -> dict[Bits, Bits]:
    if not isinstance(obj, dict) or not obj:
        raise ModelFileError("map file must contain a nonempty JSON object")
    mapping = {}
    for key, value in obj.items():
        if not isinstance(value, str):
            raise ModelFileError(f"image of {key!r} must be a bitstring")
        mapping[_bits_from_key(key, "domain")] = _bits_from_key(value, "image")
    return mapping


def bit_map_to_json(mapping: dict[Bits, Bits]) -> dict[str, str]:
    return {
        "".join(map(str, x)): "".join(map(str, y))
        for x, y in sorted(mapping.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    }


def _trits_from_key(key: str) -> Trits:
    try:
        trits = tuple(int(part) for part in key.split(","))
    except ValueError as exc:
        raise ModelFileError(f"bad trit-string {key!r}") from exc
    if not trits or any(t not in (-1, 0, 1) for t in trits):
        raise ModelFileError(f"bad trit-string {key!r}")
    return trits


def trit_map_from_json(obj, length: int, width: int) -> TritContractionMap:
    if not isinstance(obj, dict) or not obj:
        raise ModelFileError("trit map file must contain a nonempty JSON object")
    images = {}
    for key, value in obj.items():
        if not isinstance(value, str):
            raise ModelFileError(f"image of {key!r} must be a trit-string")
        images[_trits_from_key(key)] = _trits_from_key(value)
    try:
        return TritContractionMap(images=images, length=length, width=width)
    except ValueError as exc:
        raise ModelFileError(str(exc)) from exc


def trit_map_to_json(cmap: TritContractionMap) -> dict[str, str]:
    return {
        ",".join(map(str, cell)): ",".join(map(str, image))
        for cell, image in sorted(cmap.images.items())
    }


def indicator_table_to_json(table: OracularIndicatorTable) -> dict:
    def entry_obj(entry: IndicatorEntry) -> dict:
        return {
            "term": entry.term_index,
            "cover_size": entry.cover_size,
            "bridge_size": entry.bridge_size,
            "cells": [",".join(map(str, cell)) for cell in entry.cells],
            "loop": entry.loop,
            "bridge": sorted(entry.bridge),
        }

    return {
        "entries": [entry_obj(e) for e in table.entries],
        "coloring": {str(l): dict(sorted(colors.items())) for l, colors in table.coloring.items()},
    }
