"""Conversion of engine values to deterministic JSON-ready structures."""

from __future__ import annotations

import json


def _key(x):
    return (type(x).__name__, repr(x))


def jsonable(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, (tuple, list)):
        return [jsonable(y) for y in x]
    if isinstance(x, (set, frozenset)):
        return [jsonable(y) for y in sorted(x, key=_key)]
    if isinstance(x, dict):
        return {_label(k): jsonable(v) for k, v in x.items()}
    if hasattr(x, "to_json"):
        return x.to_json()
    return repr(x)


def _label(k):
    return k if isinstance(k, str) else json.dumps(jsonable(k), sort_keys=True)


def presheaf_json(f):
    return {
        "ambient": f.ambient.name,
        "support": jsonable(list(f.support)),
        "sizes": {_label(b): len(f.values[b]) for b in f.support},
        "values": {_label(b): jsonable(f.values[b].carrier) for b in f.support},
    }


def dumps(record):
    return json.dumps(jsonable(record), sort_keys=True, separators=(",", ":"))
