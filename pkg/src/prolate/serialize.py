"""CSV and JSON files holding a quadrature rule.

Both formats round-trip every double exactly: CSV prints 18 significant
digits, JSON uses the shortest repr.
"""

from __future__ import annotations

import io
import json

import numpy as np

from .errors import DomainError
from .pswf import LambdaValue
from .quadrature import QuadratureRule

FORMAT_VERSION = 1
CSV_HEADER = "j,t,w"


def rule_to_dict(rule: QuadratureRule) -> dict:
    return {
        "c": rule.c,
        "n": rule.n,
        "lambda_abs": rule.lam.magnitude,
        "chi": rule.chi,
        "nodes": [float(t) for t in rule.nodes],
        "weights": [float(w) for w in rule.weights],
        "version": FORMAT_VERSION,
    }


def rule_from_dict(data: dict) -> QuadratureRule:
    if data.get("version") != FORMAT_VERSION:
        raise DomainError(f"unsupported rule file version {data.get('version')!r}")
    n = int(data["n"])
    nodes = np.array(data["nodes"], dtype=float)
    weights = np.array(data["weights"], dtype=float)
    if len(nodes) != n or len(weights) != n:
        raise DomainError(f"rule file lists {len(nodes)} nodes for n={n}")
    return QuadratureRule(
        float(data["c"]), n, nodes, weights,
        LambdaValue(float(data["lambda_abs"]), n % 4), float(data["chi"]),
    )


def to_json(rule: QuadratureRule) -> str:
    return json.dumps(rule_to_dict(rule), indent=1)


def from_json(text: str) -> QuadratureRule:
    return rule_from_dict(json.loads(text))


def to_csv(rule: QuadratureRule) -> str:
    out = io.StringIO()
    out.write(f"# c={rule.c!r}\n# n={rule.n}\n")
    out.write(f"# lambda_abs={rule.lam.magnitude!r}\n# chi={rule.chi!r}\n")
    out.write(f"# version={FORMAT_VERSION}\n{CSV_HEADER}\n")
    for j, (t, w) in enumerate(zip(rule.nodes, rule.weights), start=1):
        out.write(f"{j},{t:.17e},{w:.17e}\n")
    return out.getvalue()


def from_csv(text: str) -> QuadratureRule:
    meta = {}
    rows = []
    lines = iter(text.splitlines())
    for line in lines:
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key] = value
        elif line.strip() == CSV_HEADER:
            break
    for line in lines:
        if line.strip():
            j, t, w = line.split(",")
            rows.append((float(t), float(w)))
    return rule_from_dict({
        "c": float(meta["c"]),
        "n": int(meta["n"]),
        "lambda_abs": float(meta["lambda_abs"]),
        "chi": float(meta["chi"]),
        "nodes": [r[0] for r in rows],
        "weights": [r[1] for r in rows],
        "version": int(meta["version"]),
    })
