"""Text and JSON formats for weights and graphs."""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError
from .graphs import AnyGraph, EdgeLabelledGraph, MarkedGraph, canonical
from .weights import WeightVector, as_weights

_TOKEN = re.compile(r"^\s*(\d+)(?:\s*/\s*(\d+))?\s*(?:\^\s*(\d+))?\s*$")


def parse_weights(text: str) -> WeightVector:
    """Parse ``"1/3^3,7/12^3"``-style strings; ``x^k`` repeats ``x`` k times."""
    if not text or not text.strip():
        raise InputError("empty weight string")
    out = []
    for tok in text.split(","):
        m = _TOKEN.match(tok)
        if not m:
            raise InputError(f"cannot parse weight {tok.strip()!r}; expected p/q or p/q^k")
        num, den, rep = m.groups()
        if den is not None and int(den) == 0:
            raise InputError(f"zero denominator in {tok.strip()!r}")
        x = Fraction(int(num), int(den or 1))
        k = int(rep) if rep is not None else 1
        if k < 1:
            raise InputError(f"repetition count must be positive in {tok.strip()!r}")
        out.extend([x] * k)
    return WeightVector(out)


def format_weights(w) -> str:
    """Inverse of :func:`parse_weights`, folding runs into ``x^k``."""
    w = as_weights(w)
    parts = []
    i = 0
    ws = w.weights
    while i < len(ws):
        j = i
        while j < len(ws) and ws[j] == ws[i]:
            j += 1
        parts.append(str(ws[i]) + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return ",".join(parts)


def weights_to_json(w) -> list[dict]:
    return [{"num": x.numerator, "den": x.denominator} for x in as_weights(w).weights]


def weights_from_json(data) -> WeightVector:
    try:
        return WeightVector(Fraction(int(d["num"]), int(d["den"])) for d in data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad weight JSON: {exc}") from exc


def graph_to_json(G: AnyGraph) -> dict:
    H = G.graph if isinstance(G, EdgeLabelledGraph) else G
    out = {
        "genus": H.genus(),
        "vertex_genera": list(H.genera),
        "edges": [list(e) for e in H.edges],
        "markings": list(H.marking),
    }
    if isinstance(G, EdgeLabelledGraph):
        out["labels"] = list(G.labels)
    return out


def graph_from_json(data: dict) -> AnyGraph:
    try:
        G = MarkedGraph(
            tuple(data["vertex_genera"]),
            tuple(tuple(e) for e in data["edges"]),
            tuple(data["markings"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad graph JSON: {exc}") from exc
    if "genus" in data and G.genus() != data["genus"]:
        raise InputError(f"declared genus {data['genus']} but the graph has genus {G.genus()}")
    if data.get("labels") is not None:
        return EdgeLabelledGraph(G, tuple(data["labels"]))
    return G


def graph_to_dot(G: AnyGraph, name: str = "G") -> str:
    """DOT with vertex captions ``h=<genus>; {markings}`` and edge labels."""
    H = G.graph if isinstance(G, EdgeLabelledGraph) else G
    lines = [f"graph {name} {{"]
    for v in range(H.n_vertices):
        marks = ",".join(str(i) for i in sorted(H.markings_at(v)))
        lines.append(f'  v{v} [label="h={H.genera[v]}; {{{marks}}}"];')
    for e, (a, b) in enumerate(H.edges):
        label = G.labels[e] if isinstance(G, EdgeLabelledGraph) else e
        lines.append(f'  v{a} -- v{b} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def same_class(a: AnyGraph, b: AnyGraph) -> bool:
    return canonical(a) == canonical(b)
