"""Labeling files: ``<u> <v> <label>`` per line, or a JSON document."""
from __future__ import annotations

import json

from .errors import ContractError

__all__ = ["format_labeling", "labeling_json", "parse_labeling"]


def format_labeling(g, labels) -> str:
    return "".join(f"{u} {v} {x}\n" for (u, v), x in zip(g.edges, labels))


def labeling_json(g, labels, verdict=None) -> str:
    sums = [0] * g.n
    for (u, v), x in zip(g.edges, labels):
        sums[u] += x
        sums[v] += x
    doc = {
        "edges": [list(e) for e in g.edges],
        "labels": list(labels),
        "vertex_sums": sums,
        "residues": [s % 3 for s in sums],
    }
    if verdict is not None:
        doc["verdict"] = verdict.to_dict()
    return json.dumps(doc, indent=1) + "\n"


def parse_labeling(g, text: str, source: str = "<string>") -> list:
    """Labels indexed by edge id of ``g``; unlabelled edges come back as None.

    Label values are not checked here, so a verifier can report duplicates.
    """
    out: list = [None] * g.m
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
            triples = [(int(u), int(v), int(x)) for (u, v), x in zip(doc["edges"], doc["labels"])]
        except (ValueError, KeyError, TypeError) as ex:
            raise ContractError(f"{source}: malformed JSON labeling: {ex}") from None
        rows = [(i + 1, 1, t) for i, t in enumerate(triples)]
    else:
        rows = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            s = raw.strip()
            if not s or s.startswith("#"):
                continue
            toks = raw.split()
            if len(toks) != 3:
                raise ContractError(f"{source}:{lineno}:1: expected '<u> <v> <label>'")
            try:
                rows.append((lineno, 1, tuple(int(t) for t in toks)))
            except ValueError:
                col = next(raw.index(t) + 1 for t in toks if not t.lstrip("-").isdigit())
                raise ContractError(f"{source}:{lineno}:{col}: expected an integer") from None
    for lineno, col, (u, v, x) in rows:
        if not (0 <= u < g.n and 0 <= v < g.n and g.has_edge(u, v)):
            raise ContractError(f"{source}:{lineno}:{col}: ({u}, {v}) is not an edge of the graph")
        e = g.edge_id(u, v)
        if out[e] is not None:
            raise ContractError(f"{source}:{lineno}:{col}: edge ({u}, {v}) labelled twice")
        out[e] = x
    return out
