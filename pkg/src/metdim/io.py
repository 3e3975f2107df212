"""graph6 and edge-list JSON serialisation for :class:`~metdim.graphs.Graph`."""

from __future__ import annotations

import json
from pathlib import Path

from .graphs import Graph, GraphError


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 1 << 36:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise GraphError(f"graph6 cannot encode n={n}")


def _decode_n(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise GraphError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) > 1 and data[1] == 126:
        chunk, rest = data[2:8], data[8:]
    else:
        chunk, rest = data[1:4], data[4:]
    n = 0
    for c in chunk:
        n = (n << 6) | (c - 63)
    return n, rest


def to_graph6(g: Graph) -> str:
    """Standard graph6 string (no ``>>graph6<<`` header, no newline)."""
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        bits.extend(1 if i in row else 0 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(
        63 + int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6)
    )
    return (_encode_n(g.n) + body).decode("ascii")


def from_graph6(text: str | bytes, name: str = "G") -> Graph:
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if any(not 63 <= c <= 126 for c in data):
        raise GraphError("graph6 string contains bytes outside 63..126")
    n, body = _decode_n(data)
    if n < 1:
        raise GraphError("graph6 graph has no vertices")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges, name=name)


def to_json_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges], "name": g.name}


def to_json(g: Graph) -> str:
    return json.dumps(to_json_dict(g))


def from_json_dict(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed edge-list JSON: {exc}") from exc
    return Graph.from_edges(n, edges, name=str(obj.get("name", "G")))


def from_json(text: str) -> Graph:
    return from_json_dict(json.loads(text))


def read_graph(path: str | Path) -> Graph:
    """Load a graph from ``.json`` (edge list) or graph6 (anything else)."""
    path = Path(path)
    raw = path.read_text()
    if path.suffix.lower() == ".json" or raw.lstrip().startswith("{"):
        return from_json(raw)
    lines = [ln for ln in raw.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise GraphError(f"{path}: expected exactly one graph6 line, found {len(lines)}")
    return from_graph6(lines[0], name=path.stem)


def write_graph(g: Graph, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix.lower() == ".json" else "graph6"
    if fmt == "json":
        path.write_text(to_json(g) + "\n")
    elif fmt == "graph6":
        path.write_text(to_graph6(g) + "\n")
    else:
        raise ValueError(f"unknown graph format {fmt!r}")
