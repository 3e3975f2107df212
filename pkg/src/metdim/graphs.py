"""Graph construction: circulants, Andrásfai graphs, standard families and
the graph operations (complement, Cartesian product, line graph).

Graphs are immutable. Vertices are always ``0..n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph, connection set or family parameter."""


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]
    name: str = field(default="G")

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError(f"graph needs at least one vertex, got n={self.n}")
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise GraphError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise GraphError(f"vertex {v} has out-of-range neighbour {u}")
                if v not in self.adj[u]:
                    raise GraphError(f"asymmetric edge {v}->{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "G") -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs), name)

    def __eq__(self, other: object) -> bool:
        # Names are provenance only; two graphs are equal when labelled adjacency is.
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph({self.name!r}, n={self.n}, m={self.num_edges})"

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return tuple((u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks."""
        out = []
        for nbrs in self.adj:
            m = 0
            for u in nbrs:
                m |= 1 << u
            out.append(m)
        return tuple(out)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def regularity(self) -> int | None:
        """Common degree if the graph is regular, else ``None``."""
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def is_triangle_free(self) -> bool:
        masks = self.masks
        return all(not (masks[u] & masks[v]) for u, v in self.edges)

    def renamed(self, name: str) -> Graph:
        return Graph(self.n, self.adj, name)


@dataclass(frozen=True)
class ConnectionSet:
    """Connection set of a Cayley graph on the cyclic group of order ``modulus``."""

    modulus: int
    members: frozenset[int]

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise GraphError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "members", frozenset(self.members))
        for s in self.members:
            if not 0 <= s < self.modulus:
                raise GraphError(f"{s} is not a residue mod {self.modulus}")
        if 0 in self.members:
            raise GraphError("connection set contains the identity 0")
        for s in self.members:
            if (self.modulus - s) % self.modulus not in self.members:
                raise GraphError(
                    f"connection set not inverse-closed: {s} in, "
                    f"{self.modulus - s} missing (mod {self.modulus})"
                )


def cayley_cyclic(conn: ConnectionSet, name: str | None = None) -> Graph:
    """Circulant graph: ``u ~ v`` iff ``(u - v) mod m`` is in the connection set."""
    m = conn.modulus
    adj = tuple(frozenset((v + s) % m for s in conn.members) for v in range(m))
    if name is None:
        name = f"Cay(Z{m},{{{','.join(map(str, sorted(conn.members)))}}})"
    return Graph(m, adj, name)


def andrasfai_connection_set(k: int) -> ConnectionSet:
    if k < 1:
        raise GraphError(f"Andrásfai index must be >= 1, got {k}")
    m = 3 * k - 1
    return ConnectionSet(m, frozenset(range(1, m, 3)))


def andrasfai(k: int) -> Graph:
    """And(k) on residues ``0..3k-2``; the residue 0 plays the role of 3k-1."""
    return cayley_cyclic(andrasfai_connection_set(k), name=f"And({k})")


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)), name=f"P{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)), name=f"C{n}")


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, tuple(frozenset(range(n)) - {v} for v in range(n)), name=f"K{n}")


def complement(g: Graph) -> Graph:
    everyone = frozenset(range(g.n))
    adj = tuple(everyone - g.adj[v] - {v} for v in range(g.n))
    return Graph(g.n, adj, _complement_name(g.name))


def _complement_name(name: str) -> str:
    if name.startswith("co(") and name.endswith(")"):
        depth = 0
        for i, ch in enumerate(name[2:], start=2):
            depth += {"(": 1, ")": -1}.get(ch, 0)
            if depth == 0:
                if i == len(name) - 1:
                    return name[3:-1]
                break
    return f"co({name})"


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G□H with vertex ``(u, v)`` encoded as ``u + v * g.n``.

    Row ``v`` (ids ``v*g.n .. v*g.n + g.n - 1``) is a copy of ``g``.
    """
    ng = g.n
    adj = []
    for v in range(h.n):
        for u in range(ng):
            nbrs = {w + v * ng for w in g.adj[u]}
            nbrs.update(u + w * ng for w in h.adj[v])
            adj.append(frozenset(nbrs))
    return Graph(ng * h.n, tuple(adj), name=f"{g.name}□{h.name}")


def product_vertex(g_n: int, u: int, row: int) -> int:
    """Encoded id of ``(u, row)`` in a product whose first factor has ``g_n`` vertices."""
    return u + row * g_n


def product_coords(g_n: int, x: int) -> tuple[int, int]:
    return x % g_n, x // g_n


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges of ``g`` in lexicographic ``(min, max)`` order."""
    edges = g.edges
    if not edges:
        raise GraphError(f"line graph of edgeless graph {g.name} is empty")
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)
    adj: list[set[int]] = [set() for _ in edges]
    for ids in incident:
        for a in ids:
            adj[a].update(ids)
    for i, s in enumerate(adj):
        s.discard(i)
    return Graph(len(edges), tuple(frozenset(s) for s in adj), name=f"L({g.name})")


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("relabelling must be a permutation of 0..n-1")
    return Graph.from_edges(g.n, ((perm[u], perm[v]) for u, v in g.edges), name=g.name)
