"""Multigraphs with positional edge ids, minor operations and small catalogs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, Sequence

MAX_CATALOG_NODES = 8


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on nodes ``0..n-1``.

    ``edges[i]`` is the endpoint pair of edge ``i``; loops and parallel edges
    are allowed.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("a graph needs at least two nodes")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbour bitmask per node (loops ignored)."""
        adj = [0] * self.n
        for u, v in self.edges:
            if u != v:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            if v != u:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return sum(2 if self.edges[i][0] == self.edges[i][1] else 1 for i in self.incidence[v])

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def edge_ids_between(self, u: int, v: int) -> list[int]:
        return [i for i in self.incidence[u] if set(self.edges[i]) == {u, v}]

    # connectivity -------------------------------------------------------

    def component_of(self, v: int, allowed: int | None = None) -> int:
        """Bitmask of the component containing ``v`` inside node set ``allowed``."""
        if allowed is None:
            allowed = (1 << self.n) - 1
        adj = self.adjacency
        seen = 1 << v
        frontier = seen
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            w = low.bit_length() - 1
            new = adj[w] & allowed & ~seen
            seen |= new
            frontier |= new
        return seen

    def components(self, allowed: int | None = None) -> list[int]:
        if allowed is None:
            allowed = (1 << self.n) - 1
        out = []
        rest = allowed
        while rest:
            v = (rest & -rest).bit_length() - 1
            comp = self.component_of(v, allowed)
            out.append(comp)
            rest &= ~comp
        return out

    def is_connected(self) -> bool:
        return self.component_of(0) == (1 << self.n) - 1

    def induces_connected(self, mask: int) -> bool:
        if mask == 0:
            return False
        v = (mask & -mask).bit_length() - 1
        return self.component_of(v, mask) == mask

    # minor operations ---------------------------------------------------

    def delete_edge(self, e: int) -> tuple["Multigraph", dict[int, int]]:
        self._check_edge(e)
        mapping = {}
        edges = []
        for i, uv in enumerate(self.edges):
            if i != e:
                mapping[i] = len(edges)
                edges.append(uv)
        return Multigraph(self.n, tuple(edges)), mapping

    def contract(self, e: int) -> tuple["Multigraph", dict[int, int]]:
        """Identify the endpoints of ``e``; returns the minor and the
        old-id -> new-id map of the surviving edges.  Contracting a loop
        deletes it."""
        self._check_edge(e)
        u, v = self.edges[e]
        if u == v:
            return self.delete_edge(e)
        if self.n == 2:
            raise ValueError("contraction would leave fewer than two nodes")
        keep, gone = min(u, v), max(u, v)

        def relabel(w: int) -> int:
            if w == gone:
                w = keep
            return w - 1 if w > gone else w

        mapping = {}
        edges = []
        for i, (a, b) in enumerate(self.edges):
            if i == e:
                continue
            mapping[i] = len(edges)
            edges.append((relabel(a), relabel(b)))
        return Multigraph(self.n - 1, tuple(edges)), mapping

    def delete_node(self, v: int) -> tuple["Multigraph", dict[int, int]]:
        if not 0 <= v < self.n:
            raise ValueError(f"no node {v}")
        if self.n <= 2:
            raise ValueError("node deletion would leave fewer than two nodes")
        mapping = {}
        edges = []
        for i, (a, b) in enumerate(self.edges):
            if v in (a, b):
                continue
            mapping[i] = len(edges)
            edges.append((a - (a > v), b - (b > v)))
        return Multigraph(self.n - 1, tuple(edges)), mapping

    def apply_trace(self, trace: Sequence[tuple[str, int]]) -> "Multigraph":
        """Apply a minor trace: a sequence of ``("contract", e)``,
        ``("delete", e)`` or ``("delete_node", v)`` steps, each indexed
        against the graph produced by the previous step."""
        g = self
        for op, arg in trace:
            if op == "contract":
                g = g.contract(arg)[0]
            elif op == "delete":
                g = g.delete_edge(arg)[0]
            elif op == "delete_node":
                g = g.delete_node(arg)[0]
            else:
                raise ValueError(f"unknown minor operation {op!r}")
        return g

    def _check_edge(self, e: int):
        if not 0 <= e < self.m:
            raise ValueError(f"no edge {e}")

    def simplify(self) -> tuple["Multigraph", dict[int, int]]:
        """Drop loops and keep the first edge of each parallel class.

        Returns the simple graph and a map from the kept (old) edge ids to the
        multiplicity of their class.
        """
        first: dict[tuple[int, int], int] = {}
        mult: dict[int, int] = {}
        for i, (u, v) in enumerate(self.edges):
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            if key in first:
                mult[first[key]] += 1
            else:
                first[key] = i
                mult[i] = 1
        kept = sorted(mult)
        return Multigraph(self.n, tuple(self.edges[i] for i in kept)), {i: mult[i] for i in kept}

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        """Graph with node ``v`` renamed ``perm[v]``; edge order is kept."""
        return Multigraph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    # io -----------------------------------------------------------------

    def to_json(self) -> dict:
        return {"nodes": self.n, "edges": [list(uv) for uv in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Multigraph":
        return cls(int(data["nodes"]), tuple(tuple(uv) for uv in data["edges"]))

    @classmethod
    def load(cls, path) -> "Multigraph":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def __repr__(self):
        return f"Multigraph(n={self.n}, edges={list(self.edges)})"


def contract(g: Multigraph, e: int) -> tuple[Multigraph, dict[int, int]]:
    return g.contract(e)


def delete_edge(g: Multigraph, e: int) -> tuple[Multigraph, dict[int, int]]:
    return g.delete_edge(e)


def simplify(g: Multigraph) -> tuple[Multigraph, dict[int, int]]:
    return g.simplify()


def from_edges(n: int, edges) -> Multigraph:
    return Multigraph(n, tuple(tuple(e) for e in edges))


# structure ----------------------------------------------------------------


def blocks(g: Multigraph) -> tuple[list[tuple[frozenset, tuple[int, ...]]], list[int]]:
    """Block / cutnode decomposition of a connected graph.

    Returns ``(blocks, cutnodes)`` where each block is ``(node set, edge ids)``.
    Loops are not assigned to any block.
    """
    if not g.is_connected():
        raise ValueError("block decomposition needs a connected graph")
    n = g.n
    disc = [-1] * n
    low = [0] * n
    counter = 0
    edge_stack: list[int] = []
    found: list[tuple[frozenset, tuple[int, ...]]] = []
    cut = set()
    # iterative DFS over (node, parent edge, incidence iterator)
    root = 0
    disc[root] = low[root] = counter
    counter += 1
    stack = [(root, -1, iter(g.incidence[root]))]
    root_children = 0
    while stack:
        v, pe, it = stack[-1]
        advanced = False
        for e in it:
            a, b = g.edges[e]
            if a == b or e == pe:
                continue
            w = b if a == v else a
            if disc[w] == -1:
                edge_stack.append(e)
                disc[w] = low[w] = counter
                counter += 1
                if v == root:
                    root_children += 1
                stack.append((w, e, iter(g.incidence[w])))
                advanced = True
                break
            if disc[w] < disc[v]:
                edge_stack.append(e)
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if stack:
            parent = stack[-1][0]
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cut.add(parent)
                comp_edges = []
                while True:
                    f = edge_stack.pop()
                    comp_edges.append(f)
                    if f == pe:
                        break
                nodes = frozenset(x for f in comp_edges for x in g.edges[f])
                found.append((nodes, tuple(sorted(comp_edges))))
    if root_children > 1:
        cut.add(root)
    return found, sorted(cut)


def is_two_connected(g: Multigraph) -> bool:
    if not g.is_connected():
        return False
    if g.n == 2:
        return True
    return not blocks(g)[1]


def two_cutsets(g: Multigraph) -> list[tuple[int, int]]:
    """All node pairs whose removal disconnects the graph."""
    full = (1 << g.n) - 1
    out = []
    for u, v in combinations(range(g.n), 2):
        rest = full & ~(1 << u) & ~(1 << v)
        if rest and len(g.components(rest)) > 1:
            out.append((u, v))
    return out


def spanning_trees(g: Multigraph) -> list[tuple[int, ...]]:
    """All spanning trees as sorted edge-id tuples (loops never used)."""
    n = g.n
    out = []
    edges = [i for i, (u, v) in enumerate(g.edges) if u != v]

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(start, chosen, parent):
        if len(chosen) == n - 1:
            out.append(tuple(chosen))
            return
        need = n - 1 - len(chosen)
        for k in range(start, len(edges) - need + 1):
            e = edges[k]
            u, v = g.edges[e]
            ru, rv = find(parent, u), find(parent, v)
            if ru == rv:
                continue
            p2 = list(parent)
            p2[ru] = rv
            chosen.append(e)
            rec(k + 1, chosen, p2)
            chosen.pop()

    rec(0, [], list(range(n)))
    return out


# canonical forms and catalogs ---------------------------------------------


def _refined_cells(n: int, adj: Sequence[int]) -> list[list[int]]:
    """Isomorphism-invariant ordered partition from colour refinement."""
    colour = [bin(adj[v]).count("1") for v in range(n)]
    while True:
        sig = [
            (colour[v], tuple(sorted(colour[w] for w in range(n) if adj[v] >> w & 1)))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(colour[v], []).append(v)
    return [cells[k] for k in sorted(cells)]


def canonical_form(g: Multigraph) -> tuple[int, int]:
    """Canonical code ``(n, bits)`` of a simple graph.

    ``bits`` is the lexicographically smallest upper-triangle adjacency
    string (read column by column) over all node orderings that list the
    colour-refinement cells in their invariant order.
    """
    if not g.is_simple():
        g = g.simplify()[0]
    n = g.n
    adj = g.adjacency
    slots = [c for c in _refined_cells(n, adj) for _ in c]
    best: list[tuple] | None = None
    order: list[int] = []
    cur: list[tuple] = []

    def rec(pos: int, equal: bool) -> bool:
        # equal: the current prefix coincides with the best sequence so far
        nonlocal best
        if pos == n:
            best = list(cur)
            return True
        changed = False
        for v in slots[pos]:
            if v in order:
                continue
            col = tuple(adj[v] >> w & 1 for w in order)
            eq = equal
            if best is not None and eq:
                if col > best[pos]:
                    continue
                if col < best[pos]:
                    eq = False
            order.append(v)
            cur.append(col)
            if rec(pos + 1, eq):
                changed = True
                equal = True
            order.pop()
            cur.pop()
        return changed

    rec(0, True)
    bits = 0
    for col in best:
        for b in col:
            bits = bits << 1 | b
    return n, bits


def graph_from_canonical(code: tuple[int, int]) -> Multigraph:
    n, bits = code
    total = n * (n - 1) // 2
    pairs = [(i, j) for j in range(n) for i in range(j)]
    edges = [pairs[k] for k in range(total) if bits >> (total - 1 - k) & 1]
    return Multigraph(n, tuple(edges))


def generate_catalog(n: int, max_edges: int | None = None) -> Iterator[Multigraph]:
    """Yield each connected simple graph on ``n`` nodes with at most
    ``max_edges`` edges exactly once up to isomorphism.

    Graphs come out grouped by edge count, in increasing canonical order
    within a group, with the canonical node labelling.
    """
    if n < 2:
        raise ValueError("catalogs start at two nodes")
    if n > MAX_CATALOG_NODES:
        raise ValueError(f"catalogs are limited to {MAX_CATALOG_NODES} nodes")
    full = n * (n - 1) // 2
    if max_edges is None or max_edges > full:
        max_edges = full
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    level = {canonical_form(Multigraph(n, ())): Multigraph(n, ())}
    for m in range(0, max_edges + 1):
        for code in sorted(level):
            g = graph_from_canonical(code)
            if m >= n - 1 and g.is_connected():
                yield g
        if m == max_edges:
            break
        nxt: dict = {}
        for code in level:
            g = graph_from_canonical(code)
            present = {(min(u, v), max(u, v)) for u, v in g.edges}
            for p in pairs:
                if p in present:
                    continue
                h = Multigraph(n, g.edges + (p,))
                c = canonical_form(h)
                if c not in nxt:
                    nxt[c] = h
        level = nxt


# graph6 -------------------------------------------------------------------


def parse_graph6(text: str) -> Multigraph:
    """Decode one graph6 string (simple graphs, n < 63 or extended sizes)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= x < 64 for x in data):
        raise ValueError("invalid graph6 character")
    if data[0] < 63:
        n, rest = data[0], data[1:]
    elif data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        rest = data[4:]
    else:
        n = 0
        for x in data[2:8]:
            n = n << 6 | x
        rest = data[8:]
    bits = []
    for x in rest:
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    need = n * (n - 1) // 2
    if len(bits) < need:
        raise ValueError("graph6 string too short")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Multigraph(n, tuple(edges))


def to_graph6(g: Multigraph) -> str:
    """graph6 string of a simple graph with fewer than 63 nodes."""
    if not g.is_simple():
        raise ValueError("graph6 encodes simple graphs only")
    if g.n >= 63:
        raise ValueError("only graphs with fewer than 63 nodes are encoded")
    adj = g.adjacency
    bits = [adj[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = x << 1 | b
        chars.append(chr(x + 63))
    return "".join(chars)


def canonical_graph6(g: Multigraph) -> str:
    return to_graph6(graph_from_canonical(canonical_form(g)))


# named graphs ---------------------------------------------------------------


def complete(n: int) -> Multigraph:
    return Multigraph(n, tuple(combinations(range(n), 2)))


def path(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def star(n: int) -> Multigraph:
    return Multigraph(n, tuple((0, i) for i in range(1, n)))


def prism() -> Multigraph:
    """Triangular prism: triangles 0-1-2 and 3-4-5, matching i -- i+3.

    Edge ids 0..5 are triangle edges, 6..8 the matching."""
    return Multigraph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)))


def pyramid() -> Multigraph:
    """K4 on {0,1,2,3} with the edges at node 0 subdivided by nodes 4, 5, 6.

    Edge ids 0..2 form the triangle 1-2-3, ids 3..8 the subdivided paths."""
    return Multigraph(7, ((1, 2), (2, 3), (1, 3), (0, 4), (4, 1), (0, 5), (5, 2), (0, 6), (6, 3)))


def m1() -> Multigraph:
    """Hubs 0 and 1 joined by three internally disjoint paths of length 3."""
    return Multigraph(8, ((0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1), (0, 6), (6, 7), (7, 1)))


def witness_weights(g: Multigraph):
    """Cost 1 on edges lying in a triangle, 2 elsewhere."""
    from fractions import Fraction

    adj = g.adjacency
    return tuple(Fraction(1) if adj[u] & adj[v] else Fraction(2) for u, v in g.edges)
