"""Minor containment for the three subcubic forbidden patterns.

A graph of maximum degree 3 is a minor of G exactly when a subdivision of it
is a subgraph of G, so the search maps the pattern's branch nodes (degree
other than 2) to host nodes and then routes internally disjoint paths for
the chains between them.  Every model found is turned into branch sets and
re-checked by :func:`verify_model` before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .graph import Multigraph, canonical_form, m1, prism, pyramid

MAX_HOST_NODES = 12


@dataclass(frozen=True)
class Pattern:
    name: str
    graph: Multigraph

    def __post_init__(self):
        g = self.graph
        if not g.is_simple() or not g.is_connected():
            raise ValueError("patterns must be simple and connected")

    @cached_property
    def chains(self) -> tuple[tuple[int, ...], ...]:
        """Maximal paths whose interior nodes have degree 2, as node tuples
        between branch nodes."""
        g = self.graph
        branch = [v for v in range(g.n) if g.degree(v) != 2]
        if not branch:
            raise ValueError("a pattern needs a node of degree other than 2")
        adj = [[w for w in range(g.n) if g.adjacency[v] >> w & 1] for v in range(g.n)]
        seen_edges = set()
        out = []
        for b in branch:
            for w in adj[b]:
                if (b, w) in seen_edges:
                    continue
                chain = [b, w]
                prev, cur = b, w
                while g.degree(cur) == 2:
                    nxt = next(x for x in adj[cur] if x != prev)
                    prev, cur = cur, nxt
                    chain.append(cur)
                for a, c in zip(chain, chain[1:]):
                    seen_edges.add((a, c))
                    seen_edges.add((c, a))
                out.append(tuple(chain))
        return tuple(out)

    @cached_property
    def branch_nodes(self) -> tuple[int, ...]:
        g = self.graph
        nodes = [v for v in range(g.n) if g.degree(v) != 2]
        return tuple(sorted(nodes, key=lambda v: (-g.degree(v), v)))


PATTERNS = {
    "prism": Pattern("prism", prism()),
    "pyramid": Pattern("pyramid", pyramid()),
    "m1": Pattern("m1", m1()),
}


def get_pattern(name: str) -> Pattern:
    try:
        return PATTERNS[name]
    except KeyError:
        raise ValueError(f"unknown pattern {name!r}; choose from {sorted(PATTERNS)}") from None


@dataclass(frozen=True)
class MinorModel:
    pattern: str
    branch_sets: tuple[tuple[int, ...], ...]  # indexed by pattern node
    edge_witness: tuple[int, ...]  # host edge id per pattern edge

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern,
            "branch_sets": {str(i): list(s) for i, s in enumerate(self.branch_sets)},
            "edge_witness": {str(i): e for i, e in enumerate(self.edge_witness)},
        }

    @classmethod
    def from_json(cls, data: dict) -> "MinorModel":
        bs = data["branch_sets"]
        ew = data["edge_witness"]
        return cls(
            data["pattern"],
            tuple(tuple(sorted(bs[str(i)])) for i in range(len(bs))),
            tuple(int(ew[str(i)]) for i in range(len(ew))),
        )


def verify_model(host: Multigraph, pattern: Pattern, model: MinorModel) -> bool:
    """Disjoint connected branch sets and one distinct host edge per
    pattern edge, joining the right branch sets."""
    p = pattern.graph
    if len(model.branch_sets) != p.n or len(model.edge_witness) != p.m:
        return False
    owner = {}
    for i, s in enumerate(model.branch_sets):
        if not s:
            return False
        mask = 0
        for v in s:
            if not 0 <= v < host.n or v in owner:
                return False
            owner[v] = i
            mask |= 1 << v
        if not host.induces_connected(mask):
            return False
    if len(set(model.edge_witness)) != p.m:
        return False
    for (a, b), e in zip(p.edges, model.edge_witness):
        if not 0 <= e < host.m:
            return False
        u, v = host.edges[e]
        if {owner.get(u), owner.get(v)} != {a, b}:
            return False
    return True


def _route(host_adj, start, end, minlen, blocked):
    """Simple paths start -> end of length >= minlen whose interior avoids
    ``blocked``; yields node lists."""
    path = [start]
    on_path = 1 << start

    def rec(v):
        nonlocal on_path
        nbrs = host_adj[v]
        if nbrs >> end & 1 and len(path) >= minlen:
            yield path + [end]
        free = nbrs & ~blocked & ~on_path & ~(1 << end)
        while free:
            low = free & -free
            w = low.bit_length() - 1
            free ^= low
            path.append(w)
            on_path |= low
            yield from rec(w)
            on_path &= ~low
            path.pop()

    yield from rec(start)


def _find_subdivision(host: Multigraph, pattern: Pattern):
    p = pattern.graph
    branch = pattern.branch_nodes
    pdeg = {v: p.degree(v) for v in branch}
    hdeg = [bin(a).count("1") for a in host.adjacency]
    adj = host.adjacency
    chains = _sorted_chains(pattern)

    image: dict[int, int] = {}

    def place(i, used):
        if i == len(branch):
            yield from route(0, used, [])
            return
        b = branch[i]
        for h in range(host.n):
            if used >> h & 1 or hdeg[h] < pdeg[b]:
                continue
            image[b] = h
            yield from place(i + 1, used | 1 << h)
            del image[b]

    def route(j, used, paths):
        if j == len(chains):
            yield dict(image), list(paths)
            return
        c = chains[j]
        s, t = image[c[0]], image[c[-1]]
        for hp in _route(adj, s, t, len(c) - 1, used):
            inner = 0
            for w in hp[1:-1]:
                inner |= 1 << w
            paths.append(hp)
            yield from route(j + 1, used | inner, paths)
            paths.pop()

    yield from place(0, 0)


def _model_from_paths(host: Multigraph, pattern: Pattern, image, paths) -> MinorModel:
    p = pattern.graph
    sets = {v: [image[v]] for v in pattern.branch_nodes}
    witness = {}

    def edge_id(u, v):
        return host.edge_ids_between(u, v)[0]

    for chain, hp in zip(_sorted_chains(pattern), paths):
        L = len(chain) - 1
        N = len(hp) - 1
        for i in range(1, L):
            sets[chain[i]] = [hp[i]]
        # surplus interior nodes join the last pattern node before the end
        tail_owner = chain[L - 1]
        for i in range(max(L, 1), N):
            sets[tail_owner].append(hp[i])
        for i in range(L - 1):
            witness[frozenset((chain[i], chain[i + 1]))] = edge_id(hp[i], hp[i + 1])
        witness[frozenset((chain[L - 1], chain[L]))] = edge_id(hp[N - 1], hp[N])
    return MinorModel(
        pattern.name,
        tuple(tuple(sorted(sets[v])) for v in range(p.n)),
        tuple(witness[frozenset(uv)] for uv in p.edges),
    )


def _sorted_chains(pattern: Pattern):
    # chains between early-placed branch nodes first, long ones first
    order = {v: i for i, v in enumerate(pattern.branch_nodes)}
    return sorted(pattern.chains, key=lambda c: (max(order[c[0]], order[c[-1]]), -(len(c) - 1)))


def has_minor(host: Multigraph, pattern: Pattern | str) -> MinorModel | None:
    """A verified minor model of ``pattern`` in ``host``, or None."""
    if isinstance(pattern, str):
        pattern = get_pattern(pattern)
    if host.n > MAX_HOST_NODES:
        raise ValueError(f"minor search is limited to hosts with {MAX_HOST_NODES} nodes")
    p = pattern.graph
    if max(p.degree(v) for v in range(p.n)) > 3:
        raise ValueError("only patterns of maximum degree 3 are supported")
    simple, _ = host.simplify()
    if simple.n < p.n or simple.m < p.m:
        return None
    kept_ids = sorted(host.simplify()[1])
    for image, paths in _find_subdivision(simple, pattern):
        model = _model_from_paths(simple, pattern, image, paths)
        # witnesses refer to the simplified graph; map back to host edge ids
        model = MinorModel(model.pattern, model.branch_sets, tuple(kept_ids[e] for e in model.edge_witness))
        if not verify_model(host, pattern, model):
            raise AssertionError("minor search produced an invalid model")
        return model
    return None


def forbidden_minors(g: Multigraph, names=("prism", "pyramid", "m1")) -> dict[str, MinorModel | None]:
    return {name: has_minor(g, name) for name in names}


# exhaustive reference ----------------------------------------------------


def minor_closure_contains(host: Multigraph, pattern: Pattern | str, limit: int = 200_000) -> bool:
    """Reference test: explore every connected simple graph reachable from
    ``host`` by edge contractions and deletions and look for ``pattern``
    up to isomorphism.  Exponential; for small hosts only."""
    if isinstance(pattern, str):
        pattern = get_pattern(pattern)
    p = pattern.graph
    target = canonical_form(p)
    start, _ = host.simplify()
    if not start.is_connected():
        raise ValueError("needs a connected host")
    seen = {canonical_form(start)}
    stack = [start]
    while stack:
        g = stack.pop()
        if g.n == p.n and g.m == p.m and canonical_form(g) == target:
            return True
        for e in range(g.m):
            children = [g.delete_edge(e)[0]]
            if g.n > p.n:
                children.append(g.contract(e)[0].simplify()[0])
            for h in children:
                if h.n < p.n or h.m < p.m or not h.is_connected():
                    continue
                key = canonical_form(h)
                if key in seen:
                    continue
                seen.add(key)
                if len(seen) > limit:
                    raise ValueError("minor closure exceeded its limit")
                stack.append(h)
    return False


# minor-minimality ----------------------------------------------------------


def single_step_minors(g: Multigraph):
    """Every graph one edge deletion or contraction away from ``g``, as
    ``(operation, edge id, simplified minor)`` triples."""
    for e in range(g.m):
        yield "delete", e, g.delete_edge(e)[0].simplify()[0]
        if g.n > 2:
            yield "contract", e, g.contract(e)[0].simplify()[0]


def is_minor_minimal_non_k(g: Multigraph, k: int, kstar_fn=None) -> tuple[bool, list[dict]]:
    """Whether ``kstar(g) > k`` while every single deletion or contraction
    has ``kstar <= k``.  By monotonicity of kstar under minors, single steps
    cover all proper minors.

    ``kstar_fn`` may supply cached values; it defaults to an exact
    computation memoised by canonical form.
    """
    from .polyhedron import kstar

    if kstar_fn is None:
        memo: dict = {}

        def kstar_fn(h: Multigraph) -> int:
            if not h.is_connected():
                return 0
            key = canonical_form(h)
            if key not in memo:
                memo[key] = kstar(h)
            return memo[key]

    if not g.is_connected():
        raise ValueError("needs a connected graph")
    simple, _ = g.simplify()
    top = kstar_fn(simple)
    report = [{"operation": "none", "edge": None, "kstar": top}]
    minimal = top > k
    for op, e, h in single_step_minors(simple):
        value = kstar_fn(h)
        report.append({"operation": op, "edge": e, "kstar": value})
        if value > k:
            minimal = False
    return minimal, report
