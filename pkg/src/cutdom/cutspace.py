"""Cuts, minimum cuts, laminar bases and facet certificates for the cut
dominant of a graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

from .graph import Multigraph, is_two_connected, two_cutsets
from .ratmat import EchelonBasis, format_rational, minimum_integer_form, vector

MAX_CUT_NODES = 24


def _mask(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def _nodes(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def _side_key(side: frozenset[int]) -> tuple[int, ...]:
    return tuple(sorted(side))


@dataclass(frozen=True)
class Cut:
    """A proper cut delta(S), stored with the side not containing node 0."""

    side: frozenset[int]
    edge_set: frozenset[int]
    m: int = field(compare=False)

    @property
    def mask(self) -> int:
        return _mask(self.side)

    @property
    def char_vec(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(i in self.edge_set)) for i in range(self.m))

    def restricted(self, support: Sequence[int]) -> list[int]:
        return [int(e in self.edge_set) for e in support]

    def cost(self, c: Sequence) -> Fraction:
        return sum((Fraction(c[e]) for e in self.edge_set), Fraction(0))

    @property
    def key(self) -> tuple[int, ...]:
        return _side_key(self.side)


def _edges_across(g: Multigraph, side_mask: int) -> frozenset[int]:
    return frozenset(
        i for i, (u, v) in enumerate(g.edges) if (side_mask >> u & 1) != (side_mask >> v & 1)
    )


def make_cut(g: Multigraph, side: Iterable[int]) -> Cut:
    """Canonical cut for node set ``side`` (either shore may be given)."""
    mask = _mask(side)
    full = (1 << g.n) - 1
    if mask == 0 or mask == full or mask & ~full:
        raise ValueError("a proper cut needs a nonempty proper node subset")
    if mask & 1:
        mask = full & ~mask
    return Cut(_nodes(mask), _edges_across(g, mask), g.m)


class CutTable:
    """Edge bitmask of every canonical proper side ``2*s`` (s = 1, 2, ...),
    stored flat; iterating yields ``(side mask, edge mask)`` pairs in
    increasing side order."""

    def __init__(self, n: int, masks: list[int]):
        self.n = n
        self.masks = masks

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        for s, em in enumerate(self.masks, 1):
            yield s << 1, em


@lru_cache(maxsize=64)
def _cut_table(g: Multigraph) -> CutTable:
    if g.n > MAX_CUT_NODES:
        raise ValueError(f"exhaustive cut enumeration is limited to {MAX_CUT_NODES} nodes")
    # adding node v to a side toggles exactly the non-loop edges at v
    star = [0] * g.n
    for i, (u, v) in enumerate(g.edges):
        if u != v:
            star[u] ^= 1 << i
            star[v] ^= 1 << i
    size = 1 << (g.n - 1)
    masks = [0] * size
    for s in range(1, size):
        low = s & -s
        masks[s] = masks[s ^ low] ^ star[low.bit_length()]
    del masks[0]
    return CutTable(g.n, masks)


def _cut_from_row(g: Multigraph, side: int, em: int) -> Cut:
    return Cut(_nodes(side), _nodes(em), g.m)


def enumerate_proper_cuts(g: Multigraph) -> list[Cut]:
    """One cut per canonical side, ordered by side bitmask."""
    return [_cut_from_row(g, s, em) for s, em in _cut_table(g)]


def _integer_weights(c: Sequence) -> tuple[list[int], int]:
    q = vector(c)
    den = 1
    for x in q:
        den = lcm(den, x.denominator)
    return [int(x * den) for x in q], den


def _check_weights(g: Multigraph, c: Sequence) -> tuple:
    c = vector(c)
    if len(c) != g.m:
        raise ValueError(f"weight vector has {len(c)} entries, graph has {g.m} edges")
    if any(x < 0 for x in c):
        raise ValueError("weights must be nonnegative (the minimum would be unbounded)")
    return c


def _cut_values(g: Multigraph, c: Sequence) -> tuple[list[int], int]:
    """Integer cut costs aligned with ``_cut_table(g)`` and their common
    denominator."""
    ints, den = _integer_weights(c)
    # cost(S + v) = cost(S) + w(delta(v)) - 2 w(v, S)
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        if u != v and ints[i]:
            nbrs[u].append((1 << v, ints[i]))
            nbrs[v].append((1 << u, ints[i]))
    wdeg = [sum(w for _, w in nb) for nb in nbrs]
    size = 1 << (g.n - 1)
    vals = [0] * size
    for s in range(1, size):
        low = s & -s
        rest = s ^ low
        v = low.bit_length()
        inside = 0
        for b, w in nbrs[v]:
            if (rest << 1) & b:
                inside += w
        vals[s] = vals[rest] + wdeg[v] - 2 * inside
    del vals[0]
    return vals, den


def min_cut_value(g: Multigraph, c: Sequence) -> Fraction:
    """Minimum c-cost of a proper cut."""
    c = _check_weights(g, c)
    vals, den = _cut_values(g, c)
    return Fraction(min(vals), den)


def minimum_cuts(g: Multigraph, c: Sequence) -> list[Cut]:
    c = _check_weights(g, c)
    vals, den = _cut_values(g, c)
    best = min(vals)
    masks = _cut_table(g).masks
    return [_cut_from_row(g, (i + 1) << 1, masks[i]) for i, v in enumerate(vals) if v == best]


# laminar families ---------------------------------------------------------


def _crossing(a: int, b: int) -> bool:
    # canonical sides both avoid node 0, so their union is never everything
    return bool(a & b) and bool(a & ~b) and bool(b & ~a)


def is_laminar(sets: Iterable[Iterable[int]]) -> bool:
    masks = [_mask(s) for s in sets]
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b and (a & ~b) and (b & ~a):
                return False
    return True


@dataclass(frozen=True)
class LaminarFamily:
    sets: tuple[frozenset[int], ...]

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def levels(self) -> dict[frozenset[int], int]:
        """Level of each member: 0 for inclusion-minimal sets, otherwise one
        more than the largest level of a properly contained member."""
        out: dict[frozenset[int], int] = {}
        for s in sorted(self.sets, key=len):
            inner = [out[t] for t in out if t < s]
            out[s] = 1 + max(inner) if inner else 0
        return out

    def to_json(self) -> list[list[int]]:
        return [sorted(s) for s in self.sets]


def laminar_basis(
    g: Multigraph,
    cuts: Sequence[Cut],
    support: Iterable[int] | None = None,
    weights: Sequence | None = None,
) -> LaminarFamily:
    """Laminar family of canonical sides whose cut vectors, restricted to
    ``support``, are independent and span every input cut.  The span is
    exactly that of ``cuts`` when the input is closed under uncrossing, as
    the full set of minimum cuts is.

    Greedy rank-increasing selection in lexicographic side order; a candidate
    crossing a chosen set T is replaced by its intersection and union with T
    (or, when ``weights`` show those are not minimum, by the two differences).
    The input cuts must all be minimum for one nonnegative weighting whose
    support is ``support``.
    """
    support = sorted(range(g.m) if support is None else support)
    col = {e: j for j, e in enumerate(support)}
    full = (1 << g.n) - 1
    sup_mask = 0
    for e in support:
        sup_mask |= 1 << e
    min_value = None
    if weights is not None:
        weights = _check_weights(g, weights)
        min_value = min_cut_value(g, weights)

    def vec(side: int) -> list[int]:
        em = _edges_across(g, side)
        v = [0] * len(support)
        for e in em:
            if e in col:
                v[col[e]] = 1
        return v

    def is_min(side: int) -> bool:
        if min_value is None:
            return True
        return make_cut(g, _nodes(side)).cost(weights) == min_value

    def key(side: int) -> tuple[int, ...]:
        return _side_key(_nodes(side))

    basis = EchelonBasis(len(support))
    chosen: list[int] = []
    queue = sorted({c.mask for c in cuts}, key=key)
    seen_dependent: set[int] = set()
    while queue:
        s = queue.pop(0)
        if s in chosen or s in seen_dependent:
            continue
        v = vec(s)
        if basis.contains(v):
            seen_dependent.add(s)
            continue
        t = next((t for t in sorted(chosen, key=key) if _crossing(s, t)), None)
        if t is None:
            basis.add(v)
            chosen.append(s)
            continue
        a, b = s & t, s | t
        if not (is_min(a) and is_min(b)):
            a, b = s & ~t, t & ~s
        assert a and b and a != full and b != full
        queue[:0] = [a, b]
    return LaminarFamily(tuple(_nodes(s) for s in sorted(chosen, key=key)))


# facet certificates -------------------------------------------------------


@dataclass
class FacetCertificate:
    weight: tuple[Fraction, ...]
    lam: Fraction
    family: LaminarFamily
    support: frozenset[int]
    rank: int
    is_facet: bool
    min_int_coeffs: tuple[int, ...] | None = None
    min_int_rhs: int | None = None
    status: str = "facet"  # "facet", "not_facet" or "zero_lambda"
    structural: dict | None = None
    is_witness_for_k: int | None = None

    def normalized(self, rhs=2) -> tuple[Fraction, ...]:
        """Coefficients scaled so the right-hand side equals ``rhs``."""
        f = Fraction(rhs) / self.lam
        return tuple(f * x for x in self.weight)

    def to_json(self) -> dict:
        out = {
            "weights": {str(i): format_rational(w) for i, w in enumerate(self.weight)},
            "lambda": format_rational(self.lam),
            "status": self.status,
            "is_facet": self.is_facet,
            "rank": self.rank,
            "support": sorted(self.support),
            "family": self.family.to_json(),
            "min_int_coeffs": list(self.min_int_coeffs) if self.min_int_coeffs else None,
            "min_int_rhs": self.min_int_rhs,
        }
        if self.is_witness_for_k is not None:
            out["is_witness_for_k"] = self.is_witness_for_k
        if self.structural is not None:
            out["structural"] = self.structural
        return out


def certify_facet(g: Multigraph, c: Sequence) -> FacetCertificate:
    """Decide whether ``<c, x> >= lambda^c(G)`` defines a facet of the cut
    dominant, and return the evidence.

    The inequality is facet-defining iff the minimum cuts, restricted to the
    support of ``c``, have full rank.  A zero minimum (some proper cut is
    free) yields status ``"zero_lambda"``.
    """
    c = _check_weights(g, c)
    vals, den = _cut_values(g, c)
    best = min(vals)
    lam = Fraction(best, den)
    support = frozenset(i for i, x in enumerate(c) if x != 0)
    if lam == 0:
        return FacetCertificate(
            weight=c, lam=lam, family=LaminarFamily(()), support=support, rank=0,
            is_facet=False, status="zero_lambda",
        )
    sup = sorted(support)
    basis = EchelonBasis(len(sup))
    mins = []
    masks = _cut_table(g).masks
    for i, v in enumerate(vals):
        if v != best:
            continue
        em = masks[i]
        mins.append(_cut_from_row(g, (i + 1) << 1, em))
        if basis.rank < len(sup):
            basis.add([em >> e & 1 for e in sup])
    rank = basis.rank
    is_facet = rank == len(sup)
    family = laminar_basis(g, mins, sup)
    coeffs, rhs = minimum_integer_form(c, lam)
    return FacetCertificate(
        weight=c, lam=lam, family=family, support=support, rank=rank, is_facet=is_facet,
        min_int_coeffs=coeffs, min_int_rhs=rhs, status="facet" if is_facet else "not_facet",
    )


def is_witness(g: Multigraph, c: Sequence, k: int) -> bool:
    """Facet whose minimum-integer-form right-hand side exceeds ``k``."""
    cert = certify_facet(g, c)
    return cert.is_facet and cert.min_int_rhs > k


def is_spanning_tree(g: Multigraph, edge_ids: Iterable[int]) -> bool:
    ids = list(edge_ids)
    if len(ids) != g.n - 1:
        return False
    sub = Multigraph(g.n, tuple(g.edges[i] for i in ids))
    return sub.is_connected()


def odd_rhs_property(g: Multigraph, cert: FacetCertificate) -> bool:
    """An odd minimum-integer-form right-hand side must be 1 with a spanning
    tree support."""
    if not cert.is_facet or cert.min_int_rhs % 2 == 0:
        return True
    return cert.min_int_rhs == 1 and is_spanning_tree(g, cert.support)


# structural checks on witnesses -------------------------------------------


def structural_report(g: Multigraph, c: Sequence, k: int, family) -> dict[str, bool | None]:
    """Evaluate properties every witness of a minor-minimal non-k-graph has.

    ``c`` is rescaled so that its minimum cut value equals ``k``.  Checks that
    only make sense for ``k == 2`` report None otherwise.
    """
    c = _check_weights(g, c)
    lam = min_cut_value(g, c)
    if lam == 0:
        raise ValueError("weights with a zero-cost proper cut cannot be a witness")
    scale = Fraction(k) / lam
    w = tuple(scale * x for x in c)
    sets = [frozenset(s) for s in family]
    fam = LaminarFamily(tuple(sets))
    levels = fam.levels()
    cuts = [make_cut(g, s) for s in sets]
    half = Fraction(k, 2)
    report: dict[str, bool | None] = {}

    report["family_is_laminar"] = is_laminar(sets)
    report["family_size_matches_edges"] = len(sets) == g.m
    report["family_cuts_minimum"] = all(ct.cost(w) == k for ct in cuts)
    report["graph_simple"] = g.is_simple()
    report["shores_connected"] = all(
        g.induces_connected(_mask(s)) and g.induces_connected(((1 << g.n) - 1) & ~_mask(s))
        for s in sets
    )
    report["edges_in_two_family_cuts"] = all(
        sum(e in ct.edge_set for ct in cuts) >= 2 for e in range(g.m)
    )
    report["cost_at_most_half_rhs"] = all(x <= half for x in w)
    report["level0_singletons"] = all(len(s) == 1 for s, lv in levels.items() if lv == 0)

    def tight_pair(s: frozenset[int]) -> bool:
        if len(s) != 2:
            return False
        u, v = sorted(s)
        if frozenset([u]) not in levels or frozenset([v]) not in levels:
            return False
        ids = g.edge_ids_between(u, v)
        if len(ids) != 1:
            return False
        e = ids[0]
        du = sum(w[i] for i in g.incidence[u] if i != e)
        dv = sum(w[i] for i in g.incidence[v] if i != e)
        return w[e] == half and du == half and dv == half

    report["level1_tight_pairs"] = all(tight_pair(s) for s, lv in levels.items() if lv == 1)
    if k >= 2:
        report["has_level1_set"] = any(lv == 1 for lv in levels.values())
    else:
        report["has_level1_set"] = None

    if k == 2:
        report["half_integral"] = all(x in (Fraction(1, 2), Fraction(1)) for x in w)
        report["two_connected"] = is_two_connected(g)
        report["two_cutset_shape"] = _two_cutset_shape(g, w, k)
    else:
        report["half_integral"] = None
        report["two_connected"] = None
        report["two_cutset_shape"] = None
    return report


def _two_cutset_shape(g: Multigraph, w: Sequence[Fraction], k: int) -> bool:
    """Every 2-cutset {u, v} leaves exactly two components, one a single node
    adjacent to both u and v through cost-1 edges, u and v are not adjacent,
    and delta(u), delta(v) are not both minimum."""
    full = (1 << g.n) - 1
    for u, v in two_cutsets(g):
        rest = full & ~(1 << u) & ~(1 << v)
        comps = g.components(rest)
        if len(comps) != 2:
            return False
        singles = [c for c in comps if c & (c - 1) == 0]
        if not singles:
            return False
        if g.has_edge(u, v):
            return False
        ok = False
        for comp in singles:
            x = comp.bit_length() - 1
            ids_u = g.edge_ids_between(x, u)
            ids_v = g.edge_ids_between(x, v)
            if len(ids_u) == 1 and len(ids_v) == 1 and w[ids_u[0]] == Fraction(k, 2) and w[ids_v[0]] == Fraction(k, 2):
                ok = True
        if not ok:
            return False
        du = sum(w[i] for i in g.incidence[u])
        dv = sum(w[i] for i in g.incidence[v])
        if du == k and dv == k:
            return False
    return True
