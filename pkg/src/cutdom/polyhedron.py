"""Vertex enumeration of the subtour elimination polyhedron and the facet
description of the cut dominant it yields by blocking polarity."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .cutspace import (
    FacetCertificate,
    _cut_table,
    certify_facet,
)
from .graph import Multigraph, spanning_trees
from .ratmat import _bareiss_echelon, format_rational, integer_row, vector

log = logging.getLogger(__name__)

MAX_SUBTOUR_NODES = 16
DEFAULT_DD_BUDGET = 2_000_000


class DDBudgetExceeded(RuntimeError):
    """The double description run produced more intermediate rays than allowed."""

    def __init__(self, rays: int, budget: int, inserted: int, total: int):
        super().__init__(
            f"double description exceeded {budget} rays ({rays} after inserting "
            f"{inserted} of {total} constraints)"
        )
        self.rays = rays
        self.budget = budget
        self.inserted = inserted
        self.total = total


class SizeGuardError(ValueError):
    """Input is larger than an operation is prepared to handle."""


@dataclass(frozen=True)
class HRep:
    """Inequality system ``<a, x> >= b`` (one ``(a, b)`` pair per row)."""

    dim: int
    rows: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    def satisfied_by(self, x: Sequence) -> bool:
        return all(sum(ai * xi for ai, xi in zip(a, x)) >= b for a, b in self.rows)

    def tight_rows(self, x: Sequence) -> list[int]:
        return [i for i, (a, b) in enumerate(self.rows) if sum(ai * xi for ai, xi in zip(a, x)) == b]


@dataclass(frozen=True)
class VRep:
    vertices: tuple[tuple[Fraction, ...], ...]
    rays: tuple[tuple[Fraction, ...], ...]

    def to_json(self) -> dict:
        return {
            "vertices": [[format_rational(q) for q in v] for v in self.vertices],
            "rays": [[format_rational(q) for q in r] for r in self.rays],
        }


def build_subtour_hrep(g: Multigraph) -> HRep:
    """x(delta(S)) >= 2 for every canonical proper side S, then x >= 0."""
    if g.n > MAX_SUBTOUR_NODES:
        raise SizeGuardError(f"subtour systems are limited to {MAX_SUBTOUR_NODES} nodes")
    if not g.is_connected():
        raise ValueError("the subtour elimination polyhedron is only built for connected graphs")
    one, zero, two = Fraction(1), Fraction(0), Fraction(2)
    rows = []
    for _side, em in _cut_table(g):
        rows.append((tuple(one if em >> i & 1 else zero for i in range(g.m)), two))
    for i in range(g.m):
        rows.append((tuple(one if j == i else zero for j in range(g.m)), zero))
    return HRep(g.m, tuple(rows))


# double description ---------------------------------------------------------


def _popcount(x: int) -> int:
    return x.bit_count()


def _primitive(v: list[int]) -> tuple[int, ...]:
    g = 0
    for a in v:
        g = gcd(g, a)
        if g == 1:
            return tuple(v)
    if g > 1:
        return tuple(a // g for a in v)
    return tuple(v)


def enumerate_vertices(h: HRep, budget: int = DEFAULT_DD_BUDGET, verify: bool = True) -> VRep:
    """Vertices and extreme rays of a pointed polyhedron of dominant type.

    Runs the double description method on the homogenized cone
    ``{(x, t): a x - b t >= 0, t >= 0}``, starting from the orthant spanned
    by the nonnegativity rows and inserting the other rows sparsest first.
    Every vertex is checked against all rows and for a full-rank tight set
    when ``verify`` is set.
    """
    d = h.dim
    D = d + 1
    unit_rows = set()
    others = []
    for a, b in h.rows:
        ints = integer_row(list(a) + [-b])
        nz = [i for i in range(d) if ints[i]]
        if len(nz) == 1 and ints[d] == 0 and ints[nz[0]] > 0:
            unit_rows.add(nz[0])
            continue
        if any(x < 0 for x in ints[:d]):
            raise ValueError("rows must have nonnegative coefficients")
        others.append(ints)
    if len(unit_rows) != d:
        raise ValueError("every coordinate needs a nonnegativity row")
    # drop duplicates, sparsest first (stable on original order)
    seen = set()
    order = []
    for r in others:
        key = tuple(r)
        if key not in seen:
            seen.add(key)
            order.append(r)
    order.sort(key=lambda r: sum(1 for x in r[:d] if x))

    # rays: integer tuples of length D; slot j < D is the j-th coordinate sign
    # constraint, slot D + k the k-th inserted row
    rays: list[tuple[int, ...]] = []
    zeros: list[int] = []
    all_init = (1 << D) - 1
    for i in range(D):
        rays.append(tuple(1 if j == i else 0 for j in range(D)))
        zeros.append(all_init & ~(1 << i))

    for k, row in enumerate(order):
        slot = D + k
        sbit = 1 << slot
        vals = [sum(a * r for a, r in zip(row, ray) if a) for ray in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        if not neg:
            for i in zer:
                zeros[i] |= sbit
            continue
        # per-slot ray masks for the combinatorial adjacency test
        nslots = slot
        slot_rays = [0] * nslots
        for idx, z in enumerate(zeros):
            b = 1 << idx
            while z:
                low = z & -z
                slot_rays[low.bit_length() - 1] |= b
                z ^= low
        need = D - 2
        every = (1 << len(rays)) - 1
        new_rays = []
        new_zeros = []
        for p in pos:
            zp = zeros[p]
            bp = 1 << p
            vp = vals[p]
            rp = rays[p]
            for q in neg:
                common = zp & zeros[q]
                if _popcount(common) < need:
                    continue
                pair = bp | (1 << q)
                cand = every
                c = common
                while c:
                    low = c & -c
                    cand &= slot_rays[low.bit_length() - 1]
                    if cand == pair:
                        break
                    c ^= low
                if cand != pair:
                    continue
                vq = vals[q]
                rq = rays[q]
                new_rays.append(_primitive([vp * a_ - vq * b_ for a_, b_ in zip(rq, rp)]))
                new_zeros.append(common | sbit)
        kept_rays = [rays[i] for i in pos] + [rays[i] for i in zer] + new_rays
        kept_zeros = [zeros[i] for i in pos] + [zeros[i] | sbit for i in zer] + new_zeros
        rays, zeros = kept_rays, kept_zeros
        if len(rays) > budget:
            raise DDBudgetExceeded(len(rays), budget, k + 1, len(order))

    if verify:
        int_rows = [integer_row(list(a) + [-b]) for a, b in h.rows]
        for ray in rays:
            if ray[d] > 0:
                _verify_vertex(int_rows, ray, d)
    vertices = []
    rec_rays = []
    for ray in rays:
        t = ray[d]
        if t > 0:
            vertices.append(tuple(Fraction(x, t) for x in ray[:d]))
        else:
            g = 0
            for x in ray[:d]:
                g = gcd(g, x)
            rec_rays.append(tuple(Fraction(x // g) for x in ray[:d]))
    vertices.sort()
    rec_rays.sort(reverse=True)
    return VRep(tuple(vertices), tuple(rec_rays))


def _verify_vertex(int_rows: list[list[int]], ray: Sequence[int], d: int):
    """``ray`` is a homogenized point (x*t, t) with t > 0."""
    tight = []
    for row in int_rows:
        s = sum(a * r for a, r in zip(row, ray) if a)
        if s < 0:
            raise AssertionError(f"point {ray} violates a row")
        if s == 0:
            tight.append(row[:d])
    if _bareiss_echelon(tight)[0] != d:
        raise AssertionError(f"point {ray} has a rank-deficient tight set")


def subtour_vertices(g: Multigraph, budget: int = DEFAULT_DD_BUDGET, verify: bool = True) -> VRep:
    return enumerate_vertices(build_subtour_hrep(g), budget=budget, verify=verify)


# facets of the cut dominant ------------------------------------------------


def facet_list(g: Multigraph, budget: int = DEFAULT_DD_BUDGET) -> list[FacetCertificate]:
    """Certificates for every facet of the cut dominant with positive
    right-hand side, one per vertex of the subtour elimination polyhedron.
    Together with x >= 0 they describe the cut dominant irredundantly."""
    if not g.is_connected():
        return []
    out = []
    for v in subtour_vertices(g, budget=budget).vertices:
        cert = certify_facet(g, v)
        if not cert.is_facet or cert.lam != 2:
            raise AssertionError(f"subtour vertex {v} does not certify as a facet")
        out.append(cert)
    return out


def kstar(g: Multigraph, budget: int = DEFAULT_DD_BUDGET) -> int:
    """Largest minimum-integer-form right-hand side over the facets of the
    cut dominant; 0 for disconnected graphs."""
    if not g.is_connected():
        return 0
    simple, _ = g.simplify()
    return max(c.min_int_rhs for c in facet_list(simple, budget=budget))


def kstar_from_vertices(vertices: Sequence[Sequence[Fraction]]) -> int:
    """Max minimum-integer-form RHS of ``<v, x> >= 2`` over the given vertices."""
    from .ratmat import minimum_integer_form

    return max(minimum_integer_form(v, 2)[1] for v in vertices)


# tours ---------------------------------------------------------------------


def is_tour_vector(g: Multigraph, x: Sequence) -> bool:
    """Nonnegative integral vector with even degree at every node and
    connected support touching every node."""
    x = vector(x)
    if len(x) != g.m:
        raise ValueError("vector length does not match the edge count")
    if any(q < 0 for q in x):
        raise ValueError("tour vectors are nonnegative")
    if any(q.denominator != 1 for q in x):
        return False
    deg = [0] * g.n
    touched = 0
    edges = []
    for i, (u, v) in enumerate(g.edges):
        val = int(x[i])
        if val == 0:
            continue
        deg[u] += val
        deg[v] += val
        touched |= (1 << u) | (1 << v)
        edges.append((u, v))
    if any(dv % 2 for dv in deg):
        return False
    if touched != (1 << g.n) - 1:
        return False
    return Multigraph(g.n, tuple(edges)).is_connected()


def gtsp_equals_subtour(
    g: Multigraph, budget: int = DEFAULT_DD_BUDGET, vertices=None
) -> tuple[bool, tuple[Fraction, ...] | None, list[tuple[Fraction, ...]]]:
    """Whether every subtour vertex is a tour vector.

    Returns ``(equal, counterexample, non_tour_vertices)``; the counterexample
    is the first non-tour vertex in (fractional-first, coordinate-sum,
    lexicographic) order.
    """
    if not g.is_connected():
        raise ValueError("needs a connected graph")
    if vertices is None:
        vertices = subtour_vertices(g, budget=budget).vertices
    bad = [v for v in vertices if not is_tour_vector(g, v)]
    if not bad:
        return True, None, []
    bad.sort(key=lambda v: (all(q.denominator == 1 for q in v), sum(v), v))
    return False, bad[0], bad


# arborescence extended formulation -----------------------------------------

MAX_EF_NODES = 5
MAX_EF_EDGES = 8


@dataclass(frozen=True)
class EFSystem:
    """Bidirected arc variables: arc ``2*e`` runs along edge ``e`` as stored,
    arc ``2*e + 1`` against it.  One covering row per arborescence rooted at
    ``root``; the projection is x(e) = y(2e) + y(2e+1)."""

    graph: Multigraph
    root: int
    arborescences: tuple[frozenset[int], ...]

    @property
    def dim(self) -> int:
        return 2 * self.graph.m

    def hrep(self) -> HRep:
        one, zero = Fraction(1), Fraction(0)
        rows = []
        for arcs in self.arborescences:
            rows.append((tuple(one if a in arcs else zero for a in range(self.dim)), one))
        for a in range(self.dim):
            rows.append((tuple(one if b == a else zero for b in range(self.dim)), zero))
        return HRep(self.dim, tuple(rows))

    def project(self, y: Sequence) -> tuple[Fraction, ...]:
        return tuple(y[2 * e] + y[2 * e + 1] for e in range(self.graph.m))


def _orient(g: Multigraph, tree: Sequence[int], root: int) -> frozenset[int]:
    arcs = set()
    seen = {root}
    frontier = [root]
    while frontier:
        u = frontier.pop()
        for e in tree:
            a, b = g.edges[e]
            if a == u and b not in seen:
                arcs.add(2 * e)
                seen.add(b)
                frontier.append(b)
            elif b == u and a not in seen:
                arcs.add(2 * e + 1)
                seen.add(a)
                frontier.append(a)
    return frozenset(arcs)


def build_ef_system(g: Multigraph, root: int) -> EFSystem:
    if g.n > MAX_EF_NODES or g.m > MAX_EF_EDGES:
        raise SizeGuardError(
            f"extended formulation checks are limited to {MAX_EF_NODES} nodes and {MAX_EF_EDGES} edges"
        )
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} is not a node")
    if not g.is_connected():
        raise ValueError("needs a connected graph")
    if not g.is_simple():
        raise ValueError("needs a graph without loops or parallel edges")
    trees = spanning_trees(g)
    return EFSystem(g, root, tuple(_orient(g, t, root) for t in trees))


def directed_cut_vector(g: Multigraph, side_mask: int, root: int) -> tuple[Fraction, ...]:
    """Arcs leaving the shore that contains ``root``."""
    if side_mask >> root & 1:
        side_mask = ((1 << g.n) - 1) & ~side_mask
    y = [Fraction(0)] * (2 * g.m)
    for e, (u, v) in enumerate(g.edges):
        if not side_mask >> u & 1 and side_mask >> v & 1:
            y[2 * e] = Fraction(1)
        elif side_mask >> u & 1 and not side_mask >> v & 1:
            y[2 * e + 1] = Fraction(1)
    return tuple(y)


@dataclass
class EFReport:
    root: int
    arborescences: int
    lifted_vertices: int
    vertices_are_directed_cuts: bool
    projection_inside_cut_dominant: bool
    cuts_inside_projection: bool

    @property
    def ok(self) -> bool:
        return (
            self.vertices_are_directed_cuts
            and self.projection_inside_cut_dominant
            and self.cuts_inside_projection
        )

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "arborescences": self.arborescences,
            "lifted_vertices": self.lifted_vertices,
            "vertices_are_directed_cuts": self.vertices_are_directed_cuts,
            "projection_inside_cut_dominant": self.projection_inside_cut_dominant,
            "cuts_inside_projection": self.cuts_inside_projection,
            "ok": self.ok,
        }


def ef_report(g: Multigraph, root: int, budget: int = DEFAULT_DD_BUDGET) -> EFReport:
    ef = build_ef_system(g, root)
    h = ef.hrep()
    lifted = enumerate_vertices(h, budget=budget)
    directed = {directed_cut_vector(g, side, root) for side, _ in _cut_table(g)}
    projected = [ef.project(y) for y in lifted.vertices]
    facets = [c.normalized(2) for c in facet_list(g, budget=budget)]

    def in_cut_dominant(x):
        return all(q >= 0 for q in x) and all(
            sum(ci * xi for ci, xi in zip(c, x)) >= 2 for c in facets
        )

    # facets are stated with RHS 2, so test 2*x against them
    inside = all(in_cut_dominant(tuple(2 * q for q in x)) for x in projected)
    covered = all(h.satisfied_by(y) for y in directed)
    return EFReport(
        root=root,
        arborescences=len(ef.arborescences),
        lifted_vertices=len(lifted.vertices),
        vertices_are_directed_cuts=set(lifted.vertices) <= directed,
        projection_inside_cut_dominant=inside,
        cuts_inside_projection=covered,
    )


def ef_projection_check(g: Multigraph, r: int, budget: int = DEFAULT_DD_BUDGET) -> bool:
    """Whether projecting the arborescence formulation rooted at ``r``
    reproduces the cut dominant, by containment in both directions."""
    return ef_report(g, r, budget=budget).ok
