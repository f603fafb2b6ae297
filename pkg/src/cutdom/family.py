"""Caterpillar-like graphs whose facet right-hand sides double with every
extra rung.

Layout: bottom nodes ``(1,0) .. (m+2,0)`` joined by a path whose edges are
each subdivided once, top nodes ``(2,3) .. (m+1,3)`` joined to the bottom
node below by a once-subdivided vertical.  All path and vertical pieces
cost 1.  Rung weights follow ``a1 = 1/2, a2 = 1/4, a(j+1) = (a(j-1) + a(j)) / 2``;
the top edge ``(i,3)-(i+1,3)`` and the diagonal ``(i,3)-(i+2,0)`` both cost
``a(i)``, the two edges at ``(1,0)`` cost 1/2 and the last edge
``(m+1,3)-(m+2,0)`` costs ``1 - a(m)``.  The inequality has minimum cut 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .cutspace import FacetCertificate, certify_facet
from .graph import Multigraph
from .ratmat import as_rational, format_rational


class FixtureError(ValueError):
    """A family fixture failed certification."""

    def __init__(self, name: str, condition: str, detail: str):
        super().__init__(f"fixture {name}: {condition} ({detail})")
        self.name = name
        self.condition = condition
        self.detail = detail


@dataclass(frozen=True)
class FamilyFixture:
    name: str
    graph: Multigraph
    weights: tuple[Fraction, ...]
    expected_lambda: Fraction
    expected_min_int_rhs: int | None
    labels: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out = self.graph.to_json()
        out.update(
            {
                "name": self.name,
                "weights": {str(i): format_rational(w) for i, w in enumerate(self.weights)},
                "expected_lambda": format_rational(self.expected_lambda),
                "expected_min_int_rhs": self.expected_min_int_rhs,
            }
        )
        if self.labels:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FamilyFixture":
        g = Multigraph.from_json(data)
        w = data["weights"]
        if len(w) != g.m:
            raise ValueError(f"fixture {data.get('name')}: {len(w)} weights for {g.m} edges")
        rhs = data.get("expected_min_int_rhs")
        return cls(
            name=data["name"],
            graph=g,
            weights=tuple(as_rational(w[str(i)]) for i in range(g.m)),
            expected_lambda=as_rational(data.get("expected_lambda", "2")),
            expected_min_int_rhs=None if rhs is None else int(rhs),
            labels=tuple(data.get("labels", ())),
        )


def rung_weights(m: int) -> list[Fraction]:
    a = [Fraction(1, 2), Fraction(1, 4)]
    while len(a) < m:
        a.append((a[-2] + a[-1]) / 2)
    return a[:m]


def build_member(rungs: int, expected_min_int_rhs: int | None = None) -> FamilyFixture:
    if rungs < 2:
        raise ValueError("the family starts at two rungs")
    m = rungs
    a = {i + 1: x for i, x in enumerate(rung_weights(m))}
    index: dict[tuple, int] = {}
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    weights: list[Fraction] = []

    def node(pos):
        if pos not in index:
            index[pos] = len(index)
            x, y = pos
            labels.append(f"({x:g},{y:g})")
        return index[pos]

    def add(p, q, w):
        edges.append((node(p), node(q)))
        weights.append(Fraction(w))

    one = Fraction(1)
    for i in range(1, m + 2):
        add((i, 0), (i + 0.5, 0), one)
        add((i + 0.5, 0), (i + 1, 0), one)
    for i in range(2, m + 2):
        add((i, 0), (i, 1.5), one)
        add((i, 1.5), (i, 3), one)
    for i in range(2, m + 1):
        add((i, 3), (i + 1, 3), a[i])
        add((i, 3), (i + 2, 0), a[i])
    add((1, 0), (2, 3), Fraction(1, 2))
    add((1, 0), (3, 0), Fraction(1, 2))
    add((m + 1, 3), (m + 2, 0), one - a[m])
    return FamilyFixture(
        name=f"h{2 * m + 2}",
        graph=Multigraph(len(index), tuple(edges)),
        weights=tuple(weights),
        expected_lambda=Fraction(2),
        expected_min_int_rhs=expected_min_int_rhs,
        labels=tuple(labels),
    )


def certify_fixture(fx: FamilyFixture) -> FacetCertificate:
    """Certify a fixture or raise :class:`FixtureError` naming the failed
    condition."""
    cert = certify_facet(fx.graph, fx.weights)
    if cert.status == "zero_lambda":
        raise FixtureError(fx.name, "zero minimum cut", "some proper cut has cost 0")
    if cert.lam != fx.expected_lambda:
        raise FixtureError(
            fx.name, "minimum cut mismatch",
            f"expected {format_rational(fx.expected_lambda)}, got {format_rational(cert.lam)}",
        )
    if not cert.is_facet:
        raise FixtureError(
            fx.name, "rank deficiency",
            f"minimum cuts have rank {cert.rank} on a support of {len(cert.support)} edges",
        )
    if fx.expected_min_int_rhs is not None and cert.min_int_rhs != fx.expected_min_int_rhs:
        raise FixtureError(
            fx.name, "right-hand side mismatch",
            f"expected {fx.expected_min_int_rhs}, got {cert.min_int_rhs}",
        )
    return cert


def growth_table(fixtures) -> tuple[list[dict], bool]:
    """Certify fixtures in size order; returns rows and whether the
    right-hand side at least doubles at every step."""
    rows = []
    for fx in sorted(fixtures, key=lambda f: (f.graph.n, f.name)):
        cert = certify_fixture(fx)
        rows.append(
            {"name": fx.name, "nodes": fx.graph.n, "edges": fx.graph.m,
             "lambda": format_rational(cert.lam), "min_int_rhs": cert.min_int_rhs}
        )
    doubling = all(b["min_int_rhs"] >= 2 * a["min_int_rhs"] for a, b in zip(rows, rows[1:]))
    return rows, doubling


def load_fixtures(path) -> list[FamilyFixture]:
    """A fixture file holds one fixture or ``{"members": [...]}``."""
    with open(path) as fh:
        data = json.load(fh)
    if "members" in data:
        return [FamilyFixture.from_json(d) for d in data["members"]]
    return [FamilyFixture.from_json(data)]


def shipped_family() -> list[FamilyFixture]:
    ref = resources.files("cutdom") / "data" / "h_family.json"
    with resources.as_file(ref) as p:
        return load_fixtures(p)
