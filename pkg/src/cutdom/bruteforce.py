"""Reference vertex enumerators used to cross-check the double description code.

Both work by solving square tight systems directly and share nothing with
the incremental ray machinery.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .cutspace import _cut_table
from .graph import Multigraph
from .polyhedron import HRep
from .ratmat import EchelonBasis, solve, solve_square_integer


def tight_subset_vertices(h: HRep, max_subsets: int = 2_000_000) -> set[tuple[Fraction, ...]]:
    """Every feasible point that is the unique solution of ``dim`` rows held
    at equality.  Exponential in the row count; meant for tiny systems."""
    d = h.dim
    rows = list(h.rows)
    total = 1
    for i in range(d):
        total = total * (len(rows) - i) // (i + 1)
    if total > max_subsets:
        raise ValueError(f"{total} row subsets exceed the limit of {max_subsets}")
    found = set()
    for idx in combinations(range(len(rows)), d):
        x = solve([rows[i][0] for i in idx], [rows[i][1] for i in idx])
        if x is not None and h.satisfied_by(x):
            found.add(x)
    return found


def _bonds(g: Multigraph, support: int) -> list[tuple[int, int]]:
    """Canonical sides (with edge masks) whose two shores are connected in
    the subgraph formed by the ``support`` edges."""
    sub = Multigraph(g.n, tuple(e for i, e in enumerate(g.edges) if support >> i & 1))
    full = (1 << g.n) - 1
    out = []
    for side, em in _cut_table(g):
        if sub.induces_connected(side) and sub.induces_connected(full & ~side):
            out.append((side, em & support))
    return out


def _laminar(a: int, b: int) -> bool:
    return not (a & b) or (a & b) == a or (a & b) == b


def subtour_vertices_by_bonds(g: Multigraph) -> set[tuple[Fraction, ...]]:
    """Vertices of the subtour polyhedron found support by support.

    For a vertex with support F every tight cut is a bond of (V, F), and the
    tight cuts contain a laminar basis (uncrossing), so it suffices to solve
    each independent laminar family of |F| bonds restricted to F.
    """
    if not g.is_connected():
        raise ValueError("needs a connected graph")
    m = g.m
    table = _cut_table(g)
    found = set()
    for support in range(1, 1 << m):
        fedges = [i for i in range(m) if support >> i & 1]
        sub = Multigraph(g.n, tuple(g.edges[i] for i in fedges))
        if not sub.is_connected():
            continue
        bonds = _bonds(g, support)
        k = len(fedges)
        vecs = [[1 if em >> i & 1 else 0 for i in fedges] for _, em in bonds]

        def extend(start, chosen, basis):
            if len(chosen) == k:
                sol = solve_square_integer([vecs[j] for j in chosen], [2] * k)
                if sol is None:
                    return
                nums, den = sol
                if any(q <= 0 for q in nums):
                    return
                x = [0] * m
                for pos, e in enumerate(fedges):
                    x[e] = nums[pos]
                for _side, em in table:
                    if sum(x[i] for i in range(m) if em >> i & 1) < 2 * den:
                        return
                found.add(tuple(Fraction(v, den) for v in x))
                return
            if len(bonds) - start < k - len(chosen):
                return
            for j in range(start, len(bonds)):
                side = bonds[j][0]
                if not all(_laminar(side, bonds[c][0]) for c in chosen):
                    continue
                b = basis.copy()
                if not b.add(vecs[j]):
                    continue
                chosen.append(j)
                extend(j + 1, chosen, b)
                chosen.pop()

        extend(0, [], EchelonBasis(k))
    return found
