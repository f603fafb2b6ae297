from fractions import Fraction as F

import pytest

from cutdom.bruteforce import subtour_vertices_by_bonds, tight_subset_vertices
from cutdom.graph import Multigraph, complete, cycle
from cutdom.polyhedron import HRep, build_subtour_hrep


def test_tight_subsets_on_a_square():
    # x >= 0, y >= 0, x + y >= 1 has vertices (1,0) and (0,1)
    one, zero = F(1), F(0)
    h = HRep(2, (((one, zero), zero), ((zero, one), zero), ((one, one), one)))
    assert tight_subset_vertices(h) == {(one, zero), (zero, one)}


def test_tight_subsets_limit():
    with pytest.raises(ValueError):
        tight_subset_vertices(build_subtour_hrep(complete(5)), max_subsets=100)


def test_bond_oracle_agrees_with_tight_subsets():
    for g in (complete(3), cycle(4), complete(4), Multigraph(4, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2)))):
        assert subtour_vertices_by_bonds(g) == tight_subset_vertices(build_subtour_hrep(g))


def test_bond_oracle_rejects_disconnected():
    with pytest.raises(ValueError):
        subtour_vertices_by_bonds(Multigraph(4, ((0, 1), (2, 3))))
