from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cutdom.cutspace import (
    certify_facet,
    enumerate_proper_cuts,
    is_laminar,
    is_witness,
    laminar_basis,
    make_cut,
    min_cut_value,
    minimum_cuts,
    odd_rhs_property,
    structural_report,
)
from cutdom.graph import Multigraph, complete, cycle, generate_catalog, path, prism, pyramid, star

PRISM_W = (1, 1, 1, 1, 1, 1, 2, 2, 2)
PYRAMID_W = (1, 1, 1, 2, 2, 2, 2, 2, 2)


def brute_cut_costs(g, c):
    """Cost of every proper cut, computed straight from the edge list."""
    out = {}
    for r in range(1, g.n):
        for side in combinations(range(1, g.n), r):
            s = set(side)
            out[frozenset(s)] = sum(Fraction(c[i]) for i, (u, v) in enumerate(g.edges) if (u in s) != (v in s))
    return out


def sympy_rank(rows):
    return sympy.Matrix(rows).rank() if rows else 0


def test_cut_counts():
    assert len(enumerate_proper_cuts(complete(3))) == 3
    assert all(len(c.edge_set) == 2 for c in enumerate_proper_cuts(complete(3)))
    assert len(enumerate_proper_cuts(complete(2))) == 1
    cuts = enumerate_proper_cuts(prism())
    assert len(cuts) == 31
    assert len({c.edge_set for c in cuts}) == 31


def test_cut_node_guard():
    with pytest.raises(ValueError):
        enumerate_proper_cuts(path(25))


def test_complement_canonicalization(rng):
    for g in (prism(), pyramid(), cycle(5)):
        for _ in range(20):
            k = rng.randint(1, g.n - 1)
            side = set(rng.sample(range(g.n), k))
            assert make_cut(g, side) == make_cut(g, set(range(g.n)) - side)
    with pytest.raises(ValueError):
        make_cut(complete(3), [0, 1, 2])


def test_lambda_examples():
    assert min_cut_value(prism(), PRISM_W) == 4
    assert min_cut_value(complete(3), (1, 1, 1)) == 2
    for n in range(2, 7):
        assert min_cut_value(star(n), [1] * (n - 1)) == 1
        assert min_cut_value(path(n), [1] * (n - 1)) == 1
    with pytest.raises(ValueError):
        min_cut_value(complete(3), (1, -1, 1))


def test_lambda_zero_iff_disconnected():
    two = Multigraph(4, ((0, 1), (2, 3)))
    assert min_cut_value(two, (1, 1)) == 0
    assert min_cut_value(complete(4), [1] * 6) == 3


def test_lambda_matches_brute_force_and_stoer_wagner(rng):
    graphs = [g for n in range(3, 7) for g in generate_catalog(n)][::7]
    for g in graphs:
        c = [Fraction(rng.randint(1, 6), rng.randint(1, 4)) for _ in range(g.m)]
        lam = min_cut_value(g, c)
        assert lam == min(brute_cut_costs(g, c).values())
        h = nx.Graph()
        for (u, v), w in zip(g.edges, c):
            h.add_edge(u, v, weight=w)
        assert lam == nx.stoer_wagner(h)[0]


def test_minimum_cuts_examples():
    sides = {c.side for c in minimum_cuts(prism(), PRISM_W)}
    for v in range(1, 6):
        assert frozenset([v]) in sides
    # node 0 is on the far side of its own singleton cut
    assert frozenset(range(1, 6)) in sides
    for pair in ({1, 4}, {2, 5}):
        assert frozenset(pair) in sides
    assert frozenset({1, 2, 4, 5}) in sides  # complement of {0, 3}
    assert len(minimum_cuts(complete(3), (1, 1, 1))) == 3
    p = minimum_cuts(path(3), (1, 1))
    assert {c.side for c in p} == {frozenset({1, 2}), frozenset({2})}


def test_minimum_cuts_match_brute_force(rng):
    for g in list(generate_catalog(5))[::3]:
        c = [rng.randint(0, 3) for _ in range(g.m)]
        costs = brute_cut_costs(g, c)
        best = min(costs.values())
        assert {x.side for x in minimum_cuts(g, c)} == {s for s, v in costs.items() if v == best}


def test_laminar_basis_examples():
    fam = laminar_basis(prism(), minimum_cuts(prism(), PRISM_W))
    assert len(fam) == 9 and is_laminar(fam)
    fam = laminar_basis(complete(3), enumerate_proper_cuts(complete(3)))
    assert sorted(map(sorted, fam)) == [[1], [1, 2], [2]]


def test_laminar_basis_uncrosses_c4_pair():
    g = cycle(4)
    ab = make_cut(g, {1, 2})
    bc = make_cut(g, {2, 3})
    fam = laminar_basis(g, [ab, bc], weights=[1] * 4)
    assert is_laminar(fam)
    rows = [make_cut(g, s).char_vec for s in fam]
    given_rows = [ab.char_vec, bc.char_vec]
    # the uncrossed family spans the input pair (and here strictly more)
    assert sympy_rank(rows + given_rows) == sympy_rank(rows)
    assert sympy_rank(rows) >= sympy_rank(given_rows)


def test_laminar_basis_preserves_rank_of_all_minimum_cuts(rng):
    for g in list(generate_catalog(6))[::9]:
        c = [rng.randint(1, 3) for _ in range(g.m)]
        cuts = minimum_cuts(g, c)
        fam = laminar_basis(g, cuts, weights=c)
        assert is_laminar(fam)
        rows = [make_cut(g, s).char_vec for s in fam]
        ref = [x.char_vec for x in cuts]
        assert len(rows) == sympy_rank(rows) == sympy_rank(ref)


def test_certify_prism_and_pyramid():
    for g, w in ((prism(), PRISM_W), (pyramid(), PYRAMID_W)):
        cert = certify_facet(g, w)
        assert cert.is_facet and cert.lam == 4 and cert.rank == 9
        assert len(cert.family) == 9 and is_laminar(cert.family)
        assert cert.min_int_rhs == 4


def test_certify_path_and_zero_lambda():
    cert = certify_facet(path(3), (1, 1))
    assert cert.is_facet and cert.lam == 1
    assert {frozenset(s) for s in cert.family} == {frozenset({1, 2}), frozenset({2})}
    # the complement of {1, 2} is {0}, so the family is the two leaves
    zero = certify_facet(complete(3), (1, 0, 0))
    assert zero.status == "zero_lambda" and not zero.is_facet


def test_certify_k3_one_zero_edge():
    # with one free edge the triangle acts like a two-edge path
    cert = certify_facet(complete(3), (1, 1, 0))
    assert cert.lam == 1 and cert.is_facet and cert.min_int_rhs == 1


def test_certify_rank_matches_sympy(rng):
    for g in list(generate_catalog(5))[::2]:
        c = [rng.randint(0, 2) for _ in range(g.m)]
        if not any(c):
            continue
        cert = certify_facet(g, c)
        if cert.status == "zero_lambda":
            continue
        sup = sorted(cert.support)
        rows = [[1 if e in x.edge_set else 0 for e in sup] for x in minimum_cuts(g, c)]
        assert cert.rank == sympy_rank(rows)
        assert cert.is_facet == (cert.rank == len(sup))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=9, max_size=9), st.fractions(min_value=Fraction(1, 7), max_value=9))
def test_facet_status_scale_invariant(c, t):
    if not any(c):
        return
    a = certify_facet(prism(), c)
    b = certify_facet(prism(), [t * x for x in c])
    assert a.status == b.status
    assert (a.min_int_coeffs, a.min_int_rhs) == (b.min_int_coeffs, b.min_int_rhs)


def test_is_witness_examples():
    assert is_witness(prism(), PRISM_W, 2)
    assert not is_witness(complete(3), (1, 1, 1), 2)
    assert not is_witness(star(5), [1] * 4, 1)


def test_odd_rhs_property_on_small_facets():
    for w in ((1, 1), (1, 2)):
        assert odd_rhs_property(path(3), certify_facet(path(3), w))
    cert = certify_facet(complete(3), (1, 1, 0))
    assert cert.min_int_rhs == 1 and odd_rhs_property(complete(3), cert)


def test_structural_report_prism():
    cert = certify_facet(prism(), PRISM_W)
    rep = structural_report(prism(), PRISM_W, 2, cert.family)
    assert all(v is True for v in rep.values()), rep


def test_structural_report_pyramid():
    cert = certify_facet(pyramid(), PYRAMID_W)
    rep = structural_report(pyramid(), PYRAMID_W, 2, cert.family)
    assert all(v is True for v in rep.values()), rep
    assert rep["two_cutset_shape"] is True


def test_structural_report_k3_k1():
    fam = [{0}, {1}, {2}]
    rep = structural_report(complete(3), (1, 1, 1), 1, fam)
    assert rep["edges_in_two_family_cuts"] is True
    # rescaled to minimum cut 1 every edge costs exactly 1/2
    assert rep["cost_at_most_half_rhs"] is True
    assert rep["half_integral"] is None


def test_certificate_json_shape():
    data = certify_facet(prism(), PRISM_W).to_json()
    assert data["weights"]["6"] == "2"
    assert data["lambda"] == "4"
    assert all(isinstance(s, list) for s in data["family"])
