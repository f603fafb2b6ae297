import json
from collections import Counter
from dataclasses import replace
from fractions import Fraction as F
from math import gcd, lcm

import pytest
import sympy

from cutdom.cutspace import certify_facet, minimum_cuts
from cutdom.family import (
    FamilyFixture,
    FixtureError,
    build_member,
    certify_fixture,
    growth_table,
    load_fixtures,
    rung_weights,
    shipped_family,
)

H12_FRACTIONAL_WEIGHTS = ["1/2", "1/4", "3/8", "5/16", "11/32", "21/32"]


def min_int_rhs(weights, rhs):
    # scale to integers, then divide out the common factor
    den = lcm(*(F(w).denominator for w in weights), F(rhs).denominator)
    nums = [int(F(w) * den) for w in weights]
    g = 0
    for x in nums:
        g = gcd(g, x)
    return int(F(rhs) * den) // g


def test_rung_weights():
    assert rung_weights(5) == [F(1, 2), F(1, 4), F(3, 8), F(5, 16), F(11, 32)]


def test_shipped_members():
    fam = shipped_family()
    assert [f.name for f in fam] == ["h6", "h8", "h10", "h12"]
    assert [f.graph.n for f in fam] == [11, 15, 19, 23]
    assert [f.graph.m for f in fam] == [15, 21, 27, 33]
    for f in fam:
        assert f == replace(build_member((f.graph.n - 3) // 4, f.expected_min_int_rhs))


def test_h12_fractional_weights():
    h12 = shipped_family()[-1]
    counts = Counter(h12.weights)
    for w in H12_FRACTIONAL_WEIGHTS:
        assert counts[F(w)] >= 1
    # eleven unit-cost edges before subdivision, each split in two
    assert counts[F(1)] == 22


def test_expected_rhs_by_direct_scaling():
    for f in shipped_family():
        assert f.expected_min_int_rhs == min_int_rhs(f.weights, 2)


def test_small_members_certified_against_sympy_rank():
    for f in shipped_family()[:2]:
        cuts = minimum_cuts(f.graph, f.weights)
        rows = [[int(e in c.edge_set) for e in range(f.graph.m)] for c in cuts]
        assert sympy.Matrix(rows).rank() == f.graph.m
        assert certify_facet(f.graph, f.weights).is_facet


def test_growth_table_doubles():
    rows, doubling = growth_table(shipped_family())
    assert doubling
    assert [r["min_int_rhs"] for r in rows] == [8, 16, 32, 64]
    assert all(r["lambda"] == "2" for r in rows)


def test_perturbed_weight_is_rank_deficient():
    fx = build_member(2, 8)
    w = list(fx.weights)
    w[0] += F(1, 8)
    with pytest.raises(FixtureError) as info:
        certify_fixture(replace(fx, weights=tuple(w)))
    assert info.value.condition == "rank deficiency"
    assert info.value.name == "h6"


def test_lowered_weight_changes_minimum_cut():
    fx = build_member(2, 8)
    w = list(fx.weights)
    w[0] -= F(1, 8)
    with pytest.raises(FixtureError, match="minimum cut mismatch"):
        certify_fixture(replace(fx, weights=tuple(w)))


def test_wrong_expected_rhs():
    with pytest.raises(FixtureError, match="right-hand side"):
        certify_fixture(build_member(2, 16))


def test_zero_cut():
    fx = build_member(2)
    w = [F(0) if i in (0, 1) else x for i, x in enumerate(fx.weights)]
    with pytest.raises(FixtureError, match="zero minimum cut"):
        certify_fixture(replace(fx, weights=tuple(w)))


def test_fixture_json_round_trip(tmp_path):
    fx = build_member(3, 16)
    assert FamilyFixture.from_json(json.loads(json.dumps(fx.to_json()))) == fx
    p = tmp_path / "one.json"
    p.write_text(json.dumps(fx.to_json()))
    assert load_fixtures(p) == [fx]
    bad = fx.to_json()
    bad["weights"].pop("0")
    with pytest.raises(ValueError):
        FamilyFixture.from_json(bad)


def test_build_member_needs_two_rungs():
    with pytest.raises(ValueError):
        build_member(1)
