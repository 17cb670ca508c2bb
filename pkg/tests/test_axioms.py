import random

import pytest
from hypothesis import given

from conflictual import (
    CONFLICTUAL_RULES,
    MAXNASH,
    MAXPOLAR2,
    MAXSUM,
    MAXSWAP,
    Axiom,
    AxiomReport,
    DomainError,
    GeneratorConfig,
    Profile,
    all_pairs,
    check_axiom,
    conflicting_pairs,
    matching_dominates,
    search_counterexample,
)
from conflictual import fixtures as fx
from conflictual.axioms import monotonicity_moves
from conflictual.core import rank_distance
from conflictual.preflib import dumps_profile, loads_profile
from conftest import profiles
import oracles


def test_e5_domination():
    p = fx.e5()
    assert matching_dominates(p, p.pair("a", "b"), p.pair("x", "y"))
    assert not matching_dominates(p, p.pair("x", "y"), p.pair("a", "b"))


def test_e3_domination():
    p = fx.e3()
    assert matching_dominates(p, p.pair("c", "d"), p.pair("a", "b"))


def test_pair_does_not_dominate_itself():
    p = fx.e5()
    for q in conflicting_pairs(p):
        assert not matching_dominates(p, q, q)


def test_domination_needs_conflicting_pairs():
    p = fx.e4()
    with pytest.raises(DomainError):
        matching_dominates(p, p.pair("b", "c"), p.pair("a", "b"))


def test_e3_matching_domination_verdicts():
    p = fx.e3()
    report = check_axiom(Axiom.MATCHING_DOMINATION, MAXSWAP, p)
    assert not report.holds
    assert {q.label(p.names) for q in report.witness.pairs} >= {"{c,d}"}
    for rule in (MAXSUM, MAXNASH, MAXPOLAR2):
        assert check_axiom(Axiom.MATCHING_DOMINATION, rule, p).holds


def test_e2_balance_preference():
    p = fx.e2()
    assert not check_axiom(Axiom.BALANCE_PREFERENCE, MAXSUM, p).holds
    assert not check_axiom(Axiom.BALANCE_PREFERENCE, MAXPOLAR2, p).holds
    assert check_axiom(Axiom.BALANCE_PREFERENCE, MAXNASH, p).holds
    assert check_axiom(Axiom.BALANCE_PREFERENCE, MAXSWAP, p).holds


def test_e4_unanimity_and_consistency():
    p = fx.e4()
    for rule in CONFLICTUAL_RULES:
        u = check_axiom(Axiom.UNANIMITY, rule, p)
        assert not u.holds
        assert u.details["in_some_winner"] is False and u.details["in_every_winner"] is False
        c = check_axiom(Axiom.CONFLICT_CONSISTENCY, rule, p)
        assert c.holds


def test_impossibility_fixtures_are_distinct_profiles():
    start, moved = fx.impossibility_start(), fx.impossibility_moved()
    assert start.m == moved.m == 4 and start.n == moved.n == 2
    assert start != moved


def test_report_requires_witness_on_failure():
    with pytest.raises(ValueError):
        AxiomReport(Axiom.UNANIMITY, MAXSUM, False)


def test_parse_axiom():
    assert Axiom.parse("Matching_Domination") is Axiom.MATCHING_DOMINATION
    assert Axiom.parse("balancepreference") is Axiom.BALANCE_PREFERENCE
    with pytest.raises(DomainError):
        Axiom.parse("pareto")


def test_monotonicity_moves_split_multiplicity():
    p = Profile(((0, 2, 1, 3),), (3,))
    moves = list(monotonicity_moves(p, (0, 1)))
    # a is on top so only b can move down
    assert len(moves) == 1
    _, moved, _ = moves[0]
    assert moved.as_counter() == {(0, 2, 1, 3): 2, (0, 2, 3, 1): 1}


@given(profiles(max_m=4))
def test_monotonicity_moves_increase_distance(p):
    for a, b in all_pairs(p.m):
        before = sum(abs(rank_distance(v, a, b)) for v in p.expanded())
        for _, moved, _ in monotonicity_moves(p, (a, b)):
            after = sum(abs(rank_distance(v, a, b)) for v in moved.expanded())
            assert after == before + 1
            assert moved.n == p.n


def random_voters(rng, n, m):
    return [tuple(rng.sample(range(m), m)) for _ in range(n)]


def test_fast_domination_agrees_with_bijections():
    rng = random.Random(11)
    checked = 0
    while checked < 1500:
        n, m = rng.randint(2, 5), rng.randint(3, 5)
        p = Profile(tuple(random_voters(rng, n, m)))
        pairs = conflicting_pairs(p)
        for dom in pairs:
            for sub in pairs:
                for orient in (tuple(dom), tuple(dom)[::-1]):
                    assert matching_dominates(p, orient, tuple(sub)) == oracles.matching_dominates(
                        p.expanded(), orient, tuple(sub)
                    )
                    checked += 1


@given(profiles(max_m=5, max_ballots=4, max_weight=2))
def test_domination_is_antisymmetric(p):
    pairs = conflicting_pairs(p)
    for q in pairs:
        for r in pairs:
            assert not (matching_dominates(p, q, r) and matching_dominates(p, r, q))


SAFE = [Axiom.REVERSE_STABILITY, Axiom.CONFLICT_CONSISTENCY, Axiom.ANTAGONIZATION_CONSISTENCY]


@given(profiles())
def test_theorems_hold_on_random_profiles(p):
    for rule in CONFLICTUAL_RULES:
        for axiom in SAFE:
            assert check_axiom(axiom, rule, p).holds
    for rule in (MAXSUM, MAXNASH, MAXPOLAR2):
        assert check_axiom(Axiom.MATCHING_DOMINATION, rule, p).holds
    for rule in (MAXNASH, MAXSWAP):
        assert check_axiom(Axiom.BALANCE_PREFERENCE, rule, p).holds


@given(profiles())
def test_failures_come_with_replayable_witness(p):
    for rule in CONFLICTUAL_RULES:
        for axiom in Axiom:
            report = check_axiom(axiom, rule, p)
            if not report.holds:
                replay = loads_profile(dumps_profile(report.witness.profile))
                assert not check_axiom(axiom, rule, replay).holds


def test_search_finds_monotonicity_failure():
    cfg = GeneratorConfig("ic", 4, 4)
    for rule in CONFLICTUAL_RULES:
        found = search_counterexample(Axiom.CONFLICT_MONOTONICITY, rule, cfg, 2000, seed=1)
        assert found is not None
        trial, report = found
        assert not report.holds
        assert report.witness.derived is not None


def test_search_deterministic_and_worker_independent():
    cfg = [GeneratorConfig("ic", n, 4) for n in (3, 4, 5)]
    one = search_counterexample(Axiom.CONFLICT_MONOTONICITY, MAXSWAP, cfg, 500, seed=3, workers=1)
    again = search_counterexample(Axiom.CONFLICT_MONOTONICITY, MAXSWAP, cfg, 500, seed=3, workers=1)
    many = search_counterexample(Axiom.CONFLICT_MONOTONICITY, MAXSWAP, cfg, 500, seed=3, workers=3)
    assert one[0] == again[0] == many[0]
    assert one[1].witness.profile == many[1].witness.profile


def test_search_none_when_axiom_holds():
    cfg = GeneratorConfig("ic", 4, 4)
    assert search_counterexample(Axiom.REVERSE_STABILITY, MAXNASH, cfg, 200) is None


def test_search_rejects_bad_budget():
    with pytest.raises(DomainError):
        search_counterexample(Axiom.UNANIMITY, MAXSUM, GeneratorConfig("ic", 3, 3), 0)
