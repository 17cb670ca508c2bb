from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conflictual import Profile, all_pairs, assess_all, assess_pair, reverse_profile
from conflictual import fixtures as fx
from conflictual.metrics import (
    alpha,
    beta,
    conflict_score,
    gamma,
    group_mu,
    pairwise_conflict,
    phi,
    swap_score,
    total_abs_distance,
)
from conftest import profiles
import oracles


def fields(a):
    return (a.conf_sum, a.conf_nash, a.swap_score, a.alpha, a.beta, a.gamma, a.phi)


def test_e1_assessments():
    p = fx.e1()
    assert fields(assess_pair(p, p.pair("a", "b"))) == (6, 5, 1, 1, Fraction(3, 5), Fraction(1, 5), Fraction(2, 3))
    assert fields(assess_pair(p, p.pair("x", "y"))) == (6, 9, 3, 1, Fraction(3, 5), 1, 0)


def test_e2_phi():
    p = fx.e2()
    assert phi(p, p.pair("x", "y")) == Fraction(1, 2)
    assert phi(p, p.pair("a", "b")) == Fraction(1, 4)


def test_pairwise_conflict_modes():
    v, w = (0, 2, 1, 3), (1, 0, 3, 2)
    # v(ab) = 2, w(ab) = -1
    assert pairwise_conflict(v, w, (0, 1), "sum") == 3
    assert pairwise_conflict(v, w, (0, 1), "nash") == 2
    assert pairwise_conflict(v, v, (0, 1), "sum") == 0


def test_non_conflicting_pair_degenerate_values():
    p = fx.identity(3, 4)
    a = assess_pair(p, (0, 3))
    assert (a.conf_sum, a.conf_nash, a.swap_score, a.alpha, a.gamma, a.phi) == (0, 0, 0, 0, 0, 1)
    assert a.beta == 1
    assert group_mu(p, (0, 3))[1] is None


def test_identity_profile_phi_is_one():
    p = fx.identity(5, 5)
    assert all(a.phi == 1 and a.alpha == 0 for a in assess_all(p))


def test_weighted_equals_expanded():
    p = fx.e2()
    flat = Profile(tuple(p.expanded()), names=p.names)
    assert [fields(a) for a in assess_all(p)] == [fields(a) for a in assess_all(flat)]


@given(profiles(max_m=5, max_ballots=4, max_weight=2))
def test_scores_match_brute_force(p):
    voters = p.expanded()
    for a, b in all_pairs(p.m):
        assert conflict_score(p, (a, b), "sum") == oracles.conf_sum(voters, a, b)
        assert conflict_score(p, (a, b), "nash") == oracles.conf_nash(voters, a, b)
        assert alpha(p, (a, b)) == oracles.alpha(voters, a, b)
        assert beta(p, (a, b)) == oracles.beta(voters, a, b, p.m)
        assert gamma(p, (a, b)) == oracles.gamma(voters, a, b)
        assert phi(p, (a, b)) == oracles.phi(voters, a, b)


@given(profiles(max_m=4, max_ballots=3, max_weight=2))
def test_swap_score_matches_search(p):
    voters = p.expanded()
    for a, b in all_pairs(p.m):
        assert swap_score(p, (a, b)) == oracles.swap_score(voters, a, b)


@given(profiles())
def test_exact_identities(p):
    n, m = p.n, p.m
    for a in assess_all(p):
        total = a.beta * n * (m - 1)
        assert a.swap_score == total * (1 - a.phi) / 2
        assert a.conf_nash == total**2 * (1 - a.phi**2) / 4


@given(profiles())
def test_global_discrepancy_budget(p):
    assert total_abs_distance(p) == Fraction(p.n * (p.m - 1) * p.m * (p.m + 1), 6)


@given(profiles())
def test_max_beta_lower_bound(p):
    assert max(a.beta for a in assess_all(p)) > Fraction(1, 3)


@given(profiles())
def test_full_discrepancy_implies_balance(p):
    for a in assess_all(p):
        if a.beta == 1 and a.alpha > 0:
            assert a.gamma == 1


@given(profiles())
def test_ranges(p):
    for a in assess_all(p):
        for v in (a.alpha, a.beta, a.gamma, a.phi):
            assert 0 <= v <= 1
        assert (a.phi == 1) == (a.alpha == 0)


@given(profiles())
def test_reversal_invariance(p):
    assert [fields(a) for a in assess_all(p)] == [fields(a) for a in assess_all(reverse_profile(p))]


@given(profiles())
def test_argument_order_irrelevant(p):
    for a, b in all_pairs(p.m):
        for mode in ("sum", "nash"):
            assert conflict_score(p, (a, b), mode) == conflict_score(p, (b, a), mode)
        assert swap_score(p, (a, b)) == swap_score(p, (b, a))
        assert phi(p, (a, b)) == phi(p, (b, a))


@st.composite
def constant_distance_profiles(draw):
    # every ballot puts a and b exactly d apart
    m = draw(st.integers(3, 6))
    d = draw(st.integers(1, m - 1))
    k = draw(st.integers(1, 6))
    ballots = []
    for _ in range(k):
        rest = list(draw(st.permutations(range(2, m))))
        start = draw(st.integers(0, m - 1 - d))
        first, second = draw(st.sampled_from([(0, 1), (1, 0)]))
        ballot = rest[:start] + [first] + rest[start:start + d - 1] + [second] + rest[start + d - 1:]
        ballots.append(tuple(ballot))
    return Profile(tuple(ballots)), d


@given(constant_distance_profiles())
def test_constant_distance_identities(case):
    p, d = case
    a = assess_pair(p, (0, 1))
    n = p.n
    assert a.beta == Fraction(d, p.m - 1)
    if a.alpha > 0:
        assert a.gamma == 1
    assert a.phi == 1 - a.alpha
    n_small = a.alpha * n / 2
    n_large = n - n_small
    assert a.conf_sum == 2 * n_small * n_large * d
    assert a.conf_nash == n_small * n_large * d * d
    assert a.swap_score == n_small * d
