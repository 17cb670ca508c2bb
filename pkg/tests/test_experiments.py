import statistics

import pytest

from conflictual import BORDA, CC, CONFLICTUAL_RULES, ConfigError, GeneratorConfig, select
from conflictual.experiments import (
    ExperimentSpec,
    _trial_profile,
    mallows_sweep,
    mean_by_rule,
    profile_metrics,
    run_experiment,
)
from conflictual import fixtures as fx


@pytest.fixture(scope="module")
def spec():
    gen = GeneratorConfig("euclidean", 1, 2, voter_dist="gaussian", cand_dist="gaussian")
    return ExperimentSpec(rules=CONFLICTUAL_RULES + (BORDA, CC), generator=gen, trials=12, n=25, m=6, seed=5)


def test_rows_ordered_and_complete(spec):
    res = run_experiment(spec, workers=1)
    trials = [r["trial"] for r in res.winners]
    assert trials == sorted(trials)
    expected = 0
    for t in range(spec.trials):
        profile, _ = _trial_profile(spec, t)
        expected += sum(len(select(rule, profile).winners) for rule in spec.rules)
    assert len(res.winners) == expected
    assert len(res.positions) == expected
    assert [r["trial"] for r in res.random_pairs] == list(range(spec.trials))


def test_worker_count_irrelevant(spec):
    assert run_experiment(spec, workers=1).winners == run_experiment(spec, workers=3).winners


def test_summary_recomputable(spec):
    res = run_experiment(spec, workers=1)
    for row in res.summary():
        values = [float(r[row["metric"]]) for r in res.winners if r["rule"] == row["rule"]]
        assert row["count"] == len(values)
        assert row["mean"] == pytest.approx(statistics.fmean(values))
    means = mean_by_rule(res.winners, "beta")
    assert set(means) == {r.name for r in spec.rules}


def test_spec_validation():
    gen = GeneratorConfig("ic", 3, 3)
    with pytest.raises(ConfigError):
        ExperimentSpec(generator=gen, trials=0)
    with pytest.raises(ConfigError):
        ExperimentSpec(rules=(), generator=gen)
    with pytest.raises(ConfigError):
        ExperimentSpec()


def test_profile_metrics_identity():
    assert profile_metrics(fx.identity(4, 5)) == {
        "mean_alpha": 0.0, "max_beta": 1.0, "mean_gamma": 0.0, "mean_phi": 1.0,
    }


def test_sweep_shape_and_endpoints():
    base = GeneratorConfig("mallows", 40, 5)
    per, summary = mallows_sweep(base, [0.0, 0.5], profiles=3, seed=2, workers=1)
    assert len(per) == 6
    assert summary[0]["mean_alpha"] == 0.0 and summary[0]["max_beta"] == 1.0
    assert mallows_sweep(base, [0.0, 0.5], profiles=3, seed=2, workers=2) == (per, summary)
    with pytest.raises(ConfigError):
        mallows_sweep(GeneratorConfig("ic", 3, 3), [0.1])
