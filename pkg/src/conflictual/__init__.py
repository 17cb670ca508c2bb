"""Selecting the most conflicting pair of candidates in ranked elections."""

from .axioms import Axiom, AxiomReport, Witness, check_axiom, matching_dominates, search_counterexample
from .core import (
    ConfigError,
    ConflictualError,
    DomainError,
    Pair,
    Profile,
    all_pairs,
    antagonize,
    conflicting_pairs,
    is_conflicting,
    partition_by_preference,
    position,
    rank_distance,
    reverse_profile,
)
from .generators import GeneratorConfig, generate, generate_euclidean, kendall_tau
from .metrics import PairAssessment, alpha, assess_all, assess_pair, beta, conflict_score, gamma, phi, swap_score
from .preflib import DataError, IngestPolicy, ParseError, materialize, parse, read_election, read_profile
from .rules import ALL_RULES, BORDA, CC, CONFLICTUAL_RULES, MAXNASH, MAXPOLAR2, MAXSUM, MAXSWAP, Rule, RuleOutcome, select

__all__ = [
    "ALL_RULES", "BORDA", "CC", "CONFLICTUAL_RULES", "MAXNASH", "MAXPOLAR2", "MAXSUM", "MAXSWAP",
    "Axiom", "AxiomReport", "ConfigError", "ConflictualError", "DataError", "DomainError",
    "GeneratorConfig", "IngestPolicy", "Pair", "PairAssessment", "ParseError", "Profile", "Rule",
    "RuleOutcome", "Witness", "all_pairs", "alpha", "antagonize", "assess_all", "assess_pair", "beta",
    "check_axiom", "conflict_score", "conflicting_pairs", "gamma", "generate", "generate_euclidean",
    "is_conflicting", "kendall_tau", "matching_dominates", "materialize", "parse", "partition_by_preference",
    "phi", "position", "rank_distance", "read_election", "read_profile", "reverse_profile",
    "search_counterexample", "select", "swap_score",
]
