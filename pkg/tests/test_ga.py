"""Tests for the evolutionary parameter tuner and its operators."""

import math

import numpy as np
import pytest

from vesselsyn.evaluation import Metrics
from vesselsyn.ga import (
    CrossValidationResult,
    GaHyperParams,
    Gene,
    Individual,
    config_to_genes,
    cross_validate,
    default_gene_spec,
    fitness,
    gaussian_mutate,
    genes_to_config,
    run_ga,
    search_fitness_hyperparams,
    single_point_crossover,
    tournament_select,
    uniform_individual,
)
from vesselsyn.synopses import SynopsisConfig
from vesselsyn.synthetic import (
    make_corner_track,
    make_slow_motion_track,
    make_speed_steps_track,
    make_stop_track,
)

TINY_HP = GaHyperParams(
    population_size=8,
    max_generations=4,
    stagnation_limit=4,
    rng_seed=5,
)


def tiny_dataset():
    return [
        make_corner_track(mmsi=101),
        make_speed_steps_track(mmsi=102),
        make_slow_motion_track(mmsi=103),
        make_stop_track(mmsi=104),
    ]


# ---------------------------------------------------------------------------
# fitness arithmetic


def test_fitness_spot_value():
    # (13 + 17)^0.8 * 0.1, computed independently.
    metrics = Metrics(13.0, 0.1, 1000, 100)
    expected = math.pow(30.0, 0.8) * 0.1
    assert fitness(metrics, r=17.0, n=0.8) == pytest.approx(expected, rel=1e-12)
    assert fitness(metrics, r=17.0, n=0.8) == pytest.approx(1.5204, abs=1e-3)


def test_fitness_degenerate_identities():
    metrics = Metrics(42.0, 0.37, 1000, 370)
    # n = 0 collapses the error term entirely.
    assert fitness(metrics, r=13.0, n=0.0) == 0.37
    # r = 0 scores the raw error.
    assert fitness(metrics, r=0.0, n=1.3) == math.pow(42.0, 1.3) * 0.37


def test_fitness_is_monotone_in_both_metrics():
    base = fitness(Metrics(20.0, 0.2, 100, 20), r=10.0, n=1.0)
    assert fitness(Metrics(25.0, 0.2, 100, 20), r=10.0, n=1.0) > base
    assert fitness(Metrics(20.0, 0.3, 100, 30), r=10.0, n=1.0) > base


# ---------------------------------------------------------------------------
# gene vector mapping


def test_gene_spec_matches_config_fields():
    spec = default_gene_spec()
    assert [g.name for g in spec] == [
        "angle_threshold_deg",
        "buffer_size",
        "gap_period_s",
        "historical_timespan_s",
        "no_speed_threshold_kn",
        "low_speed_threshold_kn",
        "speed_ratio",
        "distance_threshold_m",
    ]
    buffer_gene = spec[1]
    assert buffer_gene.integer
    assert all(g.lower < g.upper for g in spec)


def test_genes_config_roundtrip():
    cfg = SynopsisConfig(angle_threshold_deg=7.25, buffer_size=11)
    assert genes_to_config(config_to_genes(cfg)) == cfg


def test_genes_to_config_rounds_integer_genes():
    genes = config_to_genes(SynopsisConfig())
    genes[1] = 5.4
    assert genes_to_config(genes).buffer_size == 5
    genes[1] = 5.6
    assert genes_to_config(genes).buffer_size == 6


def test_genes_to_config_rejects_wrong_length():
    with pytest.raises(ValueError):
        genes_to_config([1.0, 2.0])


def test_uniform_individual_respects_bounds():
    spec = default_gene_spec()
    rng = np.random.default_rng(7)
    for _ in range(200):
        ind = uniform_individual(spec, rng)
        for gene, value in zip(spec, ind.genes):
            assert gene.lower <= value <= gene.upper
            if gene.integer:
                assert value == int(value)


def test_gene_validates_bounds():
    with pytest.raises(ValueError):
        Gene("x", 5.0, 5.0)


# ---------------------------------------------------------------------------
# selection


def test_tournament_prefers_low_fitness_at_known_rate():
    # With 3 distinct contestants drawn without replacement from 10, the
    # single best individual wins 3/10 of all tournaments in expectation.
    population = [Individual([float(i)], fitness=float(i)) for i in range(1, 11)]
    rng = np.random.default_rng(123)
    wins = sum(
        1 for _ in range(10_000) if tournament_select(population, rng, 3).fitness == 1.0
    )
    assert wins / 10_000 == pytest.approx(0.3, abs=0.02)


def test_tournament_of_whole_population_always_returns_best():
    population = [
        Individual([1.0], fitness=9.0),
        Individual([2.0], fitness=3.0),
        Individual([3.0], fitness=7.0),
    ]
    rng = np.random.default_rng(11)
    for _ in range(100):
        assert tournament_select(population, rng, 3).fitness == 3.0


def test_tournament_rejects_bad_populations():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        tournament_select([], rng)
    with pytest.raises(ValueError):
        tournament_select([Individual([1.0])], rng)


# ---------------------------------------------------------------------------
# crossover


def test_crossover_splices_at_one_interior_point():
    a = Individual([0.0] * 8)
    b = Individual([1.0] * 8)
    rng = np.random.default_rng(17)
    for _ in range(100):
        c1, c2 = single_point_crossover(a, b, rng)
        assert c1.genes[0] == 0.0 and c2.genes[0] == 1.0  # cut is never 0
        assert c1.genes[-1] == 1.0 and c2.genes[-1] == 0.0  # nor past the end
        for g1, g2 in zip(c1.genes, c2.genes):
            assert {g1, g2} == {0.0, 1.0}
        flips = sum(1 for x, y in zip(c1.genes, c1.genes[1:]) if x != y)
        assert flips == 1


def test_crossover_children_are_independent_copies():
    a = Individual([0.0] * 8)
    b = Individual([1.0] * 8)
    c1, _ = single_point_crossover(a, b, np.random.default_rng(3))
    c1.genes[0] = 99.0
    assert a.genes[0] == 0.0


def test_crossover_requires_matching_lengths():
    with pytest.raises(ValueError):
        single_point_crossover(Individual([1.0] * 8), Individual([1.0] * 7), np.random.default_rng(0))


# ---------------------------------------------------------------------------
# mutation


def test_mutation_with_zero_per_gene_probability_is_identity():
    spec = default_gene_spec()
    ind = Individual(config_to_genes(SynopsisConfig()))
    mutated = gaussian_mutate(ind, spec, np.random.default_rng(5), per_gene_prob=0.0)
    assert mutated.genes == ind.genes


def test_mutation_clamps_to_bounds_and_keeps_integers_integral():
    spec = default_gene_spec()
    rng = np.random.default_rng(29)
    at_upper = Individual([g.upper for g in spec])
    for _ in range(500):
        mutated = gaussian_mutate(at_upper, spec, rng, per_gene_prob=1.0, sigma_fraction=0.5)
        for gene, value in zip(spec, mutated.genes):
            assert gene.lower <= value <= gene.upper
            if gene.integer:
                assert value == int(value)


def test_mutation_noise_is_centred():
    # Forced mutations of a mid-range gene should average out to zero
    # within the usual three-standard-error band.
    gene = Gene("angle_threshold_deg", 2.0, 25.0)
    centre = (gene.lower + gene.upper) / 2.0
    rng = np.random.default_rng(77)
    ind = Individual([centre])
    n = 100_000
    total = 0.0
    for _ in range(n):
        total += gaussian_mutate(ind, (gene,), rng, per_gene_prob=1.0).genes[0] - centre
    sigma = 0.1 * (gene.upper - gene.lower)
    assert abs(total / n) < 3 * sigma / math.sqrt(n)


# ---------------------------------------------------------------------------
# whole runs


def test_run_ga_is_deterministic_for_a_seed():
    data = tiny_dataset()
    best1, history1 = run_ga(data, TINY_HP)
    best2, history2 = run_ga(data, TINY_HP)
    assert best1.genes == best2.genes
    assert best1.fitness == best2.fitness
    assert history1 == history2


def test_run_ga_best_is_monotone_and_evaluated():
    data = tiny_dataset()
    best, history = run_ga(data, TINY_HP)
    assert best.fitness is not None
    fits = [row.best_fitness for row in history]
    assert all(b <= a + 1e-12 for a, b in zip(fits, fits[1:]))
    assert history[0].generation == 0
    assert [row.generation for row in history] == list(range(len(history)))
    assert best.fitness == fits[-1]


def test_run_ga_population_stays_within_bounds():
    spec = default_gene_spec()
    seen = []
    run_ga(tiny_dataset(), TINY_HP, observer=lambda gen, pop: seen.append((gen, [list(i.genes) for i in pop])))
    assert seen, "observer was never called"
    for _, population in seen:
        assert len(population) == TINY_HP.population_size
        for genes in population:
            for gene, value in zip(spec, genes):
                assert gene.lower <= value <= gene.upper
                if gene.integer:
                    assert value == int(value)


def test_run_ga_without_variation_only_reshuffles_generation_zero():
    hp = GaHyperParams(
        population_size=10,
        max_generations=5,
        stagnation_limit=5,
        crossover_prob=0.0,
        mutation_prob=0.0,
        rng_seed=13,
    )
    generations = []
    run_ga(tiny_dataset(), hp, observer=lambda gen, pop: generations.append([tuple(i.genes) for i in pop]))
    initial = set(generations[0])
    for later in generations[1:]:
        assert set(later) <= initial


def test_run_ga_stops_on_stagnation():
    # With variation disabled the best can never improve after the first
    # generation, so a patience of one stops the run almost immediately.
    hp = GaHyperParams(
        population_size=6,
        max_generations=50,
        stagnation_limit=1,
        crossover_prob=0.0,
        mutation_prob=0.0,
        rng_seed=3,
    )
    _, history = run_ga(tiny_dataset(), hp)
    assert len(history) <= 3


def test_run_ga_rejects_empty_dataset():
    with pytest.raises(ValueError):
        run_ga([], TINY_HP)


# ---------------------------------------------------------------------------
# cross validation


def test_cross_validate_fold_hygiene_and_determinism():
    data = tiny_dataset()
    hp = GaHyperParams(population_size=6, max_generations=2, stagnation_limit=2, rng_seed=9)
    result = cross_validate(data, 2, hp)
    assert isinstance(result, CrossValidationResult)
    assert len(result.folds) == 2
    all_mmsis = {t.mmsi for t in data}
    for fold in result.folds:
        train, test = set(fold.train_mmsis), set(fold.test_mmsis)
        assert train and test
        assert train.isdisjoint(test)
        assert train | test == all_mmsis
    assert {m for fold in result.folds for m in fold.test_mmsis} == all_mmsis
    scores = [fold.test_score for fold in result.folds]
    assert result.chosen_index == scores.index(min(scores))
    assert result.chosen.config == result.folds[result.chosen_index].config

    again = cross_validate(data, 2, hp)
    assert [f.config for f in again.folds] == [f.config for f in result.folds]
    assert again.chosen_index == result.chosen_index


def test_cross_validate_propagates_split_errors():
    data = tiny_dataset()
    with pytest.raises(ValueError):
        cross_validate(data, len(data) + 1, TINY_HP)


# ---------------------------------------------------------------------------
# scoring-hyperparameter grid search


def test_grid_search_returns_first_satisfying_pair():
    hp = GaHyperParams(population_size=6, max_generations=2, stagnation_limit=2, rng_seed=21)
    result = search_fitness_hyperparams(
        tiny_dataset(),
        rmse_threshold_m=1e9,
        ratio_threshold=1.0,
        hp=hp,
        r_candidates=(5.0, 10.0),
        n_candidates=(0.8, 1.2),
    )
    assert result.satisfied
    assert (result.r, result.n) == (5.0, 0.8)
    assert result.metrics.rmse_m <= 1e9


def test_grid_search_falls_back_to_least_bad_pair():
    hp = GaHyperParams(population_size=6, max_generations=2, stagnation_limit=2, rng_seed=21)
    result = search_fitness_hyperparams(
        tiny_dataset(),
        rmse_threshold_m=1e-12,
        ratio_threshold=1e-12,
        hp=hp,
        r_candidates=(5.0, 10.0),
        n_candidates=(0.8,),
    )
    assert not result.satisfied
    assert result.r in (5.0, 10.0)
    assert result.n == 0.8
