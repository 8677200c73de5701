"""Evolutionary search for detection parameters that compress well.

A configuration is scored on a cleaned dataset by compressing it, measuring
reconstruction error and retention, and combining the two into a single
minimization target::

    score = (rmse_m + r) ** n * ratio

The offset ``r`` (metres) keeps worthless "keep everything" solutions from
winning on error alone, and the exponent ``n`` trades error against
compression: more aggressive compression needs a larger ``n`` to stay
attractive.  Sensible ``(r, n)`` pairs per vessel category live in
:mod:`vesselsyn.presets`.

The search itself is a plain generational GA: tournament selection,
single-point crossover, per-gene Gaussian mutation, one elite survivor, and
early stopping when the best score stops improving.  All randomness flows
from one seeded generator, so runs are exactly reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .evaluation import Metrics, evaluate_config
from .ingest import VesselTrack
from .synopses import SynopsisConfig

__all__ = [
    "Gene",
    "default_gene_spec",
    "Individual",
    "GaHyperParams",
    "GenerationStats",
    "fitness",
    "genes_to_config",
    "uniform_individual",
    "tournament_select",
    "single_point_crossover",
    "gaussian_mutate",
    "run_ga",
    "FoldResult",
    "CrossValidationResult",
    "cross_validate",
    "GridSearchResult",
    "search_fitness_hyperparams",
]


@dataclass(frozen=True)
class Gene:
    """Bounds and kind of one tunable parameter."""

    name: str
    lower: float
    upper: float
    integer: bool = False

    def __post_init__(self) -> None:
        if not self.lower < self.upper:
            raise ValueError(f"gene {self.name}: lower {self.lower} must be < upper {self.upper}")


def default_gene_spec() -> tuple[Gene, ...]:
    """The eight detection parameters with their search bounds."""
    return (
        Gene("angle_threshold_deg", 2.0, 25.0),
        Gene("buffer_size", 3, 50, integer=True),
        Gene("gap_period_s", 200.0, 5000.0),
        Gene("historical_timespan_s", 300.0, 5000.0),
        Gene("no_speed_threshold_kn", 0.05, 2.0),
        Gene("low_speed_threshold_kn", 0.05, 8.0),
        Gene("speed_ratio", 0.01, 0.8),
        Gene("distance_threshold_m", 2.0, 100.0),
    )


@dataclass
class Individual:
    """One candidate parameter vector, genes in gene-spec order."""

    genes: list[float]
    fitness: float | None = None


@dataclass(frozen=True)
class GaHyperParams:
    """Everything that shapes one tuning run, including the scoring knobs."""

    r: float = 10.0
    n: float = 1.0
    population_size: int = 50
    max_generations: int = 30
    stagnation_limit: int = 10
    tournament_size: int = 3
    crossover_prob: float = 0.4
    mutation_prob: float = 0.8
    per_gene_mutation_prob: float = 0.5
    mutation_sigma_fraction: float = 0.1
    rng_seed: int = 0


@dataclass(frozen=True)
class GenerationStats:
    """One history row: the state of the population after a generation."""

    generation: int
    best_fitness: float
    mean_fitness: float
    best_rmse: float
    best_ratio: float


def fitness(metrics: Metrics, r: float, n: float) -> float:
    """Score a measured compression result; lower is better."""
    return math.pow(metrics.rmse_m + r, n) * metrics.ratio


def genes_to_config(genes: Sequence[float], gene_spec: Sequence[Gene] | None = None) -> SynopsisConfig:
    """Interpret a gene vector as a detection configuration."""
    spec = gene_spec or default_gene_spec()
    if len(genes) != len(spec):
        raise ValueError(f"expected {len(spec)} genes, got {len(genes)}")
    kwargs = {}
    for gene, value in zip(spec, genes):
        kwargs[gene.name] = int(round(value)) if gene.integer else float(value)
    return SynopsisConfig(**kwargs)


def config_to_genes(cfg: SynopsisConfig, gene_spec: Sequence[Gene] | None = None) -> list[float]:
    """Inverse of :func:`genes_to_config`."""
    spec = gene_spec or default_gene_spec()
    return [float(getattr(cfg, gene.name)) for gene in spec]


def uniform_individual(gene_spec: Sequence[Gene], rng: np.random.Generator) -> Individual:
    """Sample one individual uniformly within the gene bounds."""
    genes: list[float] = []
    for gene in gene_spec:
        if gene.integer:
            genes.append(float(rng.integers(int(gene.lower), int(gene.upper) + 1)))
        else:
            genes.append(float(rng.uniform(gene.lower, gene.upper)))
    return Individual(genes)


def tournament_select(
    population: Sequence[Individual], rng: np.random.Generator, size: int = 3
) -> Individual:
    """Pick the fittest of ``size`` distinct uniformly drawn individuals.

    Contestants are drawn without replacement within one tournament (capped
    at the population size); separate tournaments draw independently.

    Raises:
        ValueError: empty population or any unevaluated individual.
    """
    if not population:
        raise ValueError("cannot select from an empty population")
    for ind in population:
        if ind.fitness is None:
            raise ValueError("population contains an unevaluated individual")
    k = min(size, len(population))
    picks = rng.choice(len(population), size=k, replace=False)
    best = min((population[int(i)] for i in picks), key=lambda ind: ind.fitness)
    return best


def single_point_crossover(
    a: Individual, b: Individual, rng: np.random.Generator
) -> tuple[Individual, Individual]:
    """Swap gene tails at one uniformly chosen interior cut point."""
    n_genes = len(a.genes)
    if len(b.genes) != n_genes:
        raise ValueError("parents must have the same gene count")
    if n_genes < 2:
        raise ValueError("crossover needs at least 2 genes")
    cut = int(rng.integers(1, n_genes))
    child1 = Individual(a.genes[:cut] + b.genes[cut:])
    child2 = Individual(b.genes[:cut] + a.genes[cut:])
    return child1, child2


def gaussian_mutate(
    ind: Individual,
    gene_spec: Sequence[Gene],
    rng: np.random.Generator,
    *,
    per_gene_prob: float = 0.5,
    sigma_fraction: float = 0.1,
) -> Individual:
    """Perturb each gene with the given probability by bounded Gaussian noise.

    The noise scale is ``sigma_fraction`` of the gene's range.  Results are
    clamped to the bounds; integer genes are rounded after clamping, so they
    stay both integral and in range.
    """
    genes = list(ind.genes)
    for i, gene in enumerate(gene_spec):
        if rng.random() >= per_gene_prob:
            continue
        sigma = sigma_fraction * (gene.upper - gene.lower)
        value = genes[i] + rng.normal(0.0, sigma)
        value = min(max(value, gene.lower), gene.upper)
        if gene.integer:
            value = float(round(value))
        genes[i] = value
    return Individual(genes)


def _clone(ind: Individual) -> Individual:
    return Individual(list(ind.genes), ind.fitness)


def run_ga(
    clean_tracks: Sequence[VesselTrack],
    hp: GaHyperParams,
    *,
    gene_spec: Sequence[Gene] | None = None,
    observer: Callable[[int, list[Individual]], None] | None = None,
) -> tuple[Individual, list[GenerationStats]]:
    """Evolve detection parameters against a cleaned training dataset.

    Generation 0 is sampled uniformly within the gene bounds.  Each later
    generation selects parents by tournament, pairs them, applies crossover
    with probability ``hp.crossover_prob`` (copies otherwise) and mutation
    with probability ``hp.mutation_prob``, then re-inserts the previous best
    unchanged (elitism of one).  The run stops after ``hp.max_generations``
    generations or once the best score has not improved for
    ``hp.stagnation_limit`` consecutive generations.

    Identical inputs, hyper-parameters and seed reproduce the run exactly;
    fitness evaluation itself is deterministic and memoized per gene vector.

    Args:
        clean_tracks: the training dataset, already noise-filtered.
        hp: hyper-parameters, including the scoring ``r`` and ``n``.
        gene_spec: search space; defaults to :func:`default_gene_spec`.
        observer: optional callback invoked as ``observer(generation,
            population)`` after each generation is evaluated.

    Returns:
        The best individual found and the per-generation history.
    """
    if not clean_tracks:
        raise ValueError("empty training set")
    spec = tuple(gene_spec or default_gene_spec())
    rng = np.random.default_rng(hp.rng_seed)
    cache: dict[tuple[float, ...], tuple[float, Metrics]] = {}

    def evaluate(ind: Individual) -> None:
        key = tuple(ind.genes)
        hit = cache.get(key)
        if hit is None:
            metrics = evaluate_config(clean_tracks, genes_to_config(ind.genes, spec))
            hit = (fitness(metrics, hp.r, hp.n), metrics)
            cache[key] = hit
        ind.fitness = hit[0]

    population = [uniform_individual(spec, rng) for _ in range(hp.population_size)]
    for ind in population:
        evaluate(ind)

    history: list[GenerationStats] = []

    def record(generation: int) -> Individual:
        best = min(population, key=lambda ind: ind.fitness)
        metrics = cache[tuple(best.genes)][1]
        history.append(
            GenerationStats(
                generation=generation,
                best_fitness=best.fitness,
                mean_fitness=sum(ind.fitness for ind in population) / len(population),
                best_rmse=metrics.rmse_m,
                best_ratio=metrics.ratio,
            )
        )
        return best

    best_overall = _clone(record(0))
    if observer is not None:
        observer(0, population)
    stagnant = 0

    for generation in range(1, hp.max_generations + 1):
        parents = [
            tournament_select(population, rng, hp.tournament_size)
            for _ in range(hp.population_size)
        ]
        offspring: list[Individual] = []
        for i in range(0, len(parents) - 1, 2):
            a, b = parents[i], parents[i + 1]
            if rng.random() < hp.crossover_prob:
                c1, c2 = single_point_crossover(a, b, rng)
            else:
                c1, c2 = _clone(a), _clone(b)
            offspring.extend((c1, c2))
        if len(parents) % 2 == 1:
            offspring.append(_clone(parents[-1]))
        for i, child in enumerate(offspring):
            if rng.random() < hp.mutation_prob:
                offspring[i] = gaussian_mutate(
                    child,
                    spec,
                    rng,
                    per_gene_prob=hp.per_gene_mutation_prob,
                    sigma_fraction=hp.mutation_sigma_fraction,
                )
        population = [_clone(best_overall)] + offspring[: hp.population_size - 1]
        for ind in population:
            evaluate(ind)

        best = record(generation)
        if observer is not None:
            observer(generation, population)
        if best.fitness < best_overall.fitness:
            best_overall = _clone(best)
            stagnant = 0
        else:
            stagnant += 1
            if stagnant >= hp.stagnation_limit:
                break

    return best_overall, history


@dataclass(frozen=True)
class FoldResult:
    """Outcome of tuning on all-but-one fold and testing on the held-out one."""

    index: int
    train_mmsis: tuple[int, ...]
    test_mmsis: tuple[int, ...]
    config: SynopsisConfig
    train_fitness: float
    test_metrics: Metrics
    test_score: float
    history: tuple[GenerationStats, ...]


@dataclass(frozen=True)
class CrossValidationResult:
    folds: tuple[FoldResult, ...]
    chosen_index: int

    @property
    def chosen(self) -> FoldResult:
        return self.folds[self.chosen_index]


def cross_validate(
    tracks: Sequence[VesselTrack],
    k: int,
    hp: GaHyperParams,
    *,
    gene_spec: Sequence[Gene] | None = None,
) -> CrossValidationResult:
    """k-fold tuning: train a GA per held-out fold, keep the best tester.

    Folds hold whole tracks (see :func:`vesselsyn.ingest.split_k_folds`).
    Fold ``i`` trains with seed ``hp.rng_seed + i`` so folds are independent
    yet the whole procedure stays reproducible.  The winner is the fold
    configuration with the lowest score on its own held-out data (lowest
    fold index on ties).
    """
    from .ingest import split_k_folds

    folds = split_k_folds(tracks, k)
    results: list[FoldResult] = []
    for i, test_fold in enumerate(folds):
        train = [t for j, fold in enumerate(folds) if j != i for t in fold]
        best, history = run_ga(train, replace(hp, rng_seed=hp.rng_seed + i), gene_spec=gene_spec)
        cfg = genes_to_config(best.genes, gene_spec)
        test_metrics = evaluate_config(test_fold, cfg)
        results.append(
            FoldResult(
                index=i,
                train_mmsis=tuple(t.mmsi for t in train),
                test_mmsis=tuple(t.mmsi for t in test_fold),
                config=cfg,
                train_fitness=best.fitness,
                test_metrics=test_metrics,
                test_score=fitness(test_metrics, hp.r, hp.n),
                history=tuple(history),
            )
        )
    chosen = min(range(k), key=lambda i: (results[i].test_score, i))
    return CrossValidationResult(folds=tuple(results), chosen_index=chosen)


@dataclass(frozen=True)
class GridSearchResult:
    r: float
    n: float
    config: SynopsisConfig
    metrics: Metrics
    satisfied: bool


def search_fitness_hyperparams(
    tracks: Sequence[VesselTrack],
    rmse_threshold_m: float,
    ratio_threshold: float,
    hp: GaHyperParams,
    *,
    r_candidates: Sequence[float] = (1, 2, 5, 10, 13, 17, 20),
    n_candidates: Sequence[float] = (0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6),
    gene_spec: Sequence[Gene] | None = None,
) -> GridSearchResult:
    """Pick ``(r, n)`` by grid search against quality thresholds.

    Runs one GA per candidate pair, in grid order, and returns the first pair
    whose best configuration meets both thresholds (RMSE and ratio at or
    below them).  If no pair qualifies, the pair with the smallest worst-case
    threshold excess is returned with ``satisfied=False``.
    """
    fallback: GridSearchResult | None = None
    fallback_excess = math.inf
    for r in r_candidates:
        for n in n_candidates:
            best, _ = run_ga(tracks, replace(hp, r=float(r), n=float(n)), gene_spec=gene_spec)
            cfg = genes_to_config(best.genes, gene_spec)
            metrics = evaluate_config(tracks, cfg)
            if metrics.rmse_m <= rmse_threshold_m and metrics.ratio <= ratio_threshold:
                return GridSearchResult(float(r), float(n), cfg, metrics, True)
            excess = max(metrics.rmse_m / rmse_threshold_m, metrics.ratio / ratio_threshold)
            if excess < fallback_excess:
                fallback_excess = excess
                fallback = GridSearchResult(float(r), float(n), cfg, metrics, False)
    assert fallback is not None
    return fallback
