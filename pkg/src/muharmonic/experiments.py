"""Scenario catalog, config-driven experiment runner, and acceptance checks.

Every experiment is deterministic given its config and seed; Monte Carlo
seeds are spawned per chunk so aggregation order never matters.  The suite
scenario runs each acceptance criterion at its pinned tolerance and then
asserts that every public operation of the package was exercised at least
once along the way.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
import os
import time
import zlib
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import CapacityError, ConfigError
from .freegroup import FreeWord, free_ball, free_inverse, free_mul, neighbors, word
from .groups import (
    FiniteGroup,
    build_group,
    generated_subgroup,
    group_from_json,
    symmetric_group,
)
from .harmonic import (
    cesaro_projection,
    diamond_product,
    harmonic_space,
    harmonic_triviality_verdict,
    l1_harmonic_triviality,
    trivial_solution_space,
)
from .ideals import (
    approximate_identity,
    coboundary_ideal,
    diagonal_measure,
    l1_distance,
    left_ideal_residual,
    operator_convolve,
    quotient_norm_trace,
)
from .measures import (
    FiniteMeasure,
    cesaro_average,
    convolve,
    convolution_power,
    from_pairs,
    haar_on_subgroup,
    point_mass,
    reflect,
    simple_random_walk_z,
    tv_distance,
    tv_norm,
    uniform_on,
    weak_star_decay,
)
from .operators import (
    GSpaceAction,
    conjugation_operator,
    left_regular,
    predual_action,
    right_markov_matrix,
)
from .subspaces import mutual_residual
from .walks import (
    diamond_vs_pointwise_mc,
    empirical_cylinder_measure,
    harmonic_measure_cylinder,
    martingale_convergence_check,
    poisson_extension,
    sample_path,
    stationary_measure,
    subharmonic_check,
    subharmonic_check_free,
)

MASTER_SEED = 20260808
SCENARIOS = ("harmonic", "cesaro", "derriennic", "ncconv", "freewalk",
             "stationary", "decay", "suite")

#: every public operation the suite must exercise at least once
OPERATION_NAMES = frozenset({
    "build_group", "generated_subgroup", "left_cosets",
    "free_mul", "free_inverse", "free_ball",
    "convolve", "reflect", "convolution_power", "cesaro_average",
    "tv_norm", "tv_distance", "haar_on_subgroup", "weak_star_decay",
    "right_markov_matrix", "predual_action", "conjugation_operator",
    "gspace_markov_matrix",
    "harmonic_space", "trivial_solution_space", "commutant",
    "cesaro_projection", "diamond_product", "harmonic_triviality_verdict",
    "l1_harmonic_triviality",
    "coboundary_ideal", "trace_class_ideal", "l1_distance",
    "quotient_norm_trace", "approximate_identity", "diagonal_measure",
    "operator_convolve", "left_ideal_residual",
    "sample_path", "harmonic_measure_cylinder", "poisson_extension",
    "martingale_convergence_check", "diamond_vs_pointwise_mc",
    "stationary_measure", "subharmonic_check",
    "run", "catalog",
})


# ------------------------------------------------------------------- catalog

@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    group: FiniteGroup
    measure: FiniteMeasure

    def __repr__(self):
        return f"CatalogEntry({self.name})"


def _label_index(g: FiniteGroup, label: str) -> int:
    return g.labels.index(label)


@lru_cache(maxsize=1)
def _catalog_tuple() -> tuple[CatalogEntry, ...]:
    z2 = build_group("cyclic", n=2)
    z4 = build_group("cyclic", n=4)
    z5 = build_group("cyclic", n=5)
    z6 = build_group("cyclic", n=6)
    v4 = build_group("product", factors=[build_group("cyclic", n=2), build_group("cyclic", n=2)])
    s3 = build_group("symmetric", n=3)
    s4 = build_group("symmetric", n=4)
    entries = (
        CatalogEntry("Z2_delta1", z2, point_mass(z2, 1)),
        CatalogEntry("Z4_delta1", z4, point_mass(z4, 1)),
        CatalogEntry("Z6_delta2", z6, point_mass(z6, 2)),
        # (1,0) has index 2 and (0,1) index 1 in the product indexing
        CatalogEntry("V4_two_gens", v4, from_pairs(v4, [(2, 0.5), (1, 0.5)])),
        CatalogEntry(
            "S3_transpositions",
            s3,
            uniform_on(s3, [_label_index(s3, "(1 2)"), _label_index(s3, "(1 3)")]),
        ),
        CatalogEntry(
            "S4_two_gens",
            s4,
            uniform_on(s4, [_label_index(s4, "(1 2)"), _label_index(s4, "(1 2 3 4)")]),
        ),
        CatalogEntry("Z5_07_03", z5, from_pairs(z5, [(1, 0.7), (2, 0.3)])),
    )
    return entries


def catalog() -> list[CatalogEntry]:
    """The built-in (group, measure) pairs every group-side check runs over."""
    return list(_catalog_tuple())


def catalog_entry(name: str) -> CatalogEntry:
    for e in _catalog_tuple():
        if e.name == name:
            return e
    raise ConfigError(f"catalog: unknown entry {name!r}")


# ------------------------------------------------------------- records

@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    bound: float
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "value": self.value, "bound": self.bound,
                "passed": self.passed}


@dataclass
class RunRecord:
    scenario: str
    config: dict
    checks: list[CheckResult] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    started: float = 0.0
    finished: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def payload(self) -> dict:
        return {
            "scenario": self.scenario,
            "config": self.config,
            "checks": [c.to_json() for c in self.checks],
            "extra": self.extra,
            "verdict": "pass" if self.passed else "fail",
        }

    def canonical_json(self) -> str:
        """Deterministic serialization: timestamps excluded."""
        return json.dumps(self.payload(), sort_keys=True)

    def to_json(self) -> str:
        body = self.payload()
        body["started"] = self.started
        body["finished"] = self.finished
        return json.dumps(body, sort_keys=True)


def _check(name: str, value: float, bound: float, mode: str = "le") -> CheckResult:
    value = float(value)
    bound = float(bound)
    if mode == "le":
        return CheckResult(name, value, bound, bool(value <= bound))
    if mode == "ge":
        return CheckResult(name, value, bound, bool(value >= bound))
    if mode == "eq":
        return CheckResult(name, value, bound, bool(value == bound))
    raise ValueError(mode)


# ------------------------------------------------------------- config

@dataclass
class ExperimentConfig:
    scenario: str
    group: dict | None = None
    measure: dict | None = None
    entry: str | None = None
    word_spec: str = "a"
    n: int | None = None
    paths: int | None = None
    window: int | None = None
    trials: int | None = None
    seed: int = MASTER_SEED
    out: str | None = None
    parallel: bool = False

    @staticmethod
    def from_dict(raw: dict) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config: expected a JSON object")
        scenario = raw.get("scenario")
        if scenario not in SCENARIOS:
            raise ConfigError(f"scenario: must be one of {SCENARIOS}, got {scenario!r}")
        cfg = ExperimentConfig(scenario=scenario)
        for key in ("group", "measure"):
            val = raw.get(key)
            if val is not None and not isinstance(val, dict):
                raise ConfigError(f"{key}: expected an object")
            setattr(cfg, key, val)
        if raw.get("entry") is not None:
            cfg.entry = str(raw["entry"])
        if raw.get("word") is not None:
            cfg.word_spec = str(raw["word"])
        for key in ("n", "paths", "window", "trials", "seed"):
            val = raw.get(key)
            if val is not None:
                if not isinstance(val, int) or isinstance(val, bool) or val < 0:
                    raise ConfigError(f"{key}: expected a nonnegative integer")
                setattr(cfg, key if key != "n" else "n", val)
        if raw.get("out") is not None:
            cfg.out = str(raw["out"])
        if raw.get("parallel") is not None:
            cfg.parallel = bool(raw["parallel"])
        return cfg

    def echo(self) -> dict:
        return {
            "scenario": self.scenario,
            "group": self.group,
            "measure": self.measure,
            "entry": self.entry,
            "word": self.word_spec,
            "n": self.n,
            "paths": self.paths,
            "window": self.window,
            "trials": self.trials,
            "seed": self.seed,
            "parallel": self.parallel,
        }

    def resolve_pairs(self) -> list[CatalogEntry]:
        """Catalog entries to run over: explicit pair > named entry > all."""
        if self.group is not None:
            try:
                g = group_from_json(self.group)
            except CapacityError:
                raise
            except Exception as exc:
                raise ConfigError(f"group: {exc}") from exc
            if self.measure is None:
                raise ConfigError("measure: required when group is given")
            mu = _measure_from_spec(g, self.measure)
            return [CatalogEntry("custom", g, mu)]
        if self.entry is not None:
            return [catalog_entry(self.entry)]
        return catalog()


def _measure_from_spec(g: FiniteGroup, spec: dict) -> FiniteMeasure:
    if "point" in spec:
        return point_mass(g, int(spec["point"]))
    if "uniform_on" in spec:
        return uniform_on(g, [int(x) for x in spec["uniform_on"]])
    if "entries" in spec:
        pairs = []
        for item in spec["entries"]:
            if len(item) == 2:
                pairs.append((int(item[0]), float(item[1])))
            else:
                pairs.append((int(item[0]), complex(float(item[1]), float(item[2]))))
        return from_pairs(g, pairs)
    raise ConfigError("measure: expected one of point / uniform_on / entries")


def parse_word(k: int, spec: str) -> FreeWord:
    """Parse words like "a", "ab", "a'b" into reduced free words."""
    letters = []
    i = 0
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    while i < len(spec):
        ch = spec[i]
        if ch not in alphabet[:k]:
            raise ConfigError(f"word: unexpected character {ch!r}")
        val = alphabet.index(ch) + 1
        i += 1
        if i < len(spec) and spec[i] == "'":
            val = -val
            i += 1
        letters.append(val)
    return word(k, letters)


# ---------------------------------------------------------------- criteria
# Each criterion function returns its CheckResults and marks the operations
# it exercised in the coverage set.

def _crit_finite_triviality(cov: set) -> list[CheckResult]:
    checks = []
    for e in catalog():
        verdict = harmonic_triviality_verdict(e.group, e.measure)
        cov.update({"harmonic_triviality_verdict", "right_markov_matrix",
                    "harmonic_space", "trivial_solution_space",
                    "generated_subgroup", "left_cosets", "catalog",
                    "build_group"})
        checks.append(_check(f"{e.name}: dim harmonic == cosets",
                             verdict.harmonic_rank, verdict.coset_count, "eq"))
        checks.append(_check(f"{e.name}: subspace residual",
                             verdict.subspace_residual, 1e-9))
        checks.append(_check(f"{e.name}: verdict consistent",
                             1.0 if verdict.consistent else 0.0, 1.0, "ge"))
        # exercise the diamond product on an explicit harmonic pair
        space = harmonic_space(right_markov_matrix(e.group, e.measure))
        h = space.basis[0]
        dia = diamond_product(h, h, e.group, e.measure)
        cov.add("diamond_product")
        checks.append(_check(f"{e.name}: diamond == pointwise",
                             float(np.abs(dia - h * h).max()), 1e-12))
    return checks


def _crit_cesaro_limit(cov: set) -> list[CheckResult]:
    checks = []
    for e in catalog():
        h_mu = generated_subgroup(e.group, e.measure.support())
        omega = haar_on_subgroup(e.group, h_mu)
        cov.update({"haar_on_subgroup", "cesaro_average", "tv_distance",
                    "cesaro_projection", "tv_norm"})
        checks.append(_check(f"{e.name}: tv(A_1000, haar)",
                             tv_distance(cesaro_average(e.measure, 1000), omega), 1e-2))
        report = cesaro_projection(right_markov_matrix(e.group, e.measure),
                                   n_max=10_000, tol=1e-10)
        target = right_markov_matrix(e.group, omega).entries
        checks.append(_check(f"{e.name}: ||K - pi(haar)||_F",
                             float(np.linalg.norm(report.K.entries - target)), 1e-9))
        checks.append(_check(f"{e.name}: tv_norm(haar) == 1",
                             abs(tv_norm(omega) - 1.0), 1e-12))
    return checks


def _crit_projection(cov: set) -> list[CheckResult]:
    checks = []
    for e in catalog():
        rho_l = left_regular(e.group)
        commuting = {f"L{i}": rho_l[i] for i in range(e.group.order)}
        report = cesaro_projection(right_markov_matrix(e.group, e.measure),
                                   n_max=2000, tol=1e-10, commute_with=commuting)
        cov.add("cesaro_projection")
        k = report.K.entries
        checks.append(_check(f"{e.name}: ||K^2-K||", report.idempotency_residual, 1e-9))
        checks.append(_check(f"{e.name}: | ||K||_inf - 1 |",
                             abs(report.norm_inf - 1.0), 1e-12))
        checks.append(_check(f"{e.name}: max commutation residual",
                             max(report.commutation_residuals.values()), 1e-12))
        checks.append(_check(f"{e.name}: entrywise >= -1e-12",
                             float(-k.real.min()), 1e-12))
        space = harmonic_space(right_markov_matrix(e.group, e.measure))
        checks.append(_check(f"{e.name}: rank K == dim harmonic",
                             report.range_rank, space.rank, "eq"))
        worst = max(space.residual(col) for col in k.T)
        checks.append(_check(f"{e.name}: range(K) in harmonic space", worst, 1e-9))
    return checks


def _crit_operator_harmonic(cov: set) -> list[CheckResult]:
    checks = []
    for e in catalog():
        pi_mu = conjugation_operator(e.group, e.measure)
        fixed = harmonic_space(pi_mu)
        h_mu = generated_subgroup(e.group, e.measure.support())
        comm = trivial_solution_space(e.group, h_mu, rep="operators")
        cov.update({"conjugation_operator", "commutant", "trivial_solution_space"})
        checks.append(_check(f"{e.name}: fixed rank == commutant rank",
                             fixed.rank, comm.rank, "eq"))
        checks.append(_check(f"{e.name}: operator-space residual",
                             mutual_residual(fixed, comm), 1e-9))
        if e.name == "S3_transpositions":
            checks.append(_check("S3: commutant rank == 6", comm.rank, 6, "eq"))
    return checks


def _crit_nc_convolution(cov: set) -> list[CheckResult]:
    checks = []
    # frozen worked example on Z/2
    z2 = catalog_entry("Z2_delta1")
    s = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=np.complex128)
    t = np.array([[5.0, 6.0], [7.0, 8.0]], dtype=np.complex128)
    st = operator_convolve(s, t, z2.group)
    expected = np.array([[37.0, 34.0], [31.0, 28.0]])
    checks.append(_check("Z2 worked example exact",
                         float(np.abs(st - expected).max()), 0.0))
    cov.update({"operator_convolve", "diagonal_measure", "reflect",
                "trace_class_ideal", "left_ideal_residual", "convolve"})
    for idx, e in enumerate(catalog()):
        g = e.group
        n = g.order
        rng = np.random.default_rng(MASTER_SEED + 1000 + idx)
        worst_tr = worst_kappa = worst_assoc = 0.0
        for _ in range(100):
            a = rng.random((n, n)) + 1j * rng.random((n, n))
            b = rng.random((n, n)) + 1j * rng.random((n, n))
            c = rng.random((n, n)) + 1j * rng.random((n, n))
            ab = operator_convolve(a, b, g)
            worst_tr = max(worst_tr, abs(np.trace(ab) - np.trace(a) * np.trace(b)))
            lhs = diagonal_measure(ab, g)
            rhs = convolve(diagonal_measure(a, g), diagonal_measure(b, g))
            worst_kappa = max(worst_kappa, float(np.abs(lhs.weights - rhs.weights).max()))
            worst_assoc = max(worst_assoc, float(np.abs(
                operator_convolve(ab, c, g) - operator_convolve(a, operator_convolve(b, c, g), g)
            ).max()))
        checks.append(_check(f"{e.name}: |tr(S*T) - trS trT|", worst_tr, 1e-10))
        checks.append(_check(f"{e.name}: kappa homomorphism", worst_kappa, 1e-10))
        checks.append(_check(f"{e.name}: associativity", worst_assoc, 1e-10))
        report = left_ideal_residual(g, e.measure, trials=100, seed=MASTER_SEED + 2000 + idx)
        checks.append(_check(f"{e.name}: left-ideal residual", report.max_residual, 1e-9))
    return checks


def _crit_quotient_norms(cov: set) -> list[CheckResult]:
    checks = []
    z2 = catalog_entry("Z2_delta1")
    ideal2 = coboundary_ideal(z2.group, z2.measure)
    trace_a = quotient_norm_trace(np.array([1.0, 0.0]), ideal2.predual_op, 64, ideal=ideal2)
    checks.append(_check("Z2 dist((1,0)) == 1", abs(trace_a.lp_distance - 1.0), 1e-12))
    checks.append(_check("Z2 a_n == 1 throughout",
                         max(abs(a - 1.0) for a in trace_a.norms), 1e-12))
    trace_b = quotient_norm_trace(np.array([1.0, -1.0]), ideal2.predual_op, 64, ideal=ideal2)
    checks.append(_check("Z2 dist((1,-1)) == 0", abs(trace_b.lp_distance), 1e-12))
    checks.append(_check("Z2 a_2 == 0", abs(trace_b.norms[1]), 1e-12))
    cov.update({"coboundary_ideal", "quotient_norm_trace", "l1_distance"})
    n_avg = 4096
    for idx, e in enumerate(catalog()):
        ideal = coboundary_ideal(e.group, e.measure)
        p = ideal.predual_op
        d = e.group.order
        rng = np.random.default_rng(MASTER_SEED + 3000 + idx)
        xs = rng.standard_normal((d, 20))
        xs /= np.abs(xs).sum(axis=0, keepdims=True)  # signed, unit l1 mass
        # batched averaged-norm computation, one column per test vector
        y = xs.astype(np.complex128)
        acc = np.zeros_like(y)
        for _ in range(n_avg):
            y = p @ y
            acc += y
        a_final = np.abs(acc / n_avg).sum(axis=0)
        worst = 0.0
        for j in range(xs.shape[1]):
            dist = l1_distance(xs[:, j], ideal)
            worst = max(worst, abs(a_final[j] - dist))
        checks.append(_check(f"{e.name}: |a_4096 - lp distance|", worst, 5e-3))
    return checks


def _crit_approximate_identity(cov: set) -> list[CheckResult]:
    checks = []
    z2 = catalog_entry("Z2_delta1")
    _, exact = approximate_identity(z2.group, z2.measure, 2)
    checks.append(_check("Z2 exact at n=2", exact.max_residual, 1e-15))
    cov.add("approximate_identity")
    for e in catalog():
        _, report = approximate_identity(e.group, e.measure, 256)
        checks.append(_check(f"{e.name}: residual at n=256", report.max_residual, 1e-2))
    return checks


def _crit_harmonic_measure(cov: set) -> list[CheckResult]:
    cov.update({"harmonic_measure_cylinder", "free_mul", "free_ball"})
    w_a = parse_word(2, "a")
    w_ab = parse_word(2, "ab")
    est_a = empirical_cylinder_measure(2, w_a, 100, 100_000, MASTER_SEED + 41)
    est_ab = empirical_cylinder_measure(2, w_ab, 100, 100_000, MASTER_SEED + 42)
    return [
        _check("|nu_hat([a]) - 1/4|",
               abs(est_a.estimate - harmonic_measure_cylinder(2, w_a)), 0.005),
        _check("|nu_hat([ab]) - 1/12|",
               abs(est_ab.estimate - harmonic_measure_cylinder(2, w_ab)), 0.004),
        _check("inconclusive([a]) count", est_a.inconclusive_count, 100, "le"),
        _check("length-1 cylinders sum to 1",
               abs(sum(harmonic_measure_cylinder(2, w) for w in
                       (parse_word(2, s) for s in ("a", "a'", "b", "b'"))) - 1.0), 1e-15),
    ]


def _crit_martingale(cov: set) -> list[CheckResult]:
    cov.add("martingale_convergence_check")
    report = martingale_convergence_check(2, parse_word(2, "a"), 100, 10_000,
                                          MASTER_SEED + 43)
    return [
        _check("conclusive fraction", report.conclusive_fraction, 0.999, "ge"),
        _check("agreement fraction", report.agreement_fraction, 0.99, "ge"),
    ]


def _crit_diamond_separation(cov: set) -> list[CheckResult]:
    cov.add("diamond_vs_pointwise_mc")
    report = diamond_vs_pointwise_mc(2, parse_word(2, "a"), 60, 100_000,
                                     MASTER_SEED + 44)
    return [
        _check("|E h(X_60)^2 - 1/4|", report.distance_to_boundary, 0.01),
        _check("separation from h(e)^2", report.distance_to_pointwise, 0.15, "ge"),
    ]


def _crit_poisson_harmonicity(cov: set) -> list[CheckResult]:
    cov.update({"poisson_extension", "free_ball", "free_mul"})
    ball = free_ball(2, 8)
    cylinders = [parse_word(2, s) for s in ("a", "a'", "b", "b'")]
    w_ab = parse_word(2, "ab")
    worst_mean = 0.0
    worst_unity = 0.0
    for g in ball:
        nbrs = neighbors(g)
        for w in (cylinders[0], w_ab):
            h_g = poisson_extension(2, w, g)
            avg = sum(poisson_extension(2, w, nb) for nb in nbrs) / 4.0
            worst_mean = max(worst_mean, abs(avg - h_g))
        total = sum(poisson_extension(2, w, g) for w in cylinders)
        worst_unity = max(worst_unity, abs(total - 1.0))
    return [
        _check(f"mean-value residual on ball(8) [{len(ball)} vertices]", worst_mean, 1e-12),
        _check("partition-of-unity residual on ball(8)", worst_unity, 1e-12),
    ]


def _random_coset_action(seed: int) -> tuple[GSpaceAction, FiniteMeasure]:
    """A transitive coset action with a strictly positive, lazy walk law."""
    from .operators import coset_action

    rng = np.random.default_rng(seed)
    entry = catalog()[int(rng.integers(0, len(catalog())))]
    g = entry.group
    gens = rng.choice(g.order, size=max(1, g.order // 6), replace=False)
    h = generated_subgroup(g, [int(x) for x in gens])
    action = coset_action(g, h)
    weights = rng.random(g.order) + 0.05
    weights[g.identity] += 0.5  # laziness keeps the chain aperiodic
    weights /= weights.sum()
    return action, FiniteMeasure(g, weights.astype(np.complex128))


def _natural_symmetric_action(n: int) -> tuple:
    g = symmetric_group(n)
    perms = list(itertools.permutations(range(n)))
    table = np.array([list(p) for p in perms], dtype=np.int64)
    return g, GSpaceAction(g, n, table)


def _crit_stationary(cov: set) -> list[CheckResult]:
    cov.update({"stationary_measure", "gspace_markov_matrix"})
    checks = []
    s3, action = _natural_symmetric_action(3)
    mu = uniform_on(s3, [_label_index(s3, "(1 2)"), _label_index(s3, "(1 3)")])
    report = stationary_measure(action, mu)
    uniform = np.full(3, 1.0 / 3.0)
    checks.append(_check("S3 power route uniform",
                         float(np.abs(report.measure.weights.real - uniform).max()), 1e-12))
    checks.append(_check("S3 eigen route uniform",
                         float(np.abs(report.eigen_measure.weights.real - uniform).max()), 1e-12))
    worst = 0.0
    for i in range(20):
        action_i, mu_i = _random_coset_action(MASTER_SEED + 500 + i)
        rep = stationary_measure(action_i, mu_i, tol=1e-13)
        if rep.fixed_dim != 1 or rep.agreement is None:
            worst = max(worst, 1.0)
        else:
            worst = max(worst, rep.agreement)
    checks.append(_check("random actions: route agreement", worst, 1e-9))
    return checks


def _crit_lattice_decay(cov: set) -> list[CheckResult]:
    cov.update({"weak_star_decay", "convolution_power"})
    mu = simple_random_walk_z()
    report = weak_star_decay(mu, [(0, 1.0)], 200)
    vals = report.real_values()
    worst = 0.0
    for m in range(1, 101):
        exact = float(Fraction(math.comb(2 * m, m), 4**m))
        worst = max(worst, abs(vals[2 * m - 1] - exact))
    power100 = convolution_power(mu, 100)
    at_zero = float(power100.weights[0 - power100.carrier.lo].real)
    increasing_violation = 0.0
    for m in range(1, 100):
        increasing_violation = max(increasing_violation, vals[2 * m + 1] - vals[2 * m - 1])
    return [
        _check("binomial match over 2m <= 200", worst, 1e-12),
        _check("P(S_100 = 0)", abs(at_zero - 0.07958923738717877), 1e-7),
        _check("even-n sequence decreasing", increasing_violation, 0.0),
    ]


def _crit_l1_triviality(cov: set) -> list[CheckResult]:
    cov.add("l1_harmonic_triviality")
    mu = simple_random_walk_z()
    checks = []
    for window in (5, 50):
        report = l1_harmonic_triviality(mu, window)
        checks.append(_check(f"kernel rank at L={window}", report.kernel_rank, 0, "eq"))
    return checks


def _crit_determinism(cov: set) -> list[CheckResult]:
    cov.update({"run", "sample_path"})
    cfg = ExperimentConfig(scenario="freewalk", paths=2000, n=60, seed=MASTER_SEED + 7)
    first = run(cfg).canonical_json()
    second = run(cfg).canonical_json()
    cfg2 = ExperimentConfig(scenario="harmonic", entry="Z6_delta2")
    third = run(cfg2).canonical_json()
    fourth = run(cfg2).canonical_json()
    path_a = sample_path(catalog_entry("Z4_delta1").group,
                         catalog_entry("Z4_delta1").measure, 0, 64, MASTER_SEED)
    path_b = sample_path(catalog_entry("Z4_delta1").group,
                         catalog_entry("Z4_delta1").measure, 0, 64, MASTER_SEED)
    return [
        _check("freewalk rerun byte-identical", 0.0 if first == second else 1.0, 0.0),
        _check("harmonic rerun byte-identical", 0.0 if third == fourth else 1.0, 0.0),
        _check("sample_path rerun identical",
               0.0 if path_a.positions == path_b.positions else 1.0, 0.0),
    ]


ACCEPTANCE = (
    (1, "finite_triviality", _crit_finite_triviality),
    (2, "cesaro_limit", _crit_cesaro_limit),
    (3, "projection", _crit_projection),
    (4, "operator_harmonic_space", _crit_operator_harmonic),
    (5, "nc_convolution", _crit_nc_convolution),
    (6, "quotient_norms", _crit_quotient_norms),
    (7, "approximate_identity", _crit_approximate_identity),
    (8, "harmonic_measure", _crit_harmonic_measure),
    (9, "martingale_convergence", _crit_martingale),
    (10, "diamond_separation", _crit_diamond_separation),
    (11, "poisson_harmonicity", _crit_poisson_harmonicity),
    (12, "stationary_measures", _crit_stationary),
    (13, "lattice_decay", _crit_lattice_decay),
    (14, "l1_triviality", _crit_l1_triviality),
    (15, "determinism", _crit_determinism),
)


def run_criterion(number: int, cov: set | None = None) -> list[CheckResult]:
    for num, _, fn in ACCEPTANCE:
        if num == number:
            return fn(cov if cov is not None else set())
    raise ValueError(f"no acceptance criterion {number}")


def _coverage_extras(cov: set) -> list[CheckResult]:
    """Exercise the operations no numbered criterion happens to touch."""
    checks = []
    e6 = catalog_entry("Z6_delta2")
    g6, mu6 = e6.group, e6.measure

    w = word(3, (1, 2, -1))
    identity_residual = len(free_mul(w, free_inverse(w)))
    cov.update({"free_inverse", "free_mul"})
    checks.append(_check("free word w * w^-1 == e", identity_residual, 0, "eq"))

    x = np.array([1.0, 2.0, 0.0, 0.0, 1.0, -1.0], dtype=np.complex128)
    h = np.arange(6, dtype=np.complex128)
    m = right_markov_matrix(g6, mu6).entries
    pairing_gap = abs(np.dot(predual_action(x, mu6), h) - np.dot(x, m @ h))
    cov.add("predual_action")
    checks.append(_check("predual pairing identity", float(pairing_gap), 1e-12))

    space = harmonic_space(right_markov_matrix(g6, mu6))
    habs = np.abs(space.basis[0] + space.basis[min(1, space.rank - 1)])
    sub = subharmonic_check(habs.real, g6, mu6)
    cov.add("subharmonic_check")
    checks.append(_check("modulus of harmonic is subharmonic", sub.max_violation, 1e-12))

    w1, w2 = parse_word(2, "a"), parse_word(2, "b'")
    h_max = lambda g: max(poisson_extension(2, w1, g), poisson_extension(2, w2, g))
    sub_free = subharmonic_check_free(h_max, 2, free_ball(2, 6))
    checks.append(_check("max of extensions is subharmonic", sub_free.max_violation, 1e-12))

    refl = reflect(mu6)
    cov.add("reflect")
    checks.append(_check("reflect is an involution",
                         tv_distance(reflect(refl), mu6), 0.0))
    return checks


# ------------------------------------------------------------- scenarios

def _scenario_harmonic(cfg: ExperimentConfig, record: RunRecord) -> None:
    for e in cfg.resolve_pairs():
        verdict = harmonic_triviality_verdict(e.group, e.measure)
        record.checks.append(_check(f"{e.name}: dim harmonic == cosets",
                                    verdict.harmonic_rank, verdict.coset_count, "eq"))
        record.checks.append(_check(f"{e.name}: subspace residual",
                                    verdict.subspace_residual, 1e-9))
        record.extra[e.name] = verdict.to_json()


def _scenario_cesaro(cfg: ExperimentConfig, record: RunRecord) -> None:
    n = cfg.n or 1000
    for e in cfg.resolve_pairs():
        h_mu = generated_subgroup(e.group, e.measure.support())
        omega = haar_on_subgroup(e.group, h_mu)
        dist = tv_distance(cesaro_average(e.measure, n), omega)
        record.checks.append(_check(f"{e.name}: tv(A_{n}, haar)", dist, 1e-2))
        report = cesaro_projection(right_markov_matrix(e.group, e.measure),
                                   n_max=cfg.trials or 10_000)
        gap = float(np.linalg.norm(
            report.K.entries - right_markov_matrix(e.group, omega).entries))
        record.checks.append(_check(f"{e.name}: ||K - pi(haar)||", gap, 1e-9))
        record.extra[e.name] = report.to_json()


def _scenario_derriennic(cfg: ExperimentConfig, record: RunRecord) -> None:
    n_avg = cfg.n or 4096
    for e in cfg.resolve_pairs():
        ideal = coboundary_ideal(e.group, e.measure)
        rng = np.random.default_rng(cfg.seed)
        x = rng.random(e.group.order)
        x /= np.abs(x).sum()
        trace = quotient_norm_trace(x, ideal.predual_op, n_avg, ideal=ideal)
        record.checks.append(_check(f"{e.name}: |a_N - lp|",
                                    abs(trace.limit_estimate - trace.lp_distance), 5e-3))
        record.extra[e.name] = trace.summary()
        if cfg.out:
            trace.to_csv(os.path.join(cfg.out, f"derriennic_{e.name}.csv"))


def _entry_seed(base: int, name: str) -> int:
    """Per-entry seed derived from the entry name, not its position, so
    serial and fanned-out runs aggregate identically."""
    return base + (zlib.crc32(name.encode()) % 1_000_000)


def _scenario_ncconv(cfg: ExperimentConfig, record: RunRecord) -> None:
    trials = cfg.trials or 100
    for e in cfg.resolve_pairs():
        g = e.group
        rng = np.random.default_rng(_entry_seed(cfg.seed, e.name))
        worst_tr = 0.0
        for _ in range(trials):
            a = rng.random((g.order, g.order)) + 1j * rng.random((g.order, g.order))
            b = rng.random((g.order, g.order)) + 1j * rng.random((g.order, g.order))
            ab = operator_convolve(a, b, g)
            worst_tr = max(worst_tr, abs(np.trace(ab) - np.trace(a) * np.trace(b)))
        record.checks.append(_check(f"{e.name}: trace identity", worst_tr, 1e-10))
        ideal_rep = left_ideal_residual(g, e.measure, trials=trials,
                                        seed=_entry_seed(cfg.seed, e.name) + 1)
        record.checks.append(_check(f"{e.name}: left-ideal residual",
                                    ideal_rep.max_residual, 1e-9))
        record.extra[e.name] = ideal_rep.to_json()


def _scenario_freewalk(cfg: ExperimentConfig, record: RunRecord) -> None:
    w = parse_word(2, cfg.word_spec)
    paths = cfg.paths or 100_000
    n = cfg.n or 100
    est = empirical_cylinder_measure(2, w, n, paths, cfg.seed)
    exact = harmonic_measure_cylinder(2, w)
    sigma = max(np.sqrt(exact * (1 - exact) / max(est.n_paths - est.inconclusive_count, 1)), 1e-12)
    record.checks.append(_check(f"cylinder [{w}] estimate within 4 sigma",
                                abs(est.estimate - exact), 4 * sigma))
    record.extra["cylinder"] = json.loads(est.to_json())
    # the pinned bounds hold at the default horizon; shorter runs get the
    # looser fractions they can honestly meet (and fail if they cannot)
    conclusive_bound = 0.999 if n >= 100 else (0.95 if n >= 25 else 0.5)
    mart = martingale_convergence_check(2, w, n, max(paths // 10, 1000), cfg.seed + 1)
    record.checks.append(_check("martingale conclusive fraction",
                                mart.conclusive_fraction, conclusive_bound, "ge"))
    record.checks.append(_check("martingale agreement fraction",
                                mart.agreement_fraction, 0.99, "ge"))
    record.extra["martingale"] = json.loads(mart.to_json())
    dia = diamond_vs_pointwise_mc(2, w, min(n, 60), paths, cfg.seed + 2)
    record.checks.append(_check("diamond estimate near boundary value",
                                dia.distance_to_boundary, max(0.01, 5 * dia.stderr)))
    record.extra["diamond"] = json.loads(dia.to_json())


def _scenario_stationary(cfg: ExperimentConfig, record: RunRecord) -> None:
    s3, action = _natural_symmetric_action(3)
    mu = uniform_on(s3, [_label_index(s3, "(1 2)"), _label_index(s3, "(1 3)")])
    report = stationary_measure(action, mu)
    uniform = np.full(3, 1.0 / 3.0)
    record.checks.append(_check("S3 stationary uniform",
                                float(np.abs(report.measure.weights.real - uniform).max()),
                                1e-12))
    record.extra["s3_on_points"] = report.to_json()
    count = cfg.trials or 20
    worst = 0.0
    for i in range(count):
        action_i, mu_i = _random_coset_action(cfg.seed + i)
        rep = stationary_measure(action_i, mu_i, tol=1e-13)
        worst = max(worst, rep.agreement if rep.agreement is not None else 1.0)
    record.checks.append(_check("random actions: route agreement", worst, 1e-9))


def _scenario_decay(cfg: ExperimentConfig, record: RunRecord) -> None:
    n = cfg.n or 200
    mu = simple_random_walk_z()
    report = weak_star_decay(mu, [(0, 1.0)], n)
    vals = report.real_values()
    worst = 0.0
    for m in range(1, n // 2 + 1):
        exact = float(Fraction(math.comb(2 * m, m), 4**m))
        worst = max(worst, abs(vals[2 * m - 1] - exact))
    record.checks.append(_check("binomial match", worst, 1e-12))
    record.extra["final_value"] = vals[-1]
    if cfg.out:
        with open(os.path.join(cfg.out, "decay_srw.csv"), "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "value"])
            for i, v in enumerate(vals, start=1):
                writer.writerow([i, f"{v:.17g}"])


def _scenario_suite(cfg: ExperimentConfig, record: RunRecord) -> None:
    cov: set = set()
    for number, name, fn in ACCEPTANCE:
        checks = fn(cov)
        ok = all(c.passed for c in checks)
        worst = min((c for c in checks if not c.passed), default=None,
                    key=lambda c: c.name)
        line = f"criterion {number:02d} {name}: {'PASS' if ok else 'FAIL'}"
        if worst is not None:
            line += f" ({worst.name}: value={worst.value:.3e}, bound={worst.bound:.3e})"
        print(line)
        record.checks.extend(checks)
        record.extra[f"criterion_{number:02d}_{name}"] = "pass" if ok else "fail"
    record.checks.extend(_coverage_extras(cov))
    missing = OPERATION_NAMES - cov
    record.checks.append(_check(f"op coverage complete (missing: {sorted(missing)})",
                                len(missing), 0, "eq"))


_SCENARIO_FUNCS = {
    "harmonic": _scenario_harmonic,
    "cesaro": _scenario_cesaro,
    "derriennic": _scenario_derriennic,
    "ncconv": _scenario_ncconv,
    "freewalk": _scenario_freewalk,
    "stationary": _scenario_stationary,
    "decay": _scenario_decay,
    "suite": _scenario_suite,
}


_PARALLELIZABLE = {"harmonic", "cesaro", "derriennic", "ncconv"}


def run(cfg: ExperimentConfig) -> RunRecord:
    """Execute a scenario and return its record; writes artifacts under cfg.out.

    With parallel=True, catalog-looping scenarios fan entries over threads;
    per-entry seeds derive from entry names and results merge in catalog
    order, so the record is identical to the serial run.
    """
    if cfg.scenario not in _SCENARIO_FUNCS:
        raise ConfigError(f"scenario: unknown scenario {cfg.scenario!r}")
    if not cfg.out and os.environ.get("MUHARMONIC_OUT"):
        cfg = replace(cfg, out=os.environ["MUHARMONIC_OUT"])
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
    record = RunRecord(scenario=cfg.scenario, config=cfg.echo())
    record.started = time.time()
    if (cfg.parallel and cfg.scenario in _PARALLELIZABLE
            and cfg.entry is None and cfg.group is None):
        from concurrent.futures import ThreadPoolExecutor

        def one_entry(name: str) -> RunRecord:
            sub_cfg = replace(cfg, entry=name, parallel=False, out=None)
            sub = RunRecord(scenario=cfg.scenario, config=cfg.echo())
            _SCENARIO_FUNCS[cfg.scenario](sub_cfg, sub)
            return sub

        names = [e.name for e in catalog()]
        with ThreadPoolExecutor(max_workers=min(4, len(names))) as pool:
            for part in pool.map(one_entry, names):
                record.checks.extend(part.checks)
                record.extra.update(part.extra)
    else:
        _SCENARIO_FUNCS[cfg.scenario](cfg, record)
    record.finished = time.time()
    if cfg.out:
        path = os.path.join(cfg.out, f"record_{cfg.scenario}.json")
        with open(path, "w") as fh:
            fh.write(record.to_json())
    return record
