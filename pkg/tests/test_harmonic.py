import numpy as np
import pytest

from muharmonic import (
    FiniteMeasure,
    cesaro_projection,
    commutant,
    cyclic_group,
    diamond_product,
    from_pairs,
    generated_subgroup,
    haar_on_subgroup,
    harmonic_space,
    harmonic_triviality_verdict,
    l1_harmonic_triviality,
    left_regular,
    mutual_residual,
    point_mass,
    right_markov_matrix,
    right_regular,
    simple_random_walk_z,
    subspaces_equal,
    symmetric_group,
    trivial_solution_space,
    uniform_on,
    z_point_mass,
)

Z2 = cyclic_group(2)
Z4 = cyclic_group(4)
Z6 = cyclic_group(6)
S3 = symmetric_group(3)


def test_harmonic_space_examples():
    swap = right_markov_matrix(Z2, point_mass(Z2, 1))
    space = harmonic_space(swap)
    assert space.rank == 1
    assert space.residual(np.ones(2) / np.sqrt(2)) < 1e-12

    space6 = harmonic_space(right_markov_matrix(Z6, point_mass(Z6, 2)))
    assert space6.rank == 2
    even = np.zeros(6)
    even[[0, 2, 4]] = 1.0
    assert space6.residual(even / np.linalg.norm(even)) < 1e-12

    mu = uniform_on(S3, [S3.labels.index("(1 2)"), S3.labels.index("(1 3)")])
    assert harmonic_space(right_markov_matrix(S3, mu)).rank == 1


def test_trivial_solution_space_examples():
    h = generated_subgroup(Z6, [2])
    assert trivial_solution_space(Z6, h, "functions").rank == 2
    trivial = generated_subgroup(Z6, [0])
    assert trivial_solution_space(Z6, trivial, "functions").rank == 6
    whole2 = generated_subgroup(Z2, [1])
    ops = trivial_solution_space(Z2, whole2, "operators")
    assert ops.rank == 2
    swap = right_regular(Z2)[1]
    assert ops.residual(np.eye(2).reshape(-1)) < 1e-12
    assert ops.residual(swap.reshape(-1)) < 1e-12


def test_commutant_examples():
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert commutant([swap]).rank == 2
    assert commutant([np.eye(2)]).rank == 4
    rho = right_regular(S3)
    assert commutant([rho[g] for g in range(6)]).rank == 6
    assert commutant([], dim=3).rank == 9


def test_cesaro_projection_examples():
    rep4 = cesaro_projection(right_markov_matrix(Z4, point_mass(Z4, 1)), n_max=64)
    assert np.abs(rep4.K.entries - 0.25).max() < 1e-12

    repe = cesaro_projection(right_markov_matrix(Z4, point_mass(Z4, 0)), n_max=16)
    assert np.abs(repe.K.entries - np.eye(4)).max() < 1e-12
    assert repe.converged_iteratively

    h = generated_subgroup(Z6, [2])
    rep6 = cesaro_projection(right_markov_matrix(Z6, point_mass(Z6, 2)), n_max=64)
    target = right_markov_matrix(Z6, haar_on_subgroup(Z6, h)).entries
    assert np.abs(rep6.K.entries - target).max() < 1e-12


def test_projection_invariants():
    mu = uniform_on(S3, [S3.labels.index("(1 2)"), S3.labels.index("(1 3)")])
    m = right_markov_matrix(S3, mu)
    lam = left_regular(S3)
    rep = cesaro_projection(m, n_max=256, commute_with={f"L{i}": lam[i] for i in range(6)})
    assert rep.idempotency_residual < 1e-9
    assert abs(rep.norm_inf - 1.0) < 1e-12
    assert max(rep.commutation_residuals.values()) < 1e-12
    assert rep.K.entries.real.min() > -1e-12
    space = harmonic_space(m)
    assert rep.range_rank == space.rank
    assert max(space.residual(col) for col in rep.K.entries.T) < 1e-9
    omega = haar_on_subgroup(S3, generated_subgroup(S3, mu.support()))
    assert np.linalg.norm(rep.K.entries - right_markov_matrix(S3, omega).entries) < 1e-9


def test_diamond_examples():
    mu = point_mass(Z6, 2)
    c1 = np.full(6, 2.0, dtype=complex)
    c2 = np.full(6, -1.5, dtype=complex)
    assert np.allclose(diamond_product(c1, c2, Z6, mu), c1 * c2)

    sign = np.zeros(6, dtype=complex)
    sign[[0, 2, 4]] = 1.0
    sign[[1, 3, 5]] = -1.0
    dia = diamond_product(sign, sign, Z6, mu)
    assert np.abs(dia - 1.0).max() < 1e-12


def test_diamond_rejects_non_harmonic():
    mu = point_mass(Z6, 2)
    bad = np.arange(6, dtype=complex)
    with pytest.raises(ValueError, match="residual"):
        diamond_product(bad, bad, Z6, mu)


def test_verdict_on_catalog_style_pairs():
    for g, mu in (
        (Z6, point_mass(Z6, 2)),
        (S3, uniform_on(S3, [S3.labels.index("(1 2)"), S3.labels.index("(1 3)")])),
        (Z4, point_mass(Z4, 0)),  # identity law: everything harmonic, everything trivial
    ):
        verdict = harmonic_triviality_verdict(g, mu)
        assert verdict.diamond_matches_pointwise
        assert verdict.harmonic_equals_trivial
        assert verdict.consistent
        assert verdict.harmonic_rank == verdict.coset_count


def test_verdict_identity_law_full_space():
    verdict = harmonic_triviality_verdict(Z4, point_mass(Z4, 0))
    assert verdict.harmonic_rank == 4


def test_operator_fixed_space_equals_commutant():
    from muharmonic import conjugation_operator

    mu = uniform_on(S3, [S3.labels.index("(1 2)"), S3.labels.index("(1 3)")])
    fixed = harmonic_space(conjugation_operator(S3, mu))
    h = generated_subgroup(S3, mu.support())
    comm = trivial_solution_space(S3, h, "operators")
    assert fixed.rank == comm.rank == 6
    assert mutual_residual(fixed, comm) < 1e-9
    assert subspaces_equal(fixed, comm)


def test_l1_triviality_examples():
    srw = simple_random_walk_z()
    for window in (5, 50):
        report = l1_harmonic_triviality(srw, window)
        assert report.kernel_rank == 0
        assert not report.degenerate
        assert report.smallest_singular_value > 0
    degenerate = l1_harmonic_triviality(z_point_mass(0), 5)
    assert degenerate.degenerate
    assert degenerate.kernel_rank == 11


def test_subharmonicity_of_modulus_and_max():
    from muharmonic import subharmonic_check

    rng = np.random.default_rng(21)
    mu = from_pairs(Z6, [(2, 0.5), (4, 0.5)])
    space = harmonic_space(right_markov_matrix(Z6, mu))
    for _ in range(20):
        coeffs = rng.standard_normal(space.rank) + 1j * rng.standard_normal(space.rank)
        h = coeffs @ space.basis
        report = subharmonic_check(np.abs(h), Z6, mu)
        assert report.max_violation <= 1e-12
        h2 = (rng.standard_normal(space.rank) @ space.basis).real
        pair_max = np.maximum(np.abs(h), np.abs(h2))
        assert subharmonic_check(pair_max, Z6, mu).max_violation <= 1e-12
