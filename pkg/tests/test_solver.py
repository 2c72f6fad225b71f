"""Tests for the power-iteration solver and its bracket guarantees."""

import math

import numpy as np
import pytest

import oracles
from hyperspec import (
    SolverConfig,
    TensorOperator,
    UniformHypergraph,
    complete,
    distinct_index_tensor,
    loose_path,
    perron_vector_check,
    power_iterate,
    random_hypergraph,
    rayleigh,
    single_edge,
    spectral_radius,
)

RHO_LOOSE_PATH = 2.0 ** (1.0 / 3.0)  # symmetry reduction: lambda^3 = 2


def test_complete_5_3_radius():
    pair = power_iterate(TensorOperator.adjacency(complete(5, 3)))
    assert abs(pair.value - 6.0) < 1e-8
    assert pair.converged


def test_loose_path_radius_closed_form():
    pair = power_iterate(TensorOperator.adjacency(loose_path(3, 2)))
    assert abs(pair.value - RHO_LOOSE_PATH) < 1e-8


def test_distinct_index_tensor_radius():
    for r in (3, 4, 5):
        pair = power_iterate(TensorOperator.dense(distinct_index_tensor(r)))
        assert abs(pair.value - math.factorial(r - 1)) < 1e-10


def test_laplacian_rejected():
    with pytest.raises(ValueError):
        power_iterate(TensorOperator.laplacian(single_edge(3)))


def test_negative_dense_rejected():
    from hyperspec import DenseTensor

    T = DenseTensor(-np.ones((2, 2, 2)))
    with pytest.raises(ValueError):
        power_iterate(TensorOperator.dense(T))


def test_bracket_and_norm_invariants():
    for H in (loose_path(3, 2), complete(4, 3), random_hypergraph(8, 3, 9, 11)):
        pair = spectral_radius(H, "adjacency")
        assert pair.lower <= pair.value <= pair.upper
        assert pair.upper - pair.lower <= 1e-10 + 1e-15
        assert abs(np.sum(pair.vector**H.r) - 1.0) < 1e-12


def test_bracket_contains_oracle_on_tiny_instances():
    for H in oracles.enumerate_connected_3uniform(max_n=4, max_edges=3):
        pair = spectral_radius(H, "adjacency")
        got = oracles.rayleigh_max_oracle(H, starts=20, iters=1500)
        assert pair.lower - 1e-8 <= got <= pair.upper + 1e-8


def test_spectral_radius_disconnected_max_over_components():
    H = UniformHypergraph(6, 3, ((0, 1, 2), (3, 4, 5)))
    pair = spectral_radius(H, "adjacency")
    assert abs(pair.value - 1.0) < 1e-9
    # the first component wins ties; its block is positive, the rest zero
    assert np.all(pair.vector[:3] > 0)
    assert np.all(pair.vector[3:] == 0.0)
    assert pair.residual < 1e-9


def test_spectral_radius_q_single_edge():
    pair = spectral_radius(single_edge(3), "q")
    assert abs(pair.value - 2.0) < 1e-10


def test_spectral_radius_empty():
    pair = spectral_radius(UniformHypergraph(3, 3), "adjacency")
    assert pair.value == 0.0
    assert pair.converged


def test_isolated_vertices_contribute_zero():
    H = UniformHypergraph(5, 3, ((0, 1, 2),))
    pair = spectral_radius(H, "adjacency")
    assert abs(pair.value - 1.0) < 1e-10
    assert pair.vector[3] == pair.vector[4] == 0.0


def test_perron_vector_check():
    H = complete(5, 3)
    pair = spectral_radius(H, "adjacency")
    assert perron_vector_check(H, pair)
    spread = pair.vector.max() - pair.vector.min()
    assert spread < 1e-9  # regular symmetry: uniform vector

    lp = loose_path(3, 2)
    lp_pair = spectral_radius(lp, "adjacency")
    assert perron_vector_check(lp, lp_pair)
    v = lp_pair.vector
    assert v[2] > v[0]
    np.testing.assert_allclose([v[0], v[1], v[3], v[4]], v[0], rtol=1e-9)
    # the symmetry reduction gives the middle/outer ratio = lambda
    assert abs(v[2] / v[0] - RHO_LOOSE_PATH) < 1e-8


def test_perron_vector_check_rejects_zero_entry():
    H = complete(4, 3)
    pair = spectral_radius(H, "adjacency")
    fake = type(pair)(
        value=pair.value,
        vector=np.array([0.0, 1.0, 1.0, 1.0]),
        residual=0.0,
        iterations=1,
        lower=pair.lower,
        upper=pair.upper,
        converged=True,
    )
    assert not perron_vector_check(H, fake)


def test_rayleigh_never_exceeds_radius():
    rng = np.random.default_rng(99)
    for H in (loose_path(3, 2), complete(5, 3), random_hypergraph(9, 3, 12, 4)):
        pair = spectral_radius(H, "adjacency")
        T = TensorOperator.adjacency(H)
        for _ in range(100):
            x = rng.random(H.n)
            x /= np.sum(x**H.r) ** (1.0 / H.r)
            assert rayleigh(T, x) <= pair.value + 1e-8


def test_monotone_under_edge_addition():
    import random as pyrandom
    from itertools import combinations

    rng = pyrandom.Random(5)
    for _ in range(10):
        H = random_hypergraph(8, 3, 8, rng.randrange(10**6))
        pool = [e for e in combinations(range(8), 3) if e not in set(H.edges)]
        extra = rng.choice(pool)
        H2 = UniformHypergraph(8, 3, H.edges + (extra,))
        v1 = spectral_radius(H, "adjacency").value
        v2 = spectral_radius(H2, "adjacency").value
        assert v2 >= v1 - 1e-9


def test_q_dominates_rayleigh_of_adjacency_perron():
    for seed in range(5):
        H = random_hypergraph(8, 3, 10, seed)
        if not H.is_connected():
            continue
        u = spectral_radius(H, "adjacency").vector
        q_pair = spectral_radius(H, "q")
        assert q_pair.value >= rayleigh(TensorOperator.signless_laplacian(H), u) - 1e-9


def test_determinism():
    cfg = SolverConfig()
    a = spectral_radius(loose_path(3, 3), "adjacency", cfg)
    b = spectral_radius(loose_path(3, 3), "adjacency", cfg)
    assert a.value == b.value
    assert a.iterations == b.iterations
    assert np.array_equal(a.vector, b.vector)


def test_nonconvergence_diagnostic():
    # a diagonal operator with distinct degrees never closes the bracket
    H = loose_path(3, 2)
    pair = power_iterate(
        TensorOperator.degree_diagonal(H), SolverConfig(max_iterations=200)
    )
    assert not pair.converged
    assert pair.lower <= 2.0 <= pair.upper  # bracket still encloses max degree


def test_shift_override_and_seeded_restarts():
    cfg = SolverConfig(shift=0.5, seed=7)
    pair = spectral_radius(complete(4, 3), "adjacency", cfg)
    assert abs(pair.value - 3.0) < 1e-9


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(tolerance=0.0)
    with pytest.raises(ValueError):
        SolverConfig(max_iterations=0)
    with pytest.raises(ValueError):
        SolverConfig(shift=-1.0)


def test_eigenpair_json_fields():
    pair = spectral_radius(single_edge(3), "adjacency")
    payload = pair.to_json()
    assert set(payload) == {"lambda", "lower", "upper", "residual", "iterations", "converged"}
    assert abs(payload["lambda"] - 1.0) < 1e-10
