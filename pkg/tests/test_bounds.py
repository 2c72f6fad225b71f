"""Tests for the degree power-mean bounds, weights, and certificates."""

import math

import numpy as np
import pytest

from hyperspec import (
    SolverConfig,
    TensorOperator,
    UniformHypergraph,
    average_degree_bound,
    blowup,
    certificate_vector,
    complete,
    degree_power_mean_bound,
    loose_path,
    optimal_weights,
    q_degree_bound,
    random_hypergraph,
    rayleigh,
    single_edge,
    spectral_radius,
    verify_bounds,
)

# frozen by independent arithmetic: ((4 + 2*sqrt(2)) / 5) ** (2/3)
LOOSE_PATH_BOUND = 1.2309312092285165
RHO_LOOSE_PATH = 2.0 ** (1.0 / 3.0)
# frozen: ((2 + 4*sqrt(2)) / 4) ** (2/3) for edges {1,2,3},{1,2,4}
PAIR_EDGES_BOUND = 1.54167770755673
RHO_PAIR_EDGES = 2.0 ** (2.0 / 3.0)  # symmetry reduction: lambda^{3/2} = 2
# frozen: weights of loose_path(3,2), 5^{1/3} d^{1/2} / (4 + 2 sqrt 2)^{1/3}
LOOSE_PATH_WEIGHT_DEG1 = 0.9013285100221887
LOOSE_PATH_WEIGHT_DEG2 = 1.2746710030269135


def test_power_mean_bound_values():
    assert abs(degree_power_mean_bound(complete(5, 3)) - 6.0) < 1e-12
    assert abs(degree_power_mean_bound(loose_path(3, 2)) - LOOSE_PATH_BOUND) < 1e-12
    pair_edges = UniformHypergraph(4, 3, ((0, 1, 2), (0, 1, 3)))
    assert abs(degree_power_mean_bound(pair_edges) - PAIR_EDGES_BOUND) < 1e-12
    # direct recomputation from the degree sequence
    expect = ((4 + 2 * math.sqrt(2)) / 5) ** (2.0 / 3.0)
    assert abs(degree_power_mean_bound(loose_path(3, 2)) - expect) < 1e-15


def test_pair_edges_strict_gap():
    pair_edges = UniformHypergraph(4, 3, ((0, 1, 2), (0, 1, 3)))
    rho = spectral_radius(pair_edges, "adjacency").value
    assert abs(rho - RHO_PAIR_EDGES) < 1e-8
    assert rho > degree_power_mean_bound(pair_edges)


def test_q_bound_values():
    assert abs(q_degree_bound(complete(5, 3)) - 12.0) < 1e-12
    assert abs(q_degree_bound(loose_path(3, 2)) - 2 * LOOSE_PATH_BOUND) < 1e-12
    assert abs(q_degree_bound(single_edge(3)) - 2.0) < 1e-12
    assert abs(spectral_radius(single_edge(3), "q").value - 2.0) < 1e-9


def test_average_degree_bound():
    assert average_degree_bound(loose_path(3, 2)) == pytest.approx(1.2)
    assert average_degree_bound(complete(5, 3)) == pytest.approx(6.0)
    assert average_degree_bound(UniformHypergraph(3, 3)) == 0.0


def test_r2_regression_sum_of_squares():
    # classical graph case: the bound is ((sum d_i^2)/n)^(1/2)
    star = UniformHypergraph(3, 2, ((0, 1), (1, 2)))
    assert abs(degree_power_mean_bound(star) - math.sqrt(2.0)) < 1e-12
    # the star attains it while being irregular (semiregular bipartite)
    rho = spectral_radius(star, "adjacency").value
    assert abs(rho - math.sqrt(2.0)) < 1e-9
    reports = verify_bounds(star)
    by_kind = {rep.kind: rep for rep in reports}
    assert by_kind["hofmeister-r2"].equality
    assert not by_kind["hofmeister-r2"].regular
    assert all(rep.consistent for rep in reports)


def test_optimal_weights_regular_are_ones():
    for H in (complete(5, 3), single_edge(3)):
        np.testing.assert_allclose(optimal_weights(H), np.ones(H.n), atol=1e-12)


def test_optimal_weights_loose_path_frozen():
    a = optimal_weights(loose_path(3, 2))
    expect = [
        LOOSE_PATH_WEIGHT_DEG1,
        LOOSE_PATH_WEIGHT_DEG1,
        LOOSE_PATH_WEIGHT_DEG2,
        LOOSE_PATH_WEIGHT_DEG1,
        LOOSE_PATH_WEIGHT_DEG1,
    ]
    np.testing.assert_allclose(a, expect, atol=1e-12)
    assert abs(np.sum(a**3) - 5.0) < 1e-9


def test_optimal_weights_properties():
    for seed in range(8):
        H = random_hypergraph(9, 3, 11, seed)
        a = optimal_weights(H)
        d = np.array(H.degrees(), dtype=float)
        assert abs(np.sum(a**H.r) - H.n) < 1e-9
        weighted = float(np.dot(a, d)) / H.n
        assert abs(weighted - degree_power_mean_bound(H)) < 1e-9


def test_optimal_weights_empty_rejected():
    with pytest.raises(ValueError):
        optimal_weights(UniformHypergraph(3, 3))


def test_am_gm_step_for_weights():
    for seed in range(6):
        H = random_hypergraph(8, 3, 9, seed)
        a = optimal_weights(H)
        lhs = a**H.r + H.r - 1
        assert np.all(lhs >= H.r * a - 1e-12)
        equal = np.abs(lhs - H.r * a) < 1e-9
        np.testing.assert_array_equal(equal, np.abs(a - 1.0) < 1e-9)


def test_certificate_vector_layout_and_norm():
    H = loose_path(3, 2)
    a = optimal_weights(H)
    x = certificate_vector(H, a)
    assert x.shape == (15,)
    scale = (3 * 5) ** (-1.0 / 3.0)
    np.testing.assert_allclose(x[::3], a * scale)
    np.testing.assert_allclose(x[1::3], scale)
    assert abs(np.sum(x**3) - 1.0) < 1e-12
    # regular case: uniform vector
    u = certificate_vector(complete(4, 3), optimal_weights(complete(4, 3)))
    np.testing.assert_allclose(u, (3 * 4) ** (-1.0 / 3.0), atol=1e-12)


def test_certificate_vector_dimension_mismatch():
    with pytest.raises(ValueError):
        certificate_vector(loose_path(3, 2), np.ones(4))


def test_certificate_rayleigh_identity():
    for H in (loose_path(3, 2), complete(4, 3), random_hypergraph(7, 3, 8, 2)):
        a = optimal_weights(H)
        x = certificate_vector(H, a)
        tilde = blowup(H).tilde
        val = rayleigh(TensorOperator.adjacency(tilde), x)
        d = np.array(H.degrees(), dtype=float)
        expect = math.factorial(H.r - 1) / H.n * float(np.dot(a, d))
        assert abs(val - expect) < 1e-10
        assert abs(val - math.factorial(H.r - 1) * degree_power_mean_bound(H)) < 1e-9


def test_verify_bounds_regular_equality():
    reports = verify_bounds(complete(5, 3))
    by_kind = {rep.kind: rep for rep in reports}
    adj = by_kind["adjacency"]
    q = by_kind["signless-laplacian"]
    assert abs(adj.gap) < 1e-8 and adj.equality and adj.regular and adj.consistent
    assert abs(q.gap) < 1e-8 and q.equality and q.consistent
    assert by_kind["average-degree"].equality


def test_verify_bounds_strict_gap():
    reports = verify_bounds(loose_path(3, 2))
    adj = next(rep for rep in reports if rep.kind == "adjacency")
    assert abs(adj.gap - (RHO_LOOSE_PATH - LOOSE_PATH_BOUND)) < 1e-8
    assert adj.gap > 0.02
    assert not adj.equality and not adj.regular and adj.consistent


def test_verify_bounds_disconnected_suppresses_characterization():
    H = UniformHypergraph(6, 3, ((0, 1, 2), (3, 4, 5)))
    reports = verify_bounds(H)
    adj = next(rep for rep in reports if rep.kind == "adjacency")
    assert abs(adj.bound - 1.0) < 1e-12
    assert abs(adj.rho - 1.0) < 1e-9
    assert adj.regular and not adj.connected
    assert adj.consistent  # characterization skipped off the connected case


def test_verify_bounds_empty_hypergraph():
    reports = verify_bounds(UniformHypergraph(3, 3))
    for rep in reports:
        assert rep.bound == 0.0 and rep.rho == 0.0 and rep.consistent


def test_verify_bounds_nonconvergence_is_inconclusive():
    cfg = SolverConfig(max_iterations=1)
    reports = verify_bounds(loose_path(3, 2), cfg)
    assert any(not rep.converged for rep in reports)


def test_dominance_over_average_degree():
    for seed in range(10):
        H = random_hypergraph(9, 3, 10, seed)
        pm = degree_power_mean_bound(H)
        avg = average_degree_bound(H)
        assert pm >= avg - 1e-12
        if H.is_regular():
            assert abs(pm - avg) < 1e-9
        else:
            assert pm > avg + 1e-12


def test_bound_report_serialization():
    rep = verify_bounds(single_edge(3))[0]
    payload = rep.to_json()
    assert list(payload) == [
        "kind", "bound", "rho", "gap", "regular", "equality", "connected", "consistent",
    ]
    row = rep.to_csv_row()
    assert row.startswith("adjacency,")
    assert row.count(",") == 7
