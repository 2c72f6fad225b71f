"""Label-permutation blow-up of a hypergraph and its verification suite.

The blow-up lives on vertex pairs (i, j) with i a base vertex and j a
label in {0..r-1}; a blow-up edge combines a base edge with one of the r!
ways to hand out distinct labels.  Its adjacency tensor factors as the
direct product of the base adjacency with the all-distinct-labels tensor,
and both spectral radii scale by (r-1)!.  The checks below exercise those
identities numerically with independently computed sides.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .bounds import certificate_vector, degree_power_mean_bound, optimal_weights
from .errors import CapacityError
from .hypergraph import UniformHypergraph
from .solver import EigenPair, SolverConfig, spectral_radius
from .tensors import (
    ADJACENCY,
    DEGREE_DIAGONAL,
    SIGNLESS_LAPLACIAN,
    DenseTensor,
    TensorOperator,
    dense_tensor_of,
    direct_product,
    distinct_index_tensor,
    eigen_residual,
    kron_vector,
    rayleigh,
    unit_tensor,
)

BLOWUP_VERTEX_CAP = 20_000
BLOWUP_EDGE_CAP = 5_000_000

#: Materialize the explicit product tensor only below this entry count.
DENSE_CHECK_BUDGET = 1 << 22

#: Default tolerance for comparing two independently solved radii.
SCALING_TOLERANCE = 1e-6


@dataclass(frozen=True)
class BlowupHypergraph:
    """A base hypergraph together with its blow-up on r*n vertices.

    Pair (i, j) sits at flat index i*r + j (labels vary fastest), matching
    the lexicographic layout of direct products and certificate vectors.
    """

    base: UniformHypergraph
    tilde: UniformHypergraph

    def flat_index(self, i: int, j: int) -> int:
        return i * self.base.r + j

    def pair_of(self, flat: int) -> tuple[int, int]:
        return divmod(flat, self.base.r)

    def vertex_map(self) -> list[tuple[int, int, int]]:
        """All (base vertex, label, flat index) triples, 0-based."""
        r = self.base.r
        return [(i, j, i * r + j) for i in range(self.base.n) for j in range(r)]

    def vertex_map_json(self) -> str:
        """JSON export of the vertex map with 1-based ids."""
        return json.dumps([[i + 1, j + 1, flat + 1] for i, j, flat in self.vertex_map()])


def blowup(
    H: UniformHypergraph,
    max_vertices: int = BLOWUP_VERTEX_CAP,
    max_edges: int = BLOWUP_EDGE_CAP,
) -> BlowupHypergraph:
    """Construct the blow-up; every emitted edge is distinct, so the edge
    count is exactly r! times the base edge count."""
    r = H.r
    if H.n * r > max_vertices:
        raise CapacityError(f"blow-up needs {H.n * r} vertices, cap is {max_vertices}")
    edge_total = math.factorial(r) * H.num_edges
    if edge_total > max_edges:
        raise CapacityError(f"blow-up needs {edge_total} edges, cap is {max_edges}")
    edges = []
    for base_edge in H.edges:
        for labels in permutations(range(r)):
            edges.append(tuple(base_edge[k] * r + labels[k] for k in range(r)))
    return BlowupHypergraph(H, UniformHypergraph(H.n * r, r, tuple(edges)))


def check_blowup_connectivity(H: UniformHypergraph) -> bool:
    """Whether the blow-up is connected.

    For r >= 3 this matches the connectivity of the base; for r = 2 a
    connected base can blow up disconnected, so no claim is made there.
    """
    return blowup(H).tilde.is_connected()


def kronecker_adjacency_apply(H: UniformHypergraph, w) -> np.ndarray:
    """Apply the product (base adjacency x all-distinct-labels) to w.

    Evaluated straight from the product's entry rule, without constructing
    the blow-up: component (i, j) sums, over base edges through i and over
    bijections from the remaining edge vertices onto the remaining labels,
    the product of the matching entries of w.
    """
    r = H.r
    w = np.asarray(w, dtype=float)
    if w.shape != (r * H.n,):
        raise ValueError(f"vector dimension {w.shape} does not match {r * H.n}")
    W = w.reshape(H.n, r)
    out = np.zeros(r * H.n)
    labels = range(r)
    for edge in H.edges:
        for pos, i in enumerate(edge):
            rest = edge[:pos] + edge[pos + 1 :]
            for j in labels:
                other_labels = [l for l in labels if l != j]
                total = 0.0
                for assigned in permutations(other_labels):
                    prod = 1.0
                    for v, l in zip(rest, assigned):
                        prod *= W[v, l]
                    total += prod
                out[i * r + j] += total
    return out


@dataclass
class ProductIdentityCheck:
    """Result of comparing blow-up adjacency applies against the product."""

    ok: bool
    max_relative_error: float
    trials: int
    entrywise_checked: bool
    witness: np.ndarray | None = field(default=None, repr=False)

    def __bool__(self) -> bool:
        return self.ok


def _relative_max_error(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))), 1e-300)
    return float(np.max(np.abs(a - b))) / scale


def check_product_identity(
    H: UniformHypergraph,
    trials: int = 50,
    seed: int = 0,
    rtol: float = 1e-10,
    tilde: UniformHypergraph | None = None,
) -> ProductIdentityCheck:
    """Verify the blow-up adjacency equals the direct product, on random
    vectors and (when small enough) entry by entry.

    ``tilde`` overrides the constructed blow-up; it exists as a fault
    injection seam so tests can confirm a mutated blow-up is rejected.
    """
    r = H.r
    if tilde is None:
        tilde = blowup(H).tilde
    lhs = TensorOperator.adjacency(tilde)
    rn = tilde.n
    entrywise_checked = rn**r <= DENSE_CHECK_BUDGET
    entrywise_ok = True
    if entrywise_checked:
        product = direct_product(
            dense_tensor_of(H, ADJACENCY, dim_cap=H.n),
            distinct_index_tensor(r, dim_cap=r),
            dim_cap=rn,
        )
        rhs_apply = product.apply
        tilde_dense = dense_tensor_of(tilde, ADJACENCY, dim_cap=rn)
        entrywise_ok = bool(
            np.allclose(tilde_dense.entries, product.entries, rtol=0.0, atol=1e-12)
        )
    else:
        rhs_apply = lambda w: kronecker_adjacency_apply(H, w)  # noqa: E731
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        w = rng.standard_normal(rn)
        err = _relative_max_error(lhs.apply(w), rhs_apply(w))
        worst = max(worst, err)
        if err > rtol:
            return ProductIdentityCheck(False, worst, trials, entrywise_checked, witness=w)
    return ProductIdentityCheck(entrywise_ok, worst, trials, entrywise_checked)


@dataclass
class ScalingReport:
    """Two independently solved radii compared under the (r-1)! scaling."""

    factor: float
    base_pair: EigenPair
    tilde_pair: EigenPair
    deviation: float
    kron_residual: float
    tolerance: float
    ok: bool

    def to_json(self) -> dict:
        return {
            "factor": self.factor,
            "base": self.base_pair.to_json(),
            "tilde": self.tilde_pair.to_json(),
            "deviation": self.deviation,
            "kron_residual": self.kron_residual,
            "ok": self.ok,
        }


def _scaling_check(H, kind, cfg, tolerance) -> ScalingReport:
    factor = float(math.factorial(H.r - 1))
    cfg = cfg or SolverConfig()
    tilde = blowup(H).tilde
    base_pair = spectral_radius(H, kind, cfg)
    tilde_pair = spectral_radius(tilde, kind, cfg)
    deviation = abs(tilde_pair.value - factor * base_pair.value)
    ones = np.ones(H.r)
    kron_vec = kron_vector(base_pair.vector, ones)
    kron_residual = eigen_residual(
        TensorOperator.for_hypergraph(tilde, kind), factor * base_pair.value, kron_vec
    )
    ok = (
        base_pair.converged
        and tilde_pair.converged
        and deviation <= tolerance
        and kron_residual <= tolerance
    )
    return ScalingReport(factor, base_pair, tilde_pair, deviation, kron_residual, tolerance, ok)


def check_spectral_scaling(
    H: UniformHypergraph,
    cfg: SolverConfig | None = None,
    tolerance: float = SCALING_TOLERANCE,
) -> ScalingReport:
    """Adjacency radius of the blow-up must equal (r-1)! times the base
    radius, and (base Perron vector) x (all-ones labels) must be the
    matching eigenvector."""
    return _scaling_check(H, ADJACENCY, cfg, tolerance)


@dataclass
class QIdentityReport:
    """Signless Laplacian blow-up checks: apply identity plus scaling."""

    apply_ok: bool
    max_apply_error: float
    scaling: ScalingReport
    ok: bool

    def to_json(self) -> dict:
        return {
            "apply_ok": self.apply_ok,
            "max_apply_error": self.max_apply_error,
            "scaling": self.scaling.to_json(),
            "ok": self.ok,
        }


def check_q_identities(
    H: UniformHypergraph,
    cfg: SolverConfig | None = None,
    trials: int = 50,
    seed: int = 0,
    rtol: float = 1e-10,
    tolerance: float = SCALING_TOLERANCE,
) -> QIdentityReport:
    """The blow-up signless Laplacian must equal
    (r-1)! (degree x unit) + (adjacency x all-distinct-labels),
    and its radius must be (r-1)! times the base radius."""
    r = H.r
    factor = float(math.factorial(r - 1))
    tilde = blowup(H).tilde
    lhs = TensorOperator.signless_laplacian(tilde)
    rn = tilde.n
    if rn**r <= DENSE_CHECK_BUDGET:
        rhs = factor * direct_product(
            dense_tensor_of(H, DEGREE_DIAGONAL, dim_cap=H.n),
            unit_tensor(r, r, dim_cap=r),
            dim_cap=rn,
        ) + direct_product(
            dense_tensor_of(H, ADJACENCY, dim_cap=H.n),
            distinct_index_tensor(r, dim_cap=r),
            dim_cap=rn,
        )
        rhs_apply = rhs.apply
    else:
        deg = np.repeat(np.array(H.degrees(), dtype=float), r)

        def rhs_apply(w):
            return factor * deg * np.asarray(w) ** (r - 1) + kronecker_adjacency_apply(H, w)

    rng = np.random.default_rng(seed)
    worst = 0.0
    apply_ok = True
    for _ in range(trials):
        w = rng.standard_normal(rn)
        worst = max(worst, _relative_max_error(lhs.apply(w), rhs_apply(w)))
        if worst > rtol:
            apply_ok = False
            break
    scaling = _scaling_check(H, SIGNLESS_LAPLACIAN, cfg, tolerance)
    return QIdentityReport(apply_ok, worst, scaling, apply_ok and scaling.ok)


@dataclass
class BlowupVerification:
    """Aggregate of every blow-up identity check, for the CLI verify path."""

    connectivity_ok: bool
    product: ProductIdentityCheck
    scaling: ScalingReport
    q_identities: QIdentityReport
    certificate_gap: float
    certificate_ok: bool
    ok: bool

    def to_json(self) -> dict:
        return {
            "connectivity_ok": self.connectivity_ok,
            "product_ok": self.product.ok,
            "max_product_error": self.product.max_relative_error,
            "scaling": self.scaling.to_json(),
            "q": self.q_identities.to_json(),
            "certificate_gap": self.certificate_gap,
            "certificate_ok": self.certificate_ok,
            "ok": self.ok,
        }


def verify_blowup(
    H: UniformHypergraph,
    cfg: SolverConfig | None = None,
    trials: int = 50,
    seed: int = 0,
) -> BlowupVerification:
    """Run the full blow-up identity suite on one hypergraph."""
    bl = blowup(H)
    if H.r >= 3:
        connectivity_ok = bl.tilde.is_connected() == H.is_connected()
    else:
        connectivity_ok = True  # no claim for r=2
    product = check_product_identity(H, trials=trials, seed=seed)
    scaling = check_spectral_scaling(H, cfg)
    q_identities = check_q_identities(H, cfg, trials=trials, seed=seed)
    if H.num_edges > 0:
        cert = certificate_vector(H, optimal_weights(H))
        achieved = rayleigh(TensorOperator.adjacency(bl.tilde), cert)
        target = math.factorial(H.r - 1) * degree_power_mean_bound(H)
        certificate_gap = abs(achieved - target)
        certificate_ok = certificate_gap <= 1e-8
    else:
        certificate_gap = 0.0
        certificate_ok = True
    ok = connectivity_ok and product.ok and scaling.ok and q_identities.ok and certificate_ok
    return BlowupVerification(
        connectivity_ok, product, scaling, q_identities, certificate_gap, certificate_ok, ok
    )
