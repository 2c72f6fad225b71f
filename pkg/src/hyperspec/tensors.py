"""Tensor views of hypergraphs: matrix-free applies and small dense tensors.

The adjacency entry convention puts 1/(r-1)! on every index permutation of
an edge, so the apply reduces to one leave-one-out product per (edge,
vertex) pair and the all-ones apply reproduces the degree vector.  Dense
storage is reserved for small dimensions (cap 12 by default, overridable
via the HYPERSPEC_DENSE_CAP environment variable).
"""

from __future__ import annotations

import json
import math
import os
from itertools import permutations

import numpy as np

from .errors import CapacityError
from .hypergraph import UniformHypergraph

DENSE_DIM_CAP = 12
DENSE_ORDER_CAP = 6
DENSE_CAP_ENV = "HYPERSPEC_DENSE_CAP"

ADJACENCY = "adjacency"
DEGREE_DIAGONAL = "degree-diagonal"
SIGNLESS_LAPLACIAN = "signless-laplacian"
LAPLACIAN = "laplacian"
DENSE = "dense"

HYPERGRAPH_KINDS = (ADJACENCY, DEGREE_DIAGONAL, SIGNLESS_LAPLACIAN, LAPLACIAN)


def dense_dim_cap() -> int:
    """Effective dimension cap for dense tensors."""
    value = os.environ.get(DENSE_CAP_ENV)
    if value is None:
        return DENSE_DIM_CAP
    try:
        cap = int(value)
    except ValueError:
        raise ValueError(f"{DENSE_CAP_ENV} must be an integer, got {value!r}") from None
    if cap < 1:
        raise ValueError(f"{DENSE_CAP_ENV} must be positive, got {cap}")
    return cap


class DenseTensor:
    """Order-r cubical tensor with every entry stored.

    Entry count is dim**order, so construction is guarded by dimension and
    order caps; pass ``dim_cap`` to override the default for a single
    construction (the caller owns the memory estimate in that case).
    """

    def __init__(self, entries, dim_cap: int | None = None, order_cap: int = DENSE_ORDER_CAP):
        arr = np.array(entries, dtype=float)
        if arr.ndim < 2:
            raise ValueError(f"tensor order must be at least 2, got {arr.ndim}")
        if len(set(arr.shape)) != 1:
            raise ValueError(f"tensor must be cubical, got shape {arr.shape}")
        cap = dense_dim_cap() if dim_cap is None else dim_cap
        if arr.shape[0] > cap:
            raise CapacityError(f"dense dimension {arr.shape[0]} exceeds cap {cap}")
        if arr.ndim > order_cap:
            raise CapacityError(f"dense order {arr.ndim} exceeds cap {order_cap}")
        arr.setflags(write=False)
        self.entries = arr

    @property
    def order(self) -> int:
        return self.entries.ndim

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def apply(self, x) -> np.ndarray:
        """Contract the last order-1 indices with x."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"vector dimension {x.shape} does not match {self.dim}")
        out = self.entries
        for _ in range(self.order - 1):
            out = out.dot(x)
        return out

    def __add__(self, other: "DenseTensor") -> "DenseTensor":
        if not isinstance(other, DenseTensor):
            return NotImplemented
        if self.entries.shape != other.entries.shape:
            raise ValueError("tensor shapes differ")
        return DenseTensor(self.entries + other.entries, dim_cap=self.dim)

    def __mul__(self, scalar) -> "DenseTensor":
        return DenseTensor(self.entries * float(scalar), dim_cap=self.dim)

    __rmul__ = __mul__

    def to_json(self) -> str:
        """Serialize as order, dim, and the flat entry list in C index order."""
        return json.dumps(
            {"order": self.order, "dim": self.dim, "entries": self.entries.ravel().tolist()}
        )

    @classmethod
    def from_json(cls, text: str, dim_cap: int | None = None) -> "DenseTensor":
        obj = json.loads(text)
        r, m = int(obj["order"]), int(obj["dim"])
        arr = np.array(obj["entries"], dtype=float).reshape((m,) * r)
        return cls(arr, dim_cap=dim_cap)


def unit_tensor(r: int, m: int, dim_cap: int | None = None) -> DenseTensor:
    """Diagonal tensor with ones at the repeated-index positions.

    Its apply is the componentwise power x -> x^[r-1].
    """
    if r < 2 or m < 1:
        raise ValueError(f"unit tensor needs order >= 2 and dim >= 1, got ({r},{m})")
    arr = np.zeros((m,) * r)
    for i in range(m):
        arr[(i,) * r] = 1.0
    return DenseTensor(arr, dim_cap=dim_cap)


def distinct_index_tensor(r: int, dim_cap: int | None = None) -> DenseTensor:
    """Order-r, dimension-r 0/1 tensor marking pairwise-distinct index tuples."""
    if r < 2:
        raise ValueError(f"order must be at least 2, got {r}")
    arr = np.zeros((r,) * r)
    for p in permutations(range(r)):
        arr[p] = 1.0
    return DenseTensor(arr, dim_cap=dim_cap)


def dense_tensor_of(H: UniformHypergraph, kind: str, dim_cap: int | None = None) -> DenseTensor:
    """Materialize the adjacency / degree / (signless) Laplacian tensor of H.

    Intended for small instances and independent cross-checks; everything
    else should go through :class:`TensorOperator`.
    """
    if kind not in HYPERGRAPH_KINDS:
        raise ValueError(f"unknown hypergraph tensor kind {kind!r}")
    n, r = H.n, H.r
    adj = np.zeros((n,) * r)
    weight = 1.0 / math.factorial(r - 1)
    for edge in H.edges:
        for p in permutations(edge):
            adj[p] = weight
    if kind == ADJACENCY:
        arr = adj
    else:
        diag = np.zeros((n,) * r)
        for v, d in enumerate(H.degrees()):
            diag[(v,) * r] = float(d)
        if kind == DEGREE_DIAGONAL:
            arr = diag
        elif kind == SIGNLESS_LAPLACIAN:
            arr = diag + adj
        else:
            arr = diag - adj
    return DenseTensor(arr, dim_cap=dim_cap)


def direct_product(A: DenseTensor, B: DenseTensor, dim_cap: int | None = None) -> DenseTensor:
    """Kronecker-style product: entry over paired index tuples, flattened
    lexicographically (pair (i, j) maps to i*dim(B) + j)."""
    if A.order != B.order:
        raise ValueError(f"order mismatch: {A.order} vs {B.order}")
    r = A.order
    n, m = A.dim, B.dim
    cap = dense_dim_cap() if dim_cap is None else dim_cap
    if n * m > cap:
        raise CapacityError(f"product dimension {n * m} exceeds cap {cap}")
    outer = np.multiply.outer(A.entries, B.entries)
    axes = [k for pair in zip(range(r), range(r, 2 * r)) for k in pair]
    return DenseTensor(outer.transpose(axes).reshape((n * m,) * r), dim_cap=cap)


def kron_vector(u, v) -> np.ndarray:
    """Vector Kronecker product in the same lexicographic layout."""
    return np.kron(np.asarray(u, dtype=float), np.asarray(v, dtype=float))


class TensorOperator:
    """Apply-only view ``x -> Tx`` of a hypergraph tensor or a dense tensor.

    Hypergraph kinds never materialize n**r storage: the adjacency apply
    walks the edge list, the diagonal apply scales by degrees.
    """

    def __init__(self, kind: str, hypergraph: UniformHypergraph | None = None,
                 tensor: DenseTensor | None = None):
        self.kind = kind
        if kind in HYPERGRAPH_KINDS:
            if hypergraph is None:
                raise ValueError(f"kind {kind!r} needs a hypergraph")
            self.hypergraph = hypergraph
            self.tensor = None
            self.order = hypergraph.r
            self.dim = hypergraph.n
            edges = hypergraph.edges
            self._edges = np.array(edges, dtype=np.intp).reshape(len(edges), hypergraph.r)
            self._deg = np.array(hypergraph.degrees(), dtype=float)
        elif kind == DENSE:
            if tensor is None:
                raise ValueError("dense kind needs a DenseTensor")
            self.hypergraph = None
            self.tensor = tensor
            self.order = tensor.order
            self.dim = tensor.dim
        else:
            raise ValueError(f"unknown operator kind {kind!r}")

    @classmethod
    def adjacency(cls, H: UniformHypergraph) -> "TensorOperator":
        return cls(ADJACENCY, hypergraph=H)

    @classmethod
    def degree_diagonal(cls, H: UniformHypergraph) -> "TensorOperator":
        return cls(DEGREE_DIAGONAL, hypergraph=H)

    @classmethod
    def signless_laplacian(cls, H: UniformHypergraph) -> "TensorOperator":
        return cls(SIGNLESS_LAPLACIAN, hypergraph=H)

    @classmethod
    def laplacian(cls, H: UniformHypergraph) -> "TensorOperator":
        return cls(LAPLACIAN, hypergraph=H)

    @classmethod
    def dense(cls, tensor: DenseTensor) -> "TensorOperator":
        return cls(DENSE, tensor=tensor)

    @classmethod
    def for_hypergraph(cls, H: UniformHypergraph, kind: str) -> "TensorOperator":
        if kind not in HYPERGRAPH_KINDS:
            raise ValueError(f"unknown hypergraph tensor kind {kind!r}")
        return cls(kind, hypergraph=H)

    @property
    def nonnegative(self) -> bool:
        """Entrywise nonnegativity (required by the spectral solver)."""
        if self.kind == LAPLACIAN:
            return self.hypergraph.num_edges == 0
        if self.kind == DENSE:
            return bool(self.entries_min() >= 0.0)
        return True

    def entries_min(self) -> float:
        if self.kind != DENSE:
            raise ValueError("entries_min is only defined for dense operators")
        return float(self.tensor.entries.min())

    def _apply_adjacency(self, x: np.ndarray) -> np.ndarray:
        if self._edges.shape[0] == 0:
            return np.zeros(self.dim)
        gathered = x[self._edges]
        lo = np.ones_like(gathered)
        np.cumprod(gathered[:, :-1], axis=1, out=lo[:, 1:])
        hi = np.ones_like(gathered)
        hi[:, :-1] = np.cumprod(gathered[:, :0:-1], axis=1)[:, ::-1]
        contrib = lo * hi
        # bincount keeps the reduction order fixed, so applies are deterministic
        return np.bincount(self._edges.ravel(), weights=contrib.ravel(), minlength=self.dim)

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"vector dimension {x.shape} does not match {self.dim}")
        if self.kind == DENSE:
            return self.tensor.apply(x)
        if self.kind == ADJACENCY:
            return self._apply_adjacency(x)
        diag = self._deg * x ** (self.order - 1)
        if self.kind == DEGREE_DIAGONAL:
            return diag
        if self.kind == SIGNLESS_LAPLACIAN:
            return diag + self._apply_adjacency(x)
        return diag - self._apply_adjacency(x)


def adjacency_apply(H: UniformHypergraph, x) -> np.ndarray:
    """One-off adjacency apply; equals the degree vector for all-ones x."""
    return TensorOperator.adjacency(H).apply(x)


def rayleigh(T: TensorOperator, x) -> float:
    """The multilinear form x . (Tx).

    For an adjacency operator this is r times the sum over edges of the
    product of the entries of x on the edge.
    """
    x = np.asarray(x, dtype=float)
    return float(np.dot(x, T.apply(x)))


def eigen_residual(T: TensorOperator, value: float, x) -> float:
    """Relative max-norm of Tx - value * x^[r-1]."""
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        raise ValueError("eigenvector must be nonzero")
    xp = x ** (T.order - 1)
    num = float(np.max(np.abs(T.apply(x) - value * xp)))
    den = float(np.max(np.abs(xp)))
    return num / den
