"""r-uniform hypergraphs: representation, parsing, generators, colorings.

Vertex ids are 0-based in memory. The text and JSON interchange formats
use 1-based ids; the shift happens only at the parse/render boundary.
"""

from __future__ import annotations

import json
import math
import random
import warnings
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import CapacityError, FormatError

#: Largest vertex count accepted by the exhaustive odd-coloring search.
ODD_COLORING_CAP = 12


@dataclass(frozen=True)
class UniformHypergraph:
    """An r-uniform hypergraph on vertices ``{0, ..., n-1}``.

    Edges are canonical: each edge is a sorted tuple of r distinct vertex
    ids, and the edge list is deduplicated and sorted lexicographically.
    Instances are immutable and safe to share across threads.
    """

    n: int
    r: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        if self.r < 2:
            raise ValueError(f"uniformity must be at least 2, got {self.r}")
        canon = set()
        for edge in self.edges:
            t = tuple(sorted(int(v) for v in edge))
            if len(t) != self.r or len(set(t)) != self.r:
                raise ValueError(
                    f"edge {tuple(edge)} must contain exactly {self.r} distinct vertices"
                )
            if t[0] < 0 or t[-1] >= self.n:
                raise ValueError(f"edge {tuple(edge)} has a vertex outside 0..{self.n - 1}")
            canon.add(t)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> tuple[int, ...]:
        """Per-vertex edge counts; their sum equals r times the edge count."""
        d = [0] * self.n
        for edge in self.edges:
            for v in edge:
                d[v] += 1
        return tuple(d)

    def is_regular(self) -> bool:
        """True iff all vertex degrees are equal (vacuously true without edges)."""
        return len(set(self.degrees())) <= 1

    def _neighbor_sets(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for edge in self.edges:
            for v in edge:
                nbrs[v].update(edge)
        return nbrs

    def is_connected(self) -> bool:
        """True iff every pair of vertices is joined by a walk.

        A single vertex is connected; any isolated vertex with n >= 2 makes
        the hypergraph disconnected.
        """
        if self.n == 1:
            return True
        nbrs = self._neighbor_sets()
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for u in nbrs[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == self.n

    def components(self) -> list[Component]:
        """Split into maximal connected pieces, ordered by smallest vertex id.

        Each component relabels its vertices to ``0..k-1`` preserving the
        original order; ``Component.vertices[new_id]`` recovers the original
        id.  Components partition both the vertex set and the edge set.
        """
        nbrs = self._neighbor_sets()
        seen = [False] * self.n
        out: list[Component] = []
        for root in range(self.n):
            if seen[root]:
                continue
            seen[root] = True
            group = [root]
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for u in nbrs[v]:
                    if not seen[u]:
                        seen[u] = True
                        group.append(u)
                        queue.append(u)
            group.sort()
            relabel = {old: new for new, old in enumerate(group)}
            members = set(group)
            edges = tuple(
                tuple(relabel[v] for v in edge) for edge in self.edges if edge[0] in members
            )
            out.append(Component(UniformHypergraph(len(group), self.r, edges), tuple(group)))
        return out


@dataclass(frozen=True)
class Component:
    """A connected piece of a hypergraph with vertices relabeled to 0..k-1."""

    graph: UniformHypergraph
    vertices: tuple[int, ...]


# ---------------------------------------------------------------------------
# External formats.  Text: header "n r", one edge per line, 1-based ids,
# '#' comments.  JSON mirror: {"n": ..., "r": ..., "edges": [[...], ...]}.
# ---------------------------------------------------------------------------


def _canonical_edges(raw_edges, n: int, r: int) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Validate 1-based edge lists, returning 0-based edges and a dup count."""
    edges = []
    for verts in raw_edges:
        if len(verts) != r:
            raise FormatError(f"edge {list(verts)} must list exactly {r} vertices")
        try:
            ids = [int(v) for v in verts]
        except (TypeError, ValueError):
            raise FormatError(f"edge {list(verts)} holds a non-integer vertex id") from None
        if any(v < 1 or v > n for v in ids):
            raise FormatError(f"edge {ids} has a vertex outside 1..{n}")
        if len(set(ids)) != r:
            raise FormatError(f"edge {ids} repeats a vertex")
        edges.append(tuple(sorted(v - 1 for v in ids)))
    unique = set(edges)
    return tuple(unique), len(edges) - len(unique)


def parse_hypergraph(text: str) -> UniformHypergraph:
    """Parse the text edge-list format.

    Duplicate edges are dropped with a warning reporting how many were
    removed.
    """
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            rows.append(line)
    if not rows:
        raise FormatError("empty input: missing 'n r' header line")
    head = rows[0].split()
    if len(head) != 2:
        raise FormatError(f"header must be 'n r', got {rows[0]!r}")
    try:
        n, r = int(head[0]), int(head[1])
    except ValueError:
        raise FormatError(f"header must hold two integers, got {rows[0]!r}") from None
    if n < 1 or r < 2:
        raise FormatError(f"header needs n >= 1 and r >= 2, got n={n} r={r}")
    edges, dups = _canonical_edges([line.split() for line in rows[1:]], n, r)
    if dups:
        warnings.warn(f"dropped {dups} duplicate edge(s)", stacklevel=2)
    return UniformHypergraph(n, r, edges)


def render_hypergraph(H: UniformHypergraph) -> str:
    """Render to the text format (inverse of :func:`parse_hypergraph`)."""
    lines = [f"{H.n} {H.r}"]
    lines.extend(" ".join(str(v + 1) for v in edge) for edge in H.edges)
    return "\n".join(lines) + "\n"


def hypergraph_from_json(text: str) -> UniformHypergraph:
    """Parse the JSON mirror format."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or not {"n", "r", "edges"} <= set(obj):
        raise FormatError("JSON hypergraph needs fields 'n', 'r', 'edges'")
    try:
        n, r = int(obj["n"]), int(obj["r"])
    except (TypeError, ValueError):
        raise FormatError("fields 'n' and 'r' must be integers") from None
    if n < 1 or r < 2:
        raise FormatError(f"need n >= 1 and r >= 2, got n={n} r={r}")
    edges, dups = _canonical_edges(obj["edges"], n, r)
    if dups:
        warnings.warn(f"dropped {dups} duplicate edge(s)", stacklevel=2)
    return UniformHypergraph(n, r, edges)


def hypergraph_to_json(H: UniformHypergraph) -> str:
    return json.dumps(
        {"n": H.n, "r": H.r, "edges": [[v + 1 for v in edge] for edge in H.edges]}
    )


def load_hypergraph(text: str) -> UniformHypergraph:
    """Parse either format, sniffing JSON by a leading '{'."""
    if text.lstrip().startswith("{"):
        return hypergraph_from_json(text)
    return parse_hypergraph(text)


# ---------------------------------------------------------------------------
# Generators.  All are deterministic for fixed parameters (and seed).
# ---------------------------------------------------------------------------


def complete(n: int, r: int) -> UniformHypergraph:
    """All r-subsets of {0..n-1}; regular of degree C(n-1, r-1)."""
    if n < r:
        raise ValueError(f"complete({n},{r}) needs n >= r")
    return UniformHypergraph(n, r, tuple(combinations(range(n), r)))


def single_edge(r: int) -> UniformHypergraph:
    """One edge on exactly r vertices."""
    return UniformHypergraph(r, r, (tuple(range(r)),))


def loose_path(r: int, length: int) -> UniformHypergraph:
    """length edges in a row, consecutive edges sharing exactly one vertex."""
    if length < 1:
        raise ValueError(f"loose_path({r},{length}) needs length >= 1")
    n = length * (r - 1) + 1
    edges = tuple(tuple(range(k * (r - 1), k * (r - 1) + r)) for k in range(length))
    return UniformHypergraph(n, r, edges)


def random_hypergraph(n: int, r: int, m: int, seed: int) -> UniformHypergraph:
    """m distinct edges drawn uniformly without replacement."""
    if n < r:
        raise ValueError(f"random({n},{r},...) needs n >= r")
    total = math.comb(n, r)
    if not 0 <= m <= total:
        raise ValueError(f"edge count {m} outside 0..C({n},{r})={total}")
    rng = random.Random(seed)
    if total <= 2_000_000:
        edges = rng.sample(list(combinations(range(n), r)), m)
    else:
        chosen: set[tuple[int, ...]] = set()
        while len(chosen) < m:
            chosen.add(tuple(sorted(rng.sample(range(n), r))))
        edges = sorted(chosen)
    return UniformHypergraph(n, r, tuple(edges))


_GENERATORS = {
    "complete": (complete, 2),
    "single_edge": (single_edge, 1),
    "loose_path": (loose_path, 2),
    "random": (random_hypergraph, 4),
}


def generate(spec: str) -> UniformHypergraph:
    """Build a hypergraph from a ``name:args`` spec string.

    Examples: ``complete:5,3``, ``single_edge:3``, ``loose_path:3,2``,
    ``random:8,3,10,42`` (n, r, edges, seed).
    """
    name, _, argstr = spec.partition(":")
    name = name.strip()
    if name not in _GENERATORS:
        raise FormatError(
            f"unknown generator {name!r}; expected one of {sorted(_GENERATORS)}"
        )
    fn, arity = _GENERATORS[name]
    try:
        args = [int(tok) for tok in argstr.split(",")] if argstr.strip() else []
    except ValueError:
        raise FormatError(f"generator arguments must be integers, got {argstr!r}") from None
    if len(args) != arity:
        raise FormatError(f"generator {name!r} takes {arity} argument(s), got {len(args)}")
    try:
        return fn(*args)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# ---------------------------------------------------------------------------
# Odd colorings (even uniformity only): a labeling phi: V -> {1..r} such
# that every edge's label sum is congruent to r/2 modulo r.
# ---------------------------------------------------------------------------


def verify_odd_coloring(H: UniformHypergraph, phi: dict[int, int]) -> bool:
    """Check every edge's label sum is r/2 modulo r."""
    half = H.r // 2
    return all(sum(phi[v] for v in edge) % H.r == half for edge in H.edges)


def find_odd_coloring(
    H: UniformHypergraph, cap: int = ODD_COLORING_CAP
) -> dict[int, int] | None:
    """Exhaustive backtracking search for an odd coloring, None if impossible.

    The residue constraint is checked edge-by-edge as soon as an edge is
    fully labeled, so infeasible branches are cut early; the search is
    still exhaustive, hence capped at ``cap`` vertices.
    """
    if H.r % 2 != 0:
        raise ValueError(f"odd coloring needs even uniformity, got r={H.r}")
    if H.n > cap:
        raise CapacityError(f"odd-coloring search capped at {cap} vertices, got n={H.n}")
    r, half = H.r, H.r // 2
    edges_of: list[list[int]] = [[] for _ in range(H.n)]
    for idx, edge in enumerate(H.edges):
        for v in edge:
            edges_of[v].append(idx)
    edge_sum = [0] * H.num_edges
    unlabeled = [H.r] * H.num_edges
    labels = [0] * H.n

    def assign(v: int) -> bool:
        if v == H.n:
            return True
        for lab in range(1, r + 1):
            labels[v] = lab
            for ei in edges_of[v]:
                edge_sum[ei] += lab
                unlabeled[ei] -= 1
            feasible = all(
                unlabeled[ei] > 0 or edge_sum[ei] % r == half for ei in edges_of[v]
            )
            if feasible and assign(v + 1):
                return True
            for ei in edges_of[v]:
                edge_sum[ei] -= lab
                unlabeled[ei] += 1
        labels[v] = 0
        return False

    if not assign(0):
        return None
    phi = {v: labels[v] for v in range(H.n)}
    assert verify_odd_coloring(H, phi)
    return phi
