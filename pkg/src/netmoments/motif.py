"""Motif patterns: containment indicator and its conditional expectation.

A motif is a small connected pattern graph on ``r <= 5`` nodes.  A binary
subgraph ``sub`` *contains* the motif when some relabeling of the motif's
nodes makes every motif edge present in ``sub`` (extra edges in ``sub``
are allowed).  On a matrix of edge probabilities the same indicator has
an exact conditional expectation, obtained by enumerating all
``2^(r choose 2)`` edge patterns.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from .errors import NotConnectedError

__all__ = [
    "Motif",
    "make_motif",
    "contains",
    "conditional_expectation_h",
    "containment_probability",
    "builtin_motif",
    "motif_from_config",
    "EDGE",
    "TRIANGLE",
    "VSHAPE",
    "THREESTAR",
    "MAX_MOTIF_NODES",
]

MAX_MOTIF_NODES = 5

# Unordered node pairs of an r-node graph, in lexicographic order.  The
# position of a pair in this list is its bit index in edge-set masks.
_PAIRS = {r: tuple(itertools.combinations(range(r), 2)) for r in range(2, MAX_MOTIF_NODES + 1)}


def _check_square_binary(m: np.ndarray, what: str) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{what} must be a square matrix, got shape {m.shape}")
    if not np.isin(m, (0, 1)).all():
        raise ValueError(f"{what} must be binary (0/1 entries)")
    m = m.astype(np.int8)
    if (m != m.T).any():
        raise ValueError(f"{what} must be symmetric")
    if np.diagonal(m).any():
        raise ValueError(f"{what} must have a zero diagonal (no self-loops)")
    return m


def _is_connected(adj: np.ndarray) -> bool:
    r = adj.shape[0]
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for w in np.flatnonzero(adj[v]):
            if w not in seen:
                seen.add(int(w))
                frontier.append(int(w))
    return len(seen) == r


class Motif:
    """A connected pattern graph, classified as acyclic or cyclic.

    Use :func:`make_motif` (or the built-in instances) rather than the
    constructor; the factory validates its input.

    Attributes
    ----------
    adjacency : (r, r) int8 array, read-only
    r, s : node and edge counts
    shape_class : "acyclic" if the edge set is a tree, else "cyclic"
    name : optional label
    """

    def __init__(self, adjacency: np.ndarray, name: str | None = None):
        adj = _check_square_binary(adjacency, "motif adjacency")
        r = adj.shape[0]
        if r < 2:
            raise ValueError("a motif needs at least 2 nodes")
        if r > MAX_MOTIF_NODES:
            raise ValueError(f"motifs are capped at {MAX_MOTIF_NODES} nodes, got {r}")
        if not _is_connected(adj):
            raise NotConnectedError("motif must be connected")
        adj.setflags(write=False)
        self.adjacency = adj
        self.r = r
        self.s = int(adj.sum()) // 2
        # Connected, so acyclic (forest edge set) is equivalent to s == r - 1.
        self.shape_class = "acyclic" if self.s == r - 1 else "cyclic"
        self.name = name
        self.degrees = adj.sum(axis=1).astype(np.int64)
        self.edges = tuple((i, j) for i, j in _PAIRS[r] if adj[i, j])

    def __repr__(self) -> str:
        label = self.name or "motif"
        return f"Motif({label!r}, r={self.r}, s={self.s}, {self.shape_class})"

    @cached_property
    def variant_masks(self) -> tuple[int, ...]:
        """Distinct edge-set masks of all node relabelings of the motif."""
        masks = set()
        pairs = _PAIRS[self.r]
        for perm in itertools.permutations(range(self.r)):
            mask = 0
            for idx, (i, j) in enumerate(pairs):
                if self.adjacency[perm[i], perm[j]]:
                    mask |= 1 << idx
            masks.add(mask)
        return tuple(sorted(masks))

    @cached_property
    def h_table(self) -> np.ndarray:
        """Indicator of containment for every possible edge-set mask."""
        n_pairs = len(_PAIRS[self.r])
        table = np.zeros(1 << n_pairs, dtype=bool)
        for mask in range(1 << n_pairs):
            table[mask] = any((mask & vm) == vm for vm in self.variant_masks)
        return table

    @cached_property
    def containing_masks(self) -> np.ndarray:
        """All edge-set masks whose pattern contains the motif."""
        return np.flatnonzero(self.h_table).astype(np.int64)


def make_motif(adjacency, name: str | None = None) -> Motif:
    """Validate an adjacency matrix and build a :class:`Motif`."""
    return Motif(np.asarray(adjacency), name=name)


def contains(sub, motif: Motif) -> int:
    """Containment indicator: 1 iff ``sub`` contains the motif.

    Checks whether some permutation ``pi`` of the node labels satisfies
    ``sub >= R_pi`` entrywise, by enumerating permutations (at most
    ``r! = 120``) with an early degree-dominance prune.
    """
    sub = _check_square_binary(sub, "subgraph")
    r = motif.r
    if sub.shape[0] != r:
        raise ValueError(f"subgraph has {sub.shape[0]} nodes, motif needs {r}")
    sub_deg = np.sort(sub.sum(axis=1))[::-1]
    motif_deg = np.sort(motif.degrees)[::-1]
    if (sub_deg < motif_deg).any():
        return 0
    rows = sub.tolist()
    edges = motif.edges
    for perm in itertools.permutations(range(r)):
        if all(rows[perm[i]][perm[j]] for i, j in edges):
            return 1
    return 0


def containment_probability(motif: Motif, pair_probs: np.ndarray) -> np.ndarray:
    """Containment probability under independent Bernoulli edges.

    Parameters
    ----------
    pair_probs : (..., n_pairs) array
        Edge probabilities indexed by the lexicographic pair order of an
        r-node graph (``n_pairs = r*(r-1)/2``).

    Returns
    -------
    array of shape ``(...)`` with ``E[h(A_sub)]`` for each row, summing
    the probability of every containing edge pattern.
    """
    p = np.asarray(pair_probs, dtype=np.float64)
    n_pairs = len(_PAIRS[motif.r])
    if p.shape[-1] != n_pairs:
        raise ValueError(f"expected {n_pairs} pair probabilities, got {p.shape[-1]}")
    if (p < 0).any() or (p > 1).any():
        raise ValueError("edge probabilities must lie in [0, 1]")
    q = 1.0 - p
    total = np.zeros(p.shape[:-1], dtype=np.float64)
    for mask in motif.containing_masks:
        term = np.ones(p.shape[:-1], dtype=np.float64)
        for idx in range(n_pairs):
            term = term * (p[..., idx] if (mask >> idx) & 1 else q[..., idx])
        total += term
    return total


def conditional_expectation_h(wsub, motif: Motif) -> float:
    """Exact ``E[h(A_sub) | W_sub]`` for a matrix of edge probabilities.

    Enumerates all ``2^(r choose 2)`` binary edge patterns and sums the
    probability of those containing the motif.  At binary input this
    reduces to :func:`contains`.
    """
    w = np.asarray(wsub, dtype=np.float64)
    r = motif.r
    if w.ndim != 2 or w.shape != (r, r):
        raise ValueError(f"W_sub must be {r}x{r}, got shape {w.shape}")
    if (w != w.T).any():
        raise ValueError("W_sub must be symmetric")
    if np.diagonal(w).any():
        raise ValueError("W_sub must have a zero diagonal")
    if (w < 0).any() or (w > 1).any():
        raise ValueError("W_sub entries must lie in [0, 1]")
    pairs = _PAIRS[r]
    probs = np.array([w[i, j] for i, j in pairs])
    return float(containment_probability(motif, probs))


EDGE = make_motif([[0, 1], [1, 0]], name="edge")
TRIANGLE = make_motif([[0, 1, 1], [1, 0, 1], [1, 1, 0]], name="triangle")
VSHAPE = make_motif([[0, 1, 1], [1, 0, 0], [1, 0, 0]], name="vshape")
THREESTAR = make_motif(
    [[0, 1, 1, 1], [1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]], name="threestar"
)

_BUILTINS = {m.name: m for m in (EDGE, TRIANGLE, VSHAPE, THREESTAR)}


def builtin_motif(name: str) -> Motif:
    """Look up a built-in motif: edge, triangle, vshape, threestar."""
    try:
        return _BUILTINS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown motif {name!r}; built-ins: {sorted(_BUILTINS)}") from None


def motif_from_config(spec) -> Motif:
    """Build a motif from a config value.

    Accepts a built-in name or an edge-list mapping such as
    ``{"nodes": 4, "edges": [[1, 2], [1, 3], [1, 4]]}`` (1-based ids).
    """
    if isinstance(spec, str):
        return builtin_motif(spec)
    if isinstance(spec, Motif):
        return spec
    if not isinstance(spec, dict):
        raise ValueError(f"motif spec must be a name or mapping, got {type(spec).__name__}")
    unknown = set(spec) - {"nodes", "edges", "name"}
    if unknown:
        raise ValueError(f"unknown motif config keys: {sorted(unknown)}")
    r = int(spec["nodes"])
    adj = np.zeros((r, r), dtype=np.int8)
    for edge in spec["edges"]:
        i, j = int(edge[0]), int(edge[1])
        if not (1 <= i <= r and 1 <= j <= r):
            raise ValueError(f"edge {edge} out of range for {r} nodes (ids are 1-based)")
        if i == j:
            raise ValueError(f"self-loop {edge} not allowed")
        adj[i - 1, j - 1] = adj[j - 1, i - 1] = 1
    return make_motif(adj, name=spec.get("name"))
