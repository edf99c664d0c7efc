"""Graphon models and population quantities.

A graphon is a symmetric function ``f: [0,1]^2 -> [0,1]``.  Together
with a sparsity factor ``rho`` it generates random graphs: latent node
positions are i.i.d. Uniform[0,1], edge probabilities are
``W_ij = rho * f(X_i, X_j)``, and edges are independent Bernoulli draws
given ``W``.  Population moments and the population expansion
coefficients are computed exactly for block models (finite latent
enumeration) and by Monte Carlo integration otherwise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .adjacency import AdjacencyMatrix
from .errors import DegeneracyError
from .motif import Motif, _PAIRS, containment_probability
from .rng import stream, substream_seed

__all__ = [
    "Graphon",
    "LatentSample",
    "ProbabilityMatrix",
    "block_model",
    "smooth_graphon",
    "nonsmooth_graphon",
    "custom_graphon",
    "builtin_graphon",
    "graphon_from_config",
    "sample_latent",
    "probability_matrix",
    "sample_adjacency",
    "sample_graph",
    "population_moment",
    "population_edgeworth_coefficients",
    "MomentEstimate",
    "PopulationCoefficients",
]

_CHECK_SEED = 0x5EED_C4EC


class Graphon:
    """A pointwise-evaluable symmetric edge-probability function.

    ``evaluate(u, v)`` must accept numpy arrays and broadcast.  Block
    models additionally carry their membership probabilities ``pi`` and
    block matrix ``B`` so population quantities can be enumerated
    exactly.  The convention that ``f`` integrates to a fixed constant
    is not enforced.
    """

    def __init__(self, evaluator, kind: str, name: str | None = None,
                 pi: np.ndarray | None = None, B: np.ndarray | None = None,
                 check: bool = True):
        self._evaluator = evaluator
        self.kind = kind
        self.name = name or kind
        self.pi = pi
        self.B = B
        if check:
            self._check_pointwise()

    @property
    def is_block_model(self) -> bool:
        return self.pi is not None

    def evaluate(self, u, v):
        return self._evaluator(np.asarray(u, dtype=np.float64),
                               np.asarray(v, dtype=np.float64))

    def _check_pointwise(self, n_pairs: int = 256) -> None:
        # Spot-check symmetry and range on random pairs (fixed stream).
        rng = stream(_CHECK_SEED, "graphon-check", self.kind)
        u, v = rng.random((2, n_pairs))
        fu = np.asarray(self.evaluate(u, v), dtype=np.float64)
        fv = np.asarray(self.evaluate(v, u), dtype=np.float64)
        if not np.allclose(fu, fv, atol=1e-9, rtol=0.0):
            raise ValueError("graphon is not symmetric: f(u,v) != f(v,u) on sampled pairs")
        if (fu < 0).any() or (fu > 1).any():
            raise ValueError("graphon values leave [0, 1] on sampled pairs")

    def __repr__(self) -> str:
        return f"Graphon({self.name!r}, kind={self.kind})"


def block_model(pi, B, name: str | None = None) -> Graphon:
    """Stochastic block model graphon with membership probabilities ``pi``."""
    pi = np.asarray(pi, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if pi.ndim != 1 or (pi < 0).any():
        raise ValueError("pi must be a vector of nonnegative membership probabilities")
    if abs(pi.sum() - 1.0) > 1e-12:
        raise ValueError(f"membership probabilities must sum to 1, got {pi.sum()!r}")
    K = pi.size
    if B.shape != (K, K):
        raise ValueError(f"B must be {K}x{K} to match pi, got {B.shape}")
    if (B != B.T).any():
        raise ValueError("B must be symmetric")
    if (B < 0).any() or (B > 1).any():
        raise ValueError("B entries must lie in [0, 1]")
    cuts = np.cumsum(pi)[:-1]

    def evaluate(u, v):
        bu = np.searchsorted(cuts, u, side="right")
        bv = np.searchsorted(cuts, v, side="right")
        return B[bu, bv]

    return Graphon(evaluate, kind="BlockModel", name=name or "BlockModel", pi=pi, B=B)


def smooth_graphon() -> Graphon:
    """Smooth full-rank graphon ``(u^2+v^2)/3 * cos(1/(u^2+v^2)) + 0.15``.

    The removable singularity at ``u = v = 0`` takes the value 0.15: the
    prefactor ``(u^2+v^2)/3`` vanishes while the cosine stays bounded.
    """

    def evaluate(u, v):
        t = u * u + v * v
        safe = np.where(t > 0.0, t, 1.0)
        core = np.where(t > 0.0, t / 3.0 * np.cos(1.0 / safe), 0.0)
        return core + 0.15

    return Graphon(evaluate, kind="SmoothGraphon", name="SmoothGraphon")


def nonsmooth_graphon() -> Graphon:
    """High-fluctuation graphon built around the center of the square.

    The cosine argument is transcribed literally from its source,
    ``0.1/((u-1/2)^2+(v-1/2)^2)^{-1} + 0.01``, i.e. a division by an
    inverse, which simplifies to ``0.1*((u-1/2)^2+(v-1/2)^2) + 0.01``.
    The slash-then-negative-exponent printing is ambiguous; if the
    intended reading was ``0.1/(...) + 0.01``, build that variant with
    :func:`custom_graphon`.
    """

    def evaluate(u, v):
        d2 = (u - 0.5) ** 2 + (v - 0.5) ** 2
        return 0.5 * np.cos(0.1 * d2 + 0.01) * np.maximum(u, v) ** (2.0 / 3.0) + 0.4

    return Graphon(evaluate, kind="NonSmoothGraphon", name="NonSmoothGraphon")


def custom_graphon(fn, name: str = "Custom", check: bool = True) -> Graphon:
    """Wrap a vectorized symmetric function ``[0,1]^2 -> [0,1]``."""
    return Graphon(fn, kind="Custom", name=name, check=check)


# Paper-default block model: two equal communities, B = (0.6, 0.2; 0.2, 0.2).
def _default_block_model() -> Graphon:
    return block_model([0.5, 0.5], [[0.6, 0.2], [0.2, 0.2]])


def builtin_graphon(name: str) -> Graphon:
    """Named built-ins: blockmodel, smoothgraphon, nonsmoothgraphon."""
    key = name.lower().replace("_", "").replace("-", "")
    if key in ("blockmodel", "block"):
        return _default_block_model()
    if key in ("smoothgraphon", "smooth"):
        return smooth_graphon()
    if key in ("nonsmoothgraphon", "nonsmooth"):
        return nonsmooth_graphon()
    raise ValueError(f"unknown graphon {name!r}")


def graphon_from_config(spec) -> Graphon:
    """Build a graphon from a config value (name or mapping).

    Mappings use ``{"kind": "BlockModel", "pi": [...], "B": [[...]]}``;
    the Smooth/NonSmooth built-ins need only their kind.  Custom
    graphons hold arbitrary callables and cannot be described in JSON.
    """
    if isinstance(spec, str):
        return builtin_graphon(spec)
    if isinstance(spec, Graphon):
        return spec
    if not isinstance(spec, dict):
        raise ValueError(f"graphon spec must be a name or mapping, got {type(spec).__name__}")
    kind = spec.get("kind")
    if kind == "BlockModel":
        unknown = set(spec) - {"kind", "pi", "B", "name"}
        if unknown:
            raise ValueError(f"unknown graphon config keys: {sorted(unknown)}")
        if "pi" not in spec or "B" not in spec:
            return _default_block_model()
        return block_model(spec["pi"], spec["B"], name=spec.get("name"))
    if kind in ("SmoothGraphon", "NonSmoothGraphon"):
        unknown = set(spec) - {"kind", "name"}
        if unknown:
            raise ValueError(f"unknown graphon config keys: {sorted(unknown)}")
        return smooth_graphon() if kind == "SmoothGraphon" else nonsmooth_graphon()
    if kind == "Custom":
        raise ValueError("Custom graphons are constructed programmatically, not from config")
    raise ValueError(f"unknown graphon kind {kind!r}")


@dataclass(frozen=True)
class LatentSample:
    """Latent node positions ``X_1..X_n`` with the seed that drew them."""

    positions: np.ndarray
    seed: int

    @property
    def n(self) -> int:
        return self.positions.size


@dataclass(frozen=True)
class ProbabilityMatrix:
    """Symmetric hollow matrix of edge probabilities with its sparsity factor."""

    W: np.ndarray
    rho: float

    @property
    def n(self) -> int:
        return self.W.shape[0]


def sample_latent(n: int, seed: int) -> LatentSample:
    """Draw ``n`` i.i.d. Uniform[0,1] latent positions, deterministically in the seed."""
    if n < 2:
        raise ValueError(f"need at least 2 nodes, got {n}")
    positions = stream(seed, "latent").random(n)
    positions.setflags(write=False)
    return LatentSample(positions=positions, seed=seed)


def probability_matrix(g: Graphon, x: LatentSample, rho: float) -> ProbabilityMatrix:
    """Edge probabilities ``W_ij = rho * f(X_i, X_j)`` with a zero diagonal."""
    if not (0.0 < rho <= 1.0):
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    pos = x.positions
    W = rho * np.asarray(g.evaluate(pos[:, None], pos[None, :]), dtype=np.float64)
    if (W < 0).any() or (W > 1).any():
        raise ValueError("edge probabilities leave [0, 1]; graphon must map into [0, 1]")
    W = np.triu(W, 1)
    W = W + W.T
    W.setflags(write=False)
    return ProbabilityMatrix(W=W, rho=float(rho))


def sample_adjacency(W: ProbabilityMatrix, seed: int) -> AdjacencyMatrix:
    """Independent Bernoulli(W_ij) edges for i < j, mirrored below the diagonal."""
    n = W.n
    iu = np.triu_indices(n, 1)
    u = stream(seed, "edges").random(iu[0].size)
    a = np.zeros((n, n), dtype=np.int8)
    a[iu] = u < W.W[iu]
    a |= a.T
    return AdjacencyMatrix(a)


def sample_graph(g: Graphon, n: int, rho: float, seed: int) -> AdjacencyMatrix:
    """Latents, probabilities, and adjacency in one call.

    The latent and edge draws use independent labeled substreams of the
    same seed, so this equals composing the three sampling operations
    with that seed.
    """
    x = sample_latent(n, seed)
    return sample_adjacency(probability_matrix(g, x, rho), seed)


@dataclass(frozen=True)
class MomentEstimate:
    """A population-moment value with its Monte-Carlo standard error (0 when exact)."""

    value: float
    standard_error: float
    method: str

    def __float__(self) -> float:
        return self.value


def _pair_probs_from_coords(g: Graphon, rho: float, coords: np.ndarray) -> np.ndarray:
    """Map latent r-tuples (m, r) to edge-probability rows (m, n_pairs)."""
    r = coords.shape[1]
    pairs = _PAIRS[r]
    cols = [rho * np.asarray(g.evaluate(coords[:, i], coords[:, j]), dtype=np.float64)
            for i, j in pairs]
    return np.column_stack(cols)


def _expected_h_given_coords(g: Graphon, rho: float, motif: Motif, coords: np.ndarray) -> np.ndarray:
    return containment_probability(motif, _pair_probs_from_coords(g, rho, coords))


def _block_assignments(K: int, length: int):
    return itertools.product(range(K), repeat=length)


def _block_expected_h(g: Graphon, rho: float, motif: Motif, fixed: tuple[int, ...]) -> float:
    """E[h(W_sub)] with the first ``len(fixed)`` node blocks held fixed."""
    pi, B = g.pi, g.B
    K = pi.size
    r = motif.r
    pairs = _PAIRS[r]
    total = 0.0
    for rest in _block_assignments(K, r - len(fixed)):
        ks = fixed + rest
        weight = math.prod(pi[k] for k in rest)
        if weight == 0.0:
            continue
        probs = np.array([rho * B[ks[i], ks[j]] for i, j in pairs])
        total += weight * float(containment_probability(motif, probs))
    return total


def population_moment(g: Graphon, rho: float, motif: Motif, method: str = "exact",
                      m: int = 100_000, seed: int = 0) -> MomentEstimate:
    """Population moment ``mu_n = E[h(W_{1..r})]``.

    ``method="exact"`` enumerates block assignments (block models only).
    ``method="monte-carlo"`` averages the exact conditional containment
    probability over ``m`` i.i.d. latent r-tuples and reports the
    standard error of that average.
    """
    if not (0.0 < rho <= 1.0):
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    if method == "exact":
        if not g.is_block_model:
            raise ValueError("exact population moments require a block model")
        value = _block_expected_h(g, rho, motif, fixed=())
        return MomentEstimate(value=value, standard_error=0.0, method="exact")
    if method == "monte-carlo":
        if m < 10_000:
            raise ValueError(f"Monte-Carlo needs m >= 10^4 tuples, got {m}")
        rng = stream(seed, "population-moment")
        coords = rng.random((m, motif.r))
        h_vals = _expected_h_given_coords(g, rho, motif, coords)
        se = float(h_vals.std(ddof=1) / math.sqrt(m))
        return MomentEstimate(value=float(h_vals.mean()), standard_error=se,
                              method="monte-carlo")
    raise ValueError(f"unknown method {method!r}; use 'exact' or 'monte-carlo'")


@dataclass(frozen=True)
class PopulationCoefficients:
    """Population expansion coefficients with Monte-Carlo standard errors."""

    xi1: float
    xi1_sq: float
    e_g1_cubed: float
    e_g1g1g2: float
    se_xi1_sq: float
    se_e_g1_cubed: float
    se_e_g1g1g2: float
    method: str
    # Diagnostic: the projection integrates to zero by construction, so
    # its sampled mean should vanish within noise.
    g1_mean: float = 0.0
    se_g1_mean: float = 0.0


def _population_coefficients_block(g: Graphon, rho: float, motif: Motif) -> PopulationCoefficients:
    pi = g.pi
    K = pi.size
    mu = _block_expected_h(g, rho, motif, fixed=())
    g1 = np.array([_block_expected_h(g, rho, motif, (k,)) - mu for k in range(K)])
    xi1_sq = float(np.sum(pi * g1 ** 2))
    e_g1_cubed = float(np.sum(pi * g1 ** 3))
    h2 = np.array([[_block_expected_h(g, rho, motif, (k, l)) for l in range(K)]
                   for k in range(K)])
    g2 = h2 - mu - g1[:, None] - g1[None, :]
    weights = pi[:, None] * pi[None, :]
    e_g1g1g2 = float(np.sum(weights * g1[:, None] * g1[None, :] * g2))
    return PopulationCoefficients(
        xi1=math.sqrt(max(xi1_sq, 0.0)), xi1_sq=xi1_sq,
        e_g1_cubed=e_g1_cubed, e_g1g1g2=e_g1g1g2,
        se_xi1_sq=0.0, se_e_g1_cubed=0.0, se_e_g1g1g2=0.0, method="exact",
        g1_mean=float(np.sum(pi * g1)), se_g1_mean=0.0,
    )


def population_edgeworth_coefficients(g: Graphon, rho: float, motif: Motif,
                                      m: int = 100_000, seed: int = 0) -> PopulationCoefficients:
    """Population coefficients ``xi_1``, ``E[g1^3]``, ``E[g1 g1 g2]``.

    Block models are enumerated exactly.  Otherwise each latent draw is
    paired with independent single-draw conditional averages of the
    containment probability, so products of independent replicates are
    unbiased for the products of projections; ``mu`` enters through its
    own Monte-Carlo average of the same size.

    Raises
    ------
    DegeneracyError
        When ``xi_1`` falls below ``1e-10 * rho**s`` (degenerate linear
        projection, e.g. any Erdos-Renyi graphon).
    """
    if not (0.0 < rho <= 1.0):
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    if g.is_block_model:
        out = _population_coefficients_block(g, rho, motif)
    else:
        if m < 10_000:
            raise ValueError(f"Monte-Carlo needs m >= 10^4 draws, got {m}")
        out = _population_coefficients_mc(g, rho, motif, m, seed)
    if out.xi1 < 1e-10 * rho ** motif.s:
        raise DegeneracyError(
            f"degenerate linear projection: xi1={out.xi1:.3e} below 1e-10*rho^s; "
            "the expansion does not apply")
    return out


def _population_coefficients_mc(g: Graphon, rho: float, motif: Motif,
                                m: int, seed: int) -> PopulationCoefficients:
    r = motif.r
    rng = stream(seed, "population-coefficients")
    mu = population_moment(g, rho, motif, method="monte-carlo", m=max(m, 10_000),
                           seed=substream_seed(seed, "pop-coeff-mu")).value

    x = rng.random(m)
    y = rng.random(m)

    def g1_draw() -> tuple[np.ndarray, np.ndarray]:
        """One single-draw replicate of g1 at x and at y."""
        tx = rng.random((m, r - 1))
        ty = rng.random((m, r - 1))
        hx = _expected_h_given_coords(g, rho, motif, np.column_stack([x, tx]))
        hy = _expected_h_given_coords(g, rho, motif, np.column_stack([y, ty]))
        return hx - mu, hy - mu

    a1, b1 = g1_draw()
    a2, b2 = g1_draw()
    a3, _ = g1_draw()

    sq = a1 * a2
    cu = a1 * a2 * a3
    # h2(x, y): conditional average with both first coordinates fixed.
    t2 = rng.random((m, r - 2))
    h2 = _expected_h_given_coords(g, rho, motif, np.column_stack([x, y, t2]))
    a4, b4 = g1_draw()
    bracket = h2 - mu - a4 - b4
    prod = a3 * b1 * bracket

    def mean_se(v: np.ndarray) -> tuple[float, float]:
        return float(v.mean()), float(v.std(ddof=1) / math.sqrt(m))

    xi1_sq, se_sq = mean_se(sq)
    e3, se3 = mean_se(cu)
    e112, se112 = mean_se(prod)
    g1_mean, se_g1 = mean_se(a1)
    return PopulationCoefficients(
        xi1=math.sqrt(max(xi1_sq, 0.0)), xi1_sq=xi1_sq,
        e_g1_cubed=e3, e_g1g1g2=e112,
        se_xi1_sq=se_sq, se_e_g1_cubed=se3, se_e_g1g1g2=se112,
        method="monte-carlo", g1_mean=g1_mean, se_g1_mean=se_g1,
    )
