"""Video embeddings: the deterministic reference embedder, the averaged
per-frame baseline, and import of externally computed embeddings.

The reference embedder is a fixed, training-free pipeline used for
desk-scale verification.  Per video it computes a pooled grayscale
summary of every frame, takes temporal statistics of those summaries
and of their consecutive differences, and projects through a seeded
random matrix with a tanh squash:

1. per frame: grayscale = channel mean in [0, 1], average-pooled to a
   16x16 grid, flattened to S_t in R^256
2. temporal differences D_t = S_{t+1} - S_t
3. f = [mean_t S, std_t S, mean_t D, std_t D] in R^1024
4. row = tanh(W f) with W a (dim, 1024) matrix of N(0,1)/sqrt(1024)
   entries drawn once from the seeded stream

The difference statistics make frame reordering visible, so temporal
distortions move the embedding, not just static ones.  Real network
features (e.g. action-recognition logits) enter via REMB import.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .prng import SplitMix64
from .tensorio import EmbeddingSet, VideoSet, load_embedding_file

POOL_GRID = 16
_FEATURE_DIM = 4 * POOL_GRID * POOL_GRID

AGGREGATION_MODES = ("mean", "pairwise_diff_mean")


@dataclass(frozen=True)
class EmbedderSpec:
    kind: str  # "reference" or "imported"
    dim: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("reference", "imported"):
            raise ValueError(f"unknown embedder kind {self.kind!r}")
        if self.kind == "reference" and self.dim < 1:
            raise ValueError("reference embedder needs dim >= 1")


def _pool_grid(gray: np.ndarray) -> np.ndarray:
    """Average-pool (..., H, W) down to (..., 16, 16) with edge bins
    absorbing the remainder when H or W is not divisible by 16."""
    h, w = gray.shape[-2], gray.shape[-1]
    if h < POOL_GRID or w < POOL_GRID:
        raise ValueError(f"frames must be at least {POOL_GRID}x{POOL_GRID}")
    row_edges = (np.arange(POOL_GRID + 1) * h) // POOL_GRID
    col_edges = (np.arange(POOL_GRID + 1) * w) // POOL_GRID
    sums = np.add.reduceat(gray, row_edges[:-1], axis=-2)
    sums = np.add.reduceat(sums, col_edges[:-1], axis=-1)
    counts = np.outer(np.diff(row_edges), np.diff(col_edges))
    return sums / counts


def video_features(v: VideoSet) -> np.ndarray:
    """The (N, 1024) temporal-statistics feature matrix (steps 1-3)."""
    if v.t < 2:
        raise ValueError("reference embedding needs at least 2 frames")
    gray = v.normalized().mean(axis=-1)  # (N,T,H,W)
    s = _pool_grid(gray).reshape(v.n, v.t, -1)  # (N,T,256)
    d = np.diff(s, axis=1)  # (N,T-1,256)
    return np.concatenate(
        [s.mean(axis=1), s.std(axis=1), d.mean(axis=1), d.std(axis=1)],
        axis=1)


def projection_matrix(dim: int, seed: int) -> np.ndarray:
    rng = SplitMix64(seed)
    w = rng.normals(dim * _FEATURE_DIM).reshape(dim, _FEATURE_DIM)
    return w / np.sqrt(_FEATURE_DIM)


def reference_embed(v: VideoSet, dim: int, seed: int) -> EmbeddingSet:
    """Deterministic embedding of a video set; rows lie in (-1, 1)."""
    feats = video_features(v)
    w = projection_matrix(dim, seed)
    return EmbeddingSet(np.tanh(feats @ w.T).astype(np.float32))


def avg_frame_embed(v: VideoSet, frame_embedder, aggregation: str = "mean") -> EmbeddingSet:
    """Per-frame embeddings collapsed to one vector per video.

    ``frame_embedder`` maps one (H, W, C) uint8 frame to a 1-D vector.
    Mode "mean" averages the frame embeddings; "pairwise_diff_mean"
    averages consecutive differences (which telescopes to
    (e_last - e_first) / (T - 1)).
    """
    if aggregation not in AGGREGATION_MODES:
        raise ValueError(f"unknown aggregation {aggregation!r}")
    if aggregation == "pairwise_diff_mean" and v.t < 2:
        raise ValueError("pairwise differences need at least 2 frames")
    rows = []
    for i in range(v.n):
        emb = np.stack([np.asarray(frame_embedder(v.data[i, t]), dtype=np.float64)
                        for t in range(v.t)])
        if aggregation == "mean":
            rows.append(emb.mean(axis=0))
        else:
            rows.append(np.diff(emb, axis=0).mean(axis=0))
    return EmbeddingSet(np.stack(rows).astype(np.float32))


def embed_or_import(spec: EmbedderSpec, source) -> EmbeddingSet:
    """Reference spec: embed a VideoSet.  Imported spec: load a REMB path."""
    if spec.kind == "reference":
        if not isinstance(source, VideoSet):
            raise TypeError("reference embedder expects a VideoSet")
        return reference_embed(source, spec.dim, spec.seed)
    return load_embedding_file(source)
