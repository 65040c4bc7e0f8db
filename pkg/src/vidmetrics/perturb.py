"""Calibrated noise injection for videos.

Four static distortions act on individual frames (black rectangle,
Gaussian blur, Gaussian noise mixing, salt & pepper) and four temporal
distortions act on the frame sequence (local swap, global swap,
interleaving, switching).  Each comes with a fixed schedule mapping an
integer intensity level to its concrete parameter:

================  ==========================  ==========================
kind              parameter                   levels
================  ==========================  ==========================
black_rect        side fraction of frame      0.15 0.30 0.45 0.60 0.75
gauss_blur        kernel sigma                1 2 3 4 5
gauss_mix         noise share of the mix      0.15 0.30 0.45 0.60 0.75
salt_pepper       replacement probability     0.1 0.2 0.3 0.4 0.5
swap_local        number of swaps             4 8 12 16 20 24
swap_global       number of swaps             4 8 12 16 20 24
interleave        number of sequences         2 3 4 5 6
switch            frames until switch         1 2 3 4 5
================  ==========================  ==========================

Every stochastic operation takes an explicit seed; per-video randomness
uses sub-seeds derived from (seed, video index) so that serial and
per-video-parallel execution agree bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .prng import SplitMix64, child_seed
from .tensorio import VideoSet, from_normalized

STATIC_KINDS = ("black_rect", "gauss_blur", "gauss_mix", "salt_pepper")
TEMPORAL_KINDS = ("swap_local", "swap_global", "interleave", "switch")
ALL_KINDS = STATIC_KINDS + TEMPORAL_KINDS

_TABLE = {
    "black_rect": {1: 0.15, 2: 0.30, 3: 0.45, 4: 0.60, 5: 0.75},
    "gauss_blur": {1: 1.0, 2: 2.0, 3: 3.0, 4: 4.0, 5: 5.0},
    "gauss_mix": {1: 0.15, 2: 0.30, 3: 0.45, 4: 0.60, 5: 0.75},
    "salt_pepper": {1: 0.1, 2: 0.2, 3: 0.3, 4: 0.4, 5: 0.5},
    "swap_local": {1: 4, 2: 8, 3: 12, 4: 16, 5: 20, 6: 24},
    "swap_global": {1: 4, 2: 8, 3: 12, 4: 16, 5: 20, 6: 24},
    "interleave": {1: 2, 2: 3, 3: 4, 4: 5, 5: 6},
    "switch": {1: 1, 2: 2, 3: 3, 4: 4, 5: 5},
}


@dataclass(frozen=True)
class NoiseSpec:
    kind: str
    intensity: int
    seed: int

    def __post_init__(self):
        intensity_param(self.kind, self.intensity)


def intensity_levels(kind: str):
    if kind not in _TABLE:
        raise ValueError(f"unknown noise kind {kind!r}")
    return sorted(_TABLE[kind])


def intensity_param(kind: str, intensity: int):
    """Tabulated parameter value for a (kind, intensity) pair."""
    if kind not in _TABLE:
        raise ValueError(f"unknown noise kind {kind!r}")
    levels = _TABLE[kind]
    if intensity not in levels:
        raise ValueError(
            f"intensity {intensity} out of range for {kind} "
            f"(valid: {sorted(levels)})")
    return levels[intensity]


def _round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


def black_rectangle(v: VideoSet, intensity: int, seed: int) -> VideoSet:
    """Zero out one rectangle per video, same location in every frame."""
    p = intensity_param("black_rect", intensity)
    hr = _round_half_up(p * v.h)
    wr = _round_half_up(p * v.w)
    out = v.data.copy()
    for i in range(v.n):
        rng = SplitMix64(child_seed(seed, i))
        top = rng.randint(v.h - hr + 1)
        left = rng.randint(v.w - wr + 1)
        out[i, :, top:top + hr, left:left + wr, :] = 0
    return VideoSet(out)


def _gauss_kernel(sigma: float) -> np.ndarray:
    radius = int(np.ceil(3.0 * sigma))
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-0.5 * (x / sigma) ** 2)
    return k / k.sum()


def gaussian_blur(v: VideoSet, intensity: int) -> VideoSet:
    """Per-channel truncated Gaussian smoothing of every frame.

    Truncation radius ceil(3*sigma), reflect padding (edge pixel not
    repeated), kernel renormalized to sum 1.
    """
    sigma = intensity_param("gauss_blur", intensity)
    kernel = _gauss_kernel(sigma)
    x = v.data.astype(np.float64)
    x = ndimage.convolve1d(x, kernel, axis=2, mode="mirror")
    x = ndimage.convolve1d(x, kernel, axis=3, mode="mirror")
    return VideoSet(np.rint(np.clip(x, 0.0, 255.0)).astype(np.uint8))


def gaussian_mix(v: VideoSet, intensity: int, seed: int) -> VideoSet:
    """Convex combination of each frame with standard Gaussian noise.

    Computed in normalized [0, 1] space, clamped, then re-quantized.
    """
    alpha = intensity_param("gauss_mix", intensity)
    x = v.normalized()
    out = np.empty_like(x)
    per_video = v.t * v.h * v.w * v.c
    for i in range(v.n):
        rng = SplitMix64(child_seed(seed, i))
        z = rng.normals(per_video).reshape(x.shape[1:])
        out[i] = (1.0 - alpha) * x[i] + alpha * z
    return from_normalized(out)


def salt_pepper(v: VideoSet, intensity: int, seed: int) -> VideoSet:
    """Replace each pixel with probability q by black or white (50/50).

    One uniform draw per pixel: u < q/2 is salt, q/2 <= u < q is pepper.
    All channels of a replaced pixel move together.
    """
    q = intensity_param("salt_pepper", intensity)
    out = v.data.copy()
    per_video = v.t * v.h * v.w
    for i in range(v.n):
        rng = SplitMix64(child_seed(seed, i))
        u = rng.floats(per_video).reshape(v.t, v.h, v.w)
        out[i][u < q / 2.0] = 255
        out[i][(u >= q / 2.0) & (u < q)] = 0
    return VideoSet(out)


def swap_local(v: VideoSet, intensity: int, seed: int) -> VideoSet:
    """Exchange randomly chosen frames with their right neighbor.

    Swap positions are distinct and applied in ascending order, which
    fixes the semantics when adjacent positions are both selected.
    """
    n_swaps = intensity_param("swap_local", intensity)
    if n_swaps > v.t - 1:
        raise ValueError(f"{n_swaps} swaps need at least {n_swaps + 1} frames")
    out = v.data.copy()
    for i in range(v.n):
        rng = SplitMix64(child_seed(seed, i))
        positions = np.sort(rng.sample_without_replacement(v.t - 1, n_swaps))
        frames = out[i]
        for p in positions:
            frames[[p, p + 1]] = frames[[p + 1, p]]
    return VideoSet(out)


def swap_global(v: VideoSet, intensity: int, seed: int) -> VideoSet:
    """Exchange randomly chosen disjoint pairs of frames."""
    n_swaps = intensity_param("swap_global", intensity)
    if 2 * n_swaps > v.t:
        raise ValueError(f"{n_swaps} pair swaps need at least {2 * n_swaps} frames")
    out = v.data.copy()
    for i in range(v.n):
        rng = SplitMix64(child_seed(seed, i))
        chosen = rng.sample_without_replacement(v.t, 2 * n_swaps)
        frames = out[i]
        for k in range(n_swaps):
            a, b = chosen[2 * k], chosen[2 * k + 1]
            frames[[a, b]] = frames[[b, a]]
    return VideoSet(out)


def interleave(vs: VideoSet, intensity: int, seed: int) -> VideoSet:
    """Mix frames of k distinct videos into k rotated interleavings.

    Videos are grouped into disjoint k-tuples; rotation r of a tuple
    takes frame t from member (t + r) mod k.  Output count is the
    number of complete tuples times k.
    """
    k = intensity_param("interleave", intensity)
    if vs.n < k:
        raise ValueError(f"interleaving {k} sequences needs at least {k} videos")
    rng = SplitMix64(seed)
    perm = rng.permutation(vs.n)
    n_groups = vs.n // k
    t_idx = np.arange(vs.t)
    outputs = []
    for g in range(n_groups):
        members = vs.data[perm[g * k:(g + 1) * k]]
        for r in range(k):
            outputs.append(members[(t_idx + r) % k, t_idx])
    return VideoSet(np.stack(outputs))


def switch(vs: VideoSet, intensity: int, seed: int) -> VideoSet:
    """Jump from one video to another after f frames.

    Videos are paired without replacement; each pair (A, B) yields the
    two outputs A[:f]+B[f:] and B[:f]+A[f:].
    """
    f = intensity_param("switch", intensity)
    if vs.n < 2:
        raise ValueError("switching needs at least 2 videos")
    if f >= vs.t:
        raise ValueError(f"switch point {f} must precede the last frame")
    rng = SplitMix64(seed)
    perm = rng.permutation(vs.n)
    n_pairs = vs.n // 2
    outputs = []
    for p in range(n_pairs):
        a, b = vs.data[perm[2 * p]], vs.data[perm[2 * p + 1]]
        outputs.append(np.concatenate([a[:f], b[f:]], axis=0))
        outputs.append(np.concatenate([b[:f], a[f:]], axis=0))
    return VideoSet(np.stack(outputs))


def apply_noise(v: VideoSet, kind: str, intensity: int, seed: int) -> VideoSet:
    """Dispatch on noise kind; intensity 0 returns the input unchanged."""
    if intensity == 0:
        return VideoSet(v.data.copy())
    if kind == "black_rect":
        return black_rectangle(v, intensity, seed)
    if kind == "gauss_blur":
        return gaussian_blur(v, intensity)
    if kind == "gauss_mix":
        return gaussian_mix(v, intensity, seed)
    if kind == "salt_pepper":
        return salt_pepper(v, intensity, seed)
    if kind == "swap_local":
        return swap_local(v, intensity, seed)
    if kind == "swap_global":
        return swap_global(v, intensity, seed)
    if kind == "interleave":
        return interleave(v, intensity, seed)
    if kind == "switch":
        return switch(v, intensity, seed)
    raise ValueError(f"unknown noise kind {kind!r}")
