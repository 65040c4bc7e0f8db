"""Frame-level reference metrics: PSNR, SSIM and best-of-N aggregation.

Both metrics compare frames in normalized [0, 1] space and are averaged
over the frames of each video.  The best-of-N protocol scores several
candidate sets against the same reference and keeps, per video, the
best frame-averaged value.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .tensorio import ShapeMismatchError, VideoSet

PSNR_CAP_DB = 100.0

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_C1 = 0.01 ** 2
SSIM_C2 = 0.03 ** 2

_METRICS = ("psnr", "ssim")


@dataclass(frozen=True)
class FrameMetricReport:
    metric: str
    per_video: np.ndarray  # frame-averaged score per video
    aggregate: float

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("video_index,score\n")
        for i, s in enumerate(self.per_video):
            buf.write(f"{i},{s:.6f}\n")
        buf.write(f"aggregate,{self.aggregate:.6f}\n")
        return buf.getvalue()


def psnr(a: np.ndarray, b: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB between two [0, 1] frames.

    Identical frames are capped at 100 dB so aggregation stays finite.
    """
    if a.shape != b.shape:
        raise ShapeMismatchError(f"frame shapes differ: {a.shape} vs {b.shape}")
    mse = float(np.mean((np.asarray(a, dtype=np.float64) - b) ** 2))
    if mse == 0.0:
        return PSNR_CAP_DB
    return min(10.0 * np.log10(1.0 / mse), PSNR_CAP_DB)


def _ssim_window() -> np.ndarray:
    half = (SSIM_WINDOW - 1) // 2
    x = np.arange(-half, half + 1, dtype=np.float64)
    k = np.exp(-0.5 * (x / SSIM_SIGMA) ** 2)
    return k / k.sum()


def _filter_valid(img: np.ndarray) -> np.ndarray:
    # Separable windowed mean; only fully-interior window positions kept.
    k = _ssim_window()
    half = (SSIM_WINDOW - 1) // 2
    out = ndimage.convolve1d(img, k, axis=0, mode="constant")
    out = ndimage.convolve1d(out, k, axis=1, mode="constant")
    return out[half:-half, half:-half]


def _ssim_single_channel(x: np.ndarray, y: np.ndarray) -> float:
    mu_x = _filter_valid(x)
    mu_y = _filter_valid(y)
    var_x = _filter_valid(x * x) - mu_x ** 2
    var_y = _filter_valid(y * y) - mu_y ** 2
    cov = _filter_valid(x * y) - mu_x * mu_y
    num = (2.0 * mu_x * mu_y + SSIM_C1) * (2.0 * cov + SSIM_C2)
    den = (mu_x ** 2 + mu_y ** 2 + SSIM_C1) * (var_x + var_y + SSIM_C2)
    return float(np.mean(num / den))


def ssim(a: np.ndarray, b: np.ndarray) -> float:
    """Structural similarity between two [0, 1] frames.

    11x11 Gaussian window with sigma 1.5, computed per channel and
    averaged over channels and window positions.
    """
    if a.shape != b.shape:
        raise ShapeMismatchError(f"frame shapes differ: {a.shape} vs {b.shape}")
    if a.shape[0] < SSIM_WINDOW or a.shape[1] < SSIM_WINDOW:
        raise ValueError(f"frame smaller than the {SSIM_WINDOW}x{SSIM_WINDOW} window")
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim == 2:
        a = a[:, :, None]
        b = b[:, :, None]
    scores = [_ssim_single_channel(a[:, :, c], b[:, :, c]) for c in range(a.shape[2])]
    return float(np.mean(scores))


def _metric_fn(metric: str):
    if metric not in _METRICS:
        raise ValueError(f"unknown frame metric {metric!r}")
    return psnr if metric == "psnr" else ssim


def frame_average(metric: str, real: VideoSet, gen: VideoSet) -> FrameMetricReport:
    """Per video, the metric averaged over index-paired frames."""
    fn = _metric_fn(metric)
    if real.data.shape != gen.data.shape:
        raise ShapeMismatchError(
            f"video shapes differ: {real.data.shape} vs {gen.data.shape}")
    xr = real.normalized()
    xg = gen.normalized()
    per_video = np.array([
        np.mean([fn(xr[i, t], xg[i, t]) for t in range(real.t)])
        for i in range(real.n)
    ])
    return FrameMetricReport(metric, per_video, float(per_video.mean()))


def best_of_n(metric: str, real: VideoSet, candidates) -> FrameMetricReport:
    """Per video, the best frame-averaged score over candidate sets."""
    candidates = list(candidates)
    if not candidates:
        raise ValueError("candidate list is empty")
    reports = [frame_average(metric, real, c) for c in candidates]
    per_video = np.max([r.per_video for r in reports], axis=0)
    return FrameMetricReport(metric, per_video, float(per_video.mean()))
