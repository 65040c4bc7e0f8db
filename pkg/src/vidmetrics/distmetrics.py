"""Distribution-level video metrics: FVD and KVD.

FVD is the Gaussian-closed-form 2-Wasserstein (Frechet) distance

    |mu_R - mu_G|^2 + Tr(Sigma_R + Sigma_G - 2 (Sigma_R Sigma_G)^{1/2})

between Gaussians fitted to two embedding sets.  The trace term is
evaluated through the symmetric conjugation
Tr((Sigma_R^{1/2} Sigma_G Sigma_R^{1/2})^{1/2}) so every eigenproblem
stays symmetric PSD.

KVD is the unbiased estimator of the squared maximum mean discrepancy
with the cubic polynomial kernel k(a, b) = (a'b + 1)^3.  Being
unbiased, it may come out negative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SYMMETRY_TOL = 1e-8
KERNEL_DEGREE = 3
KERNEL_OFFSET = 1.0


@dataclass(frozen=True)
class GaussianStats:
    mu: np.ndarray
    sigma: np.ndarray
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least 2 samples")
        d = self.mu.shape[0]
        if self.sigma.shape != (d, d):
            raise ValueError("covariance shape inconsistent with mean")


@dataclass(frozen=True)
class MetricValue:
    value: float
    metric: str  # "fvd" or "kvd"
    n_real: int
    n_gen: int


@dataclass(frozen=True)
class KernelSpec:
    degree: int = KERNEL_DEGREE
    offset: float = KERNEL_OFFSET


def fit_gaussian(e) -> GaussianStats:
    """Sample mean and unbiased (n-1 divisor) covariance, symmetrized."""
    x = np.asarray(e.data if hasattr(e, "data") else e, dtype=np.float64)
    n = x.shape[0]
    if n < 2:
        raise ValueError("need at least 2 samples to fit a Gaussian")
    mu = x.mean(axis=0)
    centered = x - mu
    sigma = centered.T @ centered / (n - 1)
    sigma = (sigma + sigma.T) / 2.0
    return GaussianStats(mu, sigma, n)


def sqrtm_psd(a: np.ndarray, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Symmetric PSD square root via eigendecomposition.

    Eigenvalues are clamped at zero before square-rooting, which
    absorbs the tiny negative values that near-singular covariances
    produce.
    """
    a = np.asarray(a, dtype=np.float64)
    scale = np.linalg.norm(a)
    if scale > 0 and np.linalg.norm(a - a.T) > tol * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    a = (a + a.T) / 2.0
    vals, vecs = np.linalg.eigh(a)
    vals = np.clip(vals, 0.0, None)
    s = (vecs * np.sqrt(vals)) @ vecs.T
    return (s + s.T) / 2.0


def frechet_distance(r: GaussianStats, g: GaussianStats) -> float:
    if r.mu.shape != g.mu.shape:
        raise ValueError("dimension mismatch between the two Gaussians")
    delta = r.mu - g.mu
    sqrt_r = sqrtm_psd(r.sigma)
    inner = sqrt_r @ g.sigma @ sqrt_r
    trace_term = np.trace(sqrtm_psd(inner))
    val = float(delta @ delta + np.trace(r.sigma) + np.trace(g.sigma)
                - 2.0 * trace_term)
    return max(val, 0.0)  # round-off can dip slightly below zero


def fvd(real, gen) -> MetricValue:
    value = frechet_distance(fit_gaussian(real), fit_gaussian(gen))
    return MetricValue(value, "fvd", real.n, gen.n)


def polynomial_kernel(a: np.ndarray, b: np.ndarray,
                      spec: KernelSpec = KernelSpec()) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError("kernel arguments must have equal dimension")
    return float((a @ b + spec.offset) ** spec.degree)


def _gram(x: np.ndarray, y: np.ndarray, spec: KernelSpec) -> np.ndarray:
    return (x @ y.T + spec.offset) ** spec.degree


def mmd_unbiased(x, y, spec: KernelSpec = KernelSpec()) -> float:
    """Unbiased estimate of the squared MMD between two sample sets.

    Both diagonal-excluding sums run over i != j; the cross term keeps
    its full double sum.
    """
    xa = np.asarray(x.data if hasattr(x, "data") else x, dtype=np.float64)
    ya = np.asarray(y.data if hasattr(y, "data") else y, dtype=np.float64)
    m, n = xa.shape[0], ya.shape[0]
    if m < 2 or n < 2:
        raise ValueError("need at least 2 samples on each side")
    if xa.shape[1] != ya.shape[1]:
        raise ValueError("dimension mismatch between sample sets")
    kxx = _gram(xa, xa, spec)
    kyy = _gram(ya, ya, spec)
    kxy = _gram(xa, ya, spec)
    term_x = (kxx.sum() - np.trace(kxx)) / (m * (m - 1))
    term_y = (kyy.sum() - np.trace(kyy)) / (n * (n - 1))
    term_xy = 2.0 * kxy.sum() / (m * n)
    return float(term_x - term_xy + term_y)


def kvd(real, gen) -> MetricValue:
    value = mmd_unbiased(real, gen)
    return MetricValue(value, "kvd", real.n, gen.n)
