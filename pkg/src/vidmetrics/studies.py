"""Statistical studies over the metrics.

* sample-size bias of FVD (distance between two disjoint subsets of
  one distribution, as a function of subset size)
* noise-intensity sweeps (metric between clean videos and perturbed
  copies, one row per noise kind and level)
* correlation coefficients between metric sequences
* agreement between pairwise human preferences and a metric ordering

Study results are labeled rows (condition, value, stderr, repeats)
serialized as CSV with header ``condition,value,stderr,repeats``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import distmetrics, perturb
from .embedder import EmbedderSpec, reference_embed
from .prng import SplitMix64, child_seed
from .tensorio import EmbeddingSet, VideoSet


@dataclass(frozen=True)
class StudyRow:
    condition: str
    value: float
    stderr: float | None
    repeats: int


@dataclass
class StudyTable:
    rows: list = field(default_factory=list)

    def add(self, condition: str, value: float, stderr=None, repeats: int = 1):
        if repeats < 2 and stderr is not None:
            raise ValueError("standard error requires at least 2 repeats")
        self.rows.append(StudyRow(condition, float(value), stderr, repeats))

    def values(self) -> np.ndarray:
        return np.array([r.value for r in self.rows])

    def to_csv(self) -> str:
        lines = ["condition,value,stderr,repeats"]
        for r in self.rows:
            err = "" if r.stderr is None else f"{r.stderr:.6f}"
            lines.append(f"{r.condition},{r.value:.6f},{err},{r.repeats}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "StudyTable":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != "condition,value,stderr,repeats":
            raise ValueError("not a study table CSV")
        table = cls()
        for ln in lines[1:]:
            cond, value, stderr, repeats = ln.split(",")
            table.rows.append(StudyRow(
                cond, float(value),
                None if stderr == "" else float(stderr), int(repeats)))
        return table


def bias_study(e: EmbeddingSet, sizes, repeats: int, seed: int) -> StudyTable:
    """FVD between two disjoint random subsets, per subset size.

    Reports mean and standard error (sample std / sqrt(repeats)) over
    the repeats.  Subsets are drawn without replacement, so the two
    halves of each draw never overlap.
    """
    sizes = list(sizes)
    if repeats < 2:
        raise ValueError("need at least 2 repeats for a standard error")
    if 2 * max(sizes) > e.n:
        raise ValueError(f"largest size {max(sizes)} needs {2 * max(sizes)} samples, "
                         f"have {e.n}")
    table = StudyTable()
    cell = 0
    for s in sizes:
        vals = []
        for _ in range(repeats):
            rng = SplitMix64(child_seed(seed, cell))
            cell += 1
            idx = rng.sample_without_replacement(e.n, 2 * s)
            a = EmbeddingSet(e.data[idx[:s]])
            b = EmbeddingSet(e.data[idx[s:]])
            vals.append(distmetrics.fvd(a, b).value)
        vals = np.array(vals)
        stderr = float(vals.std(ddof=1) / np.sqrt(repeats))
        table.add(f"size={s}", float(vals.mean()), stderr, repeats)
    return table


def noise_study(clean: VideoSet, kinds, embed: EmbedderSpec,
                metric: str = "fvd", seed: int = 0) -> StudyTable:
    """Metric between clean videos and each (kind, intensity) distortion.

    Includes a level-0 row per kind (clean vs clean) as the baseline.
    """
    if metric not in ("fvd", "kvd"):
        raise ValueError(f"unknown metric {metric!r}")
    if embed.kind != "reference":
        raise ValueError("noise study needs a computable embedder")
    metric_fn = distmetrics.fvd if metric == "fvd" else distmetrics.kvd
    clean_emb = reference_embed(clean, embed.dim, embed.seed)
    table = StudyTable()
    cell = 0
    for kind in kinds:
        for level in [0] + perturb.intensity_levels(kind):
            noisy = perturb.apply_noise(clean, kind, level, child_seed(seed, cell))
            cell += 1
            noisy_emb = reference_embed(noisy, embed.dim, embed.seed)
            table.add(f"{kind}:{level}", metric_fn(clean_emb, noisy_emb).value)
    return table


def _validate_pair(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("inputs must be 1-D sequences of equal length")
    if a.size < 2:
        raise ValueError("need at least 2 observations")
    if np.all(a == a[0]) or np.all(b == b[0]):
        raise ValueError("correlation undefined for a constant sequence")
    return a, b


def pearson(a, b) -> float:
    a, b = _validate_pair(a, b)
    ac = a - a.mean()
    bc = b - b.mean()
    return float(ac @ bc / np.sqrt((ac @ ac) * (bc @ bc)))


def _average_ranks(x: np.ndarray) -> np.ndarray:
    # Ties receive the average of the rank positions they span.
    order = np.argsort(x, kind="stable")
    ranks = np.empty(x.size)
    i = 0
    while i < x.size:
        j = i
        while j + 1 < x.size and x[order[j + 1]] == x[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(a, b) -> float:
    """Rank correlation: Pearson of average ranks."""
    a, b = _validate_pair(a, b)
    return pearson(_average_ranks(a), _average_ranks(b))


def kendall(a, b) -> float:
    """Kendall's tau-b (tie-adjusted)."""
    a, b = _validate_pair(a, b)
    n = a.size
    concordant = discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            da = np.sign(a[i] - a[j])
            db = np.sign(b[i] - b[j])
            if da != 0 and db != 0:
                if da == db:
                    concordant += 1
                else:
                    discordant += 1
    n0 = n * (n - 1) // 2
    denom = np.sqrt((n0 - _tie_count(a)) * (n0 - _tie_count(b)))
    return float((concordant - discordant) / denom)


def _tie_count(x: np.ndarray) -> int:
    _, counts = np.unique(x, return_counts=True)
    return int(np.sum(counts * (counts - 1) // 2))


VERDICTS = ("a_better", "b_better", "tie")


@dataclass(frozen=True)
class PairwisePreference:
    item_a: str
    item_b: str
    verdict: str
    comparison_id: str = ""
    rater_id: str = ""

    def __post_init__(self):
        if self.item_a == self.item_b:
            raise ValueError("a preference must compare two distinct items")
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")


def rater_agreement(prefs, scores, lower_is_better: bool,
                    tie_credit: float = 0.0) -> float:
    """Fraction of preferences matching the metric-induced ordering.

    Tie verdicts count as non-agreement by default; ``tie_credit`` can
    grant them partial credit instead.
    """
    prefs = list(prefs)
    if not prefs:
        raise ValueError("no preferences given")
    total = 0.0
    for p in prefs:
        if p.item_a not in scores or p.item_b not in scores:
            missing = p.item_a if p.item_a not in scores else p.item_b
            raise KeyError(f"no score for model {missing!r}")
        if p.verdict == "tie":
            total += tie_credit
            continue
        sa, sb = scores[p.item_a], scores[p.item_b]
        if sa == sb:
            continue  # metric cannot order the pair
        a_wins = (sa < sb) if lower_is_better else (sa > sb)
        if (p.verdict == "a_better") == a_wins:
            total += 1.0
    return total / len(prefs)


def inter_rater_agreement(grouped) -> float:
    """Fraction of comparisons whose first two verdicts are equal.

    ``grouped`` maps a comparison id to its verdicts in rater order.
    """
    if not grouped:
        raise ValueError("no comparisons given")
    agree = 0
    for cid, verdicts in grouped.items():
        verdicts = list(verdicts)
        if len(verdicts) < 2:
            raise ValueError(f"comparison {cid!r} has fewer than 2 verdicts")
        agree += verdicts[0] == verdicts[1]
    return agree / len(grouped)


def load_preferences(text: str):
    """Parse preference CSV: comparison_id,rater_id,item_a,item_b,verdict."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "comparison_id,rater_id,item_a,item_b,verdict":
        raise ValueError("not a preference CSV")
    prefs = []
    for ln in lines[1:]:
        cid, rid, a, b, verdict = ln.split(",")
        prefs.append(PairwisePreference(a, b, verdict, cid, rid))
    return prefs


def group_by_comparison(prefs):
    grouped: dict = {}
    for p in prefs:
        grouped.setdefault(p.comparison_id, []).append(p.verdict)
    return grouped
