"""Evaluation toolkit for generative models of video.

Distribution-level metrics (FVD, KVD) over video embeddings,
frame-level baselines (PSNR, SSIM), calibrated static and temporal
noise injection, procedural synthetic corpora and the statistical
studies tying them together.
"""

from .distmetrics import (GaussianStats, KernelSpec, MetricValue, fit_gaussian,
                          frechet_distance, fvd, kvd, mmd_unbiased,
                          polynomial_kernel, sqrtm_psd)
from .embedder import EmbedderSpec, avg_frame_embed, embed_or_import, reference_embed
from .framemetrics import FrameMetricReport, best_of_n, frame_average, psnr, ssim
from .perturb import NoiseSpec, apply_noise, intensity_levels, intensity_param
from .studies import (PairwisePreference, StudyTable, bias_study,
                      inter_rater_agreement, kendall, noise_study, pearson,
                      rater_agreement, spearman)
from .synthgen import ScenarioSpec, gen_collector, gen_sprite_to_border
from .tensorio import (EmbeddingSet, VideoSet, assemble_eval_sequence,
                       load_embedding_file, load_video_file,
                       save_embedding_file, save_video_file, split_sequence,
                       subsequences)

__version__ = "0.1.0"
