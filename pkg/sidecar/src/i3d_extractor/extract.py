"""Batch inference from RVID videos to REMB embeddings.

The network is a 3-D convolutional action-recognition model (an
inflated-ResNet video classifier) with a 400-way or 600-way class head
matching the Kinetics-400 / Kinetics-600 label spaces.  Features can be
taken from the class logits or from the global pooling layer below
them.

Preprocessing follows the model's published convention: frames are
scaled to [0, 1], normalized with the Kinetics channel statistics
(mean 0.43216/0.394666/0.37645, std 0.22803/0.22145/0.216989) and
bilinearly resized to 112x112.

Weights must be supplied as a local state-dict file; they are
hub-distributed and not bundled here.  For contract testing without
the pretrained weights, a deterministic seeded random initialization
can be requested explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
from torchvision.models.video import r3d_18

from vidmetrics.tensorio import (EmbeddingSet, load_video_file,
                                 save_embedding_file)

VARIANT_CLASSES = {"kinetics400": 400, "kinetics600": 600}
LAYERS = ("logits", "pooling")

KINETICS_MEAN = (0.43216, 0.394666, 0.37645)
KINETICS_STD = (0.22803, 0.22145, 0.216989)

INPUT_SIZE = 112
MIN_FRAMES = 8


class MissingWeightsError(Exception):
    pass


@dataclass(frozen=True)
class ExtractorConfig:
    layer: str = "logits"
    variant: str = "kinetics400"
    input_size: int = INPUT_SIZE
    batch_size: int = 16
    weights: str | None = None
    random_init_seed: int | None = None

    def __post_init__(self):
        if self.layer not in LAYERS:
            raise ValueError(f"unknown layer {self.layer!r}")
        if self.variant not in VARIANT_CLASSES:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.batch_size < 1:
            raise ValueError("batch size must be positive")


def build_model(config: ExtractorConfig) -> torch.nn.Module:
    num_classes = VARIANT_CLASSES[config.variant]
    if config.weights is None and config.random_init_seed is None:
        raise MissingWeightsError(
            "no weights file given; pass weights=... (hub-distributed state "
            "dict) or request random_init_seed=... for contract testing")
    if config.weights is not None:
        model = r3d_18(weights=None, num_classes=num_classes)
        state = torch.load(config.weights, map_location="cpu")
        model.load_state_dict(state)
    else:
        torch.manual_seed(config.random_init_seed)
        model = r3d_18(weights=None, num_classes=num_classes)
    model.eval()
    return model


def _load_clips(source) -> np.ndarray:
    """One (T, H, W, 3) uint8 array per clip, from a file or directory."""
    path = Path(source)
    if path.is_dir():
        files = sorted(path.glob("*.rvid"))
        if not files:
            raise FileNotFoundError(f"no .rvid files in {path}")
    else:
        files = [path]
    clips = []
    for f in files:
        v = load_video_file(f)
        if v.c == 1:
            data = np.repeat(v.data, 3, axis=4)
        else:
            data = v.data
        clips.extend(data[i] for i in range(v.n))
    return clips


def preprocess(clip: np.ndarray, input_size: int) -> torch.Tensor:
    """(T, H, W, 3) uint8 -> normalized (3, T, S, S) float tensor."""
    if clip.shape[0] < MIN_FRAMES:
        raise ValueError(
            f"clip has {clip.shape[0]} frames; the network needs at least "
            f"{MIN_FRAMES}")
    x = torch.from_numpy(clip.astype(np.float32) / 255.0)
    x = x.permute(3, 0, 1, 2)  # (3,T,H,W)
    x = torch.nn.functional.interpolate(
        x, size=(input_size, input_size), mode="bilinear", align_corners=False)
    mean = torch.tensor(KINETICS_MEAN).view(3, 1, 1, 1)
    std = torch.tensor(KINETICS_STD).view(3, 1, 1, 1)
    return (x - mean) / std


def _forward(model: torch.nn.Module, batch: torch.Tensor, layer: str) -> torch.Tensor:
    if layer == "logits":
        return model(batch)
    # pooling: everything up to and including the global average pool
    x = model.stem(batch)
    x = model.layer1(x)
    x = model.layer2(x)
    x = model.layer3(x)
    x = model.layer4(x)
    x = model.avgpool(x)
    return x.flatten(1)


def extract_embeddings(source, config: ExtractorConfig) -> EmbeddingSet:
    """Embed every clip of ``source``; row order follows input order."""
    model = build_model(config)
    clips = _load_clips(source)
    rows = []
    with torch.no_grad():
        for start in range(0, len(clips), config.batch_size):
            batch = torch.stack([preprocess(c, config.input_size)
                                 for c in clips[start:start + config.batch_size]])
            rows.append(_forward(model, batch, config.layer).numpy())
    return EmbeddingSet(np.concatenate(rows).astype(np.float32))


def extract(source, out_path, config: ExtractorConfig) -> EmbeddingSet:
    """Embed ``source`` and write the result as a REMB file."""
    e = extract_embeddings(source, config)
    save_embedding_file(e, out_path)
    return e
