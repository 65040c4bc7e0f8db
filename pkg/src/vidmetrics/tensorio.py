"""Video / embedding containers and their binary file formats.

Two tiny little-endian container formats are defined so that other
tools (in any language) can exchange data with this package bit-exactly:

RVID (videos)::

    magic "RVID" | version u32=1 | N,T,H,W,C u32 | dtype u8=0 | payload

    payload is N*T*H*W*C unsigned bytes, row-major (N,T,H,W,C).

REMB (embeddings)::

    magic "REMB" | version u32=1 | N,D u32 | dtype u8=1 | payload

    payload is N*D IEEE-754 float32 values, row-major (N,D).

Loads validate magic, version, dtype code and exact payload length;
embedding payloads are additionally checked to be finite.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .prng import SplitMix64

RVID_MAGIC = b"RVID"
REMB_MAGIC = b"REMB"
FORMAT_VERSION = 1
_DTYPE_U8 = 0
_DTYPE_F32 = 1


class FormatError(Exception):
    """Base class for container format violations."""


class BadMagicError(FormatError):
    pass


class UnsupportedVersionError(FormatError):
    pass


class TruncatedPayloadError(FormatError):
    pass


class NonFiniteDataError(FormatError):
    pass


class ShapeMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class VideoSet:
    """N videos as a dense uint8 tensor of shape (N, T, H, W, C)."""

    data: np.ndarray

    def __post_init__(self):
        d = self.data
        if d.dtype != np.uint8:
            raise TypeError("video data must be uint8")
        if d.ndim != 5:
            raise ValueError("video data must have shape (N,T,H,W,C)")
        n, t, h, w, c = d.shape
        if n < 1 or t < 1:
            raise ValueError("need N >= 1 and T >= 1")
        if c not in (1, 3):
            raise ValueError("channel count must be 1 or 3")

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def t(self) -> int:
        return self.data.shape[1]

    @property
    def h(self) -> int:
        return self.data.shape[2]

    @property
    def w(self) -> int:
        return self.data.shape[3]

    @property
    def c(self) -> int:
        return self.data.shape[4]

    def normalized(self) -> np.ndarray:
        """Float64 copy scaled to [0, 1]; the working space for metrics."""
        return self.data.astype(np.float64) / 255.0


def from_normalized(x: np.ndarray) -> VideoSet:
    """Re-quantize a [0, 1] tensor back to bytes by rounding."""
    return VideoSet(np.rint(np.clip(x, 0.0, 1.0) * 255.0).astype(np.uint8))


@dataclass(frozen=True)
class EmbeddingSet:
    """N embedding vectors of dimension D, float32, all entries finite."""

    data: np.ndarray

    def __post_init__(self):
        d = self.data
        if d.dtype != np.float32:
            raise TypeError("embedding data must be float32")
        if d.ndim != 2:
            raise ValueError("embedding data must have shape (N,D)")
        if not np.isfinite(d).all():
            raise NonFiniteDataError("embedding contains NaN or Inf")

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def d(self) -> int:
        return self.data.shape[1]


def _read_exact(f, n: int, what: str) -> bytes:
    buf = f.read(n)
    if len(buf) != n:
        raise TruncatedPayloadError(f"{what}: expected {n} bytes, got {len(buf)}")
    return buf


def _check_header(f, magic: bytes):
    got = _read_exact(f, 4, "magic")
    if got != magic:
        raise BadMagicError(f"expected magic {magic!r}, got {got!r}")
    (version,) = struct.unpack("<I", _read_exact(f, 4, "version"))
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(f"unsupported version {version}")


def save_video_file(v: VideoSet, path) -> None:
    with open(path, "wb") as f:
        f.write(RVID_MAGIC)
        f.write(struct.pack("<I", FORMAT_VERSION))
        f.write(struct.pack("<5I", *v.data.shape))
        f.write(struct.pack("<B", _DTYPE_U8))
        f.write(v.data.tobytes())


def load_video_file(path) -> VideoSet:
    with open(path, "rb") as f:
        _check_header(f, RVID_MAGIC)
        shape = struct.unpack("<5I", _read_exact(f, 20, "shape"))
        (dtype_code,) = struct.unpack("<B", _read_exact(f, 1, "dtype"))
        if dtype_code != _DTYPE_U8:
            raise FormatError(f"unexpected dtype code {dtype_code} in RVID file")
        size = int(np.prod(shape, dtype=np.int64))
        payload = _read_exact(f, size, "payload")
        if f.read(1):
            raise TruncatedPayloadError("trailing bytes after payload")
    data = np.frombuffer(payload, dtype=np.uint8).reshape(shape)
    return VideoSet(data.copy())


def save_embedding_file(e: EmbeddingSet, path) -> None:
    with open(path, "wb") as f:
        f.write(REMB_MAGIC)
        f.write(struct.pack("<I", FORMAT_VERSION))
        f.write(struct.pack("<2I", *e.data.shape))
        f.write(struct.pack("<B", _DTYPE_F32))
        f.write(e.data.astype("<f4", copy=False).tobytes())


def load_embedding_file(path) -> EmbeddingSet:
    with open(path, "rb") as f:
        _check_header(f, REMB_MAGIC)
        n, d = struct.unpack("<2I", _read_exact(f, 8, "shape"))
        (dtype_code,) = struct.unpack("<B", _read_exact(f, 1, "dtype"))
        if dtype_code != _DTYPE_F32:
            raise FormatError(f"unexpected dtype code {dtype_code} in REMB file")
        payload = _read_exact(f, 4 * n * d, "payload")
        if f.read(1):
            raise TruncatedPayloadError("trailing bytes after payload")
    data = np.frombuffer(payload, dtype="<f4").reshape(n, d)
    if not np.isfinite(data).all():
        raise NonFiniteDataError("embedding file contains NaN or Inf")
    return EmbeddingSet(data.copy())


def assemble_eval_sequence(context, generated: VideoSet) -> VideoSet:
    """Prepend context frames to generated frames, video by video.

    ``context`` may be None (no context frames), in which case the
    result equals ``generated``.
    """
    if context is None:
        return VideoSet(generated.data.copy())
    if context.data.shape[0] != generated.data.shape[0] or \
            context.data.shape[2:] != generated.data.shape[2:]:
        raise ShapeMismatchError(
            f"context {context.data.shape} does not match generated "
            f"{generated.data.shape} on (N,H,W,C)")
    return VideoSet(np.concatenate([context.data, generated.data], axis=1))


def split_sequence(v: VideoSet, t_context: int):
    """Inverse of assemble: (first t_context frames, remaining frames)."""
    if not 0 < t_context < v.t:
        raise ValueError("split point must lie strictly inside the sequence")
    return (VideoSet(v.data[:, :t_context].copy()),
            VideoSet(v.data[:, t_context:].copy()))


def _subsequence_offsets(n: int, t: int, length: int, seed: int) -> np.ndarray:
    rng = SplitMix64(seed)
    return np.array([rng.randint(t - length + 1) for _ in range(n)])


def subsequences(v: VideoSet, length: int, seed: int) -> VideoSet:
    """Extract one consecutive window of ``length`` frames per video.

    Start offsets are drawn uniformly with the seeded stream.
    """
    if length > v.t:
        raise ValueError(f"window length {length} exceeds T={v.t}")
    offsets = _subsequence_offsets(v.n, v.t, length, seed)
    out = np.stack([v.data[i, o:o + length] for i, o in enumerate(offsets)])
    return VideoSet(out)
