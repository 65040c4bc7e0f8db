import hashlib
import struct

import numpy as np
import pytest

from vidmetrics import tensorio
from vidmetrics.tensorio import (BadMagicError, EmbeddingSet, NonFiniteDataError,
                                 ShapeMismatchError, TruncatedPayloadError,
                                 UnsupportedVersionError, VideoSet,
                                 assemble_eval_sequence, load_embedding_file,
                                 load_video_file, save_embedding_file,
                                 save_video_file, split_sequence, subsequences)


def small_videos(n=2, t=4, h=6, w=5, c=3, seed=0):
    rng = np.random.default_rng(seed)
    return VideoSet(rng.integers(0, 256, size=(n, t, h, w, c), dtype=np.uint8))


def test_videoset_invariants():
    with pytest.raises(TypeError):
        VideoSet(np.zeros((1, 1, 2, 2, 1), dtype=np.float32))
    with pytest.raises(ValueError):
        VideoSet(np.zeros((1, 2, 2, 1), dtype=np.uint8))
    with pytest.raises(ValueError):
        VideoSet(np.zeros((1, 1, 2, 2, 2), dtype=np.uint8))


def test_embeddingset_rejects_nonfinite():
    with pytest.raises(NonFiniteDataError):
        EmbeddingSet(np.array([[0.0, np.nan]], dtype=np.float32))


def test_smallest_wellformed_video_file(tmp_path):
    path = tmp_path / "v.rvid"
    payload = bytes(range(8))
    path.write_bytes(b"RVID" + struct.pack("<I", 1)
                     + struct.pack("<5I", 1, 2, 2, 2, 1)
                     + struct.pack("<B", 0) + payload)
    v = load_video_file(path)
    assert v.data.shape == (1, 2, 2, 2, 1)
    assert v.data.tobytes() == payload


def test_bad_magic(tmp_path):
    path = tmp_path / "v.rvid"
    path.write_bytes(b"XVID" + bytes(29))
    with pytest.raises(BadMagicError):
        load_video_file(path)


def test_unsupported_version(tmp_path):
    path = tmp_path / "v.rvid"
    path.write_bytes(b"RVID" + struct.pack("<I", 2) + bytes(100))
    with pytest.raises(UnsupportedVersionError):
        load_video_file(path)


def test_truncated_payload(tmp_path):
    path = tmp_path / "v.rvid"
    path.write_bytes(b"RVID" + struct.pack("<I", 1)
                     + struct.pack("<5I", 1, 2, 2, 2, 2)
                     + struct.pack("<B", 0) + bytes(15))  # header says 16
    with pytest.raises(TruncatedPayloadError):
        load_video_file(path)


def test_video_roundtrip_bit_exact(tmp_path):
    v = small_videos()
    path = tmp_path / "v.rvid"
    save_video_file(v, path)
    loaded = load_video_file(path)
    assert (loaded.data == v.data).all()
    assert loaded.n == 2


def test_two_saves_byte_identical(tmp_path):
    v = small_videos(seed=3)
    p1, p2 = tmp_path / "a.rvid", tmp_path / "b.rvid"
    save_video_file(v, p1)
    save_video_file(v, p2)
    assert hashlib.sha256(p1.read_bytes()).digest() == \
           hashlib.sha256(p2.read_bytes()).digest()


def test_embedding_roundtrip_exact(tmp_path):
    e = EmbeddingSet(np.array([[1.5, -2.25, 3.0], [0.0, 0.125, -1.0]],
                              dtype=np.float32))
    path = tmp_path / "e.remb"
    save_embedding_file(e, path)
    loaded = load_embedding_file(path)
    assert (loaded.data == e.data).all()
    assert (loaded.n, loaded.d) == (2, 3)


def test_embedding_nan_payload_rejected(tmp_path):
    path = tmp_path / "e.remb"
    payload = np.array([[1.0, np.nan]], dtype="<f4").tobytes()
    path.write_bytes(b"REMB" + struct.pack("<I", 1) + struct.pack("<2I", 1, 2)
                     + struct.pack("<B", 1) + payload)
    with pytest.raises(NonFiniteDataError):
        load_embedding_file(path)


def test_wide_embedding_file_loads(tmp_path):
    # D=400 is the width written by the external logits extractor.
    e = EmbeddingSet(np.random.default_rng(0).normal(size=(3, 400)).astype(np.float32))
    path = tmp_path / "wide.remb"
    save_embedding_file(e, path)
    assert load_embedding_file(path).d == 400


def test_assemble_eval_sequence():
    ctx = small_videos(t=2, seed=1)
    gen = small_videos(t=14, seed=2)
    out = assemble_eval_sequence(ctx, gen)
    assert out.t == 16
    assert (out.data[:, :2] == ctx.data).all()
    assert (out.data[0, 0] == ctx.data[0, 0]).all()


def test_assemble_without_context_is_identity():
    gen = small_videos(seed=4)
    out = assemble_eval_sequence(None, gen)
    assert (out.data == gen.data).all()


def test_assemble_shape_mismatch():
    ctx = small_videos(h=8, seed=1)
    gen = small_videos(h=6, seed=2)
    with pytest.raises(ShapeMismatchError):
        assemble_eval_sequence(ctx, gen)


def test_assemble_then_split_recovers_inputs():
    ctx = small_videos(t=3, seed=5)
    gen = small_videos(t=7, seed=6)
    back_ctx, back_gen = split_sequence(assemble_eval_sequence(ctx, gen), 3)
    assert (back_ctx.data == ctx.data).all()
    assert (back_gen.data == gen.data).all()


def test_subsequences_full_length_is_identity():
    v = small_videos(seed=7)
    out = subsequences(v, v.t, seed=9)
    assert (out.data == v.data).all()


def test_subsequences_windows_are_consecutive():
    v = small_videos(n=5, t=30, seed=8)
    offsets = tensorio._subsequence_offsets(5, 30, 16, seed=13)
    out = subsequences(v, 16, seed=13)
    for i, o in enumerate(offsets):
        assert (out.data[i] == v.data[i, o:o + 16]).all()


def test_subsequences_deterministic():
    v = small_videos(n=4, t=20, seed=9)
    a = subsequences(v, 5, seed=77)
    b = subsequences(v, 5, seed=77)
    assert (a.data == b.data).all()


def test_subsequences_too_long():
    v = small_videos(t=4)
    with pytest.raises(ValueError):
        subsequences(v, 5, seed=0)
