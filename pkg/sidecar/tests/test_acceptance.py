"""Cross-component acceptance: extractor output must satisfy the main
toolkit's embedding contract, and FVD on real network features must
show the expected sample-size bias decay.
"""

import numpy as np

from i3d_extractor.extract import ExtractorConfig, extract
from vidmetrics.studies import bias_study
from vidmetrics.synthgen import ScenarioSpec, generate
from vidmetrics.tensorio import load_embedding_file, save_video_file


def test_a10_cross_component_contract(tmp_path):
    clips = tmp_path / "clips.rvid"
    save_video_file(
        generate(ScenarioSpec("sprite_to_border", 16, 32, 32, seed=9), 48),
        clips)
    out = tmp_path / "clips.remb"
    extract(clips, out, ExtractorConfig(batch_size=8, random_init_seed=3))

    e = load_embedding_file(out)  # no validation error on load
    assert e.d == 400 and e.n == 48

    table = bias_study(e, [4, 8, 16], repeats=8, seed=5)
    vals = table.values()
    ok = bool((vals > 0).all() and vals[0] > vals[1] > vals[2])
    print(f"[{'PASS' if ok else 'FAIL'}] A10 cross-component contract  "
          "(FVD " + " > ".join(f"{v:.3g}" for v in vals) + ")")
    assert ok
