import hashlib
import os

import numpy as np
import pytest

from vidmetrics import cli
from vidmetrics.studies import StudyTable
from vidmetrics.tensorio import (EmbeddingSet, load_embedding_file,
                                 load_video_file, save_embedding_file,
                                 save_video_file)


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def gen_rvid(tmp_path, capsys):
    path = tmp_path / "clean.rvid"
    code, _, _ = run_cli(capsys, "gen", "--scenario", "sprite", "--n", "8",
                         "--t", "8", "--h", "32", "--w", "32",
                         "--seed", "5", "--out", str(path))
    assert code == 0
    return path


def test_gen_writes_valid_file(gen_rvid):
    v = load_video_file(gen_rvid)
    assert v.data.shape == (8, 8, 32, 32, 3)


def test_perturb_and_embed_pipeline(gen_rvid, tmp_path, capsys):
    noisy = tmp_path / "noisy.rvid"
    code, _, _ = run_cli(capsys, "perturb", "--in", str(gen_rvid), "--out",
                         str(noisy), "--kind", "salt_pepper",
                         "--intensity", "3", "--seed", "2")
    assert code == 0
    emb = tmp_path / "clean.remb"
    code, _, _ = run_cli(capsys, "embed", "--in", str(gen_rvid), "--out",
                         str(emb), "--embedder", "reference",
                         "--dim", "16", "--seed", "3")
    assert code == 0
    assert load_embedding_file(emb).d == 16


def test_fvd_self_is_zero(gen_rvid, tmp_path, capsys):
    emb = tmp_path / "x.remb"
    run_cli(capsys, "embed", "--in", str(gen_rvid), "--out", str(emb),
            "--dim", "16", "--seed", "3")
    code, out, _ = run_cli(capsys, "fvd", "--real", str(emb), "--gen", str(emb))
    assert code == 0
    assert out.startswith("fvd=0.000000 ")
    assert "n_real=8 n_gen=8" in out


def test_fvd_size_mismatch_guard(tmp_path, capsys):
    rng = np.random.default_rng(0)
    a, b = tmp_path / "a.remb", tmp_path / "b.remb"
    save_embedding_file(EmbeddingSet(rng.normal(size=(8, 4)).astype(np.float32)), a)
    save_embedding_file(EmbeddingSet(rng.normal(size=(6, 4)).astype(np.float32)), b)
    code, out, err = run_cli(capsys, "fvd", "--real", str(a), "--gen", str(b))
    assert code == 1
    assert out == ""
    assert "sample size" in err
    code, out, _ = run_cli(capsys, "fvd", "--real", str(a), "--gen", str(b),
                           "--allow-size-mismatch")
    assert code == 0
    assert "n_real=8 n_gen=6" in out


def test_kvd_subcommand(tmp_path, capsys):
    rng = np.random.default_rng(1)
    a = tmp_path / "a.remb"
    save_embedding_file(EmbeddingSet(rng.normal(size=(6, 3)).astype(np.float32)), a)
    code, out, _ = run_cli(capsys, "kvd", "--real", str(a), "--gen", str(a))
    assert code == 0
    assert out.startswith("kvd=")


def test_framemetric_report(gen_rvid, capsys):
    code, out, _ = run_cli(capsys, "framemetric", "--metric", "ssim",
                           "--real", str(gen_rvid), "--gen", str(gen_rvid))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "video_index,score"
    assert lines[-1] == "aggregate,1.000000"


def test_framemetric_best_of_dir(gen_rvid, tmp_path, capsys):
    cand_dir = tmp_path / "cands"
    cand_dir.mkdir()
    v = load_video_file(gen_rvid)
    save_video_file(v, cand_dir / "exact.rvid")
    noisy = tmp_path / "noisy.rvid"
    run_cli(capsys, "perturb", "--in", str(gen_rvid), "--out", str(noisy),
            "--kind", "gauss_mix", "--intensity", "4", "--seed", "9")
    code, out, _ = run_cli(capsys, "framemetric", "--metric", "ssim",
                           "--real", str(gen_rvid), "--gen", str(noisy),
                           "--best-of-dir", str(cand_dir))
    assert code == 0
    assert out.strip().splitlines()[-1] == "aggregate,1.000000"


def test_bias_study_command(tmp_path, capsys):
    rng = np.random.default_rng(2)
    emb = tmp_path / "e.remb"
    save_embedding_file(EmbeddingSet(rng.normal(size=(200, 8)).astype(np.float32)), emb)
    out_csv = tmp_path / "bias.csv"
    code, _, _ = run_cli(capsys, "bias-study", "--in", str(emb),
                         "--sizes", "16,64", "--repeats", "5",
                         "--seed", "4", "--out", str(out_csv))
    assert code == 0
    table = StudyTable.from_csv(out_csv.read_text())
    assert [r.condition for r in table.rows] == ["size=16", "size=64"]
    assert table.rows[0].value > table.rows[1].value


def test_noise_study_command_and_pipeline_consistency(gen_rvid, tmp_path, capsys):
    out_csv = tmp_path / "noise.csv"
    code, _, _ = run_cli(capsys, "noise-study", "--in", str(gen_rvid),
                         "--kinds", "salt_pepper", "--dim", "16",
                         "--seed", "11", "--out", str(out_csv))
    assert code == 0
    table = StudyTable.from_csv(out_csv.read_text())
    conditions = [r.condition for r in table.rows]
    assert conditions == [f"salt_pepper:{i}" for i in range(6)]
    assert table.rows[0].value <= 1e-6


def test_correlate_command(tmp_path, capsys):
    t1, t2 = StudyTable(), StudyTable()
    for i, (a, b) in enumerate(zip([1.0, 2.0, 3.0], [3.0, 1.0, 2.0])):
        t1.add(f"r{i}", a)
        t2.add(f"r{i}", b)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    p1.write_text(t1.to_csv())
    p2.write_text(t2.to_csv())
    code, out, _ = run_cli(capsys, "correlate", "--a", str(p1), "--b", str(p2),
                           "--method", "spearman")
    assert code == 0
    assert out.strip() == "spearman=-0.500000"


def test_agreement_command(tmp_path, capsys):
    ratings = tmp_path / "ratings.csv"
    ratings.write_text("comparison_id,rater_id,item_a,item_b,verdict\n"
                       "c1,r1,m1,m2,a_better\n"
                       "c2,r1,m2,m3,a_better\n"
                       "c3,r1,m1,m3,b_better\n")
    scores = tmp_path / "scores.csv"
    scores.write_text("model,score\nm1,10\nm2,20\nm3,5\n")
    code, out, _ = run_cli(capsys, "agreement", "--ratings", str(ratings),
                           "--scores", str(scores), "--lower-is-better")
    assert code == 0
    assert out.strip() == "agreement=0.666667"


def test_inter_rater_flag(tmp_path, capsys):
    ratings = tmp_path / "ratings.csv"
    ratings.write_text("comparison_id,rater_id,item_a,item_b,verdict\n"
                       "c1,r1,m1,m2,a_better\n"
                       "c1,r2,m1,m2,a_better\n"
                       "c2,r1,m1,m3,tie\n"
                       "c2,r2,m1,m3,b_better\n")
    code, out, _ = run_cli(capsys, "agreement", "--ratings", str(ratings),
                           "--scores", str(ratings), "--inter-rater")
    assert code == 0
    assert out.strip() == "inter_rater_agreement=0.500000"


def test_usage_errors(capsys, tmp_path):
    code, _, err = run_cli(capsys, "fvd", "--real")
    assert code == 1 and err
    code, _, err = run_cli(capsys, "no-such-command")
    assert code == 1


def test_data_errors(tmp_path, capsys):
    bad = tmp_path / "bad.remb"
    bad.write_bytes(b"XXXX garbage")
    code, _, err = run_cli(capsys, "fvd", "--real", str(bad), "--gen", str(bad))
    assert code == 2 and "magic" in err
    code, _, err = run_cli(capsys, "fvd", "--real", str(tmp_path / "nope.remb"),
                           "--gen", str(bad))
    assert code == 2


def test_outputs_independent_of_thread_env(gen_rvid, tmp_path, capsys):
    outs = []
    for threads in ("1", "8"):
        os.environ["VIDMETRICS_THREADS"] = threads
        try:
            emb = tmp_path / f"t{threads}.remb"
            code, _, _ = run_cli(capsys, "embed", "--in", str(gen_rvid),
                                 "--out", str(emb), "--dim", "8", "--seed", "1")
            assert code == 0
            outs.append(hashlib.sha256(emb.read_bytes()).digest())
        finally:
            del os.environ["VIDMETRICS_THREADS"]
    assert outs[0] == outs[1]


def test_invalid_thread_env(capsys):
    os.environ["VIDMETRICS_THREADS"] = "lots"
    try:
        code, _, err = run_cli(capsys, "gen", "--scenario", "sprite", "--n", "1",
                               "--t", "4", "--h", "16", "--w", "16",
                               "--seed", "0", "--out", "/dev/null")
        assert code == 1 and "VIDMETRICS_THREADS" in err
    finally:
        del os.environ["VIDMETRICS_THREADS"]
