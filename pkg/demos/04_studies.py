"""Statistical studies: sample-size bias, noise response, correlation.

The bias study measures FVD between disjoint subsets of one embedding
cloud: the true distance is zero, so everything measured is estimator
bias, and it must shrink as the subsets grow.  The noise study sweeps
every intensity level of chosen noise kinds; Spearman correlation then
checks the metric ranks intensities in order.
"""

from vidmetrics import (EmbedderSpec, ScenarioSpec, bias_study, noise_study,
                        reference_embed, spearman)
from vidmetrics.synthgen import generate

clean = generate(ScenarioSpec("sprite_to_border", t=16, h=32, w=32, seed=1), 128)
emb = reference_embed(clean, dim=32, seed=7)

table = bias_study(emb, sizes=[8, 16, 32], repeats=16, seed=3)
print(table.to_csv())

noise = noise_study(clean, ["gauss_blur", "salt_pepper"],
                    EmbedderSpec("reference", dim=32, seed=7), seed=0)
print(noise.to_csv())

blur_rows = [r for r in noise.rows if r.condition.startswith("gauss_blur:")]
levels = [float(r.condition.split(":")[1]) for r in blur_rows]
print("spearman(level, fvd) for blur:",
      spearman(levels, [r.value for r in blur_rows]))
