"""Generate small synthetic video corpora and save them as RVID files.

Two procedural scenarios are available.  "sprite_to_border" moves a
colored square from the center to a border at constant velocity;
"collector" has an agent square chase and absorb static dots.  Both are
deterministic given the seed, which makes them useful as a ground-truth
corpus for metric experiments.
"""

from pathlib import Path

import numpy as np

from vidmetrics import ScenarioSpec, save_video_file
from vidmetrics.synthgen import generate

out = Path("demo_output")
out.mkdir(exist_ok=True)

sprites = generate(ScenarioSpec("sprite_to_border", t=16, h=32, w=32, seed=1), 8)
collectors = generate(ScenarioSpec("collector", t=24, h=48, w=48, seed=2), 4)

save_video_file(sprites, out / "sprites.rvid")
save_video_file(collectors, out / "collectors.rvid")

print("sprites:", sprites.data.shape, sprites.data.dtype)
print("collectors:", collectors.data.shape)
print("mean pixel value:", np.mean(sprites.normalized()).round(3))
print("wrote", sorted(p.name for p in out.glob("*.rvid")))
