"""Compare video sets as distributions with FVD and KVD.

Videos are embedded (here with the built-in reference embedder, a fixed
random projection of pooled frame and frame-difference statistics), then
the embedding clouds are compared.  FVD fits a Gaussian to each cloud
and takes the Frechet distance; KVD is an unbiased kernel MMD estimate
with a cubic polynomial kernel and can be slightly negative for close
distributions.
"""

from vidmetrics import ScenarioSpec, apply_noise, fvd, kvd, reference_embed
from vidmetrics.synthgen import generate

clean = generate(ScenarioSpec("sprite_to_border", t=16, h=32, w=32, seed=1), 64)

e_clean = reference_embed(clean, dim=32, seed=7)
print("identical sets:      fvd =", fvd(e_clean, e_clean).value)

for level in (1, 3, 5):
    noisy = apply_noise(clean, "salt_pepper", level, seed=0)
    e_noisy = reference_embed(noisy, dim=32, seed=7)
    print(f"salt_pepper level {level}:  "
          f"fvd = {fvd(e_clean, e_noisy).value:8.3f}   "
          f"kvd = {kvd(e_clean, e_noisy).value:8.3f}")
