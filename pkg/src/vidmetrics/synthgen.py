"""Procedural synthetic video corpora.

Two scenarios provide controllable, labeled test data for the metric
studies:

* ``sprite_to_border`` — a colored square starts at the frame center
  and moves with constant velocity along one of 8 directions, touching
  the border exactly at the last frame.  Stochastic content: sprite
  color and direction.
* ``collector`` — an agent sprite walks at constant speed toward the
  nearest remaining dot target; dots disappear on contact.  Stochastic
  content: dot placement and collection order.

Rendering is integer-pixel with no anti-aliasing so output is
bit-identical across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .prng import SplitMix64, child_seed
from .tensorio import VideoSet

DEFAULT_PALETTE = (
    (220, 40, 40),   # red
    (40, 70, 220),   # blue
    (40, 200, 70),   # green
    (230, 210, 40),  # yellow
)

DOT_COLOR = (250, 250, 250)

# 8 compass directions as (dy, dx) steps.
_DIRECTIONS = ((-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1))

N_DOTS = 8
_PLACEMENT_ATTEMPTS = 200


@dataclass(frozen=True)
class ScenarioSpec:
    kind: str
    t: int
    h: int
    w: int
    palette: tuple = DEFAULT_PALETTE
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("sprite_to_border", "collector"):
            raise ValueError(f"unknown scenario {self.kind!r}")
        if self.h < 16 or self.w < 16:
            raise ValueError("frames must be at least 16x16")
        if self.t < 4:
            raise ValueError("need at least 4 frames")
        if len(self.palette) != 4:
            raise ValueError("palette must have 4 colors")


def _background(h: int, w: int) -> np.ndarray:
    """Deterministic gray texture; never collides with palette colors."""
    yy, xx = np.mgrid[0:h, 0:w]
    tex = (40 + ((xx * 7 + yy * 13) % 23) * 3).astype(np.uint8)
    return np.repeat(tex[:, :, None], 3, axis=2)


def _draw_square(frame: np.ndarray, top: int, left: int, side: int, color):
    h, w = frame.shape[:2]
    y0, y1 = max(top, 0), min(top + side, h)
    x0, x1 = max(left, 0), min(left + side, w)
    if y0 < y1 and x0 < x1:
        frame[y0:y1, x0:x1] = color


def gen_sprite_to_border(spec: ScenarioSpec, n: int) -> VideoSet:
    side = int(np.ceil(spec.h / 8))
    bg = _background(spec.h, spec.w)
    start_y = (spec.h - side) // 2
    start_x = (spec.w - side) // 2
    videos = np.empty((n, spec.t, spec.h, spec.w, 3), dtype=np.uint8)
    for i in range(n):
        rng = SplitMix64(child_seed(spec.seed, i))
        color = spec.palette[rng.randint(4)]
        dy, dx = _DIRECTIONS[rng.randint(8)]
        # Travel distance until the sprite's box touches the border.
        dist_y = (spec.h - side - start_y) if dy > 0 else start_y
        dist_x = (spec.w - side - start_x) if dx > 0 else start_x
        travel = min(dist_y if dy else np.inf, dist_x if dx else np.inf)
        for k in range(spec.t):
            frac = k / (spec.t - 1)
            top = start_y + int(np.floor(frac * travel + 0.5)) * dy
            left = start_x + int(np.floor(frac * travel + 0.5)) * dx
            frame = bg.copy()
            _draw_square(frame, top, left, side, color)
            videos[i, k] = frame
    return VideoSet(videos)


def _place_dots(rng: SplitMix64, h: int, w: int, side: int, agent_pos):
    """Uniform dot centers with pairwise separation of 2 sprite widths.

    Rejection sampling with a bounded attempt count; after the cap the
    best (max-min-distance) candidate seen is accepted, keeping the
    procedure total and deterministic.
    """
    min_sep = 2 * side
    placed = [np.array(agent_pos, dtype=np.float64)]
    for _ in range(N_DOTS):
        best = None
        best_dist = -1.0
        for _ in range(_PLACEMENT_ATTEMPTS):
            cand = np.array([2 + rng.randint(h - 4), 2 + rng.randint(w - 4)],
                            dtype=np.float64)
            d = min(np.linalg.norm(cand - p) for p in placed)
            if d > best_dist:
                best, best_dist = cand, d
            if d >= min_sep:
                break
        placed.append(best)
    return placed[1:]


def gen_collector(spec: ScenarioSpec, n: int) -> VideoSet:
    side = int(np.ceil(spec.h / 8))
    dot_side = max(2, side // 2)
    speed = 2.0
    contact = (side + dot_side) / 2.0
    bg = _background(spec.h, spec.w)
    videos = np.empty((n, spec.t, spec.h, spec.w, 3), dtype=np.uint8)
    for i in range(n):
        rng = SplitMix64(child_seed(spec.seed, i))
        color = spec.palette[rng.randint(4)]
        agent = np.array([float(2 + rng.randint(spec.h - 4)),
                          float(2 + rng.randint(spec.w - 4))])
        dots = _place_dots(rng, spec.h, spec.w, side, agent)
        for k in range(spec.t):
            frame = bg.copy()
            for dot in dots:
                _draw_square(frame, int(round(dot[0] - dot_side / 2)),
                             int(round(dot[1] - dot_side / 2)), dot_side, DOT_COLOR)
            _draw_square(frame, int(round(agent[0] - side / 2)),
                         int(round(agent[1] - side / 2)), side, color)
            videos[i, k] = frame
            if dots:
                dists = [np.linalg.norm(d - agent) for d in dots]
                target = int(np.argmin(dists))
                gap = dists[target]
                if gap <= contact:
                    dots.pop(target)
                elif gap > 0:
                    step = min(speed, gap)
                    agent = agent + (dots[target] - agent) / gap * step
    return VideoSet(videos)


def generate(spec: ScenarioSpec, n: int) -> VideoSet:
    if spec.kind == "sprite_to_border":
        return gen_sprite_to_border(spec, n)
    return gen_collector(spec, n)
