# noise.py
# pixel noise applied frame by frame. values are normalized to [0, 1],
# perturbed, clamped and quantized back to u8.

import logging
import numpy as np
from ..helpers import to_uint8
from ..severity import severity_params

logger = logging.getLogger(__name__)

NOISE_VARIANTS = ['gaussian', 'shot', 'impulse', 'speckle']

# salt and pepper acts on whole pixels: a hit pixel becomes black or
# white in all three channels with equal odds
def salt_and_pepper(x, amount, rng):
  (t, h, w, _) = x.shape
  hits = rng.random((t, h, w)) < amount
  salt = rng.random((t, h, w)) < 0.5
  out = x.copy()
  out[hits & salt] = 1.0
  out[hits & ~salt] = 0.0
  return out

def poisson_shot(x, photons, rng):
  return rng.poisson(x * photons) / float(photons)

def apply_noise(clip, variant, severity, rng, shot_mode='salt_pepper'):
  if variant not in NOISE_VARIANTS:
    raise ValueError(f"Invalid noise variant: {variant}")
  if clip.frame_count() == 0:
    raise ValueError("Cannot add noise to an empty clip")
  params = severity_params(variant, severity)
  x = clip.array().astype(np.float64) / 255.0

  if variant == 'gaussian':
    out = x + rng.normal(params['sigma'], x.shape)
  elif variant == 'speckle':
    out = x + x * rng.normal(params['sigma'], x.shape)
  elif variant == 'impulse':
    out = salt_and_pepper(x, params['amount'], rng)
  elif shot_mode == 'poisson':
    out = poisson_shot(x, params['photons'], rng)
  elif shot_mode == 'salt_pepper':
    out = salt_and_pepper(x, params['amount'], rng)
  else:
    raise ValueError(f"Invalid shot noise mode: {shot_mode}")

  logger.debug("applied %s noise severity %s to %s", variant, severity, clip.clip_id)
  return clip.with_frames(to_uint8(np.clip(out, 0.0, 1.0) * 255.0))
