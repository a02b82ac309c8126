# camera.py
# camera shake and tilt. rotations and translations resample with
# bilinear interpolation and fill the uncovered border by replicating
# the nearest edge pixel.

import logging
import numpy as np
from scipy import ndimage
from ..helpers import to_uint8
from ..severity import severity_params

logger = logging.getLogger(__name__)

CAMERA_VARIANTS = ['static_rotate', 'rotate', 'translate']

def rotate_frames(x, degrees):
  if degrees == 0:
    return x.copy()
  # axes (2, 1) is the (width, height) plane of a (frames, h, w, 3) array
  return ndimage.rotate(x, degrees, axes=(2, 1), reshape=False, order=1, mode='nearest')

def plan_rotation(frame_count, max_degrees, rng):
  return rng.uniform(-max_degrees, max_degrees, frame_count)

# per frame (dy, dx) offsets drawn uniformly inside +/- d pixels
def plan_translate(frame_count, width, height, severity, rng, fraction=None):
  if fraction is None:
    fraction = severity_params('translate', severity)['fraction']
  max_offset = fraction * min(width, height)
  return rng.uniform(-max_offset, max_offset, (frame_count, 2))

def translate_frame(frame, dy, dx):
  return ndimage.shift(frame, (dy, dx, 0), order=1, mode='nearest')

def apply_camera(clip, variant, severity, rng, degrees=None, fraction=None):
  if variant not in CAMERA_VARIANTS:
    raise ValueError(f"Invalid camera variant: {variant}")
  if clip.frame_count() == 0:
    raise ValueError("Cannot move the camera on an empty clip")
  params = severity_params(variant, severity)
  x = clip.array().astype(np.float64)

  if variant == 'static_rotate':
    angle = params['degrees'] if degrees is None else degrees
    out = rotate_frames(x, angle)
  elif variant == 'rotate':
    max_degrees = params['degrees'] if degrees is None else degrees
    angles = plan_rotation(clip.frame_count(), max_degrees, rng)
    out = np.stack([rotate_frames(x[i:i + 1], a)[0] for (i, a) in enumerate(angles)])
  else:
    offsets = plan_translate(clip.frame_count(), clip.width(), clip.height(),
      severity, rng, fraction)
    out = np.stack([translate_frame(x[i], dy, dx) for (i, (dy, dx)) in enumerate(offsets)])

  logger.debug("applied %s severity %s to %s", variant, severity, clip.clip_id)
  return clip.with_frames(to_uint8(out))
