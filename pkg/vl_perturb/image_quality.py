# image_quality.py
# psnr between frames, used to check that visual severities get worse
# in order

import math
import numpy as np
from .frames import Frame

MAX_VALUE = 255.0

def _pixels(frame):
  if isinstance(frame, Frame):
    return frame.pixels()
  return np.asarray(frame)

def mse(a, b):
  (a, b) = (_pixels(a), _pixels(b))
  if a.shape != b.shape:
    raise ValueError(f"Geometry mismatch: {a.shape} != {b.shape}")
  diff = a.astype(np.float64) - b.astype(np.float64)
  return float(np.mean(diff * diff))

# returns inf for identical frames
def psnr(a, b):
  error = mse(a, b)
  if error == 0:
    return math.inf
  return 10.0 * math.log10(MAX_VALUE * MAX_VALUE / error)

# psnr over a whole clip. when frame counts differ (mpeg can drop
# frames) only the common prefix is compared.
def clip_psnr(clip_a, clip_b):
  count = min(clip_a.frame_count(), clip_b.frame_count())
  a = clip_a.array()[:count]
  b = clip_b.array()[:count]
  return psnr(a, b)
