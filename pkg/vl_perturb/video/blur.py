# blur.py
# deterministic blurs. motion blur sums gaussian weighted shifted copies
# along a line, defocus convolves with an anti-aliased disk and zoom blur
# averages center zoomed copies of each frame. borders replicate edges.

import logging
import math
import numpy as np
from PIL import Image
from scipy import ndimage, signal
from ..helpers import to_uint8
from ..severity import severity_params

logger = logging.getLogger(__name__)

BLUR_VARIANTS = ['motion', 'defocus', 'zoom']
MOTION_ANGLE_DEGREES = 0.0

# gaussian weights over the offsets 0..2*radius, normalized
def motion_blur_weights(radius, sigma):
  width = 2 * radius + 1
  offsets = np.arange(width, dtype=np.float64)
  weights = np.exp(-(offsets ** 2) / (2.0 * sigma ** 2))
  return weights / weights.sum()

# pixel offsets (dy, dx) of each motion kernel tap for a given angle
def motion_blur_offsets(radius, angle_degrees=MOTION_ANGLE_DEGREES):
  width = 2 * radius + 1
  angle = math.radians(angle_degrees)
  point = (width * math.sin(angle), width * math.cos(angle))
  hypot = math.hypot(point[0], point[1])
  offsets = []
  for i in range(width):
    dy = -math.ceil((i * point[0]) / hypot - 0.5)
    dx = -math.ceil((i * point[1]) / hypot - 0.5)
    offsets.append((dy, dx))
  return offsets

def _pad_edges(x, pad):
  return np.pad(x, ((0, 0), (pad, pad), (pad, pad), (0, 0)), mode='edge')

# float in, float out, (frames, h, w, 3)
def motion_blur_array(x, radius, sigma, angle_degrees=MOTION_ANGLE_DEGREES):
  (_, h, w, _) = x.shape
  weights = motion_blur_weights(radius, sigma)
  offsets = motion_blur_offsets(radius, angle_degrees)
  pad = 2 * radius + 1
  padded = _pad_edges(x, pad)
  out = np.zeros(x.shape, dtype=np.float64)
  for (weight, (dy, dx)) in zip(weights, offsets):
    # output(y, x) takes input(y + dy, x + dx)
    out += weight * padded[:, pad + dy:pad + dy + h, pad + dx:pad + dx + w]
  return out

def disk_kernel(radius, alias_blur):
  extent = max(8, radius)
  coords = np.arange(-extent, extent + 1)
  (xx, yy) = np.meshgrid(coords, coords)
  disk = ((xx ** 2 + yy ** 2) <= radius ** 2).astype(np.float64)
  disk /= disk.sum()
  # a 3x3 gaussian takes the edge off the disk
  disk = ndimage.gaussian_filter(disk, sigma=alias_blur, mode='constant',
    truncate=1.0 / alias_blur)
  return disk / disk.sum()

def defocus_blur_array(x, radius, alias_blur):
  kernel = disk_kernel(radius, alias_blur)
  pad = kernel.shape[0] // 2
  padded = _pad_edges(x, pad)
  return signal.fftconvolve(padded, kernel[np.newaxis, :, :, np.newaxis],
    mode='valid', axes=(1, 2))

def zoom_factors(max_factor, step):
  count = int(round((max_factor - 1.0) / step)) + 1
  return [round(1.0 + step * i, 6) for i in range(count)]

# crop the center 1/z of the frame and scale it back up
def center_zoom(image, factor):
  (w, h) = image.size
  crop_w = w / factor
  crop_h = h / factor
  left = (w - crop_w) / 2.0
  top = (h - crop_h) / 2.0
  box = (left, top, left + crop_w, top + crop_h)
  return np.asarray(image.resize((w, h), Image.BILINEAR, box=box), dtype=np.float64)

def zoom_blur_array(frames, max_factor, step):
  factors = zoom_factors(max_factor, step)
  out = np.zeros(frames.shape, dtype=np.float64)
  for (i, frame) in enumerate(frames):
    image = Image.fromarray(np.array(frame, dtype=np.uint8), 'RGB')
    acc = np.zeros(frame.shape, dtype=np.float64)
    for factor in factors:
      if factor == 1.0:
        acc += frame
      else:
        acc += center_zoom(image, factor)
    out[i] = acc / len(factors)
  return out

def _check_kernel_fits(clip, radius, variant):
  if clip.width() < 2 * radius or clip.height() < 2 * radius:
    raise ValueError(f"Frame {clip.width()}x{clip.height()} too small for "
      f"{variant} blur radius {radius}")

def apply_blur(clip, variant, severity, angle_degrees=MOTION_ANGLE_DEGREES):
  if variant not in BLUR_VARIANTS:
    raise ValueError(f"Invalid blur variant: {variant}")
  params = severity_params(variant + '_blur', severity)

  if variant == 'motion':
    _check_kernel_fits(clip, params['radius'], variant)
    x = clip.array().astype(np.float64)
    out = motion_blur_array(x, params['radius'], params['sigma'], angle_degrees)
  elif variant == 'defocus':
    _check_kernel_fits(clip, params['radius'], variant)
    x = clip.array().astype(np.float64)
    out = defocus_blur_array(x, params['radius'], params['alias'])
  else:
    out = zoom_blur_array(clip.array(), params['max_factor'], params['step'])

  logger.debug("applied %s blur severity %s to %s", variant, severity, clip.clip_id)
  return clip.with_frames(to_uint8(out))
