# frames.py
# Frame and ClipFrames are immutable wrappers around uint8 numpy
# arrays. a frame is (height, width, 3) RGB, row-major, and a clip
# stacks them into (frame_count, height, width, 3).

import logging
from fractions import Fraction
import numpy as np
from PIL import Image

logger = logging.getLogger(__name__)

# non uint8 input has to already hold valid channel values, casting
# would wrap them
def _readonly(array):
  array = np.asarray(array)
  if array.dtype != np.uint8:
    if not np.all(np.isfinite(array)) or np.any(array < 0) or np.any(array > 255):
      raise ValueError("Frame channel values must be in [0, 255]")
  array = np.ascontiguousarray(array, dtype=np.uint8)
  array.setflags(write=False)
  return array

def parse_fps(fps):
  if isinstance(fps, Fraction):
    value = fps
  elif isinstance(fps, float):
    value = Fraction(fps).limit_denominator(100000)
  else:
    value = Fraction(str(fps))
  if value <= 0:
    raise ValueError(f"Invalid fps: {fps}")
  return value


class Frame:

  def __init__(self, pixels):
    pixels = np.asarray(pixels)
    if pixels.ndim != 3 or pixels.shape[2] != 3:
      raise ValueError(f"Invalid frame shape: {pixels.shape}")
    self._pixels = _readonly(pixels)

  @staticmethod
  def from_bytes(width, height, buffer):
    if len(buffer) != width * height * 3:
      raise ValueError(f"Pixel buffer length {len(buffer)} != {width}x{height}x3")
    pixels = np.frombuffer(buffer, dtype=np.uint8).reshape(height, width, 3)
    return Frame(pixels)

  @staticmethod
  def blank(width, height, color=(0, 0, 0)):
    pixels = np.empty((height, width, 3), dtype=np.uint8)
    pixels[:, :] = color
    return Frame(pixels)

  def width(self):
    return self._pixels.shape[1]

  def height(self):
    return self._pixels.shape[0]

  def pixels(self):
    return self._pixels

  def to_bytes(self):
    return self._pixels.tobytes()

  def __eq__(self, other):
    return isinstance(other, Frame) and np.array_equal(self._pixels, other._pixels)

  def __hash__(self):
    return hash(self.to_bytes())


class ClipFrames:

  def __init__(self, clip_id, frames, fps):
    if clip_id is None or clip_id == '':
      raise ValueError("Clip id cannot be empty")
    self.clip_id = str(clip_id)
    self.fps = parse_fps(fps)

    if isinstance(frames, np.ndarray):
      array = frames
    else:
      frames = list(frames)
      if len(frames) == 0:
        raise ValueError(f"Clip {clip_id} has no frames")
      shapes = set(f.pixels().shape if isinstance(f, Frame) else np.asarray(f).shape
        for f in frames)
      if len(shapes) > 1:
        raise ValueError(f"Clip {clip_id} frames differ in geometry: {sorted(shapes)}")
      array = np.stack([f.pixels() if isinstance(f, Frame) else np.asarray(f)
        for f in frames])

    if array.ndim != 4 or array.shape[3] != 3:
      raise ValueError(f"Invalid clip array shape: {array.shape}")
    if array.shape[0] == 0:
      raise ValueError(f"Clip {clip_id} has no frames")
    self._array = _readonly(array)

  def frame_count(self):
    return self._array.shape[0]

  def width(self):
    return self._array.shape[2]

  def height(self):
    return self._array.shape[1]

  def get_fps(self):
    return self.fps

  def geometry(self):
    return (self.width(), self.height(), self.frame_count(), self.fps)

  def array(self):
    return self._array

  def frame(self, index):
    return Frame(self._array[index])

  def frames(self):
    for i in range(self.frame_count()):
      yield self.frame(i)

  # same id and fps but new pixel data
  def with_frames(self, array):
    return ClipFrames(self.clip_id, array, self.fps)

  def __eq__(self, other):
    return isinstance(other, ClipFrames) and self.clip_id == other.clip_id \
      and self.fps == other.fps and np.array_equal(self._array, other._array)

  def __repr__(self):
    return f"ClipFrames({self.clip_id!r}, {self.frame_count()}x{self.width()}x{self.height()} @ {self.fps})"


# square resize used to bring clips to the feature extractor geometry
def resize_clip(clip, size):
  if size is None:
    return clip
  if clip.width() == size and clip.height() == size:
    return clip
  resized = [np.asarray(Image.fromarray(np.array(f)).resize((size, size), Image.BILINEAR))
    for f in clip.array()]
  logger.debug("resized %s to %sx%s", clip.clip_id, size, size)
  return clip.with_frames(np.stack(resized))
