# frame_store.py
# reads and writes clips on disk. two layouts are supported:
#   directory - one numbered image per frame (%06d.png or %06d.ppm)
#               plus a clip.json sidecar
#   packed    - a single file of concatenated rgb24 frames plus a json
#               sidecar {"width", "height", "fps", "frame_count", ...}
# png output uses fixed settings so identical clips give identical bytes.

import io
import os
import re
import json
import math
import logging
import numpy as np
from PIL import Image
from .frames import ClipFrames, parse_fps

logger = logging.getLogger(__name__)

DIRECTORY = 'directory'
PACKED = 'packed'
LAYOUTS = [DIRECTORY, PACKED]
IMAGE_FORMATS = {'png': 'PNG', 'ppm': 'PPM'}
SIDECAR_NAME = 'clip.json'
PNG_COMPRESS_LEVEL = 6
FRAME_NAME = re.compile(r'^(\d+)\.(png|ppm)$')

class FrameStore:

  def __init__(self, path, layout=None, image_format='png'):
    self.path = path
    if layout is None:
      layout = FrameStore.detect_layout(path)
    if layout not in LAYOUTS:
      raise ValueError(f"Invalid frame store layout: {layout}")
    if image_format not in IMAGE_FORMATS:
      raise ValueError(f"Invalid frame image format: {image_format}")
    self.layout = layout
    self.image_format = image_format

  # a directory is a frame directory, anything else is packed raw
  @staticmethod
  def detect_layout(path):
    if os.path.isdir(path):
      return DIRECTORY
    if path.endswith('.rgb') or path.endswith('.raw'):
      return PACKED
    if not os.path.exists(path):
      return DIRECTORY
    return None

  def get_path(self):
    return self.path

  def sidecar_path(self):
    if self.layout == DIRECTORY:
      return os.path.join(self.path, SIDECAR_NAME)
    return os.path.splitext(self.path)[0] + '.json'

  def read_sidecar(self):
    path = self.sidecar_path()
    if not os.path.exists(path):
      return None
    with open(path, 'r') as f:
      return json.load(f)

  def exists(self):
    return os.path.exists(self.path)

  # a store is complete when its sidecar is there and every frame
  # it lists can be found. the sidecar is always written last.
  def is_complete(self):
    sidecar = self.read_sidecar()
    if sidecar is None or 'frame_count' not in sidecar:
      return False
    if self.layout == DIRECTORY:
      return len(self._frame_files()) == sidecar['frame_count']
    frame_size = sidecar['width'] * sidecar['height'] * 3
    return os.path.exists(self.path) and \
      os.path.getsize(self.path) == frame_size * sidecar['frame_count']

  def _frame_files(self):
    if not os.path.isdir(self.path):
      return []
    files = []
    for name in os.listdir(self.path):
      match = FRAME_NAME.match(name)
      if match:
        files.append((int(match.group(1)), name))
    return sorted(files)

  def frame_count(self):
    if self.layout == DIRECTORY:
      return len(self._frame_files())
    sidecar = self._require_sidecar()
    return sidecar['frame_count']

  def _require_sidecar(self):
    sidecar = self.read_sidecar()
    if sidecar is None:
      raise ValueError(f"Missing geometry sidecar for {self.path}")
    return sidecar

  def _resolve_fps(self, fps):
    sidecar = self.read_sidecar()
    if fps is None and sidecar is not None and 'fps' in sidecar:
      fps = sidecar['fps']
    if fps is None:
      raise ValueError(f"No fps known for {self.path}")
    return parse_fps(fps)

  def _frame_range(self, start_sec, end_sec, fps):
    if start_sec < 0 or end_sec <= start_sec:
      raise ValueError(f"Invalid time range: {start_sec} - {end_sec}")
    first = int(math.floor(start_sec * fps))
    last = int(math.floor(end_sec * fps))
    if last <= first:
      raise ValueError(f"Time range {start_sec} - {end_sec} holds no frames at {fps} fps")
    return (first, last)

  def read_clip(self, clip_id, start_sec, end_sec, fps=None):
    fps = self._resolve_fps(fps)
    (first, last) = self._frame_range(start_sec, end_sec, fps)
    if self.layout == DIRECTORY:
      frames = self._read_directory(first, last)
    else:
      frames = self._read_packed(first, last)
    if len(frames) < last - first:
      logger.warning("Clip %s: wanted frames %s-%s, only %s available",
        clip_id, first, last, len(frames))
    return ClipFrames(clip_id, frames, fps)

  def _read_directory(self, first, last):
    files = self._frame_files()
    if len(files) == 0:
      raise ValueError(f"No frames found in {self.path}")
    # numbering may start at 0 or 1, what matters is there are no gaps
    base = files[0][0]
    numbers = [n for (n, _) in files]
    if numbers != list(range(base, base + len(numbers))):
      missing = sorted(set(range(base, numbers[-1] + 1)) - set(numbers))
      raise ValueError(f"Missing frames in {self.path}: {missing[:10]}")
    if first >= len(files):
      raise ValueError(f"Missing frames in {self.path}: range starts at {first}, "
        f"store has {len(files)}")
    frames = []
    shape = None
    for (_, name) in files[first:last]:
      with Image.open(os.path.join(self.path, name)) as image:
        pixels = np.asarray(image.convert('RGB'))
      if shape is not None and pixels.shape != shape:
        raise ValueError(f"Geometry mismatch in {self.path}/{name}: {pixels.shape} != {shape}")
      shape = pixels.shape
      frames.append(pixels)
    return np.stack(frames)

  def _read_packed(self, first, last):
    sidecar = self._require_sidecar()
    (width, height) = (sidecar['width'], sidecar['height'])
    frame_size = width * height * 3
    size = os.path.getsize(self.path)
    if size % frame_size != 0:
      raise ValueError(f"Geometry mismatch: {self.path} is {size} bytes, "
        f"not a multiple of {width}x{height}x3")
    available = size // frame_size
    if first >= available:
      raise ValueError(f"Missing frames in {self.path}: range starts at {first}, "
        f"store has {available}")
    last = min(last, available)
    with open(self.path, 'rb') as f:
      f.seek(first * frame_size)
      data = f.read((last - first) * frame_size)
    return np.frombuffer(data, dtype=np.uint8).reshape(-1, height, width, 3)

  def encode_frame(self, pixels):
    buffer = io.BytesIO()
    image = Image.fromarray(np.array(pixels), 'RGB')
    if self.image_format == 'png':
      image.save(buffer, format='PNG', compress_level=PNG_COMPRESS_LEVEL)
    else:
      image.save(buffer, format='PPM')
    return buffer.getvalue()

  # extra is merged into the sidecar: perturbation spec, seed, versions
  def write_clip(self, clip, extra=None):
    if clip.frame_count() == 0:
      raise ValueError("Cannot write a clip with zero frames")
    sidecar = {'clip_id': clip.clip_id, 'fps': str(clip.get_fps()),
      'width': clip.width(), 'height': clip.height(),
      'frame_count': clip.frame_count()}
    if extra:
      sidecar.update(extra)

    if os.path.exists(self.sidecar_path()):
      os.remove(self.sidecar_path())
    if self.layout == DIRECTORY:
      os.makedirs(self.path, exist_ok=True)
      for (_, name) in self._frame_files():
        os.remove(os.path.join(self.path, name))
      ext = self.image_format
      for (i, pixels) in enumerate(clip.array()):
        with open(os.path.join(self.path, f"{i:06d}.{ext}"), 'wb') as f:
          f.write(self.encode_frame(pixels))
    else:
      parent = os.path.dirname(self.path)
      if parent:
        os.makedirs(parent, exist_ok=True)
      with open(self.path, 'wb') as f:
        f.write(clip.array().tobytes())

    tmp = self.sidecar_path() + '.tmp'
    with open(tmp, 'w') as f:
      json.dump(sidecar, f, indent=2, sort_keys=True)
    os.replace(tmp, self.sidecar_path())
    logger.debug("wrote %s frames of %s to %s", clip.frame_count(), clip.clip_id, self.path)


def read_clip(store, clip_id, start_sec, end_sec, fps=None):
  return store.read_clip(clip_id, start_sec, end_sec, fps)

def write_clip(clip, store, extra=None):
  store.write_clip(clip, extra)
