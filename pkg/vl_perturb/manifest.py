# manifest.py
# a dataset manifest is a json lines file of clip-text pairs:
#   {"clip_id", "source_path", "start_sec", "end_sec", "caption", "video_id"}
# video_id is optional and defaults to the clip id. an optional "fps"
# overrides the frame rate used to slice the source.

import os
import json
import logging
from dataclasses import dataclass
from .caption import Caption
from .errors import ManifestError

logger = logging.getLogger(__name__)

REQUIRED_FIELDS = ['clip_id', 'source_path', 'start_sec', 'end_sec', 'caption']
GRANULARITIES = ['clip', 'video']

@dataclass(frozen=True)
class ManifestEntry:
  clip_id: str
  source_path: str
  start_sec: float
  end_sec: float
  caption: str
  video_id: str = None
  fps: float = None

  def __post_init__(self):
    if self.clip_id is None or str(self.clip_id) == '':
      raise ValueError("Manifest entry needs a clip_id")
    if self.start_sec < 0:
      raise ValueError(f"Invalid start_sec for {self.clip_id}: {self.start_sec}")
    if self.end_sec <= self.start_sec:
      raise ValueError(f"Invalid time range for {self.clip_id}: "
        f"end_sec {self.end_sec} <= start_sec {self.start_sec}")
    if self.caption is None or self.caption.strip() == '':
      raise ValueError(f"Empty caption for {self.clip_id}")
    if self.video_id is None:
      object.__setattr__(self, 'video_id', self.clip_id)

  def get_caption(self):
    return Caption(self.clip_id, self.caption)


class DatasetManifest:

  def __init__(self, dataset_name=None):
    self.dataset_name = dataset_name
    self._entries = {}

  def get_dataset_name(self):
    return self.dataset_name

  def add_entry(self, entry):
    if not isinstance(entry, ManifestEntry):
      raise ValueError(f"Invalid manifest entry type: {type(entry)}")
    if entry.clip_id in self._entries:
      raise ValueError(f"Duplicate clip_id: {entry.clip_id}")
    self._entries[entry.clip_id] = entry

  def new_entry(self, clip_id, source_path, start_sec, end_sec, caption, video_id=None, fps=None):
    entry = ManifestEntry(str(clip_id), source_path, float(start_sec), float(end_sec),
      caption, video_id, fps)
    self.add_entry(entry)
    return entry

  def num_entries(self):
    return len(self._entries)

  def get_entry_by_id(self, clip_id):
    return self._entries.get(str(clip_id))

  # entries in clip id order
  def entries(self):
    for clip_id in sorted(self._entries):
      yield self._entries[clip_id]

  def captions(self):
    return [e.get_caption() for e in self.entries()]

  # text id -> video id used for ranking
  def pairing(self, granularity='clip'):
    if granularity not in GRANULARITIES:
      raise ValueError(f"Invalid pairing granularity: {granularity}")
    if granularity == 'clip':
      return {e.clip_id: e.clip_id for e in self.entries()}
    return {e.clip_id: e.video_id for e in self.entries()}


def _entry_from_payload(payload, line_number, base_dir):
  if not isinstance(payload, dict):
    raise ManifestError("entry must be a json object", line_number)
  missing = [f for f in REQUIRED_FIELDS if f not in payload]
  if missing:
    raise ManifestError(f"missing fields {missing}", line_number)
  try:
    start_sec = float(payload['start_sec'])
    end_sec = float(payload['end_sec'])
    fps = payload.get('fps')
    fps = float(fps) if fps is not None else None
  except (TypeError, ValueError):
    raise ManifestError(f"start_sec, end_sec and fps must be numbers: {payload}", line_number)
  if not isinstance(payload['caption'], str):
    raise ManifestError(f"caption must be a string: {payload}", line_number)
  source_path = str(payload['source_path'])
  if base_dir and not os.path.isabs(source_path):
    source_path = os.path.join(base_dir, source_path)
  video_id = payload.get('video_id')
  try:
    return ManifestEntry(str(payload['clip_id']), source_path, start_sec, end_sec,
      payload['caption'], None if video_id is None else str(video_id), fps)
  except ValueError as e:
    raise ManifestError(f"{e} in entry {payload}", line_number)

# relative source paths are resolved against the manifest's directory
def load_manifest(path, dataset_name=None):
  if not os.path.exists(path):
    raise ValueError(f"Manifest not found: {path}")
  if dataset_name is None:
    dataset_name = os.path.splitext(os.path.basename(path))[0]
  manifest = DatasetManifest(dataset_name)
  base_dir = os.path.dirname(os.path.abspath(path))
  with open(path, 'r', encoding='utf-8') as f:
    for (line_number, line) in enumerate(f, start=1):
      if line.strip() == '':
        continue
      try:
        payload = json.loads(line)
      except json.JSONDecodeError as e:
        raise ManifestError(f"invalid json: {e.msg}", line_number)
      entry = _entry_from_payload(payload, line_number, base_dir)
      if manifest.get_entry_by_id(entry.clip_id) is not None:
        raise ManifestError(f"duplicate clip_id {entry.clip_id}", line_number)
      manifest.add_entry(entry)
  if manifest.num_entries() == 0:
    raise ManifestError(f"no entries in {path}")
  logger.info("loaded %s entries from %s", manifest.num_entries(), path)
  return manifest
