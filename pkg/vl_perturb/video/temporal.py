# temporal.py
# temporal perturbations are planned as an index mapping and then
# applied by copying source frames, so outputs only ever contain
# byte-identical input frames.

import logging
import numpy as np
from ..severity import severity_params

logger = logging.getLogger(__name__)

TEMPORAL_VARIANTS = ['sampling', 'reverse_sampling', 'jumble', 'box_jumble', 'freeze']

class TemporalPlan:

  def __init__(self, mapping, source_count):
    mapping = np.asarray(mapping, dtype=np.int64)
    if mapping.ndim != 1 or len(mapping) == 0:
      raise ValueError("Temporal plan must be a non-empty index list")
    if mapping.min() < 0 or mapping.max() >= source_count:
      raise ValueError(f"Temporal plan index out of range for {source_count} frames")
    mapping.setflags(write=False)
    self.mapping = mapping
    self.source_count = int(source_count)

  @staticmethod
  def identity(frame_count):
    return TemporalPlan(np.arange(frame_count), frame_count)

  def output_count(self):
    return len(self.mapping)

  def is_permutation(self):
    return len(self.mapping) == self.source_count and \
      np.array_equal(np.sort(self.mapping), np.arange(self.source_count))

  def reversed(self):
    return TemporalPlan(self.mapping[::-1], self.source_count)

  def to_list(self):
    return [int(i) for i in self.mapping]

  def __eq__(self, other):
    return isinstance(other, TemporalPlan) and self.source_count == other.source_count \
      and np.array_equal(self.mapping, other.mapping)


# each sampled frame repeats rate times, keeping the clip duration
def _sampling(frame_count, rate):
  indices = np.arange(frame_count)
  return rate * (indices // rate)

def _jumble(frame_count, segment_length, rng):
  segment_length = min(segment_length, frame_count)
  mapping = np.arange(frame_count)
  for start in range(0, frame_count, segment_length):
    segment = mapping[start:start + segment_length]
    mapping[start:start + segment_length] = segment[rng.permutation(len(segment))]
  return mapping

def _box_jumble(frame_count, segment_count, rng):
  segment_count = min(segment_count, frame_count)
  segments = np.array_split(np.arange(frame_count), segment_count)
  order = rng.permutation(segment_count)
  return np.concatenate([segments[i] for i in order])

def freeze_anchor_count(frame_count, fraction):
  return max(1, int(np.floor(fraction * frame_count + 0.5)))

# anchors always include frame 0, every output shows the latest anchor
def _freeze(frame_count, fraction, rng):
  count = freeze_anchor_count(frame_count, fraction)
  others = rng.sample_without_replacement(np.arange(1, frame_count), count - 1) \
    if count > 1 else np.array([], dtype=np.int64)
  anchors = np.sort(np.concatenate([[0], others]).astype(np.int64))
  positions = np.searchsorted(anchors, np.arange(frame_count), side='right') - 1
  return anchors[positions]

def plan_temporal(frame_count, variant, severity, rng):
  if frame_count < 1:
    raise ValueError(f"Invalid frame count: {frame_count}")
  if variant not in TEMPORAL_VARIANTS:
    raise ValueError(f"Invalid temporal variant: {variant}")
  params = severity_params(variant, severity)

  if variant == 'sampling':
    mapping = _sampling(frame_count, params['rate'])
  elif variant == 'reverse_sampling':
    mapping = _sampling(frame_count, params['rate'])[::-1]
  elif variant == 'jumble':
    mapping = _jumble(frame_count, params['segment_length'], rng)
  elif variant == 'box_jumble':
    mapping = _box_jumble(frame_count, params['segment_count'], rng)
  else:
    mapping = _freeze(frame_count, params['fraction'], rng)
  return TemporalPlan(mapping, frame_count)

def apply_temporal(clip, plan):
  if plan.source_count != clip.frame_count():
    raise ValueError(f"Plan built for {plan.source_count} frames, clip has {clip.frame_count()}")
  return clip.with_frames(clip.array()[plan.mapping])
