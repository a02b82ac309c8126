# video_perturber.py
# maps a PerturbationSpec onto the right visual algorithm and hands it
# a seeded rng stream

import logging
from .. import registry
from ..rng_stream import RngStream, derive_seed
from ..settings import SHOT_MODES
from .noise import apply_noise
from .blur import apply_blur
from .camera import apply_camera
from .digital import apply_jpeg, apply_mpeg
from .temporal import plan_temporal, apply_temporal

logger = logging.getLogger(__name__)

BLUR_NAMES = {'motion_blur': 'motion', 'defocus_blur': 'defocus', 'zoom_blur': 'zoom'}

class VideoPerturber:

  def __init__(self, encoder=None, shot_mode='salt_pepper'):
    if shot_mode not in SHOT_MODES:
      raise ValueError(f"Invalid shot noise mode: {shot_mode}")
    self.encoder = encoder
    self.shot_mode = shot_mode

  def rng_for(self, clip_id, spec):
    return RngStream(derive_seed(spec.seed, clip_id, spec.name, spec.severity))

  def perturb(self, clip, spec):
    if not spec.is_video():
      raise ValueError(f"Not a visual perturbation: {spec.key()}")
    rng = self.rng_for(clip.clip_id, spec)
    category = spec.category
    if category == 'Noise':
      return apply_noise(clip, spec.name, spec.severity, rng, self.shot_mode)
    elif category == 'Blur':
      return apply_blur(clip, BLUR_NAMES[spec.name], spec.severity)
    elif category == 'Camera':
      return apply_camera(clip, spec.name, spec.severity, rng)
    elif category == 'Digital':
      if spec.name == 'jpeg':
        return apply_jpeg(clip, spec.severity)
      return apply_mpeg(clip, spec.name, spec.severity, self.encoder)
    elif category == 'Temporal':
      plan = plan_temporal(clip.frame_count(), spec.name, spec.severity, rng)
      return apply_temporal(clip, plan)
    raise ValueError(f"Invalid visual category: {category}")

  def needs_encoder(self, spec):
    return spec.category == 'Digital' and spec.name != 'jpeg'

  # every visual variant of the registry, in catalogue order
  @staticmethod
  def variants():
    return [(e.category, e.name, s) for (e, s) in registry.video_variants()]
