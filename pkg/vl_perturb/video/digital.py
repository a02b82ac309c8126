# digital.py
# compression artifacts. jpeg runs in process through Pillow, the two
# mpeg variants go out to the external encoder and back.

import io
import logging
import numpy as np
from PIL import Image
from ..severity import severity_params
from ..encoder_bridge import ExternalEncoder

logger = logging.getLogger(__name__)

DIGITAL_VARIANTS = ['jpeg', 'mpeg1', 'mpeg2']
MPEG_VARIANTS = ['mpeg1', 'mpeg2']

# baseline (non progressive) jpeg with default subsampling
def jpeg_round_trip(pixels, quality):
  buffer = io.BytesIO()
  Image.fromarray(np.array(pixels), 'RGB').save(buffer, format='JPEG',
    quality=int(quality), optimize=False, progressive=False)
  buffer.seek(0)
  with Image.open(buffer) as image:
    return np.asarray(image.convert('RGB'))

def apply_jpeg(clip, severity):
  quality = severity_params('jpeg', severity)['quality']
  frames = np.stack([jpeg_round_trip(f, quality) for f in clip.array()])
  logger.debug("jpeg q=%s on %s", quality, clip.clip_id)
  return clip.with_frames(frames)

# the frame count of the result may differ from the input
def apply_mpeg(clip, variant, severity, encoder=None):
  if variant not in MPEG_VARIANTS:
    raise ValueError(f"Invalid mpeg variant: {variant}")
  params = severity_params(variant, severity)
  if encoder is None:
    encoder = ExternalEncoder()
  out = encoder.pipe_through(clip, params['codec'], params['level'])
  if out.frame_count() != clip.frame_count():
    logger.info("%s %s severity %s changed frame count %s -> %s", clip.clip_id,
      variant, severity, clip.frame_count(), out.frame_count())
  return out
