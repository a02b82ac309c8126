# settings.py
# runtime knobs for the harness. defaults can come from the environment
# and the cli overrides them with flags.

import os
import logging
from .helpers import require_int_in_range
from . import registry

logger = logging.getLogger(__name__)

SHOT_MODES = ['salt_pepper', 'poisson']
ON_ERROR_MODES = ['RAISE', 'COLLECT']
DEFAULT_ENCODER = 'ffmpeg'
DEFAULT_FPS = 30
FEATURE_SIZE = 224

class Settings:

  def __init__(self):
    self.global_seed = 0
    self.workers = 1
    self.encoder_binary = DEFAULT_ENCODER
    self.plugin_command = None
    self.shot_mode = 'salt_pepper'
    self.resize = None
    self.resize_first = False
    self.profile = 'msrvtt'
    self.default_fps = DEFAULT_FPS
    self.on_error = 'COLLECT'

  @staticmethod
  def from_env(environ=None):
    environ = os.environ if environ is None else environ
    s = Settings()
    if environ.get('VL_PERTURB_SEED'):
      s.set_global_seed(environ['VL_PERTURB_SEED'])
    if environ.get('VL_PERTURB_WORKERS'):
      s.set_workers(environ['VL_PERTURB_WORKERS'])
    if environ.get('VL_PERTURB_ENCODER'):
      s.set_encoder_binary(environ['VL_PERTURB_ENCODER'])
    if environ.get('VL_PERTURB_PLUGIN'):
      s.set_plugin_command(environ['VL_PERTURB_PLUGIN'])
    return s

  def set_global_seed(self, seed):
    seed = int(seed)
    if seed < 0 or seed >= 2 ** 64:
      raise ValueError(f"Invalid global seed: {seed}")
    self.global_seed = seed

  def get_global_seed(self):
    return self.global_seed

  def set_workers(self, workers):
    workers = require_int_in_range('workers', workers, 1, 1024)
    self.workers = workers

  def get_workers(self):
    return self.workers

  def set_encoder_binary(self, binary):
    self.encoder_binary = binary

  def get_encoder_binary(self):
    return self.encoder_binary

  def set_plugin_command(self, command):
    self.plugin_command = command

  def get_plugin_command(self):
    return self.plugin_command

  def set_shot_mode(self, mode):
    if mode not in SHOT_MODES:
      raise ValueError(f"Invalid shot noise mode: {mode}")
    self.shot_mode = mode

  def get_shot_mode(self):
    return self.shot_mode

  def set_resize(self, size, first=False):
    if size is not None:
      size = require_int_in_range('resize', size, 8, 8192)
    self.resize = size
    self.resize_first = bool(first)

  def set_profile(self, profile):
    if profile not in registry.PROFILES:
      raise ValueError(f"Invalid dataset profile: {profile}")
    self.profile = profile

  def get_profile(self):
    return self.profile

  def set_default_fps(self, fps):
    self.default_fps = fps

  def set_on_error(self, on_error):
    on_error = on_error.upper()
    if on_error not in ON_ERROR_MODES:
      raise ValueError(f"Invalid on_error: {on_error}")
    self.on_error = on_error

  def get_on_error(self):
    return self.on_error
