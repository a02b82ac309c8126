# rng_stream.py
# the determinism contract: every randomized perturbation draws from an
# RngStream seeded by derive_seed(global_seed, clip_id, name, severity).
# numpy's PCG64 bit generator gives the same stream on every platform.

import numpy as np
from .helpers import fnv1a_64, MASK_64

def derive_seed(global_seed, clip_id, perturbation_name, severity_level=0):
  if global_seed < 0 or global_seed > MASK_64:
    raise ValueError(f"Invalid global seed: {global_seed}")
  if severity_level is None:
    severity_level = 0
  key = f"{int(global_seed)}|{clip_id}|{perturbation_name}|{int(severity_level)}"
  return fnv1a_64(key.encode('utf-8'))


class RngStream:

  def __init__(self, seed):
    seed = int(seed)
    if seed < 0 or seed > MASK_64:
      raise ValueError(f"Invalid seed: {seed}")
    self.seed = seed
    self._generator = np.random.Generator(np.random.PCG64(seed))

  def get_seed(self):
    return self.seed

  def random(self, size=None):
    return self._generator.random(size)

  def normal(self, scale, size):
    return self._generator.normal(0.0, scale, size)

  def poisson(self, lam):
    return self._generator.poisson(lam)

  def uniform(self, low, high, size=None):
    return self._generator.uniform(low, high, size)

  # integer in [low, high)
  def integers(self, low, high, size=None):
    return self._generator.integers(low, high, size)

  def choice(self, items):
    if len(items) == 0:
      raise ValueError("Cannot choose from an empty sequence")
    return items[int(self._generator.integers(0, len(items)))]

  def sample_without_replacement(self, population, count):
    return self._generator.choice(population, size=count, replace=False)

  def permutation(self, n):
    return self._generator.permutation(n)
