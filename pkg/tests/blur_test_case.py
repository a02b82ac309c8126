import unittest
import numpy as np
from vl_perturb import ClipFrames
from vl_perturb.video import apply_blur
from vl_perturb.video.blur import motion_blur_array, motion_blur_weights, disk_kernel
from vl_perturb.video.blur import zoom_factors
from vl_perturb.image_quality import clip_psnr

def flat_clip(value, frames=2, size=48):
  return ClipFrames('flat', np.full((frames, size, size, 3), value, dtype=np.uint8), 30)

class BlurTestCase(unittest.TestCase):

  def test_constant_frames_are_fixed_points(self):
    clip = flat_clip(77)
    for variant in ['motion', 'defocus', 'zoom']:
      out = apply_blur(clip, variant, 3)
      self.assertTrue(np.array_equal(out.array(), clip.array()), variant)

  def test_motion_blur_conserves_mass(self):
    x = np.zeros((1, 80, 80, 3))
    x[0, 40, 40, :] = 1.0
    out = motion_blur_array(x, 15, 8)
    self.assertAlmostEqual(out.sum(), 3.0, places=9)
    # all the mass moves along the row
    self.assertAlmostEqual(out[0, 40].sum(), 3.0, places=9)

  def test_motion_weights(self):
    weights = motion_blur_weights(10, 3)
    self.assertEqual(len(weights), 21)
    self.assertAlmostEqual(weights.sum(), 1.0)
    self.assertTrue(np.all(np.diff(weights) < 0))

  def test_disk_kernel(self):
    kernel = disk_kernel(6, 0.5)
    self.assertEqual(kernel.shape, (17, 17))
    self.assertAlmostEqual(kernel.sum(), 1.0)
    self.assertTrue(np.allclose(kernel, kernel.T))
    self.assertEqual(disk_kernel(10, 0.5).shape, (21, 21))

  def test_zoom_factors(self):
    factors = zoom_factors(1.11, 0.01)
    self.assertEqual(len(factors), 12)
    self.assertEqual(factors[0], 1.0)
    self.assertEqual(factors[-1], 1.11)

  def test_blur_smooths_an_edge(self):
    array = np.zeros((1, 48, 48, 3), dtype=np.uint8)
    array[:, :, 24:] = 255
    clip = ClipFrames('edge', array, 30)
    for variant in ['motion', 'defocus']:
      out = apply_blur(clip, variant, 2).array()
      middle = out[0, 24]
      self.assertTrue(np.any((middle > 0) & (middle < 255)), variant)
      self.assertEqual(out.shape, array.shape)

  def test_small_frames_rejected(self):
    clip = flat_clip(10, size=8)
    self.assertRaises(ValueError, apply_blur, clip, 'motion', 5)
    self.assertRaises(ValueError, apply_blur, clip, 'defocus', 5)
    self.assertRaises(ValueError, apply_blur, clip, 'gaussian', 1)

  def test_psnr_drops_with_severity(self):
    rng = np.random.default_rng(4)
    clip = ClipFrames('texture', rng.integers(0, 256, (1, 96, 96, 3), dtype=np.uint8), 30)
    for variant in ['motion', 'defocus', 'zoom']:
      scores = [clip_psnr(clip, apply_blur(clip, variant, s)) for s in range(1, 6)]
      # neighbouring severities can sit within quantization noise of each other
      for (lower, higher) in zip(scores, scores[1:]):
        self.assertLessEqual(higher, lower + 0.25, (variant, scores))
      self.assertLess(scores[4], scores[0], variant)
