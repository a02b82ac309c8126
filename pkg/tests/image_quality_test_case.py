import math
import unittest
import numpy as np
from vl_perturb import Frame, ClipFrames
from vl_perturb.image_quality import mse, psnr, clip_psnr

class ImageQualityTestCase(unittest.TestCase):

  def test_identical(self):
    frame = Frame.blank(4, 4, (10, 20, 30))
    self.assertEqual(psnr(frame, frame), math.inf)
    self.assertEqual(mse(frame, frame), 0.0)

  def test_known_values(self):
    a = np.zeros((4, 4, 3), dtype=np.uint8)
    b = np.full((4, 4, 3), 255, dtype=np.uint8)
    self.assertAlmostEqual(psnr(a, b), 0.0)
    c = np.full((4, 4, 3), 1, dtype=np.uint8)
    self.assertAlmostEqual(psnr(a, c), 20 * math.log10(255), places=10)

  def test_geometry_mismatch(self):
    self.assertRaises(ValueError, mse, np.zeros((2, 2, 3)), np.zeros((2, 3, 3)))

  def test_clip_psnr_uses_common_prefix(self):
    a = ClipFrames('a', np.zeros((4, 2, 2, 3), dtype=np.uint8), 30)
    b = ClipFrames('a', np.zeros((3, 2, 2, 3), dtype=np.uint8), 30)
    self.assertEqual(clip_psnr(a, b), math.inf)
