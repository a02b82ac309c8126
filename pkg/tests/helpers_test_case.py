import unittest
import numpy as np
from vl_perturb.helpers import fnv1a_64, to_uint8, slugify, validate_severity
from vl_perturb.helpers import require_int_in_range
from vl_perturb import Settings

class HelpersTestCase(unittest.TestCase):

  # published FNV-1a 64 test vectors
  def test_fnv1a_64_vectors(self):
    self.assertEqual(fnv1a_64(b''), 0xcbf29ce484222325)
    self.assertEqual(fnv1a_64(b'a'), 0xaf63dc4c8601ec8c)
    self.assertEqual(fnv1a_64(b'foobar'), 0x85944171f73967e8)

  def test_to_uint8_rounds_half_up_and_clamps(self):
    values = np.array([-3.0, 0.49, 0.5, 1.49, 127.5, 254.5, 300.0])
    self.assertEqual(to_uint8(values).tolist(), [0, 0, 1, 1, 128, 255, 255])
    self.assertEqual(to_uint8(values).dtype, np.uint8)

  def test_slugify(self):
    self.assertEqual(slugify('DropText-NoNN&VB'), 'DropText-NoNNandVB')
    self.assertEqual(slugify('a b/c'), 'a_b_c')

  def test_validate_severity(self):
    self.assertEqual(validate_severity(1), 1)
    self.assertEqual(validate_severity(np.int64(5)), 5)
    self.assertRaises(ValueError, validate_severity, 0)
    self.assertRaises(ValueError, validate_severity, 6)
    self.assertRaises(ValueError, validate_severity, 2.0)
    self.assertRaises(ValueError, validate_severity, True)
    self.assertRaises(ValueError, validate_severity, None)

  def test_require_int_in_range(self):
    self.assertEqual(require_int_in_range('workers', '4', 1, 8), 4)
    self.assertEqual(require_int_in_range('workers', 8, 1, 8), 8)
    self.assertEqual(require_int_in_range('workers', 2.0, 1, 8), 2)
    for value in [0, 9, 2.5, '2.5', '', None, True, 'many']:
      self.assertRaises(ValueError, require_int_in_range, 'workers', value, 1, 8)

  def test_settings_ranges(self):
    settings = Settings.from_env({'VL_PERTURB_WORKERS': '16'})
    self.assertEqual(settings.get_workers(), 16)
    self.assertRaises(ValueError, settings.set_workers, 0)
    self.assertRaises(ValueError, settings.set_resize, 4)
    settings.set_resize(None)
