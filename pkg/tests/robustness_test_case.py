import unittest
from vl_perturb.robustness import robustness, mean_std, aggregate, overall, type_aggregates
from vl_perturb.robustness import ScoreRecord, RobustnessScore

def record(category, name, severity, r_clean, r_perturbed, modality='video', k=5):
  return ScoreRecord(modality, category, name, severity, k, robustness(r_clean, r_perturbed))

class RobustnessTestCase(unittest.TestCase):

  def test_formulas(self):
    for (clean, perturbed, gamma_abs, gamma_rel) in [(45.4, 45.4, 1.0, 1.0),
        (50.0, 40.0, 0.9, 0.8), (30.0, 33.0, 1.03, 1.1)]:
      score = robustness(clean, perturbed)
      self.assertAlmostEqual(score.gamma_abs, gamma_abs, places=12)
      self.assertAlmostEqual(score.gamma_rel, gamma_rel, places=12)

  def test_zero_drop_is_exactly_one(self):
    score = robustness(37.3, 37.3)
    self.assertEqual(score.gamma_abs, 1.0)
    self.assertEqual(score.gamma_rel, 1.0)

  def test_undefined_relative(self):
    score = robustness(0.0, 10.0)
    self.assertEqual(score.gamma_rel, None)
    self.assertAlmostEqual(score.gamma_abs, 1.1)
    self.assertEqual(score.get('gamma_rel'), None)
    self.assertRaises(ValueError, score.get, 'gamma')

  def test_invalid_percentages(self):
    self.assertRaises(ValueError, robustness, -1, 5)
    self.assertRaises(ValueError, robustness, 50, 100.5)

  def test_mean_std(self):
    (mean, std) = mean_std([0.4, 0.6])
    self.assertAlmostEqual(mean, 0.5)
    self.assertAlmostEqual(std, 0.1)
    self.assertEqual(mean_std([0.6, 0.4]), mean_std([0.4, 0.6]))
    self.assertRaises(ValueError, mean_std, [])

  def test_constant_category(self):
    records = [record('Noise', 'gaussian', s, 50.0, 25.0) for s in range(1, 6)]
    (result,) = aggregate(records, 'gamma_rel')
    self.assertEqual((result.category, result.mean, result.std), ('Noise', 0.5, 0.0))
    self.assertEqual(result.sample_count, 1)

  def test_std_across_perturbation_means(self):
    records = [record('Blur', 'motion_blur', 1, 50.0, 40.0), record('Blur', 'motion_blur', 2, 50.0, 30.0),
      record('Blur', 'zoom_blur', 1, 50.0, 50.0)]
    (result,) = aggregate(records, 'gamma_abs')
    # motion mean 0.85, zoom mean 1.0
    self.assertAlmostEqual(result.mean, 0.925, places=12)
    self.assertAlmostEqual(result.std, 0.075, places=12)
    (cells,) = aggregate(records, 'gamma_abs', level='cell')
    self.assertAlmostEqual(cells.mean, (0.9 + 0.8 + 1.0) / 3, places=12)
    self.assertEqual(cells.sample_count, 3)

  def test_undefined_cells_are_skipped(self):
    records = [record('Noise', 'gaussian', 1, 0.0, 10.0), record('Noise', 'gaussian', 2, 50.0, 25.0)]
    (result,) = aggregate(records, 'gamma_rel')
    self.assertEqual(result.mean, 0.5)
    only_undefined = [record('Noise', 'shot', 1, 0.0, 10.0)]
    with self.assertLogs('vl_perturb.robustness', level='WARNING'):
      self.assertEqual(aggregate(only_undefined, 'gamma_rel'), [])

  def test_groups_are_separate(self):
    records = [record('Noise', 'gaussian', 1, 50.0, 25.0),
      record('Noise', 'gaussian', 1, 50.0, 50.0, k=1),
      record('DropText', 'NoNN', None, 50.0, 40.0, modality='text')]
    results = aggregate(records, 'gamma_rel')
    self.assertEqual([(r.modality, r.category, r.k) for r in results],
      [('text', 'DropText', 5), ('video', 'Noise', 1), ('video', 'Noise', 5)])

  def test_overall(self):
    records = [record('DropText', 'NoNN', None, 50.0, 40.0, modality='text'),
      record('SwapText', 'SynWordNet', None, 50.0, 50.0, modality='text'),
      record('Bias', 'AllMale', None, 50.0, 45.0, modality='text')]
    (everything,) = overall(records, 'gamma_abs')
    self.assertEqual(everything.category, 'Overall')
    self.assertEqual(everything.sample_count, 3)
    (natural,) = overall(records, 'gamma_abs', exclude_categories=('DropText', 'Positional'))
    self.assertEqual(natural.category, 'Overall (natural)')
    self.assertAlmostEqual(natural.mean, 0.975, places=12)

  def test_overall_cell_level(self):
    records = [record('Noise', 'gaussian', 1, 50.0, 40.0), record('Noise', 'gaussian', 2, 50.0, 30.0),
      record('Blur', 'zoom_blur', 1, 50.0, 50.0)]
    (by_perturbation,) = overall(records, 'gamma_abs')
    (by_cell,) = overall(records, 'gamma_abs', level='cell')
    self.assertAlmostEqual(by_perturbation.mean, 0.925, places=12)
    self.assertEqual(by_perturbation.sample_count, 2)
    self.assertAlmostEqual(by_cell.mean, 0.9, places=12)
    self.assertEqual(by_cell.sample_count, 3)
    self.assertRaises(ValueError, overall, records, 'gamma_abs', (), 'severity')

  def test_type_aggregates(self):
    records = [record('DropText', 'NoNN', None, 50.0, 40.0, modality='text'),
      record('Positional', 'ShuffleOrder', None, 50.0, 30.0, modality='text'),
      record('SwapText', 'SynWordNet', None, 50.0, 50.0, modality='text'),
      record('ChangeChar', 'OCR', None, 50.0, 45.0, modality='text'),
      record('Bias', 'AllMale', None, 50.0, 48.0, modality='text'),
      record('Noise', 'gaussian', 1, 50.0, 10.0)]
    results = type_aggregates(records, 'gamma_abs')
    by_label = {r.category: r for r in results}
    self.assertEqual(sorted(by_label), ['Type: machine', 'Type: natural', 'Type: synthetic'])
    self.assertAlmostEqual(by_label['Type: synthetic'].mean, 0.85, places=12)
    self.assertAlmostEqual(by_label['Type: machine'].mean, 0.975, places=12)
    self.assertAlmostEqual(by_label['Type: natural'].mean, 0.98, places=12)
    self.assertEqual(by_label['Type: natural'].sample_count, 1)
    self.assertTrue(all(r.modality == 'text' for r in results))
    only_video = [record('Noise', 'gaussian', 1, 50.0, 10.0)]
    self.assertEqual(type_aggregates(only_video, 'gamma_abs'), [])

  def test_invalid_arguments(self):
    self.assertRaises(ValueError, aggregate, [], 'gamma_abs')
    records = [record('Noise', 'gaussian', 1, 50.0, 25.0)]
    self.assertRaises(ValueError, aggregate, records, 'gamma')
    self.assertRaises(ValueError, aggregate, records, 'gamma_abs', 'severity')
    self.assertIsInstance(records[0].score, RobustnessScore)
