import os
import shutil
import tempfile
import unittest
import numpy as np
import matplotlib
matplotlib.use('Agg')
from matplotlib.axes import Axes
from vl_perturb import EmbeddingSet, PerturbationSpec, RobustnessReport, MultimodalGrid
from vl_perturb.embeddings import write_embeddings
from vl_perturb.retrieval import similarity
from vl_perturb.evaluation import evaluate, evaluate_embeddings, severity_curves
from vl_perturb.evaluation import plot_severity_curves
from vl_perturb.multimodal_grid import load_grid_embeddings, multimodal_grid, combined_slug

IDS = [f"c{i}" for i in range(5)]
PAIRING = {i: i for i in IDS}

def swapped(a, b):
  vectors = np.eye(5)
  vectors[[a, b]] = vectors[[b, a]]
  return EmbeddingSet(IDS, vectors)

CLEAN = EmbeddingSet(IDS, np.eye(5))

def write_fixture(root):
  write_embeddings(CLEAN, os.path.join(root, 'clean', 'text.emb1'))
  write_embeddings(CLEAN, os.path.join(root, 'clean', 'video.emb1'))
  write_embeddings(swapped(0, 1), os.path.join(root, 'Noise-gaussian-3', 'video.emb1'))
  write_embeddings(swapped(2, 3), os.path.join(root, 'DropText-NoNN', 'text.csv'))

class EvaluationTestCase(unittest.TestCase):

  def setUp(self):
    self.tmp = tempfile.mkdtemp()

  def tearDown(self):
    shutil.rmtree(self.tmp, ignore_errors=True)

  def test_unchanged_embeddings(self):
    sim = similarity(CLEAN, CLEAN)
    report = evaluate(sim, sim, PAIRING, [1, 5])
    for k in (1, 5):
      self.assertEqual(report.scores[k].gamma_abs, 1.0)
      self.assertEqual(report.scores[k].gamma_rel, 1.0)
    self.assertEqual(report.key(), 'clean')

  # two of five videos trade places, so R@1 drops from 100 to 60
  def test_swapped_videos(self):
    spec = PerturbationSpec.parse('Noise/gaussian:3')
    report = evaluate(similarity(CLEAN, CLEAN), similarity(CLEAN, swapped(0, 1)),
      PAIRING, [1, 5], spec)
    self.assertEqual(report.recall_clean, {1: 100.0, 5: 100.0})
    self.assertEqual(report.recall_perturbed, {1: 60.0, 5: 100.0})
    self.assertAlmostEqual(report.scores[1].gamma_abs, 0.6, places=12)
    self.assertAlmostEqual(report.scores[1].gamma_rel, 0.6, places=12)
    self.assertEqual(report.scores[5].gamma_abs, 1.0)
    self.assertEqual(report.key(), 'Noise/gaussian:3')
    self.assertEqual(len(report.score_records()), 2)

  def test_zero_clean_recall(self):
    # every text points at the wrong video
    videos = EmbeddingSet(IDS, np.roll(np.eye(5), 1, axis=0))
    sim = similarity(CLEAN, videos)
    with self.assertLogs('vl_perturb.evaluation', level='WARNING'):
      report = evaluate(sim, similarity(CLEAN, CLEAN), PAIRING, [1])
    self.assertEqual(report.scores[1].gamma_rel, None)
    self.assertEqual(report.scores[1].gamma_abs, 2.0)

  def test_mismatched_sets(self):
    other = EmbeddingSet(['x'] + IDS[1:], np.eye(5))
    self.assertRaises(ValueError, evaluate, similarity(CLEAN, CLEAN),
      similarity(CLEAN, other), PAIRING, [1])
    sim = similarity(CLEAN, CLEAN)
    self.assertRaises(ValueError, evaluate, sim, sim, PAIRING, [])

  def test_evaluate_embeddings(self):
    write_fixture(self.tmp)
    specs = [PerturbationSpec.parse('Noise/gaussian:3'), PerturbationSpec.parse('DropText/NoNN'),
      PerturbationSpec.parse('Noise/gaussian:4')]
    with self.assertLogs('vl_perturb.evaluation', level='WARNING'):
      reports = evaluate_embeddings(self.tmp, specs, PAIRING, [1])
    self.assertEqual([r.key() for r in reports], ['DropText/NoNN', 'Noise/gaussian:3'])
    self.assertEqual([r.recall_perturbed[1] for r in reports], [60.0, 60.0])
    self.assertRaises(ValueError, evaluate_embeddings, os.path.join(self.tmp, 'nothing'),
      specs, PAIRING, [1])

  def test_report_dict(self):
    spec = PerturbationSpec.parse('Noise/gaussian:3')
    report = evaluate(similarity(CLEAN, CLEAN), similarity(CLEAN, swapped(0, 1)),
      PAIRING, [1, 5], spec)
    self.assertEqual(RobustnessReport.from_dict(report.to_dict()), report)

  def test_severity_curves(self):
    reports = []
    for severity in (2, 1):
      spec = PerturbationSpec.parse(f'Temporal/freeze:{severity}')
      reports.append(evaluate(similarity(CLEAN, CLEAN), similarity(CLEAN, swapped(0, severity)),
        PAIRING, [1], spec))
    rows = severity_curves(reports, 1)
    self.assertEqual([(r['severity'], r['recall']) for r in rows],
      [(0, 100.0), (1, 60.0), (2, 60.0)])
    self.assertIsInstance(plot_severity_curves(rows), Axes)


class MultimodalGridTestCase(unittest.TestCase):

  def setUp(self):
    self.tmp = tempfile.mkdtemp()
    write_fixture(self.tmp)
    self.text_spec = PerturbationSpec.parse('DropText/NoNN')
    self.video_spec = PerturbationSpec.parse('Noise/gaussian:3')

  def tearDown(self):
    shutil.rmtree(self.tmp, ignore_errors=True)

  def build(self, k=1):
    embeddings = load_grid_embeddings(self.tmp, [self.text_spec], [self.video_spec])
    return multimodal_grid([self.text_spec], [self.video_spec], embeddings, PAIRING, k)

  def test_composed_grid(self):
    grid = self.build()
    self.assertEqual(grid.row_keys(), ['clean', 'DropText/NoNN'])
    self.assertEqual(grid.column_keys(), ['clean', 'Noise/gaussian:3'])
    values = grid.values()
    self.assertTrue(np.allclose(values, [[1.0, 0.6], [0.6, 0.2]]))
    self.assertAlmostEqual(grid.get_cell('DropText/NoNN', 'Noise/gaussian:3'), 0.2, places=12)

  def test_dedicated_combined_embeddings(self):
    directory = os.path.join(self.tmp, combined_slug(self.text_spec, self.video_spec))
    write_embeddings(CLEAN, os.path.join(directory, 'text.emb1'))
    write_embeddings(CLEAN, os.path.join(directory, 'video.emb1'))
    grid = self.build()
    self.assertEqual(grid.get_cell('DropText/NoNN', 'Noise/gaussian:3'), 1.0)

  def test_missing_cells_are_holes(self):
    other = PerturbationSpec.parse('Blur/zoom_blur:3')
    embeddings = load_grid_embeddings(self.tmp, [self.text_spec], [other])
    grid = MultimodalGrid([self.text_spec], [other], k=1)
    with self.assertLogs('vl_perturb.multimodal_grid', level='WARNING'):
      grid.build(embeddings, PAIRING)
    self.assertEqual(grid.get_cell('clean', 'Blur/zoom_blur:3'), None)
    self.assertTrue(np.isnan(grid.values()[0, 1]))
    rows = grid.to_rows()
    self.assertEqual(len(rows), 4)
    self.assertEqual(rows[1]['gamma_rel'], None)
    self.assertIsInstance(grid.plot(), Axes)

  def test_needs_clean(self):
    grid = MultimodalGrid([self.text_spec], [self.video_spec])
    self.assertRaises(ValueError, grid.build, {}, PAIRING)
