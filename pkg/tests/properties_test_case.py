import unittest
import numpy as np
from hypothesis import given, settings, strategies as st
from vl_perturb.retrieval import SimilarityMatrix, recall_at_k
from vl_perturb.robustness import robustness, mean_std
from vl_perturb.rng_stream import derive_seed, MASK_64

percentages = st.floats(min_value=0, max_value=100, allow_nan=False)

def random_matrix(seed, n):
  rng = np.random.default_rng(seed)
  ids = [f"v{i:02d}" for i in range(n)]
  # rounding makes ties common
  return (ids, np.round(rng.random((n, n)), 1))

class PropertiesTestCase(unittest.TestCase):

  @given(percentages, percentages)
  def test_robustness_is_affine_in_the_drop(self, r_clean, r_perturbed):
    score = robustness(r_clean, r_perturbed)
    self.assertAlmostEqual(score.gamma_abs, 1 - (r_clean - r_perturbed) / 100, places=9)
    self.assertGreaterEqual(score.gamma_abs, 0.0)
    self.assertLessEqual(score.gamma_abs, 2.0)
    if r_clean == 0:
      self.assertIsNone(score.gamma_rel)
    elif r_clean >= 0.01:
      self.assertAlmostEqual(score.gamma_rel * r_clean, r_perturbed, places=6)

  @given(st.lists(st.floats(min_value=-10, max_value=10, allow_nan=False), min_size=1, max_size=30),
    st.randoms())
  def test_mean_std_ignores_order(self, values, random):
    shuffled = list(values)
    random.shuffle(shuffled)
    self.assertEqual(mean_std(values), mean_std(shuffled))

  @given(st.integers(min_value=0, max_value=MASK_64), st.text(max_size=12),
    st.sampled_from(['gaussian', 'jumble', 'NoNN']), st.integers(min_value=0, max_value=5))
  def test_derive_seed_is_a_pure_64_bit_function(self, seed, clip_id, name, severity):
    derived = derive_seed(seed, clip_id, name, severity)
    self.assertEqual(derived, derive_seed(seed, clip_id, name, severity))
    self.assertGreaterEqual(derived, 0)
    self.assertLessEqual(derived, MASK_64)

  @settings(max_examples=50, deadline=None)
  @given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=2, max_value=12))
  def test_recall_grows_with_k(self, seed, n):
    (ids, scores) = random_matrix(seed, n)
    sim = SimilarityMatrix(ids, ids, scores)
    pairing = {i: i for i in ids}
    recalls = [recall_at_k(sim, pairing, k) for k in range(1, n + 1)]
    self.assertEqual(recalls, sorted(recalls))
    self.assertEqual(recalls[-1], 100.0)

  @settings(max_examples=50, deadline=None)
  @given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=2, max_value=12))
  def test_recall_ignores_positive_scaling(self, seed, n):
    (ids, scores) = random_matrix(seed, n)
    pairing = {i: i for i in ids}
    for k in [1, 2]:
      self.assertEqual(recall_at_k(SimilarityMatrix(ids, ids, scores), pairing, k),
        recall_at_k(SimilarityMatrix(ids, ids, 4.0 * scores), pairing, k))
