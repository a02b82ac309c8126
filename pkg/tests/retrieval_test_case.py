import unittest
import numpy as np
from vl_perturb import EmbeddingSet, SimilarityMatrix
from vl_perturb.retrieval import similarity, paired_ranks, recall_at_k, clamp_k

# rank by sorting every video on (-score, video id)
def brute_force_recall(scores, text_ids, video_ids, pairing, k):
  hits = 0
  for (row, text_id) in enumerate(text_ids):
    order = sorted(range(len(video_ids)), key=lambda j: (-scores[row, j], video_ids[j]))
    top = [video_ids[j] for j in order[:k]]
    hits += pairing[text_id] in top
  return 100.0 * hits / len(text_ids)

class RetrievalTestCase(unittest.TestCase):

  def test_recall_matches_brute_force(self):
    rng = np.random.default_rng(2024)
    text_ids = [f"t{i:02d}" for i in range(50)]
    video_ids = [f"v{i:02d}" for i in range(50)]
    pairing = dict(zip(text_ids, video_ids))
    for _ in range(100):
      # rounding makes ties common
      scores = np.round(rng.normal(size=(50, 50)), 1)
      sim = SimilarityMatrix(text_ids, video_ids, scores)
      for k in (1, 5, 10):
        self.assertEqual(recall_at_k(sim, pairing, k),
          brute_force_recall(scores, text_ids, video_ids, pairing, k))

  def test_ties_break_on_video_id(self):
    sim = SimilarityMatrix(['t'], ['b', 'a', 'c'], [[1.0, 1.0, 1.0]])
    self.assertEqual(paired_ranks(sim, {'t': 'a'}).tolist(), [1])
    self.assertEqual(paired_ranks(sim, {'t': 'b'}).tolist(), [2])
    self.assertEqual(paired_ranks(sim, {'t': 'c'}).tolist(), [3])

  def test_perfect_retrieval(self):
    ids = ['a', 'b', 'c']
    texts = EmbeddingSet(ids, np.eye(3))
    videos = EmbeddingSet(ids, np.eye(3) * 2)
    sim = similarity(texts, videos)
    self.assertEqual(recall_at_k(sim, dict(zip(ids, ids)), 1), 100.0)
    self.assertTrue(np.allclose(sim.scores, np.eye(3)))
    self.assertTrue(np.allclose(similarity(texts, videos, 'dot').scores, 2 * np.eye(3)))

  def test_many_texts_one_video(self):
    texts = EmbeddingSet(['t1', 't2'], [[1, 0], [0, 1]])
    videos = EmbeddingSet(['v1', 'v2'], [[1, 0], [0.5, 0.5]])
    sim = similarity(texts, videos)
    self.assertEqual(recall_at_k(sim, {'t1': 'v1', 't2': 'v1'}, 1), 50.0)

  def test_monotone_transform_keeps_recall(self):
    rng = np.random.default_rng(7)
    ids = [f"x{i}" for i in range(20)]
    scores = rng.normal(size=(20, 20))
    pairing = dict(zip(ids, ids))
    a = SimilarityMatrix(ids, ids, scores)
    b = SimilarityMatrix(ids, ids, scores * 2.0)
    for k in (1, 5):
      self.assertEqual(recall_at_k(a, pairing, k), recall_at_k(b, pairing, k))

  def test_clamp_k(self):
    self.assertEqual(clamp_k(10, 3), 3)
    self.assertEqual(clamp_k(2, 3), 2)
    self.assertRaises(ValueError, clamp_k, 0, 3)
    sim = SimilarityMatrix(['t'], ['a', 'b'], [[0.0, 1.0]])
    with self.assertLogs('vl_perturb.retrieval', level='WARNING'):
      self.assertEqual(recall_at_k(sim, {'t': 'a'}, 10), 100.0)

  def test_pairing_errors(self):
    sim = SimilarityMatrix(['t'], ['a'], [[1.0]])
    self.assertRaises(ValueError, recall_at_k, sim, {}, 1)
    self.assertRaises(ValueError, recall_at_k, sim, {'t': 'zz'}, 1)

  def test_embedding_set(self):
    e = EmbeddingSet(['a', 'b'], [[3, 4], [0, 1]])
    self.assertEqual((e.count(), e.dim()), (2, 2))
    self.assertTrue(np.allclose(e.normalize().row('a'), [0.6, 0.8]))
    self.assertEqual(e.index_of('b'), 1)
    self.assertTrue(e.has('a'))
    self.assertRaises(ValueError, e.index_of, 'c')
    self.assertRaises(ValueError, EmbeddingSet, ['a', 'a'], [[1], [2]])
    self.assertRaises(ValueError, EmbeddingSet, ['a'], [[np.nan]])
    self.assertRaises(ValueError, EmbeddingSet, ['a'], [[1, 2]], True)
    self.assertRaises(ValueError, EmbeddingSet, ['a', 'b'], [[1, 2]])

  def test_similarity_errors(self):
    a = EmbeddingSet(['a'], [[1, 2]])
    b = EmbeddingSet(['b'], [[1, 2, 3]])
    self.assertRaises(ValueError, similarity, a, b)
    self.assertRaises(ValueError, similarity, a, a, 'euclid')
    self.assertRaises(ValueError, SimilarityMatrix, ['t'], ['a', 'a'], [[1, 2]])
    self.assertRaises(ValueError, SimilarityMatrix, ['t'], ['a'], [[np.inf]])
