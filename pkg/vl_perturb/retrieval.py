# retrieval.py
# embeddings, text x video similarity and recall@k.
# rank of the paired video counts every video scored strictly higher,
# plus every tie whose video id sorts before the paired one.

import logging
import numpy as np

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-4
MEASURES = ['dot', 'cosine']

class EmbeddingSet:

  def __init__(self, ids, vectors, normalized=False):
    ids = [str(i) for i in ids]
    vectors = np.asarray(vectors, dtype=np.float32)
    if vectors.ndim != 2:
      raise ValueError(f"Embeddings must be a 2d matrix, got shape {vectors.shape}")
    if vectors.shape[0] != len(ids):
      raise ValueError(f"Got {len(ids)} ids for {vectors.shape[0]} rows")
    if vectors.shape[1] < 1:
      raise ValueError("Embedding dimension must be at least 1")
    if len(set(ids)) != len(ids):
      duplicates = sorted(set(i for i in ids if ids.count(i) > 1))
      raise ValueError(f"Duplicate embedding ids: {duplicates[:10]}")
    if not np.all(np.isfinite(vectors)):
      raise ValueError("Embeddings contain NaN or Inf")
    if normalized:
      norms = np.linalg.norm(vectors.astype(np.float64), axis=1)
      bad = np.where(np.abs(norms - 1.0) > NORM_TOLERANCE)[0]
      if len(bad) > 0:
        raise ValueError(f"Row {ids[bad[0]]} has norm {norms[bad[0]]}, expected 1")
    self.ids = ids
    self.vectors = vectors
    self.normalized = bool(normalized)
    self._index = {i: n for (n, i) in enumerate(ids)}

  def count(self):
    return len(self.ids)

  def dim(self):
    return self.vectors.shape[1]

  def index_of(self, id):
    if id not in self._index:
      raise ValueError(f"Unknown embedding id: {id}")
    return self._index[id]

  def has(self, id):
    return id in self._index

  def row(self, id):
    return self.vectors[self.index_of(id)]

  def normalize(self):
    norms = np.linalg.norm(self.vectors.astype(np.float64), axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return EmbeddingSet(self.ids, self.vectors.astype(np.float64) / norms, True)

  def __eq__(self, other):
    return isinstance(other, EmbeddingSet) and self.ids == other.ids \
      and self.normalized == other.normalized \
      and self.vectors.shape == other.vectors.shape \
      and self.vectors.tobytes() == other.vectors.tobytes()

  def __repr__(self):
    return f"EmbeddingSet({self.count()}x{self.dim()}, normalized={self.normalized})"


class SimilarityMatrix:

  def __init__(self, text_ids, video_ids, scores):
    scores = np.asarray(scores, dtype=np.float64)
    if scores.shape != (len(text_ids), len(video_ids)):
      raise ValueError(f"Score matrix shape {scores.shape} does not match "
        f"{len(text_ids)} texts x {len(video_ids)} videos")
    if not np.all(np.isfinite(scores)):
      raise ValueError("Similarity scores must be finite")
    if len(set(video_ids)) != len(video_ids):
      raise ValueError("Duplicate video ids in similarity matrix")
    self.text_ids = list(text_ids)
    self.video_ids = list(video_ids)
    self.scores = scores
    self._video_index = {v: n for (n, v) in enumerate(self.video_ids)}

  def shape(self):
    return self.scores.shape

  def video_index(self, video_id):
    return self._video_index.get(video_id)


def similarity(texts, videos, measure='cosine'):
  if measure not in MEASURES:
    raise ValueError(f"Invalid similarity measure: {measure}")
  if texts.dim() != videos.dim():
    raise ValueError(f"Dimension mismatch: texts {texts.dim()} vs videos {videos.dim()}")
  t = texts.vectors.astype(np.float64)
  v = videos.vectors.astype(np.float64)
  if measure == 'cosine':
    t = t / _safe_norms(t)
    v = v / _safe_norms(v)
  return SimilarityMatrix(texts.ids, videos.ids, t @ v.T)

def _safe_norms(x):
  norms = np.linalg.norm(x, axis=1, keepdims=True)
  norms[norms == 0] = 1.0
  return norms

# 1 based rank of the paired video for every text row
def paired_ranks(sim, pairing):
  video_ids = np.array(sim.video_ids, dtype=object)
  ranks = np.empty(len(sim.text_ids), dtype=np.int64)
  for (row, text_id) in enumerate(sim.text_ids):
    if text_id not in pairing:
      raise ValueError(f"No paired video for text {text_id}")
    paired = pairing[text_id]
    column = sim.video_index(paired)
    if column is None:
      raise ValueError(f"Paired video {paired} of text {text_id} is not in the matrix")
    scores = sim.scores[row]
    target = scores[column]
    ties = (scores == target) & (video_ids < paired)
    ranks[row] = 1 + int(np.sum(scores > target)) + int(np.sum(ties))
  return ranks

def clamp_k(k, video_count):
  if k < 1:
    raise ValueError(f"Invalid k: {k}")
  if k > video_count:
    logger.warning("k=%s is larger than the %s videos, using k=%s", k, video_count, video_count)
    return video_count
  return k

def recall_from_ranks(ranks, k):
  if len(ranks) == 0:
    raise ValueError("No text rows to score")
  return 100.0 * int(np.sum(ranks <= k)) / len(ranks)

def recall_at_k(sim, pairing, k):
  k = clamp_k(int(k), len(sim.video_ids))
  return recall_from_ranks(paired_ranks(sim, pairing), k)
