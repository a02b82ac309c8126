# multimodal_grid.py
# relative robustness when text and video are perturbed together.
# the first row holds video-only perturbations, the first column
# text-only ones, and the inside holds the combinations. clean/clean
# sits in the corner.

import logging
import numpy as np
import matplotlib.pyplot as plt
from .evaluation import evaluate, load_embeddings, CLEAN
from .retrieval import similarity

logger = logging.getLogger(__name__)

DEFAULT_SEVERITY = 3
DEFAULT_K = 5

def combined_slug(text_spec, video_spec):
  return f"{text_spec.slug()}+{video_spec.slug()}"

# (text spec key, video spec key) -> (texts, videos). combined cells
# prefer a dedicated <text>+<video> directory and otherwise pair the
# perturbed text embeddings with the perturbed video embeddings.
def load_grid_embeddings(root, text_specs, video_specs):
  loaded = {}
  clean_texts = load_embeddings(root, CLEAN, 'text')
  clean_videos = load_embeddings(root, CLEAN, 'video')
  texts_by = {s.key(): load_embeddings(root, s.slug(), 'text') for s in text_specs}
  videos_by = {s.key(): load_embeddings(root, s.slug(), 'video') for s in video_specs}
  loaded[(CLEAN, CLEAN)] = (clean_texts, clean_videos)
  for t in text_specs:
    loaded[(t.key(), CLEAN)] = (texts_by[t.key()], clean_videos)
  for v in video_specs:
    loaded[(CLEAN, v.key())] = (clean_texts, videos_by[v.key()])
  for t in text_specs:
    for v in video_specs:
      directory = combined_slug(t, v)
      texts = load_embeddings(root, directory, 'text')
      videos = load_embeddings(root, directory, 'video')
      if texts is None:
        texts = texts_by[t.key()]
      if videos is None:
        videos = videos_by[v.key()]
      loaded[(t.key(), v.key())] = (texts, videos)
  return loaded


class MultimodalGrid:

  def __init__(self, text_specs, video_specs, k=DEFAULT_K, measure='cosine'):
    self.text_specs = sorted(text_specs, key=lambda s: s.sort_key())
    self.video_specs = sorted(video_specs, key=lambda s: s.sort_key())
    self.k = k
    self.measure = measure
    self.cells = {}

  def row_keys(self):
    return [CLEAN] + [s.key() for s in self.text_specs]

  def column_keys(self):
    return [CLEAN] + [s.key() for s in self.video_specs]

  def get_cell(self, text_key, video_key):
    report = self.cells.get((text_key, video_key))
    if report is None:
      return None
    return report.scores[self.k].gamma_rel

  def build(self, embeddings_by_spec, pairing):
    (clean_texts, clean_videos) = embeddings_by_spec.get((CLEAN, CLEAN), (None, None))
    if clean_texts is None or clean_videos is None:
      raise ValueError("Clean text and video embeddings are required for the grid")
    clean_sim = similarity(clean_texts, clean_videos, self.measure)
    for text_key in self.row_keys():
      for video_key in self.column_keys():
        (texts, videos) = embeddings_by_spec.get((text_key, video_key), (None, None))
        if texts is None or videos is None:
          logger.warning("No embeddings for grid cell %s x %s, leaving a hole", text_key, video_key)
          continue
        self.cells[(text_key, video_key)] = evaluate(clean_sim,
          similarity(texts, videos, self.measure), pairing, [self.k])
    return self

  def values(self):
    grid = np.full((len(self.row_keys()), len(self.column_keys())), np.nan)
    for (i, text_key) in enumerate(self.row_keys()):
      for (j, video_key) in enumerate(self.column_keys()):
        value = self.get_cell(text_key, video_key)
        if value is not None:
          grid[i, j] = value
    return grid

  # long format, one row per cell, holes included
  def to_rows(self):
    rows = []
    for text_key in self.row_keys():
      for video_key in self.column_keys():
        report = self.cells.get((text_key, video_key))
        row = {'text': text_key, 'video': video_key, 'k': self.k,
          'recall_clean': None, 'recall_perturbed': None, 'gamma_abs': None, 'gamma_rel': None}
        if report is not None:
          score = report.scores[self.k]
          row.update({'recall_clean': score.r_clean, 'recall_perturbed': score.r_perturbed,
            'gamma_abs': score.gamma_abs, 'gamma_rel': score.gamma_rel})
        rows.append(row)
    return rows

  def plot(self, ax=None):
    if ax is None:
      (_, ax) = plt.subplots(figsize=(1.2 * len(self.column_keys()) + 2,
        0.6 * len(self.row_keys()) + 2))
    grid = self.values()
    image = ax.imshow(np.ma.masked_invalid(grid), cmap='viridis')
    for i in range(grid.shape[0]):
      for j in range(grid.shape[1]):
        label = '' if np.isnan(grid[i, j]) else f"{grid[i, j]:.2f}"
        ax.text(j, i, label, ha='center', va='center', fontsize='small', color='white')
    ax.set_xticks(range(grid.shape[1]))
    ax.set_xticklabels(self.column_keys(), rotation=45, ha='right')
    ax.set_yticks(range(grid.shape[0]))
    ax.set_yticklabels(self.row_keys())
    ax.figure.colorbar(image, ax=ax)
    return ax


def multimodal_grid(text_specs, video_specs, embeddings_by_spec, pairing, k=DEFAULT_K,
    measure='cosine'):
  grid = MultimodalGrid(text_specs, video_specs, k, measure)
  return grid.build(embeddings_by_spec, pairing)
