# evaluation.py
# compares retrieval on a perturbed set against the clean set.
#
# embeddings live under an embeddings root, one directory per spec slug
# plus "clean":
#   <root>/clean/text.emb1, <root>/clean/video.emb1
#   <root>/<slug>/text.emb1 (text specs) or video.emb1 (video specs)
# csv files (text.csv, video.csv) are accepted too.

import os
import logging
from dataclasses import dataclass, field
import matplotlib.pyplot as plt
from .embeddings import ingest_embeddings
from .retrieval import similarity, paired_ranks, recall_from_ranks, clamp_k
from .robustness import robustness, ScoreRecord, RobustnessScore

logger = logging.getLogger(__name__)

CLEAN = 'clean'
DEFAULT_KS = (1, 5, 10)
EMBEDDING_FILES = {'text': ('text.emb1', 'text.csv'), 'video': ('video.emb1', 'video.csv')}

@dataclass
class RobustnessReport:
  modality: str = None
  category: str = None
  name: str = None
  severity: int = None
  ks: list = field(default_factory=list)
  recall_clean: dict = field(default_factory=dict)
  recall_perturbed: dict = field(default_factory=dict)
  scores: dict = field(default_factory=dict)

  def key(self):
    if self.name is None:
      return CLEAN
    if self.severity is None:
      return f"{self.category}/{self.name}"
    return f"{self.category}/{self.name}:{self.severity}"

  def sort_key(self):
    return (self.modality or '', self.category or '', self.name or '', self.severity or 0)

  def score_records(self):
    return [ScoreRecord(self.modality, self.category, self.name, self.severity, k,
      self.scores[k]) for k in self.ks]

  def to_dict(self):
    return {'key': self.key(), 'modality': self.modality, 'category': self.category,
      'name': self.name, 'severity': self.severity, 'ks': list(self.ks),
      'recall_clean': {str(k): self.recall_clean[k] for k in self.ks},
      'recall_perturbed': {str(k): self.recall_perturbed[k] for k in self.ks},
      'gamma_abs': {str(k): self.scores[k].gamma_abs for k in self.ks},
      'gamma_rel': {str(k): self.scores[k].gamma_rel for k in self.ks}}

  @staticmethod
  def from_dict(payload):
    ks = [int(k) for k in payload['ks']]
    report = RobustnessReport(payload.get('modality'), payload.get('category'),
      payload.get('name'), payload.get('severity'), ks)
    for k in ks:
      report.recall_clean[k] = payload['recall_clean'][str(k)]
      report.recall_perturbed[k] = payload['recall_perturbed'][str(k)]
      report.scores[k] = RobustnessScore(report.recall_clean[k], report.recall_perturbed[k],
        payload['gamma_abs'][str(k)], payload['gamma_rel'][str(k)])
    return report


def evaluate(clean_sim, perturbed_sim, pairing, ks=DEFAULT_KS, spec=None):
  if sorted(clean_sim.text_ids) != sorted(perturbed_sim.text_ids):
    raise ValueError("Pairing mismatch: clean and perturbed matrices rank different texts")
  if sorted(clean_sim.video_ids) != sorted(perturbed_sim.video_ids):
    raise ValueError("Pairing mismatch: clean and perturbed matrices rank different videos")
  ks = sorted(set(int(k) for k in ks))
  if len(ks) == 0:
    raise ValueError("No k values given")
  clean_ranks = paired_ranks(clean_sim, pairing)
  perturbed_ranks = paired_ranks(perturbed_sim, pairing)

  report = RobustnessReport(ks=ks)
  if spec is not None:
    (report.modality, report.category, report.name, report.severity) = \
      (spec.modality, spec.category, spec.name, spec.severity)
  for k in ks:
    clamped = clamp_k(k, len(clean_sim.video_ids))
    report.recall_clean[k] = recall_from_ranks(clean_ranks, clamped)
    report.recall_perturbed[k] = recall_from_ranks(perturbed_ranks, clamped)
    report.scores[k] = robustness(report.recall_clean[k], report.recall_perturbed[k])
    if report.scores[k].gamma_rel is None:
      logger.warning("Clean R@%s is 0 for %s, relative robustness is undefined", k, report.key())
  return report


def find_embedding_file(directory, modality):
  for name in EMBEDDING_FILES[modality]:
    path = os.path.join(directory, name)
    if os.path.exists(path):
      return path
  return None

def load_embeddings(root, slug, modality):
  path = find_embedding_file(os.path.join(root, slug), modality)
  if path is None:
    return None
  return ingest_embeddings(path)

# text and video embeddings to rank for one spec, None when missing
def embeddings_for_spec(root, spec):
  clean_texts = load_embeddings(root, CLEAN, 'text')
  clean_videos = load_embeddings(root, CLEAN, 'video')
  if spec is None:
    return (clean_texts, clean_videos)
  texts = load_embeddings(root, spec.slug(), 'text')
  videos = load_embeddings(root, spec.slug(), 'video')
  if spec.is_video():
    return (texts or clean_texts, videos)
  return (texts, videos or clean_videos)

def evaluate_embeddings(root, specs, pairing, ks=DEFAULT_KS, measure='cosine'):
  (clean_texts, clean_videos) = embeddings_for_spec(root, None)
  if clean_texts is None or clean_videos is None:
    raise ValueError(f"Missing clean embeddings under {os.path.join(root, CLEAN)}")
  clean_sim = similarity(clean_texts, clean_videos, measure)
  reports = []
  for spec in sorted(specs, key=lambda s: s.sort_key()):
    (texts, videos) = embeddings_for_spec(root, spec)
    if texts is None or videos is None:
      logger.warning("No embeddings for %s under %s, skipping", spec.key(), root)
      continue
    reports.append(evaluate(clean_sim, similarity(texts, videos, measure), pairing, ks, spec))
  return reports


# recall against severity with severity 0 as the clean run, one row per
# (perturbation, severity)
def severity_curves(reports, k):
  rows = []
  seen = set()
  for report in sorted(reports, key=lambda r: r.sort_key()):
    if report.severity is None or k not in report.recall_perturbed:
      continue
    name = (report.category, report.name)
    if name not in seen:
      seen.add(name)
      rows.append({'category': report.category, 'perturbation': report.name,
        'severity': 0, 'k': k, 'recall': report.recall_clean[k]})
    rows.append({'category': report.category, 'perturbation': report.name,
      'severity': report.severity, 'k': k, 'recall': report.recall_perturbed[k]})
  return rows

def plot_severity_curves(rows, ax=None):
  if ax is None:
    (_, ax) = plt.subplots()
  lines = {}
  for row in rows:
    lines.setdefault(row['perturbation'], []).append((row['severity'], row['recall']))
  for (name, points) in sorted(lines.items()):
    points = sorted(points)
    ax.plot([p[0] for p in points], [p[1] for p in points], marker='o', label=name)
  if rows:
    ax.set_ylabel(f"R@{rows[0]['k']}")
  ax.set_xlabel('severity')
  ax.set_xticks(range(0, 6))
  ax.legend(fontsize='small')
  return ax
