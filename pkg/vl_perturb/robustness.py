# robustness.py
# absolute and relative robustness of a model under a perturbation and
# their aggregation per category.
#   gamma_abs = 1 - (r_clean - r_perturbed) / 100
#   gamma_rel = 1 - (r_clean - r_perturbed) / r_clean
# values above 1 mean the perturbation helped. gamma_rel is None when
# r_clean is 0 and such cells are left out of aggregates.

import logging
from dataclasses import dataclass
from collections import defaultdict
import numpy as np
from . import registry

logger = logging.getLogger(__name__)

MEASURES = ['gamma_abs', 'gamma_rel']
LEVELS = ['perturbation', 'cell']

@dataclass(frozen=True)
class RobustnessScore:
  r_clean: float
  r_perturbed: float
  gamma_abs: float
  gamma_rel: float = None

  def get(self, measure):
    if measure not in MEASURES:
      raise ValueError(f"Invalid robustness measure: {measure}")
    return getattr(self, measure)


# one robustness score with what produced it
@dataclass(frozen=True)
class ScoreRecord:
  modality: str
  category: str
  perturbation: str
  severity: int
  k: int
  score: RobustnessScore


@dataclass(frozen=True)
class AggregateScore:
  modality: str
  category: str
  measure: str
  k: int
  mean: float
  std: float
  sample_count: int

  def group(self):
    return (self.modality, self.category)


def _check_percentage(name, value):
  value = float(value)
  if value < 0 or value > 100:
    raise ValueError(f"Invalid {name}: {value}")
  return value

def robustness(r_clean, r_perturbed):
  r_clean = _check_percentage('r_clean', r_clean)
  r_perturbed = _check_percentage('r_perturbed', r_perturbed)
  gamma_abs = 1 - (r_clean - r_perturbed) / 100
  gamma_rel = None
  if r_clean > 0:
    gamma_rel = 1 - (r_clean - r_perturbed) / r_clean
  return RobustnessScore(r_clean, r_perturbed, gamma_abs, gamma_rel)

# mean and population std, independent of input order
def mean_std(values):
  if len(values) == 0:
    raise ValueError("Cannot aggregate an empty group")
  values = np.sort(np.asarray(values, dtype=np.float64))
  return (float(np.mean(values)), float(np.std(values)))

# severity means per perturbation, keyed by (modality, category, k)
def perturbation_means(records, measure):
  cells = defaultdict(lambda: defaultdict(list))
  for record in records:
    value = record.score.get(measure)
    if value is None:
      continue
    group = (record.modality, record.category, record.k)
    cells[group][record.perturbation].append(value)
  means = {}
  for (group, by_name) in cells.items():
    means[group] = {name: mean_std(values)[0] for (name, values) in by_name.items()}
  return means

def _check_aggregation(measure, level):
  if measure not in MEASURES:
    raise ValueError(f"Invalid robustness measure: {measure}")
  if level not in LEVELS:
    raise ValueError(f"Invalid aggregation level: {level}")

def aggregate(records, measure='gamma_abs', level='perturbation'):
  _check_aggregation(measure, level)
  records = list(records)
  if len(records) == 0:
    raise ValueError("Cannot aggregate an empty list of scores")

  results = []
  if level == 'perturbation':
    for (group, by_name) in sorted(perturbation_means(records, measure).items()):
      (mean, std) = mean_std(list(by_name.values()))
      results.append(AggregateScore(group[0], group[1], measure, group[2],
        mean, std, len(by_name)))
  else:
    cells = defaultdict(list)
    for record in records:
      value = record.score.get(measure)
      if value is not None:
        cells[(record.modality, record.category, record.k)].append(value)
    for (group, values) in sorted(cells.items()):
      (mean, std) = mean_std(values)
      results.append(AggregateScore(group[0], group[1], measure, group[2],
        mean, std, len(values)))

  groups = set((r.modality, r.category, r.k) for r in records)
  skipped = groups - set((r.modality, r.category, r.k) for r in results)
  for group in sorted(skipped):
    logger.warning("No defined %s values for %s/%s at k=%s", measure, *group)
  return results

# pools the records into one row per (modality, k) under the given label.
# at perturbation level the std runs over per-perturbation means, at cell
# level over every (perturbation, severity) cell
def _pooled(records, measure, level, label):
  pooled = defaultdict(list)
  if level == 'perturbation':
    for (group, by_name) in perturbation_means(records, measure).items():
      pooled[(group[0], group[2])].extend(by_name.values())
  else:
    for record in records:
      value = record.score.get(measure)
      if value is not None:
        pooled[(record.modality, record.k)].append(value)
  results = []
  for ((modality, k), values) in sorted(pooled.items()):
    (mean, std) = mean_std(values)
    results.append(AggregateScore(modality, label, measure, k, mean, std, len(values)))
  return results

# one row per (modality, k) across every category except the excluded
# ones. for text the synthetic categories are left out so the overall
# number reflects natural shifts only.
def overall(records, measure='gamma_abs', exclude_categories=(), level='perturbation'):
  _check_aggregation(measure, level)
  records = [r for r in records if r.category not in exclude_categories]
  if len(records) == 0:
    raise ValueError("Cannot aggregate an empty list of scores")
  label = 'Overall' if not exclude_categories else 'Overall (natural)'
  return _pooled(records, measure, level, label)

def type_label(text_type):
  return f"Type: {text_type}"

# text scores pooled per perturbation type (natural, machine, synthetic),
# types without scores get no row
def type_aggregates(records, measure='gamma_abs', level='perturbation'):
  _check_aggregation(measure, level)
  by_type = defaultdict(list)
  for record in records:
    if record.modality == registry.TEXT:
      by_type[registry.text_type_of(record.category, record.perturbation)].append(record)
  results = []
  for text_type in registry.TEXT_TYPES:
    if by_type[text_type]:
      results.extend(_pooled(by_type[text_type], measure, level, type_label(text_type)))
  return results
