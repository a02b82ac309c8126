# report.py
# writes robustness reports, category aggregates and grids as csv
# (rfc 4180, fixed column order) or json. identical input gives
# byte identical files.

import csv
import json
import logging
from .evaluation import RobustnessReport
from .robustness import aggregate, overall, type_aggregates, MEASURES
from .registry import SYNTHETIC_TEXT_CATEGORIES, TEXT

logger = logging.getLogger(__name__)

FORMATS = ['csv', 'json']
REPORT_COLUMNS = ['key', 'modality', 'category', 'perturbation', 'severity', 'k',
  'recall_clean', 'recall_perturbed', 'gamma_abs', 'gamma_rel']
AGGREGATE_COLUMNS = ['modality', 'category', 'measure', 'k', 'mean', 'std', 'sample_count']
GRID_COLUMNS = ['text', 'video', 'k', 'recall_clean', 'recall_perturbed', 'gamma_abs', 'gamma_rel']
CURVE_COLUMNS = ['category', 'perturbation', 'severity', 'k', 'recall']

def _cell(value):
  if value is None:
    return ''
  if isinstance(value, float):
    return repr(value)
  return value

def _write_csv(out, columns, rows):
  with open(out, 'w', newline='', encoding='utf-8') as f:
    writer = csv.writer(f, lineterminator='\r\n')
    writer.writerow(columns)
    for row in rows:
      writer.writerow([_cell(row[c]) for c in columns])

def _write_json(out, payload):
  with open(out, 'w', encoding='utf-8') as f:
    json.dump(payload, f, indent=2, sort_keys=True)
    f.write('\n')

def _check_format(format):
  if format not in FORMATS:
    raise ValueError(f"Invalid report format: {format}")

# one row per (report, k)
def report_rows(reports):
  rows = []
  for report in sorted(reports, key=lambda r: r.sort_key()):
    for k in report.ks:
      score = report.scores[k]
      rows.append({'key': report.key(), 'modality': report.modality,
        'category': report.category, 'perturbation': report.name,
        'severity': report.severity, 'k': k,
        'recall_clean': score.r_clean, 'recall_perturbed': score.r_perturbed,
        'gamma_abs': score.gamma_abs, 'gamma_rel': score.gamma_rel})
  return rows

def emit_report(reports, format, out):
  _check_format(format)
  reports = list(reports)
  if len(reports) == 0:
    raise ValueError("No reports to emit")
  if format == 'csv':
    _write_csv(out, REPORT_COLUMNS, report_rows(reports))
  else:
    _write_json(out, [r.to_dict() for r in sorted(reports, key=lambda r: r.sort_key())])
  logger.info("wrote %s reports to %s", len(reports), out)

def load_reports(path):
  with open(path, 'r', encoding='utf-8') as f:
    payload = json.load(f)
  if not isinstance(payload, list):
    raise ValueError(f"Expected a list of reports in {path}")
  return [RobustnessReport.from_dict(p) for p in payload]

# per category mean and std for both measures, then the overall rows:
# every category for video, natural shifts only for text, then one row
# per text perturbation type
def aggregate_rows(reports, level='perturbation'):
  records = []
  for report in reports:
    if report.name is not None:
      records.extend(report.score_records())
  if len(records) == 0:
    raise ValueError("No perturbed reports to aggregate")
  rows = []
  for measure in MEASURES:
    scores = aggregate(records, measure, level)
    modalities = sorted(set(r.modality for r in records))
    for modality in modalities:
      in_modality = [r for r in records if r.modality == modality]
      excluded = SYNTHETIC_TEXT_CATEGORIES if modality == TEXT else ()
      scores.extend(overall(in_modality, measure, level=level))
      if excluded and any(r.category not in excluded for r in in_modality):
        scores.extend(overall(in_modality, measure, excluded, level))
      if modality == TEXT:
        scores.extend(type_aggregates(in_modality, measure, level))
    for s in scores:
      rows.append({'modality': s.modality, 'category': s.category, 'measure': s.measure,
        'k': s.k, 'mean': s.mean, 'std': s.std, 'sample_count': s.sample_count})
  rows.sort(key=lambda r: (r['modality'], r['measure'], r['k'], r['category']))
  return rows

def emit_aggregates(reports, format, out, level='perturbation'):
  _check_format(format)
  rows = aggregate_rows(reports, level)
  if format == 'csv':
    _write_csv(out, AGGREGATE_COLUMNS, rows)
  else:
    _write_json(out, rows)
  return rows

def emit_grid(grid, format, out):
  _check_format(format)
  rows = grid.to_rows()
  if format == 'csv':
    _write_csv(out, GRID_COLUMNS, rows)
  else:
    _write_json(out, rows)
  return rows

def emit_curves(rows, format, out):
  _check_format(format)
  if format == 'csv':
    _write_csv(out, CURVE_COLUMNS, rows)
  else:
    _write_json(out, rows)
