# cli.py
# command line entry point: vl-perturb <subcommand> [flags]

import os
import sys
import argparse
import logging
from . import registry
from .settings import Settings, SHOT_MODES, ON_ERROR_MODES
from .perturbation_spec import PerturbationSpec
from .manifest import load_manifest, GRANULARITIES
from .perturb_job import perturb_dataset
from .retrieval import MEASURES
from .robustness import LEVELS
from .evaluation import evaluate_embeddings, severity_curves, plot_severity_curves, DEFAULT_KS
from .multimodal_grid import MultimodalGrid, load_grid_embeddings, DEFAULT_SEVERITY, DEFAULT_K
from .report import emit_report, emit_aggregates, emit_grid, emit_curves, load_reports, FORMATS

logger = logging.getLogger(__name__)

def parse_ks(text):
  try:
    ks = [int(k) for k in text.split(',') if k.strip() != '']
  except ValueError:
    raise argparse.ArgumentTypeError(f"Invalid k list: {text}")
  if len(ks) == 0 or any(k < 1 for k in ks):
    raise argparse.ArgumentTypeError(f"Invalid k list: {text}")
  return ks

def _settings(args):
  settings = Settings.from_env()
  if getattr(args, 'seed', None) is not None:
    settings.set_global_seed(args.seed)
  if getattr(args, 'workers', None) is not None:
    settings.set_workers(args.workers)
  if getattr(args, 'encoder_cmd', None):
    settings.set_encoder_binary(args.encoder_cmd)
  if getattr(args, 'plugin_cmd', None):
    settings.set_plugin_command(args.plugin_cmd)
  if getattr(args, 'shot_mode', None):
    settings.set_shot_mode(args.shot_mode)
  if getattr(args, 'resize', None) is not None:
    settings.set_resize(args.resize, args.resize_first)
  if getattr(args, 'profile', None):
    settings.set_profile(args.profile)
  if getattr(args, 'on_error', None):
    settings.set_on_error(args.on_error)
  return settings

def _expand_specs(texts, seed, default_severity=None):
  specs = []
  for text in texts or []:
    if default_severity is not None and ':' not in text and '/' in text:
      entry = registry.find_entry(*text.strip().split('/', 1))
      if entry.modality == registry.VIDEO:
        text = f"{text}:{default_severity}"
    specs.extend(PerturbationSpec.expand(text, seed))
  return specs

def _require_modality(specs, modality):
  for spec in specs:
    if spec.modality != modality:
      raise ValueError(f"{spec.key()} is not a {modality} perturbation")

def default_video_specs(seed):
  return [PerturbationSpec(registry.VIDEO, e.category, e.name, s, seed)
    for (e, s) in registry.video_variants()]

def default_text_specs(seed, profile, include_plugins):
  return [PerturbationSpec(registry.TEXT, e.category, e.name, None, seed)
    for e in registry.text_entries(include_plugins, profile)]

def cmd_perturb_video(args):
  settings = _settings(args)
  specs = _expand_specs(args.spec, settings.global_seed) or default_video_specs(settings.global_seed)
  _require_modality(specs, registry.VIDEO)
  manifest = load_manifest(args.manifest)
  result = perturb_dataset(manifest, specs, settings.workers, args.out, settings)
  for record in result.failures():
    print(f"FAILED {record.spec.key()} {record.clip_id}: {record.error}", file=sys.stderr)
  print(result.summary())
  return result.exit_code()

def cmd_perturb_text(args):
  settings = _settings(args)
  specs = _expand_specs(args.spec, settings.global_seed) or default_text_specs(
    settings.global_seed, settings.profile, settings.plugin_command is not None)
  _require_modality(specs, registry.TEXT)
  manifest = load_manifest(args.manifest)
  result = perturb_dataset(manifest, specs, settings.workers, args.out, settings)
  for record in result.failures():
    print(f"FAILED {record.spec.key()} {record.clip_id}: {record.error}", file=sys.stderr)
  print(result.summary())
  return result.exit_code()

def _specs_with_embeddings(root, seed):
  specs = default_video_specs(seed) + default_text_specs(seed, 'msrvtt', True)
  return [s for s in specs if os.path.isdir(os.path.join(root, s.slug()))]

def cmd_eval(args):
  settings = _settings(args)
  manifest = load_manifest(args.manifest)
  specs = _expand_specs(args.spec, settings.global_seed) or \
    _specs_with_embeddings(args.embeddings, settings.global_seed)
  reports = evaluate_embeddings(args.embeddings, specs, manifest.pairing(args.granularity),
    args.ks, args.measure)
  if len(reports) == 0:
    logger.error("No perturbation embeddings found under %s", args.embeddings)
    return 1
  emit_report(reports, args.format, args.out)
  if args.plot:
    rows = severity_curves(reports, args.ks[0])
    ax = plot_severity_curves(rows)
    ax.figure.savefig(args.plot, bbox_inches='tight')
  return 0

def cmd_grid(args):
  settings = _settings(args)
  manifest = load_manifest(args.manifest)
  specs = _expand_specs(args.spec, settings.global_seed, args.severity)
  text_specs = [s for s in specs if not s.is_video()]
  video_specs = [s for s in specs if s.is_video()]
  embeddings = load_grid_embeddings(args.embeddings, text_specs, video_specs)
  grid = MultimodalGrid(text_specs, video_specs, args.k, args.measure)
  grid.build(embeddings, manifest.pairing(args.granularity))
  emit_grid(grid, args.format, args.out)
  if args.plot:
    ax = grid.plot()
    ax.figure.savefig(args.plot, bbox_inches='tight')
  return 0

def cmd_aggregate(args):
  reports = load_reports(args.reports)
  emit_aggregates(reports, args.format, args.out, args.level)
  return 0

def cmd_report(args):
  reports = load_reports(args.reports)
  emit_report(reports, args.format, args.out)
  if args.curves:
    for k in args.ks:
      (base, ext) = os.path.splitext(args.curves)
      emit_curves(severity_curves(reports, k), args.format, f"{base}_r{k}{ext}")
  return 0

def cmd_list(args):
  print('video:')
  for entry in registry.video_entries():
    print(f"  {entry.category}/{entry.name}:1-5")
  print('text:')
  for entry in registry.text_entries(True, args.profile):
    suffix = ' (plugin)' if entry.plugin else ''
    print(f"  {entry.category}/{entry.name}{suffix}")
  return 0

def build_parser():
  parser = argparse.ArgumentParser(prog='vl-perturb',
    description='Perturb video-text retrieval datasets and score model robustness.')
  parser.add_argument('--log-level', default='INFO',
    choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
  commands = parser.add_subparsers(dest='command', required=True)

  def perturb_flags(p):
    p.add_argument('--manifest', required=True)
    p.add_argument('--spec', action='append', help='category/name[:severity], repeatable')
    p.add_argument('--seed', type=int)
    p.add_argument('--workers', type=int)
    p.add_argument('--out', required=True)
    p.add_argument('--on-error', choices=ON_ERROR_MODES)

  p = commands.add_parser('perturb-video', help='write perturbed clips')
  perturb_flags(p)
  p.add_argument('--encoder-cmd', help='encoder binary, ffmpeg by default')
  p.add_argument('--shot-mode', choices=SHOT_MODES)
  p.add_argument('--resize', type=int, help='square output size, e.g. 224')
  p.add_argument('--resize-first', action='store_true', help='resize before perturbing')
  p.set_defaults(func=cmd_perturb_video)

  p = commands.add_parser('perturb-text', help='write perturbed captions')
  perturb_flags(p)
  p.add_argument('--plugin-cmd', help='command for model based perturbations')
  p.add_argument('--profile', choices=sorted(registry.PROFILES))
  p.set_defaults(func=cmd_perturb_text)

  def eval_flags(p):
    p.add_argument('--manifest', required=True)
    p.add_argument('--embeddings', required=True, help='root with clean/ and one dir per spec')
    p.add_argument('--spec', action='append')
    p.add_argument('--seed', type=int)
    p.add_argument('--measure', choices=MEASURES, default='cosine')
    p.add_argument('--granularity', choices=GRANULARITIES, default='clip')
    p.add_argument('--out', required=True)
    p.add_argument('--format', choices=FORMATS, default='json')
    p.add_argument('--plot')

  p = commands.add_parser('eval', help='score embeddings of perturbed sets')
  eval_flags(p)
  p.add_argument('--ks', type=parse_ks, default=list(DEFAULT_KS))
  p.set_defaults(func=cmd_eval)

  p = commands.add_parser('grid', help='combined text and video perturbations')
  eval_flags(p)
  p.add_argument('--k', type=int, default=DEFAULT_K)
  p.add_argument('--severity', type=int, default=DEFAULT_SEVERITY)
  p.set_defaults(func=cmd_grid)

  p = commands.add_parser('aggregate', help='category mean and std from eval reports')
  p.add_argument('--reports', required=True)
  p.add_argument('--out', required=True)
  p.add_argument('--format', choices=FORMATS, default='csv')
  p.add_argument('--level', choices=LEVELS, default='perturbation',
    help='std across perturbation means or across every severity cell')
  p.set_defaults(func=cmd_aggregate)

  p = commands.add_parser('report', help='convert eval reports to csv or json')
  p.add_argument('--reports', required=True)
  p.add_argument('--out', required=True)
  p.add_argument('--format', choices=FORMATS, default='csv')
  p.add_argument('--curves', help='also write severity curves, one file per k')
  p.add_argument('--ks', type=parse_ks, default=list(DEFAULT_KS))
  p.set_defaults(func=cmd_report)

  p = commands.add_parser('list', help='print the perturbation registry')
  p.add_argument('--profile', choices=sorted(registry.PROFILES), default='msrvtt')
  p.set_defaults(func=cmd_list)
  return parser

def main(argv=None):
  parser = build_parser()
  args = parser.parse_args(argv)
  logging.basicConfig(level=getattr(logging, args.log_level),
    format='%(asctime)s %(name)s %(levelname)s %(message)s')
  try:
    return args.func(args)
  except ValueError as e:
    logger.error(str(e))
    return 2

if __name__ == '__main__':
  sys.exit(main())
