# perturb_job.py
# runs every (manifest entry x perturbation spec) item and writes the
# results under out_root/<spec slug>/<clip id>. items are independent,
# so they fan out over a joblib worker pool. work that is already on
# disk with a matching spec is skipped, which makes reruns resumable.

import os
import csv
import json
import hashlib
import logging
from collections import defaultdict, Counter
from joblib import Parallel, delayed
from .frame_store import FrameStore, DIRECTORY
from .frames import resize_clip
from .caption import Caption
from .encoder_bridge import ExternalEncoder
from .rng_stream import derive_seed
from .run_record import RunRecord, utc_now
from .settings import Settings, ON_ERROR_MODES
from .text_similarity import text_similarity
from .video.video_perturber import VideoPerturber
from .text.text_perturber import TextPerturber
from .text.lexicon_bundle import default_bundle
from .text.bias import bias_conversions

logger = logging.getLogger(__name__)

RUN_RECORDS_FILE = 'run_records.jsonl'
CAPTIONS_FILE = 'captions.jsonl'
TEXT_SIMILARITY_FILE = 'text_similarity.csv'
BIAS_CONVERSIONS_FILE = 'bias_conversions.csv'
PROGRESS_EVERY = 100
PACKED_SUFFIXES = ('.rgb', '.raw')

def output_path(out_root, spec, clip_id):
  if spec.is_video():
    return os.path.join(out_root, spec.slug(), clip_id)
  return os.path.join(out_root, spec.slug(), clip_id + '.json')

def clip_md5(clip):
  return hashlib.md5(clip.array().tobytes()).hexdigest()

# frame directories and packed raw files are read directly, anything
# else is decoded by the external encoder
def load_source_clip(entry, settings, encoder):
  path = entry.source_path
  if os.path.isdir(path) or path.endswith(PACKED_SUFFIXES):
    store = FrameStore(path)
    sidecar = store.read_sidecar() or {}
    fps = entry.fps or sidecar.get('fps') or settings.default_fps
    return store.read_clip(entry.clip_id, entry.start_sec, entry.end_sec, fps)
  if not os.path.exists(path):
    raise ValueError(f"Source not found for {entry.clip_id}: {path}")
  fps = entry.fps or settings.default_fps
  return encoder.decode_source(path, entry.clip_id, entry.start_sec, entry.end_sec, fps)

def _record(spec, entry, settings, **kwargs):
  seed = derive_seed(spec.seed, entry.clip_id, spec.name, spec.severity)
  return RunRecord(spec, entry.clip_id, settings.global_seed, seed, **kwargs)

def process_video_item(entry, spec, out_root, settings, encoder, codec_version=None):
  started = utc_now()
  path = output_path(out_root, spec, entry.clip_id)
  store = FrameStore(path, DIRECTORY)
  if store.is_complete():
    sidecar = store.read_sidecar()
    if sidecar.get('spec') == spec.to_dict():
      logger.debug("skipping %s %s, already on disk", spec.key(), entry.clip_id)
      return _record(spec, entry, settings, input_hash=sidecar.get('input_md5'),
        outputs=[path], codec_version=sidecar.get('codec_version'),
        status='existing', started_at=started, finished_at=utc_now())

  clip = load_source_clip(entry, settings, encoder)
  input_hash = clip_md5(clip)
  if settings.resize_first:
    clip = resize_clip(clip, settings.resize)
  perturber = VideoPerturber(encoder, settings.shot_mode)
  out = perturber.perturb(clip, spec)
  if not settings.resize_first:
    out = resize_clip(out, settings.resize)

  seed = derive_seed(spec.seed, entry.clip_id, spec.name, spec.severity)
  codec_version = codec_version if perturber.needs_encoder(spec) else None
  store.write_clip(out, {'spec': spec.to_dict(), 'seed': seed,
    'global_seed': settings.global_seed, 'source': entry.source_path,
    'start_sec': entry.start_sec, 'end_sec': entry.end_sec,
    'input_md5': input_hash, 'codec_version': codec_version})
  return _record(spec, entry, settings, input_hash=input_hash, outputs=[path],
    codec_version=codec_version, started_at=started, finished_at=utc_now())

def caption_md5(text):
  return hashlib.md5(text.encode('utf-8')).hexdigest()

def read_text_output(path):
  with open(path, 'r', encoding='utf-8') as f:
    return json.load(f)

def write_text_output(path, entry, spec, caption, lexicon_version):
  os.makedirs(os.path.dirname(path), exist_ok=True)
  payload = {'clip_id': entry.clip_id, 'original': entry.caption, 'text': caption.text,
    'spec': spec.to_dict(), 'lexicon_version': lexicon_version}
  tmp = path + '.tmp'
  with open(tmp, 'w', encoding='utf-8') as f:
    json.dump(payload, f, indent=2, sort_keys=True, ensure_ascii=False)
  os.replace(tmp, path)

def _existing_text(path, spec):
  if not os.path.exists(path):
    return None
  try:
    payload = read_text_output(path)
  except (OSError, ValueError):
    return None
  if payload.get('spec') != spec.to_dict():
    return None
  return payload

def process_text_item(entry, spec, out_root, settings, perturber):
  started = utc_now()
  path = output_path(out_root, spec, entry.clip_id)
  lexicon_version = perturber.get_lexicon().get_version()
  if _existing_text(path, spec) is not None:
    return _record(spec, entry, settings, input_hash=caption_md5(entry.caption),
      outputs=[path], lexicon_version=lexicon_version, status='existing',
      started_at=started, finished_at=utc_now())
  caption = perturber.perturb(entry.get_caption(), spec)
  write_text_output(path, entry, spec, caption, lexicon_version)
  return _record(spec, entry, settings, input_hash=caption_md5(entry.caption),
    outputs=[path], lexicon_version=lexicon_version, started_at=started,
    finished_at=utc_now())

# runs one item under the error policy, COLLECT turns exceptions into
# failed records
def run_item(function, entry, spec, on_error, *args):
  try:
    return function(entry, spec, *args)
  except Exception as e:
    if on_error == 'RAISE':
      raise
    logger.error("%s failed on %s: %s", spec.key(), entry.clip_id, e)
    settings = args[1]
    return _record(spec, entry, settings, status='failed', error=f"{type(e).__name__}: {e}",
      finished_at=utc_now())


class JobResult:

  def __init__(self, records):
    self.records = sorted(records, key=lambda r: r.sort_key())

  def get_records(self):
    return self.records

  def failures(self):
    return [r for r in self.records if r.is_failed()]

  def count(self, status):
    return len([r for r in self.records if r.status == status])

  def exit_code(self):
    return 1 if self.failures() else 0

  def summary(self):
    return (f"{len(self.records)} items: {self.count('created')} created, "
      f"{self.count('existing')} existing, {self.count('failed')} failed")


class PerturbJob:

  def __init__(self, manifest, specs, out_root, settings=None, encoder=None, lexicon=None):
    self.manifest = manifest
    self.specs = sorted(set(specs), key=lambda s: s.sort_key())
    if len(self.specs) == 0:
      raise ValueError("No perturbation specs given")
    self.out_root = out_root
    self.settings = settings or Settings()
    self.encoder = encoder or ExternalEncoder(self.settings.encoder_binary)
    self.lexicon = lexicon
    self.on_error = self.settings.on_error

  def set_on_error(self, on_error):
    on_error = on_error.upper()
    if on_error not in ON_ERROR_MODES:
      raise ValueError(f"Invalid on_error: {on_error}")
    self.on_error = on_error

  def get_on_error(self):
    return self.on_error

  # every spec takes the job's global seed
  def _seeded(self, spec):
    return spec.with_seed(self.settings.global_seed)

  def _text_perturber(self):
    lexicon = self.lexicon or default_bundle()
    return TextPerturber(lexicon, self.settings.plugin_command)

  def _items(self):
    items = []
    for spec in self.specs:
      for entry in self.manifest.entries():
        items.append((entry, self._seeded(spec)))
    return items

  def _parallel(self, calls, total):
    results = []
    workers = self.settings.workers
    runner = Parallel(n_jobs=workers, backend='loky', return_as='generator')
    for result in runner(calls):
      results.append(result)
      if len(results) % PROGRESS_EVERY == 0:
        logger.info("Completed %s/%s items", len(results), total)
    return results

  def run(self):
    os.makedirs(self.out_root, exist_ok=True)
    items = self._items()
    logger.info("perturbing %s items (%s specs x %s entries) with %s workers",
      len(items), len(self.specs), self.manifest.num_entries(), self.settings.workers)

    video_items = [(e, s) for (e, s) in items if s.is_video()]
    text_items = [(e, s) for (e, s) in items if not s.is_video() and not s.is_plugin()]
    plugin_items = [(e, s) for (e, s) in items if not s.is_video() and s.is_plugin()]

    records = []
    if video_items:
      codec_version = None
      if any(VideoPerturber().needs_encoder(s) for (_, s) in video_items):
        codec_version = self.encoder.version()
      calls = [delayed(run_item)(process_video_item, e, s, self.on_error, self.out_root,
        self.settings, self.encoder, codec_version) for (e, s) in video_items]
      records.extend(self._parallel(calls, len(video_items)))
    if text_items or plugin_items:
      perturber = self._text_perturber()
      calls = [delayed(run_item)(process_text_item, e, s, self.on_error, self.out_root,
        self.settings, perturber) for (e, s) in text_items]
      records.extend(self._parallel(calls, len(text_items)))
      records.extend(self._run_plugins(plugin_items, perturber))
      self._write_text_summaries(perturber)

    result = JobResult(records)
    self._write_run_records(result.get_records())
    logger.info(result.summary())
    return result

  # plugin perturbations go out in one batch per spec
  def _run_plugins(self, plugin_items, perturber):
    by_spec = defaultdict(list)
    for (entry, spec) in plugin_items:
      by_spec[spec].append(entry)
    records = []
    lexicon_version = perturber.get_lexicon().get_version()
    for spec in sorted(by_spec, key=lambda s: s.sort_key()):
      entries = by_spec[spec]
      todo = [e for e in entries if _existing_text(output_path(self.out_root, spec, e.clip_id), spec) is None]
      for entry in entries:
        if entry not in todo:
          records.append(_record(spec, entry, self.settings, input_hash=caption_md5(entry.caption),
            outputs=[output_path(self.out_root, spec, entry.clip_id)],
            lexicon_version=lexicon_version, status='existing', finished_at=utc_now()))
      if not todo:
        continue
      started = utc_now()
      try:
        captions = perturber.perturb_many([e.get_caption() for e in todo], spec)
      except Exception as e:
        if self.on_error == 'RAISE':
          raise
        logger.error("%s failed: %s", spec.key(), e)
        for entry in todo:
          records.append(_record(spec, entry, self.settings, status='failed',
            error=f"{type(e).__name__}: {e}", finished_at=utc_now()))
        continue
      for (entry, caption) in zip(todo, captions):
        path = output_path(self.out_root, spec, entry.clip_id)
        write_text_output(path, entry, spec, caption, lexicon_version)
        records.append(_record(spec, entry, self.settings, input_hash=caption_md5(entry.caption),
          outputs=[path], lexicon_version=lexicon_version, started_at=started,
          finished_at=utc_now()))
    return records

  def _text_outputs(self, spec):
    outputs = []
    for entry in self.manifest.entries():
      payload = _existing_text(output_path(self.out_root, spec, entry.clip_id), spec)
      if payload is not None:
        outputs.append(payload)
    return outputs

  # captions.jsonl per text spec, then text_similarity.csv and (when Bias
  # ran) bias_conversions.csv for the run
  def _write_text_summaries(self, perturber):
    rows = []
    by_category = defaultdict(list)
    conversions = {}
    for spec in self.specs:
      if spec.is_video():
        continue
      outputs = self._text_outputs(self._seeded(spec))
      if not outputs:
        continue
      with open(os.path.join(self.out_root, spec.slug(), CAPTIONS_FILE), 'w', encoding='utf-8') as f:
        for payload in outputs:
          f.write(json.dumps({'id': payload['clip_id'], 'text': payload['text']},
            ensure_ascii=False) + '\n')
      scores = [text_similarity(Caption(p['clip_id'], p['text']), Caption(p['clip_id'], p['original']))
        for p in outputs]
      rows.append(_similarity_row(spec.category, spec.name, scores))
      by_category[spec.category].extend(scores)
      if spec.category == 'Bias':
        conversions[spec.name] = _count_conversions(outputs, perturber.get_lexicon())
    for category in sorted(by_category):
      rows.append(_similarity_row(category, '', by_category[category]))
    if rows:
      write_similarity_csv(os.path.join(self.out_root, TEXT_SIMILARITY_FILE), rows)
    if conversions:
      write_conversions_csv(os.path.join(self.out_root, BIAS_CONVERSIONS_FILE), conversions)

  def _write_run_records(self, records):
    path = os.path.join(self.out_root, RUN_RECORDS_FILE)
    merged = {}
    if os.path.exists(path):
      with open(path, 'r', encoding='utf-8') as f:
        for line in f:
          if line.strip():
            existing = RunRecord.from_dict(json.loads(line))
            merged[(existing.spec.key(), existing.clip_id)] = existing
    for record in records:
      merged[(record.spec.key(), record.clip_id)] = record
    ordered = sorted(merged.values(), key=lambda r: r.sort_key())
    with open(path, 'w', encoding='utf-8') as f:
      for record in ordered:
        f.write(record.to_json() + '\n')


SIMILARITY_COLUMNS = ['category', 'perturbation', 'count', 'bleu4', 'meteor_lite', 'rouge_l_f1']

def _similarity_row(category, name, scores):
  count = len(scores)
  return {'category': category, 'perturbation': name, 'count': count,
    'bleu4': sum(s['bleu4'] for s in scores) / count,
    'meteor_lite': sum(s['meteor_lite'] for s in scores) / count,
    'rouge_l_f1': sum(s['rouge_l_f1'] for s in scores) / count}

def write_similarity_csv(path, rows):
  with open(path, 'w', newline='', encoding='utf-8') as f:
    writer = csv.DictWriter(f, fieldnames=SIMILARITY_COLUMNS, lineterminator='\n')
    writer.writeheader()
    for row in rows:
      writer.writerow({k: (f"{row[k]:.6f}" if isinstance(row[k], float) else row[k])
        for k in SIMILARITY_COLUMNS})

CONVERSION_COLUMNS = ['perturbation', 'source', 'target', 'count', 'rate']

def _count_conversions(outputs, lex):
  counts = Counter()
  for p in outputs:
    counts.update(bias_conversions(Caption(p['clip_id'], p['original']), Caption(p['clip_id'], p['text']), lex))
  return counts

# one row per (variant, source gender, target gender). rate is the share
# of the source gender's references that ended up as the target
def write_conversions_csv(path, conversions):
  with open(path, 'w', newline='', encoding='utf-8') as f:
    writer = csv.DictWriter(f, fieldnames=CONVERSION_COLUMNS, lineterminator='\n')
    writer.writeheader()
    for name in sorted(conversions):
      counts = conversions[name]
      totals = Counter()
      for ((source, _), count) in counts.items():
        totals[source] += count
      for ((source, target), count) in sorted(counts.items(), key=lambda item: (item[0][0], item[0][1] or '')):
        writer.writerow({'perturbation': name, 'source': source, 'target': target or '',
          'count': count, 'rate': f"{count / totals[source]:.6f}"})

def perturb_dataset(manifest, specs, workers, out_root, settings=None, encoder=None,
    lexicon=None):
  settings = settings or Settings()
  settings.set_workers(workers)
  job = PerturbJob(manifest, specs, out_root, settings, encoder, lexicon)
  return job.run()
