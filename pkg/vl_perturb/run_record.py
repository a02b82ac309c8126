# run_record.py
# provenance for every artifact perturb_dataset writes

import json
import datetime
from dataclasses import dataclass, field
import pytz
from .perturbation_spec import PerturbationSpec

STATUSES = ['created', 'existing', 'failed']

def utc_now():
  return datetime.datetime.now(pytz.utc).isoformat()

@dataclass
class RunRecord:
  spec: PerturbationSpec
  clip_id: str
  global_seed: int
  derived_seed: int
  input_hash: str = None
  outputs: list = field(default_factory=list)
  lexicon_version: str = None
  codec_version: str = None
  status: str = 'created'
  error: str = None
  started_at: str = None
  finished_at: str = None

  def __post_init__(self):
    if self.status not in STATUSES:
      raise ValueError(f"Invalid run record status: {self.status}")

  def sort_key(self):
    return (self.spec.sort_key(), self.clip_id)

  def is_failed(self):
    return self.status == 'failed'

  def to_dict(self):
    return {'spec': self.spec.to_dict(), 'key': self.spec.key(), 'clip_id': self.clip_id,
      'global_seed': self.global_seed, 'derived_seed': self.derived_seed,
      'input_hash': self.input_hash, 'outputs': list(self.outputs),
      'lexicon_version': self.lexicon_version, 'codec_version': self.codec_version,
      'status': self.status, 'error': self.error,
      'started_at': self.started_at, 'finished_at': self.finished_at}

  @staticmethod
  def from_dict(payload):
    return RunRecord(PerturbationSpec.from_dict(payload['spec']), payload['clip_id'],
      payload['global_seed'], payload['derived_seed'], payload.get('input_hash'),
      list(payload.get('outputs', [])), payload.get('lexicon_version'),
      payload.get('codec_version'), payload.get('status', 'created'),
      payload.get('error'), payload.get('started_at'), payload.get('finished_at'))

  def to_json(self):
    return json.dumps(self.to_dict(), sort_keys=True)
