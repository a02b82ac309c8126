# plugin.py
# model based text perturbations run in an external process. the wire
# format is one json object per line, {"id": ..., "text": ...}, utf-8,
# on stdin and stdout. results are paired back up by id.

import os
import json
import shlex
import logging
import subprocess
from ..errors import PluginError

logger = logging.getLogger(__name__)

PERTURBATION_ENV = 'VL_PERTURB_PERTURBATION'

def encode_lines(captions):
  lines = [json.dumps({'id': c.clip_id, 'text': c.text}, ensure_ascii=False) for c in captions]
  return ''.join(line + '\n' for line in lines).encode('utf-8')

def _command_list(command, perturbation):
  if isinstance(command, str):
    command = shlex.split(command)
  if len(command) == 0:
    raise ValueError("Plugin command cannot be empty")
  if perturbation is None:
    return list(command)
  return [arg.replace('{perturbation}', perturbation) for arg in command]

def parse_lines(data, command):
  results = {}
  text = data.decode('utf-8')
  for (number, line) in enumerate(text.splitlines(), start=1):
    if line.strip() == '':
      continue
    try:
      payload = json.loads(line)
    except json.JSONDecodeError as e:
      raise PluginError(command, f"malformed output line: {e.msg}", number)
    if not isinstance(payload, dict) or not isinstance(payload.get('id'), str) \
        or not isinstance(payload.get('text'), str):
      raise PluginError(command, "output line needs string fields id and text", number)
    if payload['id'] in results:
      raise PluginError(command, f"duplicate id {payload['id']}", number)
    results[payload['id']] = (payload['text'], number)
  return results

# the perturbation name is available to the plugin as a {perturbation}
# placeholder in its command line and as an environment variable
def run_plugin(captions, command, perturbation=None):
  captions = list(captions)
  ids = [c.clip_id for c in captions]
  if len(set(ids)) != len(ids):
    raise ValueError("Plugin input captions must have unique ids")
  argv = _command_list(command, perturbation)
  env = dict(os.environ)
  if perturbation is not None:
    env[PERTURBATION_ENV] = perturbation

  logger.info("running plugin %s on %s captions", argv, len(captions))
  try:
    result = subprocess.run(argv, input=encode_lines(captions),
      stdout=subprocess.PIPE, stderr=subprocess.PIPE, env=env)
  except OSError as e:
    raise PluginError(argv, f"could not start: {e}")
  if result.returncode != 0:
    stderr = result.stderr.decode('utf-8', errors='replace').strip()
    raise PluginError(argv, f"exited with status {result.returncode}: {stderr[-500:]}")

  results = parse_lines(result.stdout, argv)
  expected = set(ids)
  for (clip_id, (_, number)) in results.items():
    if clip_id not in expected:
      raise PluginError(argv, f"unknown id {clip_id}", number)
  missing = [i for i in ids if i not in results]
  if missing:
    raise PluginError(argv, f"missing ids in output: {missing[:10]}")
  return [c.with_text(results[c.clip_id][0]) for c in captions]
