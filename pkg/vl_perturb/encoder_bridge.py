# encoder_bridge.py
# the raw frame bridge to an external encoder binary (ffmpeg by default).
# frames go to the child's stdin as packed rgb24 with no header, the
# geometry and fps travel as command line flags. a second invocation
# decodes the compressed file back to rgb24 on stdout.
#
# templates are argument lists with {placeholders}:
#   encode: {width} {height} {fps} {codec} {quantizer} {output}
#   decode: {input} {width} {height}

import os
import json
import shutil
import logging
import tempfile
import subprocess
import numpy as np
from .errors import EncoderMissingError, EncoderError
from .frames import ClipFrames

logger = logging.getLogger(__name__)

DEFAULT_CONTAINER = '.mkv'

def default_encode_template(binary='ffmpeg'):
  return [binary, '-y', '-loglevel', 'error',
    '-f', 'rawvideo', '-pix_fmt', 'rgb24', '-s', '{width}x{height}', '-r', '{fps}',
    '-i', '-', '-c:v', '{codec}', '-q:v', '{quantizer}', '{output}']

def default_decode_template(binary='ffmpeg'):
  return [binary, '-loglevel', 'error', '-i', '{input}',
    '-f', 'rawvideo', '-pix_fmt', 'rgb24', '-']

def default_source_template(binary='ffmpeg'):
  return [binary, '-loglevel', 'error', '-ss', '{start}', '-i', '{input}',
    '-t', '{duration}', '-r', '{fps}', '-f', 'rawvideo', '-pix_fmt', 'rgb24', '-']

def default_probe_template(binary='ffmpeg'):
  probe = binary[:-len('ffmpeg')] + 'ffprobe' if binary.endswith('ffmpeg') else 'ffprobe'
  return [probe, '-v', 'error', '-select_streams', 'v:0',
    '-show_entries', 'stream=width,height', '-of', 'json', '{input}']


class ExternalEncoder:

  def __init__(self, binary='ffmpeg', encode_template=None, decode_template=None,
      container=DEFAULT_CONTAINER):
    self.binary = binary
    self.encode_template = list(encode_template or default_encode_template(binary))
    self.decode_template = list(decode_template or default_decode_template(binary))
    self.source_template = default_source_template(binary)
    self.probe_template = default_probe_template(binary)
    self.container = container

  def is_available(self):
    return shutil.which(self.encode_template[0]) is not None \
      and shutil.which(self.decode_template[0]) is not None

  def _check_available(self, template):
    if shutil.which(template[0]) is None:
      raise EncoderMissingError(template[0])

  def _fill(self, template, **values):
    return [arg.format(**values) for arg in template]

  def _run(self, command, stdin_bytes=None, capture=True):
    logger.debug("running %s", command)
    try:
      result = subprocess.run(command, input=stdin_bytes,
        stdout=subprocess.PIPE if capture else subprocess.DEVNULL,
        stderr=subprocess.PIPE)
    except FileNotFoundError:
      raise EncoderMissingError(command[0])
    except OSError as e:
      raise EncoderError(command, -1, str(e))
    if result.returncode != 0:
      raise EncoderError(command, result.returncode,
        result.stderr.decode('utf-8', errors='replace'))
    return result.stdout

  # split a raw rgb24 byte stream into frames of a known geometry
  def _frames_from_bytes(self, data, width, height):
    frame_size = width * height * 3
    if len(data) == 0 or len(data) % frame_size != 0:
      raise EncoderError(self.decode_template, 0,
        f"decoded {len(data)} bytes, not a whole number of {width}x{height} frames")
    return np.frombuffer(data, dtype=np.uint8).reshape(-1, height, width, 3)

  def pipe_through(self, clip, codec_name, quantizer):
    self._check_available(self.encode_template)
    self._check_available(self.decode_template)
    work_dir = tempfile.mkdtemp(prefix='vl_perturb_')
    output = os.path.join(work_dir, 'encoded' + self.container)
    values = {'width': clip.width(), 'height': clip.height(),
      'fps': str(clip.get_fps()), 'codec': codec_name,
      'quantizer': quantizer, 'output': output, 'input': output}

    try:
      self._run(self._fill(self.encode_template, **values),
        stdin_bytes=clip.array().tobytes(), capture=False)
      data = self._run(self._fill(self.decode_template, **values))
      frames = self._frames_from_bytes(data, clip.width(), clip.height())
    finally:
      shutil.rmtree(work_dir, ignore_errors=True)
    logger.debug("%s through %s q=%s: %s -> %s frames", clip.clip_id, codec_name,
      quantizer, clip.frame_count(), len(frames))
    return ClipFrames(clip.clip_id, frames, clip.get_fps())

  def probe_geometry(self, path):
    self._check_available(self.probe_template)
    data = self._run(self._fill(self.probe_template, input=path))
    streams = json.loads(data.decode('utf-8')).get('streams', [])
    if len(streams) == 0:
      raise ValueError(f"No video stream in {path}")
    return (int(streams[0]['width']), int(streams[0]['height']))

  # decode [start, end) seconds of a container file at a fixed fps
  def decode_source(self, path, clip_id, start_sec, end_sec, fps):
    if start_sec < 0 or end_sec <= start_sec:
      raise ValueError(f"Invalid time range: {start_sec} - {end_sec}")
    self._check_available(self.source_template)
    (width, height) = self.probe_geometry(path)
    command = self._fill(self.source_template, input=path, start=start_sec,
      duration=end_sec - start_sec, fps=str(fps))
    frames = self._frames_from_bytes(self._run(command), width, height)
    return ClipFrames(clip_id, frames, fps)

  def version(self):
    try:
      out = self._run([self.binary, '-version'])
    except (EncoderMissingError, EncoderError):
      return None
    lines = out.decode('utf-8', errors='replace').splitlines()
    return lines[0] if lines else None


def pipe_through_encoder(clip, codec_name, quantizer, encoder_command=None):
  if encoder_command is None:
    encoder = ExternalEncoder()
  elif isinstance(encoder_command, ExternalEncoder):
    encoder = encoder_command
  else:
    encoder = ExternalEncoder(encode_template=encoder_command)
  return encoder.pipe_through(clip, codec_name, quantizer)
