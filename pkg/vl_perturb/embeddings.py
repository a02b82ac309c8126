# embeddings.py
# reads and writes embedding sets produced by external models.
#
# EMB1: b"EMB1", little endian u32 count, u32 dim, then count x dim
#       little endian float32 rows. ids live in a "<path>.ids.json" list.
# csv:  header "id,d0,d1,...", one row per id.

import os
import csv
import json
import struct
import logging
import numpy as np
from .retrieval import EmbeddingSet
from .errors import EmbeddingFormatError

logger = logging.getLogger(__name__)

MAGIC = b'EMB1'
HEADER = struct.Struct('<4sII')
FORMATS = ['emb1', 'csv']
FLOAT_DTYPE = np.dtype('<f4')

def ids_path(path):
  return path + '.ids.json'

def detect_format(path):
  if path.endswith('.csv'):
    return 'csv'
  if path.endswith('.emb1') or path.endswith('.emb'):
    return 'emb1'
  raise ValueError(f"Cannot tell the embedding format of {path}")

def _read_emb1(path):
  with open(path, 'rb') as f:
    data = f.read()
  if len(data) < HEADER.size:
    raise EmbeddingFormatError(f"{path} is too short for an EMB1 header")
  (magic, count, dim) = HEADER.unpack_from(data)
  if magic != MAGIC:
    raise EmbeddingFormatError(f"{path} does not start with {MAGIC!r}")
  if dim < 1:
    raise EmbeddingFormatError(f"{path} declares dimension {dim}")
  expected = HEADER.size + count * dim * FLOAT_DTYPE.itemsize
  if len(data) != expected:
    raise EmbeddingFormatError(f"{path} is {len(data)} bytes, expected {expected} "
      f"for {count}x{dim}")
  vectors = np.frombuffer(data, dtype=FLOAT_DTYPE, offset=HEADER.size).reshape(count, dim)
  bad = np.where(~np.all(np.isfinite(vectors), axis=1))[0]
  if len(bad) > 0:
    raise EmbeddingFormatError("NaN or Inf in embedding", int(bad[0]) + 1)

  sidecar = ids_path(path)
  if not os.path.exists(sidecar):
    raise EmbeddingFormatError(f"Missing id sidecar {sidecar}")
  with open(sidecar, 'r', encoding='utf-8') as f:
    ids = json.load(f)
  if not isinstance(ids, list) or len(ids) != count:
    raise EmbeddingFormatError(f"{sidecar} must list {count} ids")
  return (ids, vectors.astype(np.float32))

def _read_csv(path):
  ids = []
  rows = []
  with open(path, 'r', newline='', encoding='utf-8') as f:
    reader = csv.reader(f)
    header = next(reader, None)
    if header is None or len(header) < 2 or header[0] != 'id':
      raise EmbeddingFormatError(f"{path} needs a header starting with id", 1)
    dim = len(header) - 1
    for (row_number, row) in enumerate(reader, start=2):
      if len(row) == 0:
        continue
      if len(row) != dim + 1:
        raise EmbeddingFormatError(f"expected {dim + 1} columns, got {len(row)}", row_number)
      try:
        values = [float(v) for v in row[1:]]
      except ValueError:
        raise EmbeddingFormatError(f"non numeric value in {row[1:]}", row_number)
      if not all(np.isfinite(values)):
        raise EmbeddingFormatError("NaN or Inf in embedding", row_number)
      ids.append(row[0])
      rows.append(values)
  vectors = np.array(rows, dtype=np.float32).reshape(len(rows), dim)
  return (ids, vectors)

def ingest_embeddings(path, format=None, normalize=False):
  if not os.path.exists(path):
    raise ValueError(f"Embedding file not found: {path}")
  format = format or detect_format(path)
  if format not in FORMATS:
    raise ValueError(f"Invalid embedding format: {format}")
  if format == 'emb1':
    (ids, vectors) = _read_emb1(path)
  else:
    (ids, vectors) = _read_csv(path)
  embeddings = EmbeddingSet(ids, vectors)
  if normalize:
    embeddings = embeddings.normalize()
  logger.debug("ingested %s from %s", embeddings, path)
  return embeddings

def write_embeddings(embeddings, path, format=None):
  format = format or detect_format(path)
  if format not in FORMATS:
    raise ValueError(f"Invalid embedding format: {format}")
  parent = os.path.dirname(path)
  if parent:
    os.makedirs(parent, exist_ok=True)
  vectors = np.ascontiguousarray(embeddings.vectors, dtype=FLOAT_DTYPE)
  if format == 'emb1':
    with open(path, 'wb') as f:
      f.write(HEADER.pack(MAGIC, embeddings.count(), embeddings.dim()))
      f.write(vectors.tobytes())
    with open(ids_path(path), 'w', encoding='utf-8') as f:
      json.dump(list(embeddings.ids), f)
  else:
    with open(path, 'w', newline='', encoding='utf-8') as f:
      writer = csv.writer(f, lineterminator='\n')
      writer.writerow(['id'] + [f"d{i}" for i in range(embeddings.dim())])
      for (id, row) in zip(embeddings.ids, vectors):
        writer.writerow([id] + [repr(float(v)) for v in row])
