import numpy as np

FNV_OFFSET_BASIS = 0xcbf29ce484222325
FNV_PRIME = 0x100000001b3
MASK_64 = 0xffffffffffffffff

# counts like workers or frame sizes. accepts ints and their string form
# (environment values), never bools or fractional numbers
def require_int_in_range(field_name, value, min_value, max_value):
  if isinstance(value, bool):
    raise ValueError(f"Invalid value for {field_name}: {value}")
  try:
    number = int(value)
    whole = float(value) == number
  except (TypeError, ValueError):
    raise ValueError(f"Invalid value for {field_name}: {value}") from None
  if not whole or number < min_value or number > max_value:
    raise ValueError(f"Invalid value for {field_name}: {value}")
  return number

def validate_severity(severity):
  if isinstance(severity, bool) or not isinstance(severity, (int, np.integer)):
    raise ValueError(f"Invalid severity: {severity}")
  if severity < 1 or severity > 5:
    raise ValueError(f"Invalid severity: {severity}")
  return int(severity)

# 64 bit FNV-1a over raw bytes
def fnv1a_64(data):
  value = FNV_OFFSET_BASIS
  for byte in data:
    value ^= byte
    value = (value * FNV_PRIME) & MASK_64
  return value

# takes float pixel values on the 0..255 scale and quantizes them
# with round-half-away-from-zero, clamped to the u8 range
def to_uint8(values):
  values = np.clip(np.asarray(values, dtype=np.float64), 0.0, 255.0)
  return np.floor(values + 0.5).astype(np.uint8)

# filesystem friendly version of a perturbation name
def slugify(text):
  text = text.replace('&', 'and')
  return ''.join(c if c.isalnum() or c in '-_.' else '_' for c in text)
