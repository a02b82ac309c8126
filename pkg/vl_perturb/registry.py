# registry.py
# the fixed catalogue of perturbations. video entries all carry
# severities 1..5, text entries carry none. plugin entries are the
# model-based text perturbations that only run through an external
# perturber command.

from collections import namedtuple

PerturbationEntry = namedtuple('PerturbationEntry',
  ['modality', 'category', 'name', 'plugin', 'text_type'], defaults=(None,))

VIDEO = 'video'
TEXT = 'text'
MODALITIES = (VIDEO, TEXT)

SEVERITIES = (1, 2, 3, 4, 5)

VIDEO_CATEGORIES = ('Noise', 'Blur', 'Camera', 'Digital', 'Temporal')
TEXT_CATEGORIES = ('ChangeChar', 'AddText', 'Bias', 'DropText',
  'Positional', 'SwapText', 'TextStyle')

# categories that are synthetic rather than natural distribution shifts
SYNTHETIC_TEXT_CATEGORIES = ('DropText', 'Positional')

# text perturbation types. machine edits come from a text model or tool,
# synthetic ones would rarely show up in real captions
NATURAL = 'natural'
MACHINE = 'machine'
SYNTHETIC = 'synthetic'
TEXT_TYPES = (NATURAL, MACHINE, SYNTHETIC)
MACHINE_TEXT_PERTURBATIONS = ('OCR', 'PrefixSwap', 'Punct', 'SynWordNet',
  'SynWordEmbedding', 'BackTrans', 'MLM', 'JJSwap', 'NNSwap')

def text_type_of(category, name):
  if category in SYNTHETIC_TEXT_CATEGORIES:
    return SYNTHETIC
  if name in MACHINE_TEXT_PERTURBATIONS:
    return MACHINE
  return NATURAL

VIDEO_PERTURBATIONS = (
  ('Noise', ('gaussian', 'shot', 'impulse', 'speckle')),
  ('Blur', ('motion_blur', 'defocus_blur', 'zoom_blur')),
  ('Camera', ('static_rotate', 'rotate', 'translate')),
  ('Digital', ('jpeg', 'mpeg1', 'mpeg2')),
  ('Temporal', ('sampling', 'reverse_sampling', 'jumble', 'box_jumble', 'freeze')),
)

TEXT_PERTURBATIONS = (
  ('ChangeChar', ('Typos', 'Keyboard', 'SpellErr', 'OCR', 'PrefixSwap', 'Punct')),
  ('AddText', ('AppendIrr', 'InsertAdv')),
  ('Bias', ('AllMale', 'AllFemale', 'GenderSwap', 'GenderNeutral')),
  ('DropText', ('NoNN', 'NoVB', 'NoNN&VB', 'NNOnly', 'VBOnly', 'NN&VBOnly',
    'RandNN', 'RandVB')),
  ('Positional', ('DropFirst', 'DropLast', 'DropFirstLast', 'ShuffleOrder')),
  ('SwapText', ('SynWordNet', 'SynWordEmbedding')),
  ('TextStyle', ('Tense', 'ReverseNeg')),
)

TEXT_PLUGIN_PERTURBATIONS = (
  ('SwapText', ('BackTrans', 'MLM', 'JJSwap', 'NNSwap')),
  ('TextStyle', ('Casual', 'Formal', 'Passive')),
)

# captions in some datasets never mention gender, so the bias
# perturbations are left out for those
PROFILES = {
  'msrvtt': (),
  'youcook2': ('Bias',),
}

def _build():
  entries = []
  for (category, names) in VIDEO_PERTURBATIONS:
    for name in names:
      entries.append(PerturbationEntry(VIDEO, category, name, False))
  for (category, names) in TEXT_PERTURBATIONS:
    for name in names:
      entries.append(PerturbationEntry(TEXT, category, name, False,
        text_type_of(category, name)))
  for (category, names) in TEXT_PLUGIN_PERTURBATIONS:
    for name in names:
      entries.append(PerturbationEntry(TEXT, category, name, True,
        text_type_of(category, name)))
  return tuple(entries)

ENTRIES = _build()
_BY_KEY = {(e.category, e.name): e for e in ENTRIES}

def video_entries():
  return [e for e in ENTRIES if e.modality == VIDEO]

def text_entries(include_plugins=True, profile='msrvtt'):
  if profile not in PROFILES:
    raise ValueError(f"Invalid dataset profile: {profile}")
  excluded = PROFILES[profile]
  return [e for e in ENTRIES if e.modality == TEXT
    and e.category not in excluded
    and (include_plugins or not e.plugin)]

# every (entry, severity) pair of the visual suite
def video_variants():
  for entry in video_entries():
    for severity in SEVERITIES:
      yield (entry, severity)

def find_entry(category, name):
  entry = _BY_KEY.get((category, name))
  if entry is None:
    raise ValueError(f"Unknown perturbation: {category}/{name}")
  return entry
