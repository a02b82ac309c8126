# drop_text.py
# word dropping by tag or position. dropped words become [UNK] so the
# caption keeps its length.

import logging
from ..caption import UNK
from .pos_tagger import pos_tag, NN, VB

logger = logging.getLogger(__name__)

DROP_TEXT_MODES = ['NoNN', 'NoVB', 'NoNN&VB', 'NNOnly', 'VBOnly', 'NN&VBOnly',
  'RandNN', 'RandVB']
POSITIONAL_MODES = ['DropFirst', 'DropLast', 'DropFirstLast', 'ShuffleOrder']

# tags that get dropped, or kept for the *Only modes
_DROP = {'NoNN': {NN}, 'NoVB': {VB}, 'NoNN&VB': {NN, VB}}
_KEEP = {'NNOnly': {NN}, 'VBOnly': {VB}, 'NN&VBOnly': {NN, VB}}
_RANDOM = {'RandNN': NN, 'RandVB': VB}

def apply_drop_text(caption, mode, rng, lex):
  if mode not in DROP_TEXT_MODES:
    raise ValueError(f"Invalid drop text mode: {mode}")
  tagged = pos_tag(caption.tokens, lex)
  tokens = list(caption.tokens)

  if mode in _DROP:
    tokens = [UNK if t.tag in _DROP[mode] else t.token for t in tagged]
  elif mode in _KEEP:
    tokens = [t.token if t.tag in _KEEP[mode] else UNK for t in tagged]
  else:
    positions = [i for (i, t) in enumerate(tagged) if t.tag == _RANDOM[mode]]
    if len(positions) == 0:
      return caption
    tokens[rng.choice(positions)] = UNK
  return caption.with_tokens(tokens)

def apply_positional(caption, mode, rng):
  if mode not in POSITIONAL_MODES:
    raise ValueError(f"Invalid positional mode: {mode}")
  tokens = list(caption.tokens)
  if len(tokens) == 0:
    return caption
  if mode == 'DropFirst':
    tokens[0] = UNK
  elif mode == 'DropLast':
    tokens[-1] = UNK
  elif mode == 'DropFirstLast':
    tokens[0] = UNK
    tokens[-1] = UNK
  else:
    tokens = [tokens[i] for i in rng.permutation(len(tokens))]
  return caption.with_tokens(tokens)
