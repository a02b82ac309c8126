# change_char.py
# character level edits inside a single word: typos, keyboard slips,
# known misspellings, ocr confusions, prefix swaps, stray punctuation

import string
import logging
from .pos_tagger import tag_word
from .words import split_token, lookup_key, replace_core, has_letters, PUNCTUATION

logger = logging.getLogger(__name__)

CHANGE_CHAR_VARIANTS = ['Typos', 'Keyboard', 'SpellErr', 'OCR', 'PrefixSwap', 'Punct']
TYPO_EDITS = ['insert', 'delete', 'swap', 'replace']
LETTERS = string.ascii_lowercase

def _with_token(caption, index, token):
  tokens = list(caption.tokens)
  tokens[index] = token
  return caption.with_tokens(tokens)

def _letter_like(original, letter):
  return letter.upper() if original.isupper() else letter

# one insert, delete, adjacent swap or replace inside one word.
# every edit is chosen so that it really changes the word. each one is
# distance 1 under optimal string alignment, where an adjacent swap
# counts as a single edit (plain levenshtein would score a swap as 2)
def typo(word, rng):
  edits = ['insert', 'replace']
  if len(word) >= 2:
    edits.append('delete')
  swaps = [i for i in range(len(word) - 1) if word[i] != word[i + 1]]
  if swaps:
    edits.append('swap')
  edit = rng.choice([e for e in TYPO_EDITS if e in edits])

  if edit == 'insert':
    i = int(rng.integers(0, len(word) + 1))
    return word[:i] + rng.choice(LETTERS) + word[i:]
  elif edit == 'delete':
    i = int(rng.integers(0, len(word)))
    return word[:i] + word[i + 1:]
  elif edit == 'swap':
    i = rng.choice(swaps)
    return word[:i] + word[i + 1] + word[i] + word[i + 2:]
  i = int(rng.integers(0, len(word)))
  letter = rng.choice([c for c in LETTERS if c != word[i].lower()])
  return word[:i] + _letter_like(word[i], letter) + word[i + 1:]

def _typos(caption, rng, lex):
  candidates = [i for (i, t) in enumerate(caption.tokens) if has_letters(t)]
  if len(candidates) == 0:
    return caption
  index = rng.choice(candidates)
  (lead, core, trail) = split_token(caption.tokens[index])
  return _with_token(caption, index, lead + typo(core, rng) + trail)

def _keyboard(caption, rng, lex):
  adjacency = lex.keyboard_adjacency
  candidates = []
  for (i, token) in enumerate(caption.tokens):
    (lead, core, _) = split_token(token)
    positions = [len(lead) + j for (j, c) in enumerate(core) if c.lower() in adjacency]
    if positions:
      candidates.append((i, positions))
  if len(candidates) == 0:
    return caption
  (index, positions) = rng.choice(candidates)
  token = caption.tokens[index]
  pos = rng.choice(positions)
  neighbor = rng.choice(adjacency[token[pos].lower()])
  token = token[:pos] + _letter_like(token[pos], neighbor) + token[pos + 1:]
  return _with_token(caption, index, token)

def _spell_err(caption, rng, lex):
  candidates = [i for (i, t) in enumerate(caption.tokens) if lookup_key(t) in lex.misspellings]
  if len(candidates) == 0:
    return caption
  index = rng.choice(candidates)
  token = caption.tokens[index]
  variant = rng.choice(lex.misspellings[lookup_key(token)])
  return _with_token(caption, index, replace_core(token, variant))

def _ocr(caption, rng, lex):
  confusions = lex.ocr_confusions
  candidates = []
  for (i, token) in enumerate(caption.tokens):
    (lead, core, _) = split_token(token)
    positions = [len(lead) + j for (j, c) in enumerate(core) if c in confusions]
    if positions:
      candidates.append((i, positions))
  if len(candidates) == 0:
    return caption
  (index, positions) = rng.choice(candidates)
  token = caption.tokens[index]
  pos = rng.choice(positions)
  token = token[:pos] + rng.choice(confusions[token[pos]]) + token[pos + 1:]
  return _with_token(caption, index, token)

# all (token index, new word) pairs where swapping the prefix gives a
# known word with the same tag
def prefix_swaps(caption, lex):
  swaps = []
  for (i, token) in enumerate(caption.tokens):
    word = lookup_key(token)
    for prefix in lex.prefixes:
      stem = word[len(prefix):]
      if not word.startswith(prefix) or len(stem) < 3:
        continue
      tag = tag_word(word, lex)
      for other in lex.prefixes:
        candidate = other + stem
        if other != prefix and candidate != word and lex.is_known(candidate, tag):
          swaps.append((i, candidate))
      break
  return swaps

def _prefix_swap(caption, rng, lex):
  swaps = prefix_swaps(caption, lex)
  if len(swaps) == 0:
    return caption
  (index, word) = rng.choice(swaps)
  return _with_token(caption, index, replace_core(caption.tokens[index], word))

# prepend a standalone mark, append one (attached to the last word or
# standalone), or both
def _punct(caption, rng, lex):
  tokens = list(caption.tokens)
  where = rng.choice(['prepend', 'append', 'both'])
  if where in ('prepend', 'both'):
    tokens.insert(0, rng.choice(PUNCTUATION))
  if where in ('append', 'both'):
    mark = rng.choice(PUNCTUATION)
    if len(caption.tokens) > 0 and rng.random() < 0.5:
      tokens[-1] = tokens[-1] + mark
    else:
      tokens.append(mark)
  return caption.with_tokens(tokens)

_VARIANTS = {'Typos': _typos, 'Keyboard': _keyboard, 'SpellErr': _spell_err,
  'OCR': _ocr, 'PrefixSwap': _prefix_swap, 'Punct': _punct}

def apply_change_char(caption, variant, rng, lex):
  if variant not in _VARIANTS:
    raise ValueError(f"Invalid change char variant: {variant}")
  return _VARIANTS[variant](caption, rng, lex)
