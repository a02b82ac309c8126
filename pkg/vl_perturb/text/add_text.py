# add_text.py
# AppendIrr puts an irrelevant phrase at the start or end of the
# caption, InsertAdv puts an adverb in front of every verb

import logging
from .pos_tagger import pos_tag, VB
from ..caption import tokenize

logger = logging.getLogger(__name__)

ADD_TEXT_VARIANTS = ['AppendIrr', 'InsertAdv']

def append_irrelevant(caption, rng, lex):
  if rng.random() < 0.5:
    phrase = rng.choice(lex.irrelevant_prefixes)
    tokens = list(tokenize(phrase)) + list(caption.tokens)
  else:
    phrase = rng.choice(lex.irrelevant_suffixes)
    tokens = list(caption.tokens) + list(tokenize(phrase))
  return caption.with_tokens(tokens)

def insert_adverbs(caption, rng, lex):
  tokens = []
  changed = False
  for tagged in pos_tag(caption.tokens, lex):
    if tagged.tag == VB:
      tokens.append(rng.choice(lex.adverbs))
      changed = True
    tokens.append(tagged.token)
  if not changed:
    return caption
  return caption.with_tokens(tokens)

def apply_add_text(caption, variant, rng, lex):
  if variant == 'AppendIrr':
    return append_irrelevant(caption, rng, lex)
  elif variant == 'InsertAdv':
    return insert_adverbs(caption, rng, lex)
  raise ValueError(f"Invalid add text variant: {variant}")
