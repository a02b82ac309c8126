# text_style.py
# Tense moves verbs into the past, ReverseNeg toggles a "not"
# after the first verb

import logging
from .pos_tagger import pos_tag, VB
from .words import lookup_key, replace_core

logger = logging.getLogger(__name__)

TEXT_STYLE_VARIANTS = ['Tense', 'ReverseNeg']
NEGATION = 'not'

def to_past_tense(caption, lex):
  tokens = list(caption.tokens)
  for (i, tagged) in enumerate(pos_tag(caption.tokens, lex)):
    if tagged.tag != VB:
      continue
    past = lex.past_tense.get(lookup_key(tagged.token))
    if past is not None:
      tokens[i] = replace_core(tagged.token, past)
  return caption.with_tokens(tokens)

def reverse_negation(caption, lex):
  tokens = list(caption.tokens)
  for (i, token) in enumerate(tokens):
    if token.lower() == NEGATION:
      return caption.with_tokens(tokens[:i] + tokens[i + 1:])
  for (i, tagged) in enumerate(pos_tag(caption.tokens, lex)):
    if tagged.tag == VB:
      return caption.with_tokens(tokens[:i + 1] + [NEGATION] + tokens[i + 1:])
  return caption

def apply_text_style(caption, variant, lex):
  if variant == 'Tense':
    return to_past_tense(caption, lex)
  elif variant == 'ReverseNeg':
    return reverse_negation(caption, lex)
  raise ValueError(f"Invalid text style variant: {variant}")
