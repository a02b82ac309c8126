# pos_tagger.py
# coarse part of speech tags from a lexicon lookup with suffix rules
# as the fallback. deterministic for a given lexicon version.

import logging
from collections import namedtuple
from ..caption import UNK
from .words import lookup_key

logger = logging.getLogger(__name__)

NN = 'NN'
VB = 'VB'
JJ = 'JJ'
RB = 'RB'
OTHER = 'OTHER'

TaggedToken = namedtuple('TaggedToken', ['token', 'tag'])

def tag_word(word, lex):
  if word == '' or word.isdigit():
    return OTHER
  tag = lex.tag_of(word)
  if tag is not None:
    return tag
  best = None
  for (suffix, suffix_tag) in lex.suffix_rules.items():
    if len(word) > len(suffix) and word.endswith(suffix):
      if best is None or len(suffix) > len(best[0]):
        best = (suffix, suffix_tag)
  if best is not None:
    return best[1]
  return NN

def pos_tag(tokens, lex):
  tagged = []
  for token in tokens:
    if token == UNK:
      tagged.append(TaggedToken(token, OTHER))
    else:
      tagged.append(TaggedToken(token, tag_word(lookup_key(token), lex)))
  return tagged
