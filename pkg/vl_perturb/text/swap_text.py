# swap_text.py
# swap one word for a thesaurus synonym (SynWordNet) or for one of its
# embedding space neighbours (SynWordEmbedding)

import logging
from .pos_tagger import pos_tag
from .words import lookup_key, replace_core

logger = logging.getLogger(__name__)

SWAP_TEXT_VARIANTS = ['SynWordNet', 'SynWordEmbedding']

def _candidates(caption, variant, lex):
  candidates = []
  if variant == 'SynWordNet':
    for (i, tagged) in enumerate(pos_tag(caption.tokens, lex)):
      options = lex.synonyms_for(lookup_key(tagged.token), tagged.tag)
      if options:
        candidates.append((i, options))
  else:
    for (i, token) in enumerate(caption.tokens):
      options = lex.embedding_neighbors.get(lookup_key(token))
      if options:
        candidates.append((i, options))
  return candidates

def apply_swap_text(caption, variant, rng, lex):
  if variant not in SWAP_TEXT_VARIANTS:
    raise ValueError(f"Invalid swap text variant: {variant}")
  candidates = _candidates(caption, variant, lex)
  if len(candidates) == 0:
    return caption
  (index, options) = rng.choice(candidates)
  tokens = list(caption.tokens)
  # thesaurus entries can be phrases ("female child")
  tokens[index:index + 1] = replace_core(tokens[index], rng.choice(options)).split()
  return caption.with_tokens(tokens)
