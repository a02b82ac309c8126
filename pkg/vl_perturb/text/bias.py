# bias.py
# gender rewrites driven by the gender lexicon. no randomness.

import logging
from collections import Counter
from .pos_tagger import pos_tag, NN, JJ
from .words import lookup_key, replace_core
from .lexicon_bundle import GENDERS

logger = logging.getLogger(__name__)

BIAS_VARIANTS = ['AllMale', 'AllFemale', 'GenderSwap', 'GenderNeutral']

# which gender each source gender turns into, None means keep
_TARGETS = {
  'AllMale': {'male': None, 'female': 'male'},
  'AllFemale': {'male': 'female', 'female': None},
  'GenderSwap': {'male': 'female', 'female': 'male'},
  'GenderNeutral': {'male': 'neutral', 'female': 'neutral'},
}

# 'her' is possessive when a noun follows, possibly after adjectives
def _ambiguous_role(tagged, index):
  for following in tagged[index + 1:]:
    if following.tag == NN:
      return 'possessive'
    if following.tag != JJ:
      break
  return 'object'

# (word, gender, forms) per token, None unless the token is a male or
# female word
def _resolve(tokens, lex):
  tagged = None
  resolved = []
  for (i, token) in enumerate(tokens):
    word = lookup_key(token)
    if word in lex.ambiguous_gender:
      if tagged is None:
        tagged = pos_tag(tokens, lex)
      forms = lex.ambiguous_gender[word][_ambiguous_role(tagged, i)]
      gender = 'female' if forms['female'] == word else 'male'
      resolved.append((word, gender, forms))
    elif word in lex.gender_map:
      forms = lex.gender_map[word]
      resolved.append((word, forms['gender'], forms))
    else:
      resolved.append(None)
  return resolved

def apply_bias(caption, variant, lex):
  if variant not in _TARGETS:
    raise ValueError(f"Invalid bias variant: {variant}")
  targets = _TARGETS[variant]
  tokens = list(caption.tokens)
  changed = False

  for (i, found) in enumerate(_resolve(caption.tokens, lex)):
    if found is None:
      continue
    (word, gender, forms) = found
    target = targets[gender]
    if target is None or forms[target] == word:
      continue
    tokens[i] = replace_core(tokens[i], forms[target])
    changed = True

  if not changed:
    return caption
  return caption.with_tokens(tokens)

# counts (source gender, target gender) over the gendered tokens of the
# original caption. the bias rewrites map one token to one token, so the
# two captions line up position by position. a token that matches none of
# its forms afterwards is counted with target None
def bias_conversions(original, perturbed, lex):
  if len(original.tokens) != len(perturbed.tokens):
    raise ValueError("Bias conversions need captions with aligned tokens")
  counts = Counter()
  for (found, token) in zip(_resolve(original.tokens, lex), perturbed.tokens):
    if found is None:
      continue
    (word, gender, forms) = found
    after = lookup_key(token)
    if after == word:
      target = gender
    else:
      target = next((g for g in GENDERS if forms[g] == after), None)
    counts[(gender, target)] += 1
  return counts
