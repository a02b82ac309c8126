# text_similarity.py
# how far a perturbed caption has drifted from the original: sentence
# bleu-4, rouge-l f1 and meteor_lite (exact plus porter stem matching,
# no synonyms and no fragmentation penalty)

import math
import logging
from collections import Counter
from nltk.stem.porter import PorterStemmer

logger = logging.getLogger(__name__)

MAX_ORDER = 4
METEOR_ALPHA = 0.9
METEOR_BETA = 0.1

_stemmer = PorterStemmer()

def _tokens(caption):
  if isinstance(caption, str):
    return [t.lower() for t in caption.split()]
  return [t.lower() for t in caption.tokens]

def _ngrams(tokens, n):
  return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))

# uniform weights over the orders the candidate is long enough to have,
# brevity penalty, no smoothing
def bleu4(candidate, reference):
  cand = _tokens(candidate)
  ref = _tokens(reference)
  if len(cand) == 0 or len(ref) == 0:
    return 0.0
  log_precisions = []
  for n in range(1, MAX_ORDER + 1):
    cand_ngrams = _ngrams(cand, n)
    total = sum(cand_ngrams.values())
    if total == 0:
      continue
    overlap = sum((cand_ngrams & _ngrams(ref, n)).values())
    if overlap == 0:
      return 0.0
    log_precisions.append(math.log(overlap / total))
  if len(cand) > len(ref):
    penalty = 1.0
  else:
    penalty = math.exp(1.0 - len(ref) / len(cand))
  return penalty * math.exp(sum(log_precisions) / len(log_precisions))

def lcs_length(a, b):
  previous = [0] * (len(b) + 1)
  for x in a:
    current = [0]
    for (j, y) in enumerate(b):
      if x == y:
        current.append(previous[j] + 1)
      else:
        current.append(max(previous[j + 1], current[j]))
    previous = current
  return previous[-1]

def rouge_l_f1(candidate, reference):
  cand = _tokens(candidate)
  ref = _tokens(reference)
  if len(cand) == 0 or len(ref) == 0:
    return 0.0
  lcs = lcs_length(cand, ref)
  if lcs == 0:
    return 0.0
  precision = lcs / len(cand)
  recall = lcs / len(ref)
  return 2 * precision * recall / (precision + recall)

def meteor_lite(candidate, reference):
  cand = _tokens(candidate)
  ref = _tokens(reference)
  if len(cand) == 0 or len(ref) == 0:
    return 0.0
  exact = Counter(cand) & Counter(ref)
  matches = sum(exact.values())
  cand_left = Counter(cand) - exact
  ref_left = Counter(ref) - exact
  cand_stems = Counter()
  for (word, count) in cand_left.items():
    cand_stems[_stemmer.stem(word)] += count
  ref_stems = Counter()
  for (word, count) in ref_left.items():
    ref_stems[_stemmer.stem(word)] += count
  matches += sum((cand_stems & ref_stems).values())
  if matches == 0:
    return 0.0
  precision = matches / len(cand)
  recall = matches / len(ref)
  return precision * recall / (METEOR_ALPHA * precision + METEOR_BETA * recall)

def text_similarity(candidate, reference):
  if len(_tokens(reference)) == 0:
    raise ValueError("Reference caption is empty")
  return {'bleu4': bleu4(candidate, reference),
    'rouge_l_f1': rouge_l_f1(candidate, reference),
    'meteor_lite': meteor_lite(candidate, reference)}
