import math
import unittest
from functools import lru_cache
from nltk.stem.porter import PorterStemmer
from vl_perturb import Caption
from vl_perturb.text_similarity import bleu4, rouge_l_f1, meteor_lite, lcs_length
from vl_perturb.text_similarity import text_similarity

# (candidate, reference) pairs shaped like perturbed captions
PAIRS = [
  ('a little girl does gymnastics', 'a little girl does gymnastics'),
  ('a little [UNK] does [UNK]', 'a little girl does gymnastics'),
  ('a little boy does gymnastics', 'a little girl does gymnastics'),
  ('gymnastics does girl little a', 'a little girl does gymnastics'),
  ('a man unloads the car', 'a man reloads the car'),
  ('a man unloaded the car', 'a man unloads the car'),
  ('by the way, a man unloads the car', 'a man unloads the car'),
  ('a man quickly unloads the car', 'a man unloads the car'),
  ('a woman is cooking pasta', 'a woman cooks pasta in the kitchen'),
  ('the dogs are running', 'the dog runs'),
  ('a dog is not running in the park', 'a dog is running in the park'),
  ('[UNK] cat sits on the mat [UNK]', 'the cat sits on the mat today'),
  ('the the the the', 'the cat is on the mat'),
  ('a a a', 'a'),
  ('people talk', 'two men are talking to each other'),
  ('a female child runs', 'a girl runs'),
  ('she talks to her brother', 'he talks to his sister'),
  ('cooking cooks cooked', 'cook cooking cooks'),
  ('x', 'x y z'),
  ('red blue green', 'cat dog bird'),
]

def reference_bleu(candidate, reference):
  if not candidate or not reference:
    return 0.0
  precisions = []
  for n in range(1, 5):
    grams = [tuple(candidate[i:i + n]) for i in range(len(candidate) - n + 1)]
    if not grams:
      continue
    ref_grams = [tuple(reference[i:i + n]) for i in range(len(reference) - n + 1)]
    clipped = sum(min(grams.count(g), ref_grams.count(g)) for g in set(grams))
    if clipped == 0:
      return 0.0
    precisions.append(clipped / len(grams))
  penalty = 1.0 if len(candidate) > len(reference) else math.exp(1 - len(reference) / len(candidate))
  return penalty * math.prod(precisions) ** (1.0 / len(precisions))

def reference_rouge(candidate, reference):
  @lru_cache(maxsize=None)
  def lcs(i, j):
    if i == len(candidate) or j == len(reference):
      return 0
    if candidate[i] == reference[j]:
      return 1 + lcs(i + 1, j + 1)
    return max(lcs(i + 1, j), lcs(i, j + 1))
  common = lcs(0, 0)
  if common == 0:
    return 0.0
  (p, r) = (common / len(candidate), common / len(reference))
  return 2 * p * r / (p + r)

# greedy one to one alignment, exact words first then porter stems
def reference_meteor(candidate, reference):
  stem = PorterStemmer().stem
  used = [False] * len(reference)
  unmatched = []
  for word in candidate:
    for (j, other) in enumerate(reference):
      if not used[j] and other == word:
        used[j] = True
        break
    else:
      unmatched.append(word)
  matches = len(candidate) - len(unmatched)
  for word in unmatched:
    for (j, other) in enumerate(reference):
      if not used[j] and stem(other) == stem(word):
        used[j] = True
        matches += 1
        break
  if matches == 0:
    return 0.0
  (p, r) = (matches / len(candidate), matches / len(reference))
  return p * r / (0.9 * p + 0.1 * r)

class TextSimilarityTestCase(unittest.TestCase):

  def test_identical(self):
    scores = text_similarity('a little girl does gymnastics', 'a little girl does gymnastics')
    self.assertEqual(scores, {'bleu4': 1.0, 'rouge_l_f1': 1.0, 'meteor_lite': 1.0})

  # precisions 4/5, 3/4, 2/3, 1/2 multiply to 0.2, no brevity penalty
  def test_one_dropped_word(self):
    candidate = Caption('v', 'a little girl does [UNK]')
    reference = Caption('v', 'a little girl does gymnastics')
    self.assertAlmostEqual(bleu4(candidate, reference), 0.2 ** 0.25, places=12)
    self.assertAlmostEqual(rouge_l_f1(candidate, reference), 0.8, places=12)
    self.assertAlmostEqual(meteor_lite(candidate, reference), 0.8, places=12)

  def test_disjoint(self):
    self.assertEqual(text_similarity('red blue', 'cat dog'),
      {'bleu4': 0.0, 'rouge_l_f1': 0.0, 'meteor_lite': 0.0})

  def test_brevity_penalty(self):
    # 3 of 5 words, every n-gram matches
    value = bleu4('a little girl', 'a little girl does gymnastics')
    self.assertAlmostEqual(value, 2.718281828459045 ** (1 - 5 / 3), places=12)

  def test_short_candidate_skips_missing_orders(self):
    self.assertAlmostEqual(bleu4('girl', 'girl'), 1.0)
    self.assertAlmostEqual(bleu4('a girl', 'a girl'), 1.0)

  def test_rouge_reordered(self):
    # lcs of "b a c" and "a b c" is 2
    self.assertEqual(lcs_length('b a c'.split(), 'a b c'.split()), 2)
    self.assertAlmostEqual(rouge_l_f1('b a c', 'a b c'), 2 / 3, places=12)

  def test_meteor_stems(self):
    # jumping / jumps share the stem jump
    self.assertAlmostEqual(meteor_lite('a dog jumping', 'a dog jumps'), 1.0, places=12)
    self.assertAlmostEqual(bleu4('a dog jumping', 'a dog jumps'), 0.0)

  def test_meteor_weights_recall(self):
    # 2 matches, 2 candidate words, 4 reference words: p = 1, r = 0.5
    value = meteor_lite('a dog', 'a dog runs fast')
    self.assertAlmostEqual(value, 0.5 / (0.9 * 1.0 + 0.1 * 0.5), places=12)

  def test_case_insensitive(self):
    self.assertEqual(bleu4('A Girl Runs', 'a girl runs'), 1.0)

  def test_range(self):
    pairs = [('a man cooks', 'a woman cooks pasta'), ('the the the', 'the cat'),
      ('dog', 'a dog runs'), ('x y z w', 'w z y x')]
    for (a, b) in pairs:
      for value in text_similarity(a, b).values():
        self.assertGreaterEqual(value, 0.0)
        self.assertLessEqual(value, 1.0)

  def test_empty(self):
    self.assertRaises(ValueError, text_similarity, 'a dog', '')
    self.assertEqual(text_similarity('', 'a dog')['bleu4'], 0.0)

  def test_against_reference_implementations(self):
    for (candidate, reference) in PAIRS:
      (cand, ref) = (candidate.lower().split(), reference.lower().split())
      scores = text_similarity(candidate, reference)
      self.assertAlmostEqual(scores['bleu4'], reference_bleu(cand, ref), places=9, msg=candidate)
      self.assertAlmostEqual(scores['rouge_l_f1'], reference_rouge(cand, ref), places=9, msg=candidate)
      self.assertAlmostEqual(scores['meteor_lite'], reference_meteor(cand, ref), places=9, msg=candidate)
      self.assertEqual(lcs_length(cand, ref), lcs_length(ref, cand))
