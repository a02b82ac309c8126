# lexicon_bundle.py
# loads the json lexicons the rule based text perturbations run on.
# every file is part of the version hash, which is written into outputs.

import os
import json
import hashlib
import logging

logger = logging.getLogger(__name__)

DEFAULT_LEXICON_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'lexicons')
LEXICON_FILES = ['keyboard.json', 'ocr.json', 'misspellings.json', 'gender.json',
  'synonyms.json', 'embedding_neighbors.json', 'adverbs.json',
  'irrelevant_phrases.json', 'prefixes.json', 'pos_lexicon.json',
  'suffix_rules.json', 'verb_forms.json']
TAGS = ('NN', 'VB', 'JJ', 'RB', 'OTHER')
GENDERS = ('male', 'female', 'neutral')

class LexiconBundle:

  def __init__(self, directory=None):
    self.directory = directory or DEFAULT_LEXICON_DIR
    raw = {}
    md5 = hashlib.md5()
    for name in sorted(LEXICON_FILES):
      path = os.path.join(self.directory, name)
      if not os.path.exists(path):
        raise ValueError(f"Missing lexicon file: {path}")
      with open(path, 'rb') as f:
        content = f.read()
      md5.update(name.encode('utf-8'))
      md5.update(content)
      try:
        raw[name] = json.loads(content.decode('utf-8'))
      except json.JSONDecodeError as e:
        raise ValueError(f"Invalid lexicon file {name}: {e}")
    self.version = md5.hexdigest()

    self.keyboard_adjacency = dict(raw['keyboard.json']['entries'])
    self.ocr_confusions = {k: list(v) for (k, v) in raw['ocr.json']['entries'].items()}
    self.misspellings = {k: list(v) for (k, v) in raw['misspellings.json']['entries'].items()}
    self.synonyms = {}
    for (key, values) in raw['synonyms.json']['entries'].items():
      (word, tag) = key.split('|')
      self.synonyms[(word, tag)] = list(values)
    self.embedding_neighbors = {k: list(v)
      for (k, v) in raw['embedding_neighbors.json']['entries'].items()}
    self.adverbs = list(raw['adverbs.json']['entries'])
    self.irrelevant_prefixes = list(raw['irrelevant_phrases.json']['prefix'])
    self.irrelevant_suffixes = list(raw['irrelevant_phrases.json']['suffix'])
    self.prefixes = sorted(raw['prefixes.json']['entries'], key=lambda p: (-len(p), p))
    self.suffix_rules = dict(raw['suffix_rules.json']['entries'])
    self.past_tense = dict(raw['verb_forms.json']['past'])
    self.lemmas = dict(raw['verb_forms.json']['lemmas'])
    self.pos_lexicon = self._build_pos_lexicon(raw['pos_lexicon.json']['entries'])
    (self.gender_map, self.ambiguous_gender) = self._build_gender_map(raw['gender.json'])
    logger.debug("loaded lexicons from %s version %s", self.directory, self.version)

  def _build_pos_lexicon(self, by_tag):
    lexicon = {}
    for (tag, words) in by_tag.items():
      if tag not in TAGS:
        raise ValueError(f"Invalid tag in pos lexicon: {tag}")
      for word in words:
        if word in lexicon and lexicon[word] != tag:
          raise ValueError(f"Word {word} tagged both {lexicon[word]} and {tag}")
        lexicon[word] = tag
    for (suffix, tag) in self.suffix_rules.items():
      if tag not in TAGS:
        raise ValueError(f"Invalid tag for suffix {suffix}: {tag}")
    return lexicon

  # word -> {'gender': ..., 'male': ..., 'female': ..., 'neutral': ...}
  def _build_gender_map(self, raw):
    gender_map = {}
    ambiguous = {}
    for (word, forms) in raw.get('ambiguous', {}).items():
      ambiguous[word] = {}
      for (role, group) in forms.items():
        ambiguous[word][role] = dict(zip(GENDERS, group))
    groups = [dict(zip(GENDERS, g)) for g in raw['groups']]
    for forms in ambiguous.values():
      groups.extend(forms.values())
    for group in groups:
      if len(group) != 3:
        raise ValueError(f"Invalid gender group: {group}")
      for gender in ('male', 'female'):
        word = group[gender]
        if word in ambiguous:
          continue
        if word in gender_map and gender_map[word] != dict(group, gender=gender):
          raise ValueError(f"Gender word {word} listed twice with different forms")
        gender_map[word] = dict(group, gender=gender)
    self._check_gender_consistency(gender_map)
    return (gender_map, ambiguous)

  # man <-> woman style pairs have to point back at each other
  def _check_gender_consistency(self, gender_map):
    for (word, forms) in gender_map.items():
      other = forms['female'] if forms['gender'] == 'male' else forms['male']
      if other not in gender_map:
        continue
      back = gender_map[other]
      if back[forms['gender']] != word:
        raise ValueError(f"Gender map is inconsistent: {word} -> {other} -> {back[forms['gender']]}")
      if forms['gender'] == back['gender']:
        raise ValueError(f"Gender word {word} maps onto the same gender: {other}")

  def get_version(self):
    return self.version

  def tag_of(self, word):
    return self.pos_lexicon.get(word)

  def is_known(self, word, tag=None):
    found = self.pos_lexicon.get(word)
    if found is None:
      return False
    return tag is None or found == tag

  def lemma_of(self, word):
    return self.lemmas.get(word, word)

  def synonyms_for(self, word, tag):
    entries = self.synonyms.get((word, tag))
    if entries is None:
      entries = self.synonyms.get((self.lemma_of(word), tag))
    return entries or []


_default_bundle = None

def default_bundle():
  global _default_bundle
  if _default_bundle is None:
    _default_bundle = LexiconBundle()
  return _default_bundle
