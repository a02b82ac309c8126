# words.py
# tokens keep their punctuation attached ("gymnastics,"), so edits work
# on the word core and put the leading/trailing punctuation back after

import string

PUNCTUATION = '"\'.,!?;:-()'

def split_token(token):
  start = 0
  end = len(token)
  while start < end and token[start] in string.punctuation:
    start += 1
  while end > start and token[end - 1] in string.punctuation:
    end -= 1
  return (token[:start], token[start:end], token[end:])

def core_of(token):
  return split_token(token)[1]

def lookup_key(token):
  return core_of(token).lower()

# carry the case of the first letter over to the replacement
def match_case(original, replacement):
  if original and replacement and original[0].isupper():
    return replacement[0].upper() + replacement[1:]
  return replacement

def replace_core(token, new_core):
  (lead, core, trail) = split_token(token)
  return lead + match_case(core, new_core) + trail

def has_letters(token):
  return any(c.isalpha() for c in core_of(token))
