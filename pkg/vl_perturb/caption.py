# caption.py
# a caption is whitespace tokenized with punctuation left attached,
# so " ".join(tokens) is the normalized text

from dataclasses import dataclass

UNK = '[UNK]'

def tokenize(text):
  return tuple(text.split())


@dataclass(frozen=True)
class Caption:
  clip_id: str
  text: str
  tokens: tuple = None

  def __post_init__(self):
    if self.tokens is None:
      object.__setattr__(self, 'tokens', tokenize(self.text))
    else:
      object.__setattr__(self, 'tokens', tuple(self.tokens))

  @staticmethod
  def from_tokens(clip_id, tokens):
    # multi-word replacements are split so tokens match the text
    tokens = tuple(piece for t in tokens for piece in t.split())
    return Caption(clip_id, ' '.join(tokens), tokens)

  def normalized(self):
    return ' '.join(self.tokens)

  def with_tokens(self, tokens):
    return Caption.from_tokens(self.clip_id, tokens)

  def with_text(self, text):
    return Caption(self.clip_id, text)

  def __len__(self):
    return len(self.tokens)
