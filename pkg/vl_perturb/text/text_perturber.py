# text_perturber.py
# routes a text PerturbationSpec to its rule, or batches captions out
# to the plugin command for the model based ones

import logging
from ..rng_stream import RngStream, derive_seed
from .lexicon_bundle import default_bundle
from .drop_text import apply_drop_text, apply_positional
from .change_char import apply_change_char
from .add_text import apply_add_text
from .bias import apply_bias
from .swap_text import apply_swap_text
from .text_style import apply_text_style
from .plugin import run_plugin

logger = logging.getLogger(__name__)

class TextPerturber:

  def __init__(self, lexicon=None, plugin_command=None):
    self.lexicon = lexicon or default_bundle()
    self.plugin_command = plugin_command

  def get_lexicon(self):
    return self.lexicon

  def set_plugin_command(self, command):
    self.plugin_command = command

  def get_plugin_command(self):
    return self.plugin_command

  def rng_for(self, clip_id, spec):
    return RngStream(derive_seed(spec.seed, clip_id, spec.name, 0))

  def perturb(self, caption, spec):
    if spec.is_video():
      raise ValueError(f"Not a text perturbation: {spec.key()}")
    if spec.is_plugin():
      return self.perturb_many([caption], spec)[0]
    rng = self.rng_for(caption.clip_id, spec)
    lex = self.lexicon
    category = spec.category
    if category == 'DropText':
      return apply_drop_text(caption, spec.name, rng, lex)
    elif category == 'Positional':
      return apply_positional(caption, spec.name, rng)
    elif category == 'ChangeChar':
      return apply_change_char(caption, spec.name, rng, lex)
    elif category == 'AddText':
      return apply_add_text(caption, spec.name, rng, lex)
    elif category == 'Bias':
      return apply_bias(caption, spec.name, lex)
    elif category == 'SwapText':
      return apply_swap_text(caption, spec.name, rng, lex)
    elif category == 'TextStyle':
      return apply_text_style(caption, spec.name, lex)
    raise ValueError(f"Invalid text category: {category}")

  def perturb_many(self, captions, spec):
    if spec.is_plugin():
      if self.plugin_command is None:
        raise ValueError(f"{spec.key()} needs a plugin command")
      return run_plugin(captions, self.plugin_command, spec.name)
    return [self.perturb(c, spec) for c in captions]
