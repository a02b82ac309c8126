from .lexicon_bundle import LexiconBundle, default_bundle
from .pos_tagger import TaggedToken, pos_tag
from .drop_text import apply_drop_text, apply_positional
from .change_char import apply_change_char
from .add_text import apply_add_text
from .bias import apply_bias
from .swap_text import apply_swap_text
from .text_style import apply_text_style
from .plugin import run_plugin
from .text_perturber import TextPerturber
