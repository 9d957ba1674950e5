"""Sources, entropy, the typical set and prefix-free codes"""

from ._source import Source, source_output, entropy, entropy_bits
from ._aep import TypicalSetReport, aep_typical_set, aep_projection, aep_sweep, mass_threshold
from ._codes import Code, CodeMetrics, is_prefix_free, words_orthogonal, kraft, code_metrics, huffman_code

__all__ = [
    "Source",
    "source_output",
    "entropy",
    "entropy_bits",
    "TypicalSetReport",
    "aep_typical_set",
    "aep_projection",
    "aep_sweep",
    "mass_threshold",
    "Code",
    "CodeMetrics",
    "is_prefix_free",
    "words_orthogonal",
    "kraft",
    "code_metrics",
    "huffman_code",
    ]
