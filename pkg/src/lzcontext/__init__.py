"""LZ77 decompression, substring extraction and pattern matching in
working space proportional to the compressed size.

The compressed input is a non-self-referential LZ77 parse over an integer
alphabet with the alphabet-prefix convention (first occurrences cite the
virtual descending run at negative positions).  Short substrings are pulled
into a small "context" around phrase boundaries and served from a compact
representation of that context, so whole-text decompression and arbitrary
subsequence extraction never materialize the text.
"""

from .context import (ContextMap, ContextParse, PackedString,
                      build_context_parse, build_packed_context,
                      context_segments, relocate_to_context)
from .counters import Counters
from .errors import (ContractError, InputError, LzError, ParseFormatError,
                     UsageError)
from .extract import (Strategy, choose_tau, clamp_intervals, decompress_full,
                      extract_streaming, plan_blocks)
from .factorize import greedy_parse
from .matching import (Occurrence, expand_secondary, find_approx, find_exact,
                       stream_dollar_context)
from .mergedict import DictCollection, DictSet
from .parse import (Lz77Parse, PhraseTable, decompress_naive, deserialize,
                    locate_phrase, phrase_table, render_symbols, serialize,
                    validate)
from .slp import Slp, flatten_top, from_lz77

__all__ = [
    "ContextMap", "ContextParse", "PackedString", "build_context_parse",
    "build_packed_context", "context_segments", "relocate_to_context",
    "Counters", "ContractError", "InputError", "LzError", "ParseFormatError",
    "UsageError", "Strategy", "choose_tau", "clamp_intervals",
    "decompress_full", "extract_streaming", "plan_blocks", "greedy_parse",
    "Occurrence", "expand_secondary", "find_approx", "find_exact",
    "stream_dollar_context", "DictCollection", "DictSet", "Lz77Parse",
    "PhraseTable", "decompress_naive", "deserialize", "locate_phrase",
    "phrase_table", "render_symbols", "serialize", "validate", "Slp",
    "flatten_top", "from_lz77",
]
