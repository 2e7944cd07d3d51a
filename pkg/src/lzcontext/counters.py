"""Shared instrumentation counters for working-space and operation accounting.

Working space is tracked in machine words.  Every instrumented structure
reports allocations and frees against one `Counters` object, so `peak_words`
is the high-water mark of live tracked words.  The convention for what one
"word" means per structure:

  - mergeable dictionary node: 7 words (position, rank satellite, lazy
    offset, priority, creation id, two child links).
  - grammar rule: 4 words (left, right, expansion length, height); the
    height word is released once the grammar stops growing.
  - wide start rule: 2 words per symbol (symbol id + cumulative length).
  - packed string: ceil(length * bits / 64) payload words plus 2 header words.
  - plain integer scratch arrays (phrase tables, batch buffers): 1 word each.

Inputs (the parse under query), the request list and the output sink are
never counted.
"""


class Counters:
    __slots__ = ("current_words", "peak_words", "dict_ops", "slp_nodes_visited",
                 "batches")

    def __init__(self):
        self.current_words = 0
        self.peak_words = 0
        self.dict_ops = 0
        self.slp_nodes_visited = 0
        self.batches = 0

    def alloc(self, words):
        self.current_words += words
        if self.current_words > self.peak_words:
            self.peak_words = self.current_words

    def free(self, words):
        self.current_words -= words

    def as_dict(self):
        return {
            "peak_words": self.peak_words,
            "dict_ops": self.dict_ops,
            "slp_nodes_visited": self.slp_nodes_visited,
            "batches": self.batches,
        }

    def format(self):
        """Flat key=value text block, one counter per line."""
        return "".join(f"{k}={v}\n" for k, v in self.as_dict().items())
