import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lzcontext.corpora import fibonacci_word, random_text, thue_morse, unary
from lzcontext.factorize import greedy_parse
from lzcontext.parse import Lz77Parse, render_symbols

# The worked micro-example used throughout: parse of "abaababa" over {a, b}.
E1 = Lz77Parse(2, 8, [(-1, 1), (-2, 2), (1, 3), (2, 2)])
E1_TEXT = [1, 2, 1, 1, 2, 1, 2, 1]


def _descending_runs(sigma, repeats):
    return list(range(sigma, 0, -1)) * repeats


CORPORA = [
    ("e1", E1_TEXT, 2),
    ("unary64", unary(64), 1),
    ("fib1k", fibonacci_word(1024), 2),
    ("tm1k", thue_morse(1024), 2),
    ("rand2", random_text(1500, 2, seed=11), 2),
    ("rand26", random_text(1200, 26, seed=12), 26),
    ("rand256", random_text(900, 256, seed=13), 256),
    ("baba", [2, 1] * 300, 2),
    ("descend", _descending_runs(26, 40), 26),
]

TAUS = [1, 2, 4, 8, 16]


@pytest.fixture(scope="session")
def corpus_parses():
    """name -> (text, sigma, greedy parse) for every test corpus."""
    return {name: (text, sigma, greedy_parse(text, sigma))
            for name, text, sigma in CORPORA}


def codes(s):
    """'abc' -> [1, 2, 3] for readable fixtures."""
    return [ord(ch) - 96 for ch in s]


letters = render_symbols
