"""Deterministic text families for benchmarks and tests.

Chosen to span the extremes of compressibility: fibonacci and unary parses
grow logarithmically, thue-morse stays polylogarithmic, uniform random text
approaches n / log_sigma(n) phrases.
"""

import random


def fibonacci_word(n):
    """Prefix of the fibonacci word over codes {1, 2}: a, ab, aba, abaab, ..."""
    if n <= 0:
        return []
    prev, cur = [2], [1]
    while len(cur) < n:
        prev, cur = cur, cur + prev
    return cur[:n]


def thue_morse(n):
    """Prefix of the thue-morse word over codes {1, 2}."""
    t = [1]
    while len(t) < n:
        t += [3 - c for c in t]
    return t[:n]


def unary(n):
    return [1] * n


def random_text(n, sigma, seed):
    return random.Random(seed).choices(range(1, sigma + 1), k=n)


FAMILIES = {
    "fib": lambda n, sigma, seed: (fibonacci_word(n), 2),
    "tm": lambda n, sigma, seed: (thue_morse(n), 2),
    "rand": lambda n, sigma, seed: (random_text(n, sigma, seed), sigma),
}
