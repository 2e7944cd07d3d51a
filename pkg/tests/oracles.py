"""Independent reference implementations the library is tested against.

Everything here recomputes results from first principles (definition scans,
full-text scans, quadratic searches) and never calls into the code paths it
checks.
"""

from lzcontext.parse import Lz77Parse, decompress_naive


def ext_string(codes, sigma):
    """The text as a str, prepended with the alphabet run and sentinel.

    Index i corresponds to position i - sigma, so C-speed str.find scans
    prefix and text sources uniformly.
    """
    prefix = "".join(chr(c) for c in range(sigma, 0, -1))
    return prefix + chr(0) + "".join(map(chr, codes))


def brute_greedy(codes, sigma):
    """Greedy parse by trying every (source, length) via substring search."""
    n = len(codes)
    ext = ext_string(codes, sigma)
    members = []
    u = 1
    while u <= n:
        best_l, best_s = 0, None
        l = 1
        while u + l - 1 <= n:
            sub = ext[sigma + u:sigma + u + l]
            at = ext.find(sub, 0, sigma + u)
            if at < 0:
                break
            best_l, best_s = l, at - sigma
            l += 1
        members.append((best_s, best_l))
        u += best_l
    return Lz77Parse(sigma, n, members)


def max_source_length(ext, sigma, codes, u):
    """Longest l with a non-overlapping source for the phrase at u."""
    n = len(codes)
    l = 0
    while u + l <= n:
        sub = ext[sigma + u:sigma + u + l + 1]
        if ext.find(sub, 0, sigma + u) < 0:
            break
        l += 1
    return l


def min_phrase_count(codes, sigma):
    """Fewest phrases over all valid parses (dynamic program, small n)."""
    n = len(codes)
    ext = ext_string(codes, sigma)
    reach = [max(1, max_source_length(ext, sigma, codes, u))
             for u in range(1, n + 1)]
    best = [0] + [n + 1] * n
    for i in range(n):
        if best[i] <= n:
            for l in range(1, reach[i] + 1):
                if best[i] + 1 < best[i + l]:
                    best[i + l] = best[i] + 1
    return best[n]


def context_positions(parse, tau):
    """Definition scan: which positive positions are in the tau-context.

    The end of the text counts as a phrase boundary, matching the
    gap = max(0, l - 2*tau + 1) bookkeeping.
    """
    n = parse.n
    marked = [False] * (n + 1)  # 1-based
    for u in parse.starts() + [n + 1]:
        for j in range(max(1, u - tau + 1), min(n, u + tau - 1) + 1):
            marked[j] = True
    return marked


def context_string(parse, tau, dollar_separators=False):
    """The context string by definition scan; '$' (code 0) per skipped run."""
    text = decompress_naive(parse)
    marked = context_positions(parse, tau)
    out = []
    j = 1
    n = parse.n
    while j <= n:
        if marked[j]:
            out.append(text[j - 1])
            j += 1
        else:
            if dollar_separators:
                out.append(0)
            while j <= n and not marked[j]:
                j += 1
    return out


def pi_oracle(parse, tau):
    """Map each in-context positive position to its context-string rank."""
    marked = context_positions(parse, tau)
    rank = {}
    count = 0
    for j in range(1, parse.n + 1):
        if marked[j]:
            count += 1
            rank[j] = count
    return rank


def naive_slices(text, intervals):
    out = []
    n = len(text)
    for i, j in intervals:
        i = max(i, 1)
        j = min(j, n)
        if i <= j:
            out.extend(text[i - 1:j])
    return out


def naive_find(text, pattern):
    """All 1-based starts of `pattern` in `text` (plain substring scan)."""
    hay = "".join(map(chr, text))
    needle = "".join(map(chr, pattern))
    starts = []
    at = hay.find(needle)
    while at >= 0:
        starts.append(at + 1)
        at = hay.find(needle, at + 1)
    return starts


def naive_approx(text, pattern, k):
    """Full-table edit-distance scan; {start: min errors} end-anchored.

    Column DP over every text position, no banding, no streaming: for each
    end e the value D[m] is min edit distance between the pattern and any
    substring ending at e; ends with D[m] <= k report start max(1, e-m+1).
    """
    m = len(pattern)
    col = list(range(m + 1))
    best = {}
    for e, c in enumerate(text, start=1):
        prev_diag = col[0]
        for j in range(1, m + 1):
            up = col[j]
            v = min(prev_diag + (pattern[j - 1] != c), col[j - 1] + 1, up + 1)
            col[j] = v
            prev_diag = up
        if col[m] <= k:
            start = max(1, e - m + 1)
            if col[m] < best.get(start, k + 1):
                best[start] = col[m]
    return best


class OracleCollection:
    """Sorted-list mirror of the mergeable dictionary (values are lists)."""

    def makeset(self, pos, rank):
        return [(pos, rank)]

    def merge(self, a, b):
        return sorted(a + b, key=lambda it: it[0])

    def split(self, g, x):
        return [it for it in g if it[0] <= x], [it for it in g if it[0] > x]

    def shift(self, g, delta):
        return [(p + delta, r) for p, r in g]

    def enumerate(self, g):
        return list(g)


def run_dict_schedule(seed, ops, pos_range=400):
    """One random op script against both implementations; asserts equality.

    Mix: 35% makeset, 20% merge, 20% split, 15% shift, 10% enumerate-and-
    compare, then a full sweep at the end (position multisets and the
    rank -> position assignment must agree item for item).
    """
    import random

    from lzcontext.mergedict import DictCollection

    rng = random.Random(seed)
    rnd = rng.random
    ri = rng.randint
    real = DictCollection(seed=seed)
    oracle = OracleCollection()
    live = []  # (real handle, oracle list); order irrelevant
    rank = 0

    def take(i):
        item = live[i]
        live[i] = live[-1]
        live.pop()
        return item

    for _ in range(ops):
        roll = rnd()
        if roll < 0.35 or not live:
            pos = ri(-50, pos_range)
            live.append((real.makeset(pos, rank), oracle.makeset(pos, rank)))
            rank += 1
        elif roll < 0.55 and len(live) >= 2:
            i = ri(0, len(live) - 1)
            j = ri(0, len(live) - 2)
            if j >= i:
                j += 1
            ra, oa = take(max(i, j))
            rb, ob = take(min(i, j))
            live.append((real.merge(ra, rb), oracle.merge(oa, ob)))
        elif roll < 0.75:
            rg, og = take(ri(0, len(live) - 1))
            x = ri(-60, pos_range + 10)
            ra, rb = real.split(rg, x)
            oa, ob = oracle.split(og, x)
            live.append((ra, oa))
            live.append((rb, ob))
        elif roll < 0.9:
            rg, og = take(ri(0, len(live) - 1))
            d = ri(-20, 20)
            live.append((real.shift(rg, d), oracle.shift(og, d)))
        else:
            rg, og = live[ri(0, len(live) - 1)]
            assert sorted(real.enumerate(rg)) == sorted(og)
    all_real = sorted(it for rg, _ in live for it in real.enumerate(rg))
    all_oracle = sorted(it for _, og in live for it in og)
    assert all_real == all_oracle
    assert sorted(r for _, r in all_real) == list(range(rank))
    return rank
