"""Context windows around phrase boundaries and everything built on them.

A position of the text is "in the tau-context" when it lies within tau-1 of
a phrase start (on either side; the end of the text counts as a boundary) or
is non-positive (alphabet prefix and sentinel).  Any substring shorter than
tau that crosses a phrase boundary lives entirely inside the context, and
any other substring can be relocated into it by repeatedly jumping to phrase
sources.  This module provides:

  - ContextMap: order-preserving mapping between in-context text positions
    and positions of the context string (the subsequence of in-context
    positive positions), both directions.
  - relocate_to_context: batch relocation of short substrings into the
    context, driven right-to-left over phrases with a mergeable dictionary
    (optionally bucketed so dictionary universes shrink to ~n/z).
  - build_context_parse: an LZ77 parse of the context string itself, at most
    two phrases per original phrase plus optional '$' separator phrases
    marking the skipped interiors.
  - PackedString / build_packed_context: the context string, bit-packed.
"""

from bisect import bisect_right
from math import ceil

from .errors import ContractError, InputError, UsageError
from .mergedict import DictCollection
from .parse import Lz77Parse, PhraseTable

_MASK64 = (1 << 64) - 1


def clamp_tau(tau, n):
    if tau < 1:
        raise InputError(f"tau must be >= 1, got {tau}")
    return min(tau, n) if n > 0 else 1


def map_to_context(parse, tau, positions):
    """Map sorted in-context text positions to context-string positions.

    One left-to-right pass over the members, no tables; output is strictly
    increasing for strictly increasing input.
    """
    tau = clamp_tau(tau, parse.n)
    t2 = 2 * tau - 1
    members = parse.members
    out = []
    k = 0
    u = 1          # start of phrase k
    covered = 0    # context positions contributed by phrases before k
    prev = None
    for p in positions:
        if prev is not None and p < prev:
            raise UsageError("positions must be sorted")
        prev = p
        if not 1 <= p <= parse.n:
            raise UsageError(f"position {p} outside [1..{parse.n}]")
        l = members[k][1]
        while p >= u + l:
            covered += l if l < t2 else t2
            u += l
            k += 1
            l = members[k][1]
        off = p - u
        if off < tau:
            out.append(covered + 1 + off)
        elif l - off < tau:
            out.append(covered + 1 + off - (l - t2 if l > t2 else 0))
        else:
            raise ContractError(f"position {p} not in the {tau}-context")
    return out


def map_from_context(parse, tau, positions):
    """Map sorted context-string positions back to text positions."""
    tau = clamp_tau(tau, parse.n)
    t2 = 2 * tau - 1
    members = parse.members
    out = []
    k = 0
    u = 1
    covered = 0
    prev = None
    total = sum(min(l, t2) for _, l in members)
    for q in positions:
        if prev is not None and q < prev:
            raise UsageError("positions must be sorted")
        prev = q
        if not 1 <= q <= total:
            raise UsageError(f"context position {q} outside [1..{total}]")
        l = members[k][1]
        while q > covered + (l if l < t2 else t2):
            covered += l if l < t2 else t2
            u += l
            k += 1
            l = members[k][1]
        off = q - covered - 1
        head = l if l < tau else tau
        out.append(u + off if off < head else u + off + (l - t2 if l > t2 else 0))
    return out


class ContextMap:
    """Position bookkeeping for one (parse, tau) combination."""

    __slots__ = ("parse", "tau", "table", "context_size")

    def __init__(self, parse, tau):
        self.parse = parse
        self.tau = clamp_tau(tau, parse.n)
        self.table = PhraseTable(parse, self.tau)
        self.context_size = parse.n - sum(self.table.gap)

    def in_context(self, p):
        if p <= 0:
            return True
        t = self.table
        k = t.locate(p)
        return p - t.u[k] < self.tau or t.u[k] + t.lengths[k] - p < self.tau

    def map_positions(self, positions):
        return map_to_context(self.parse, self.tau, positions)

    def inverse_map(self, positions):
        return map_from_context(self.parse, self.tau, positions)


class ContextParse:
    """LZ77 parse of the context string, optionally with '$' separators."""

    __slots__ = ("parse", "tau", "dollar_separators")

    def __init__(self, parse, tau, dollar_separators):
        self.parse = parse
        self.tau = tau
        self.dollar_separators = dollar_separators


def relocate_to_context(parse, tau, pairs, bucketed=False, pair_cap_factor=2,
                        counters=None):
    """Find, for each (a, b) with b-a < tau, an equal in-context copy.

    Returns pairs (a', b') in input order with S[a', b'] = S[a, b], a' <= a
    and [a', b'] inside the tau-context (possibly in the alphabet prefix,
    i.e. a' <= 0).  At most pair_cap_factor * z pairs per call; callers
    batch larger workloads.
    """
    tau = clamp_tau(tau, parse.n)
    if len(pairs) > max(1, pair_cap_factor * parse.z):
        raise UsageError(f"{len(pairs)} pairs exceed the per-call cap of "
                         f"{pair_cap_factor}*z={pair_cap_factor * parse.z}")
    for a, b in pairs:
        if not 1 <= a <= b <= parse.n:
            raise UsageError(f"pair ({a}, {b}) outside [1..{parse.n}]")
        if b - a >= tau:
            raise UsageError(f"pair ({a}, {b}) longer than tau={tau}")
    if bucketed:
        starts = _relocate_bucketed(parse, tau, [a for a, _ in pairs], counters)
    else:
        starts = _relocate_plain(parse, tau, [a for a, _ in pairs], counters)
    return [(p, p + b - a) for p, (a, b) in zip(starts, pairs)]


def _relocate_plain(parse, tau, starts, counters):
    """Right-to-left phrase sweep over one global mergeable dictionary."""
    if not starts:
        return []
    coll = DictCollection(bounds=(-parse.sigma, parse.n), seed=0,
                          counters=counters)
    group = None
    for rank, a in enumerate(starts):
        single = coll.makeset(a, rank)
        group = single if group is None else coll.merge(group, single)
    done = []
    u_next = parse.n + 1
    high = max(starts)  # items only ever move left of each processed phrase
    for s_k, l_k in reversed(parse.members):
        u_k = u_next - l_k
        u_next = u_k
        if l_k <= tau or u_k > high:
            continue
        group, settled = coll.split(group, u_k + l_k - tau)
        done.append(settled)
        keep, moving = coll.split(group, u_k - 1)
        moving = coll.shift(moving, s_k - u_k)
        group = coll.merge(keep, moving)
        high = u_k - 1
    out = [0] * len(starts)
    for handle in done + [group]:
        for pos, rank in coll.enumerate(handle):
            out[rank] = pos
    coll.dispose()
    return out


def _relocate_bucketed(parse, tau, starts, counters):
    """Same sweep with one dictionary per n/z-sized bucket of positions.

    Bucket b >= 0 stores positions b*F+1 .. (b+1)*F in local coordinates
    1..F; non-positive positions live untranslated in bucket -1.  Carved
    ranges and shifted pieces are cut at bucket boundaries before they are
    reinserted, so every dictionary's universe stays within one bucket.
    """
    if not starts:
        return []
    n, z = parse.n, parse.z
    F = ceil(n / z) if z else n
    coll = DictCollection(bounds=(-parse.sigma, F), seed=0, counters=counters)
    buckets = {}

    def insert(handle, b):
        if b in buckets:
            buckets[b] = coll.merge(buckets[b], handle)
        else:
            buckets[b] = handle

    for rank, a in enumerate(starts):
        if a >= 1:
            b = (a - 1) // F
            insert(coll.makeset(a - b * F, rank), b)
        else:
            insert(coll.makeset(a, rank), -1)

    u_next = parse.n + 1
    for s_k, l_k in reversed(parse.members):
        u_k = u_next - l_k
        u_next = u_k
        if l_k <= tau:
            continue
        g1, g2 = u_k, u_k + l_k - tau
        delta = s_k - u_k
        for b in range((g2 - 1) // F, (g1 - 1) // F - 1, -1):
            if b not in buckets:
                continue
            base = b * F
            lo = max(g1, base + 1) - base
            hi = min(g2, base + F) - base
            keep_lo, rest = coll.split(buckets[b], lo - 1)
            piece, keep_hi = coll.split(rest, hi)
            buckets[b] = coll.merge(keep_lo, keep_hi)
            # Reinsert the carved piece at the source, one target bucket at
            # a time (global target range: [lo+base+delta, hi+base+delta]).
            while True:
                first = coll.first(piece)
                if first is None:
                    break
                tgt_global = first + base + delta
                tb = (tgt_global - 1) // F if tgt_global >= 1 else -1
                if tb >= 0:
                    tb_end_local = (tb + 1) * F - base - delta
                    sub, piece = coll.split(piece, tb_end_local)
                    sub = coll.shift(sub, base + delta - tb * F)
                else:
                    sub, piece = coll.split(piece, -base - delta)
                    sub = coll.shift(sub, base + delta)
                insert(sub, tb)

    out = [0] * len(starts)
    for b, handle in buckets.items():
        base = b * F if b >= 0 else 0
        for pos, rank in coll.enumerate(handle):
            out[rank] = pos + base
    coll.dispose()
    return out


def build_context_parse(parse, tau, dollar_separators=False, counters=None):
    """Re-parse: an LZ77 representation of the context string itself.

    Every phrase contributes its first min(l, tau) characters and, when
    longer than tau, its last few in-context characters as separate phrases
    whose sources are relocated into the context and re-addressed in
    context-string coordinates.  With dollar_separators, a (0, 1) sentinel
    phrase marks each skipped phrase interior.
    """
    tau = clamp_tau(tau, parse.n)
    if counters is not None:
        counters.alloc(6 * parse.z)  # relevant-pair scratch lists
    entries = []        # ("p", pair_index) or ("$",) in output order
    source_pairs = []   # aligned with pair_index
    lengths = []
    u = 1
    for s, l in parse.members:
        if l <= tau:
            rel = [(u, u + l - 1)]
        elif l < 2 * tau:
            rel = [(u, u + tau - 1), (u + tau, u + l - 1)]
        elif tau > 1:
            rel = [(u, u + tau - 1), (u + l - tau + 1, u + l - 1)]
        else:
            rel = [(u, u)]
        for idx, (a, b) in enumerate(rel):
            entries.append(("p", len(source_pairs)))
            source_pairs.append((a - u + s, b - u + s))
            lengths.append(b - a + 1)
            if idx == 0 and dollar_separators and l >= 2 * tau:
                entries.append(("$",))
        u += l
    relocated = _relocate_plain(parse, tau,
                                [a for a, _ in source_pairs], counters)
    positive = sorted((p, i) for i, p in enumerate(relocated) if p >= 1)
    ctx_start = list(relocated)
    if dollar_separators:
        # '$' separators occupy stream positions, so sources are addressed
        # through the segment table rather than the plain context mapping.
        segments, _ = context_segments(parse, tau, dollar_separators=True)
        seg_text = [ts for _, ts, _ in segments]
        for p, i in positive:
            si = bisect_right(seg_text, p) - 1
            ss, ts, ln = segments[si]
            if not ts <= p < ts + ln:
                raise ContractError(f"relocated source {p} missed the context")
            ctx_start[i] = ss + (p - ts)
    else:
        mapped = map_to_context(parse, tau, [p for p, _ in positive])
        for (_, i), q in zip(positive, mapped):
            ctx_start[i] = q
    members = []
    total = 0
    for entry in entries:
        if entry[0] == "$":
            members.append((0, 1))
            total += 1
        else:
            i = entry[1]
            members.append((ctx_start[i], lengths[i]))
            total += lengths[i]
    if counters is not None:
        counters.free(6 * parse.z)
    return ContextParse(Lz77Parse(parse.sigma, total, members), tau,
                        dollar_separators)


class PackedString:
    """Bit-packed symbol sequence; code 0 is reserved for the sentinel '$'.

    Symbols use ceil(log2(sigma+1)) bits each, packed little-endian first
    within 64-bit words; pad bits are zero.
    """

    __slots__ = ("length", "bits", "words", "_tail", "_tailbits", "_counters")

    def __init__(self, sigma, counters=None):
        self.bits = max(1, int(sigma).bit_length())
        self.length = 0
        self.words = []
        self._tail = 0
        self._tailbits = 0
        self._counters = counters
        if counters is not None:
            counters.alloc(2)  # header: length + bit width

    def append(self, code):
        self._tail |= code << self._tailbits
        self._tailbits += self.bits
        self.length += 1
        if self._tailbits >= 64:
            self.words.append(self._tail & _MASK64)
            self._tail >>= 64
            self._tailbits -= 64
            if self._counters is not None:
                self._counters.alloc(1)

    def word_count(self):
        return len(self.words) + (1 if self._tailbits else 0)

    def get(self, i):
        """Symbol at 1-based position i."""
        if not 1 <= i <= self.length:
            raise UsageError(f"position {i} outside [1..{self.length}]")
        return self.slice(i, 1)[0]

    def slice(self, i, count):
        """Symbols at 1-based positions i .. i+count-1."""
        if count == 0:
            return []
        if not (1 <= i and i + count - 1 <= self.length):
            raise UsageError(f"slice [{i}, {i + count - 1}] outside "
                             f"[1..{self.length}]")
        bits = self.bits
        mask = (1 << bits) - 1
        words = self.words
        nw = len(words)
        tail = self._tail
        out = []
        bitpos = (i - 1) * bits
        for _ in range(count):
            wi = bitpos >> 6
            sh = bitpos & 63
            w = words[wi] if wi < nw else tail
            if sh + bits > 64:
                w = (w >> sh) | ((words[wi + 1] if wi + 1 < nw else tail)
                                 << (64 - sh))
                out.append(w & mask)
            else:
                out.append((w >> sh) & mask)
            bitpos += bits
        return out

    def dispose(self):
        if self._counters is not None:
            self._counters.free(2 + len(self.words))
            self._counters = None
        self.words = []


def build_packed_context(parse, tau, dollar_separators=False, counters=None):
    """Materialize the context string straight into a PackedString.

    Phrase sources of the context parse are read back out of the packed
    array itself, so the peak word count stays at the packed size.
    """
    cp = build_context_parse(parse, tau, dollar_separators, counters)
    ps = PackedString(parse.sigma, counters)
    for s, l in cp.parse.members:
        if s > 0:
            for code in ps.slice(s, l):
                ps.append(code)
        else:
            end = s + l
            j = s
            while j < min(end, 0):
                ps.append(-j)
                j += 1
            if j == 0 and end > 0:
                ps.append(0)
                j += 1
            if j < end:
                for code in ps.slice(j, end - j):
                    ps.append(code)
    return ps


def context_segments(parse, tau, dollar_separators):
    """Piecewise mapping from context-string positions to text positions.

    Returns (segments, stream_length) where each segment is
    (stream_start, text_start, length), 1-based, in stream order.  '$'
    separator positions fall between segments and map to no text position.
    """
    tau = clamp_tau(tau, parse.n)
    segments = []
    pos = 1
    u = 1
    t2 = 2 * tau - 1
    for _, l in parse.members:
        head = l if l < tau else tau
        segments.append((pos, u, head))
        pos += head
        if l > t2 and dollar_separators:
            pos += 1
        tail = 0 if l <= tau else (l - tau if l < t2 else tau - 1)
        if tail:
            segments.append((pos, u + l - tail, tail))
            pos += tail
        u += l
    return segments, pos - 1
