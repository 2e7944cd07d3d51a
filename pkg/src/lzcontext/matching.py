"""Pattern matching on the parse via the '$'-separated context stream.

All occurrences that cross a phrase boundary appear verbatim in the context
stream; occurrences buried inside a phrase are copies of earlier ones and
are recovered by closing the stream hits under phrase copying.  Chains of
copies can bottom out in the alphabet prefix (a phrase sourced from the
descending run sigma..1), so the prefix is scanned as a virtual first
segment ahead of the stream.

Exact matching runs a failure-function automaton over the stream; the
sentinel symbol never matches, so no hit straddles a skipped region.
Approximate matching (edit distance, at most k errors) runs a one-column
dynamic program with the usual cutoff band; a match window can span m+k
text positions, so it streams the (m+k)-context rather than the m-context.
Approximate hits are end-anchored: every end position e whose best window
is within distance k reports the start max(1, e - m + 1).
"""

from bisect import bisect_left, bisect_right
from typing import NamedTuple

from .context import build_context_parse, clamp_tau, context_segments
from .counters import Counters
from .errors import InputError
from .parse import PhraseTable
from .slp import flatten_top, from_lz77


class Occurrence(NamedTuple):
    start: int
    kind: str           # "primary" (spans >= 2 phrases) or "secondary"
    errors_used: int


def _check_pattern(pattern, sigma):
    if len(pattern) < 1:
        raise InputError("pattern must be non-empty")
    for c in pattern:
        if not 1 <= c <= sigma:
            raise InputError(f"pattern symbol {c} outside [1..{sigma}]")


def stream_dollar_context(parse, m, sink, counters=None):
    """Emit the '$'-separated m-context string, one chunk at a time.

    Returns (stream_length, segments); segments map stream positions back
    to text positions as (stream_start, text_start, length) triples covering
    everything except the '$' separators.
    """
    if parse.n == 0:
        return 0, []
    tau = clamp_tau(m, parse.n)
    ctr = counters if counters is not None else Counters()
    cp = build_context_parse(parse, tau, dollar_separators=True, counters=ctr)
    segments, length = context_segments(parse, tau, dollar_separators=True)
    _stream_parse(cp.parse, length, sink, ctr)
    return length, segments


def _stream_parse(cparse, length, sink, ctr):
    if not length:
        return
    slp = flatten_top(from_lz77(cparse, ctr))
    buf = []

    def emit(code):
        buf.append(code)
        if len(buf) >= 256:
            sink(buf[:])
            buf.clear()

    slp._emit(1, length, emit)
    if buf:
        sink(buf)
    slp.dispose()


class _PositionMapper:
    """Maps monotonically increasing stream positions to text positions."""

    __slots__ = ("segments", "i")

    def __init__(self, segments):
        self.segments = segments
        self.i = 0

    def to_text(self, sp):
        segs = self.segments
        i = self.i
        while segs[i][0] + segs[i][2] <= sp:
            i += 1
        self.i = i
        ss, ts, _ = segs[i]
        return ts + (sp - ss)


def _run_matcher(parse, tau, make_feed, counters):
    """Feed the prefix run, then the '$'-separated tau-context stream."""
    ctr = counters if counters is not None else Counters()
    tau = clamp_tau(tau, parse.n)
    cp = build_context_parse(parse, tau, dollar_separators=True, counters=ctr)
    segments, length = context_segments(parse, tau, dollar_separators=True)
    feed = make_feed(_PositionMapper(segments))
    _stream_parse(cp.parse, length, feed, ctr)


def find_exact(parse, pattern, counters=None):
    """All start positions of the pattern, each tagged primary/secondary.

    Agrees with naive search over the decompressed text.
    """
    _check_pattern(pattern, parse.sigma)
    m = len(pattern)
    if m > parse.n:
        return []
    fail = _failure(pattern)
    hits = {}  # text end position -> 0 errors

    # Virtual prefix segment: values sigma..1 at positions -sigma..-1,
    # followed by the sentinel, which resets the automaton.
    sigma = parse.sigma
    state = 0
    for i, c in enumerate(range(sigma, 0, -1)):
        while state and pattern[state] != c:
            state = fail[state - 1]
        if pattern[state] == c:
            state += 1
            if state == m:
                hits[i - sigma] = 0
                state = fail[state - 1]

    def make_feed(mapper):
        box = [0, 0]  # automaton state, stream position

        def feed(chunk):
            st, p = box
            for c in chunk:
                p += 1
                while st and pattern[st] != c:
                    st = fail[st - 1]
                if pattern[st] == c:
                    st += 1
                    if st == m:
                        hits[mapper.to_text(p)] = 0
                        st = fail[st - 1]
            box[0] = st
            box[1] = p

        return feed

    _run_matcher(parse, m, make_feed, counters)
    ends = _expand_ends(parse, hits, m)
    table = PhraseTable(parse, 1)
    return [Occurrence(e - m + 1, _kind(table, e - m + 1, e), 0)
            for e in sorted(ends) if e >= m]


def find_approx(parse, pattern, k, counters=None):
    """Starts of substrings within edit distance k of the pattern.

    End-anchored: every text position e whose best-matching window ending
    there is within distance k yields the start max(1, e - m + 1);
    duplicate starts keep the smallest error count.  Agrees with a
    full-text dynamic-programming scan.
    """
    _check_pattern(pattern, parse.sigma)
    if k < 0:
        raise InputError(f"k={k} must be >= 0")
    if k == 0:
        return find_exact(parse, pattern, counters)
    m = len(pattern)
    if parse.n == 0:
        return []
    window = m + k
    hits = {}
    dp = _BandedDistance(pattern, k)

    sigma = parse.sigma
    for i, c in enumerate(range(sigma, 0, -1)):
        err = dp.feed(c)
        if err is not None:
            e = i - sigma
            if err < hits.get(e, k + 1):
                hits[e] = err
    dp.reset()

    def make_feed(mapper):
        box = [0]

        def feed(chunk):
            p = box[0]
            for c in chunk:
                p += 1
                if c == 0:
                    dp.reset()
                    continue
                err = dp.feed(c)
                if err is not None:
                    e = mapper.to_text(p)
                    if err < hits.get(e, k + 1):
                        hits[e] = err
            box[0] = p

        return feed

    _run_matcher(parse, window, make_feed, counters)
    ends = _expand_ends(parse, hits, window)
    table = PhraseTable(parse, 1)
    best = {}
    for e, err in ends.items():
        if e < 1:
            continue
        start = e - m + 1 if e >= m else 1
        if err < best.get(start, k + 1):
            best[start] = err
    return [Occurrence(s, _kind(table, s, min(s + m - 1, parse.n)), best[s])
            for s in sorted(best)]


def expand_secondary(parse, primaries, m):
    """Close a set of occurrence starts under phrase copying.

    Given every occurrence that crosses a phrase boundary, returns all
    occurrence starts, sorted: whenever a known occurrence fits inside a
    phrase's source, the phrase contains a copy of it.
    """
    ends = {p + m - 1: 0 for p in primaries}
    closed = _expand_ends(parse, ends, m)
    return sorted(e - m + 1 for e in closed if e >= m)


def _kind(table, start, end):
    return "primary" if table.locate(start) != table.locate(end) else "secondary"


def _failure(pattern):
    m = len(pattern)
    fail = [0] * m
    j = 0
    for i in range(1, m):
        while j and pattern[i] != pattern[j]:
            j = fail[j - 1]
        if pattern[i] == pattern[j]:
            j += 1
        fail[i] = j
    return fail


class _BandedDistance:
    """One-column edit-distance scan with the <=k cutoff band."""

    __slots__ = ("pattern", "m", "k", "col", "last")

    def __init__(self, pattern, k):
        self.pattern = pattern
        self.m = len(pattern)
        self.k = k
        self.col = []
        self.reset()

    def reset(self):
        self.col = list(range(self.m + 1))
        self.last = min(self.k, self.m)

    def feed(self, c):
        """Consume one symbol; returns the distance when it is <= k."""
        pattern, col, k, m = self.pattern, self.col, self.k, self.m
        top = self.last + 1
        if top > m:
            top = m
        diag = col[0]
        for j in range(1, top + 1):
            up = col[j]
            v = diag if pattern[j - 1] == c else diag + 1
            w = col[j - 1] + 1
            if w < v:
                v = w
            w = up + 1
            if w < v:
                v = w
            col[j] = v
            diag = up
        while col[top] > k:
            top -= 1
        self.last = top
        if top < m:
            col[top + 1] = k + 1  # band sentinel stands in for stale cells
            return None
        return col[m]


def _expand_ends(parse, end_err, window):
    """Close end positions under phrase copying; smaller errors win."""
    ends = sorted(end_err)
    u = 1
    for s, l in parse.members:
        if l >= window:
            lo = bisect_left(ends, s + window - 1)
            hi = bisect_right(ends, s + l - 1)
            if lo < hi:
                shift = u - s
                fresh = []
                for e in ends[lo:hi]:
                    e2 = e + shift
                    err = end_err[e]
                    old = end_err.get(e2)
                    if old is None:
                        end_err[e2] = err
                        fresh.append(e2)
                    elif err < old:
                        end_err[e2] = err
                if fresh:
                    ends = _merge_sorted(ends, fresh)
        u += l
    return end_err


def _merge_sorted(a, b):
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        if a[i] <= b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out
