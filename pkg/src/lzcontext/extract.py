"""Streaming substring extraction driven by context relocation.

Requested intervals are cut into blocks of at most tau characters, blocks
are relocated into the tau-context in batches of z, and each relocated block
is read out of a compact context representation (bit-packed string or SLP).
Only the naive strategy ever materializes the whole text.

The sink is any callable accepting a list of symbol codes; characters arrive
exactly in request order.
"""

from itertools import islice
from math import ceil, log2

from .context import (build_context_parse, build_packed_context,
                      map_to_context, relocate_to_context)
from .counters import Counters
from .errors import InputError
from .parse import decompress_naive
from .slp import flatten_top, from_lz77

_STREAM_CHUNK = 64  # grammar-strategy emit buffer, in symbols


class Strategy:
    """One of naive | grammar | packed(delta) | slp_context(tau)."""

    __slots__ = ("kind", "delta", "tau", "bucketed")

    def __init__(self, kind, delta=None, tau=None, bucketed=False):
        if kind not in ("naive", "grammar", "packed", "slp_context"):
            raise InputError(f"unknown strategy {kind!r}")
        if delta is not None and not 0.0 <= delta <= 1.0:
            raise InputError(f"delta={delta} outside [0, 1]")
        if tau is not None and tau < 1:
            raise InputError(f"tau={tau} must be >= 1")
        if kind == "packed" and delta is None and tau is None:
            delta = 0.5
        self.kind = kind
        self.delta = delta
        self.tau = tau
        self.bucketed = bucketed

    @classmethod
    def naive(cls):
        return cls("naive")

    @classmethod
    def grammar(cls):
        return cls("grammar")

    @classmethod
    def packed(cls, delta=None, tau=None, bucketed=False):
        return cls("packed", delta=delta, tau=tau, bucketed=bucketed)

    @classmethod
    def slp_context(cls, tau=None, bucketed=False):
        return cls("slp_context", tau=tau, bucketed=bucketed)

    def __repr__(self):
        extra = ""
        if self.delta is not None:
            extra = f", delta={self.delta}"
        if self.tau is not None:
            extra += f", tau={self.tau}"
        return f"Strategy({self.kind}{extra})"


def choose_tau(n, z, sigma, strategy):
    """Context radius for a strategy: explicit tau, or the derived default.

    packed derives tau = log2(n/z) / log2(sigma)^delta (floored); slp_context
    defaults to ceil(log2(n/z)).  Everything is clamped to
    [1, max(1, ceil(log2(n/z)))].
    """
    if z < 1 or n < z:
        raise InputError(f"need n >= z >= 1, got n={n} z={z}")
    ratio = log2(n / z) if n > z else 0.0
    tau_max = max(1, ceil(ratio))
    if strategy.tau is not None:
        if strategy.kind == "slp_context" and strategy.tau > tau_max:
            raise InputError(f"tau={strategy.tau} above bound {tau_max} "
                             f"for slp_context")
        return min(strategy.tau, max(1, n))
    if strategy.kind == "packed":
        delta = strategy.delta if strategy.delta is not None else 0.5
        tau = int(ratio / (log2(max(sigma, 2)) ** delta))
        return min(max(1, tau), tau_max)
    return tau_max


def clamp_intervals(intervals, n):
    """Clamp to [1..n]; inverted or fully out-of-range intervals are empty."""
    out = []
    for i, j in intervals:
        i = 1 if i < 1 else i
        j = n if j > n else j
        if i <= j:
            out.append((i, j))
    return out


def plan_blocks(intervals, tau):
    """Cut every interval into consecutive blocks of at most tau characters."""
    return list(_iter_blocks(intervals, tau))


def _iter_blocks(intervals, tau):
    for i, j in intervals:
        a = i
        while a <= j:
            b = a + tau - 1
            yield (a, b if b < j else j)
            a = b + 1


def extract_streaming(parse, intervals, strategy, sink, counters=None):
    """Stream S[i_1, j_1] ... S[i_s, j_s] into the sink; returns counters."""
    ctr = counters if counters is not None else Counters()
    request = clamp_intervals(intervals, parse.n)
    if strategy.kind == "naive":
        _run_naive(parse, request, sink, ctr)
    elif strategy.kind == "grammar":
        _run_grammar(parse, request, sink, ctr)
    else:
        _run_context(parse, request, strategy, sink, ctr)
    return ctr


def decompress_full(parse, strategy, sink, counters=None):
    """Stream the whole text: extract_streaming on the single interval (1, n)."""
    return extract_streaming(parse, [(1, parse.n)], strategy, sink, counters)


def _run_naive(parse, request, sink, ctr):
    buf = decompress_naive(parse)
    ctr.alloc(len(buf))
    for i, j in request:
        sink(buf[i - 1:j])
    ctr.free(len(buf))


def _run_grammar(parse, request, sink, ctr):
    slp = flatten_top(from_lz77(parse, ctr))
    slp.drop_heights()
    ctr.alloc(_STREAM_CHUNK)
    for i, j in request:
        _stream_slp(slp, i, j - i + 1, sink)
    ctr.free(_STREAM_CHUNK)
    slp.dispose()


def _stream_slp(slp, i, count, sink):
    if count == 0:
        return
    buf = []
    append = buf.append

    def emit(code):
        append(code)
        if len(buf) >= _STREAM_CHUNK:
            sink(buf[:])
            buf.clear()

    slp._emit(i, count, emit)
    if buf:
        sink(buf)


def _run_context(parse, request, strategy, sink, ctr):
    n, z, sigma = parse.n, parse.z, parse.sigma
    if not request:
        return
    tau = choose_tau(n, z, sigma, strategy)
    if strategy.kind == "packed":
        rep = build_packed_context(parse, tau, counters=ctr)
        read = rep.slice
    else:
        cparse = build_context_parse(parse, tau, counters=ctr).parse
        rep = flatten_top(from_lz77(cparse, ctr))
        rep.drop_heights()
        read = rep.extract
    batch_size = max(1, z)
    pending = _iter_blocks(request, tau)
    while True:
        batch = list(islice(pending, batch_size))
        if not batch:
            break
        ctr.batches += 1
        ctr.alloc(2 * len(batch))
        moved = relocate_to_context(parse, tau, batch,
                                    bucketed=strategy.bucketed, counters=ctr)
        order = sorted((a, idx) for idx, (a, _) in enumerate(moved) if a >= 1)
        mapped = map_to_context(parse, tau, [a for a, _ in order])
        ctx_pos = [0] * len(batch)
        for (_, idx), q in zip(order, mapped):
            ctx_pos[idx] = q
        for idx, (a, b) in enumerate(moved):
            length = b - a + 1
            if a >= 1:
                sink(read(ctx_pos[idx], length))
            else:
                # landed in the alphabet prefix: values are known analytically
                sink([-j if j else 0 for j in range(a, a + length)])
        ctr.free(2 * len(batch))
    rep.dispose()
