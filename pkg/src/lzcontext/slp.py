"""Balanced straight-line program built phrase by phrase from an LZ77 parse.

Rules live in parallel arrays; a rule is either a terminal (right link -1,
symbol stored in the left slot) or the concatenation of two earlier rules.
Heights obey the AVL discipline, so the derivation stays logarithmically
shallow and concatenation copies only a root path.  Each phrase reuses the
derivation of its source as a run of existing subtrees, which keeps the rule
count near z * log(n/z).

The start rule is wide: a sequence of rule ids with cumulative expansion
lengths for predecessor search.  `flatten_top` widens it to ~z symbols so a
single extraction descends only log(n/z)-ish levels below a start symbol.
"""

import heapq
from bisect import bisect_left

from .errors import InputError, UsageError
from .parse import validate

_RULE_WORDS = 4  # left, right, expansion length, height


class Slp:
    """Straight-line program with a wide start rule."""

    __slots__ = ("left", "right", "length", "height", "start", "prefix",
                 "phrase_count", "counters", "_terminals", "_rule_words")

    def __init__(self, counters=None):
        self.left = []
        self.right = []
        self.length = []
        self.height = []
        self.start = []
        self.prefix = []
        self.phrase_count = 0
        self.counters = counters
        self._terminals = {}
        self._rule_words = _RULE_WORDS

    # -- construction -----------------------------------------------------

    def _terminal(self, code):
        rid = self._terminals.get(code)
        if rid is None:
            rid = self._new(code, -1, 1, 1)
            self._terminals[code] = rid
        return rid

    def _new(self, a, b, ln, h):
        self.left.append(a)
        self.right.append(b)
        self.length.append(ln)
        self.height.append(h)
        if self.counters is not None:
            self.counters.alloc(_RULE_WORDS)
        return len(self.left) - 1

    def _pair(self, a, b):
        return self._new(a, b, self.length[a] + self.length[b],
                         max(self.height[a], self.height[b]) + 1)

    def _join(self, a, b):
        """AVL concatenation: expansion(a) + expansion(b), balanced."""
        height = self.height
        ha, hb = height[a], height[b]
        if -2 < ha - hb < 2:
            return self._pair(a, b)
        left, right = self.left, self.right
        if ha > hb:
            t = self._join(right[a], b)
            la = left[a]
            if height[t] - height[la] < 2:
                return self._pair(la, t)
            tl, tr = left[t], right[t]
            if height[tl] == height[la] + 1 and height[tr] == height[la]:
                return self._pair(self._pair(la, left[tl]),
                                  self._pair(right[tl], tr))
            return self._pair(self._pair(la, tl), tr)
        t = self._join(a, left[b])
        rb = right[b]
        if height[t] - height[rb] < 2:
            return self._pair(t, rb)
        tl, tr = left[t], right[t]
        if height[tr] == height[rb] + 1 and height[tl] == height[rb]:
            return self._pair(self._pair(tl, left[tr]),
                              self._pair(right[tr], rb))
        return self._pair(tl, self._pair(tr, rb))

    def _collect(self, node, i, j, out):
        """Existing subtrees whose concatenation expands to slice [i..j]."""
        while True:
            if i <= 1 and j >= self.length[node]:
                out.append(node)
                return
            ll = self.length[self.left[node]]
            if j <= ll:
                node = self.left[node]
            elif i > ll:
                i -= ll
                j -= ll
                node = self.right[node]
            else:
                self._collect(self.left[node], i, ll, out)
                i = 1
                j -= ll
                node = self.right[node]

    # -- queries ------------------------------------------------------------

    @property
    def total_length(self):
        return self.prefix[-1] if self.prefix else 0

    @property
    def rule_count(self):
        return len(self.left)

    def exp_len_of(self, rid):
        if not 0 <= rid < len(self.left):
            raise UsageError(f"unknown rule id {rid}")
        return self.length[rid]

    def extract(self, i, count):
        """Expansion slice at 1-based position i, `count` symbols."""
        out = []
        if count == 0:
            return out
        if i < 1 or i + count - 1 > self.total_length:
            raise UsageError(f"slice [{i}, {i + count - 1}] outside "
                             f"[1..{self.total_length}]")
        self._emit(i, count, out.append)
        return out

    def _emit(self, i, count, emit):
        left, right, length = self.left, self.right, self.length
        start, prefix = self.start, self.prefix
        visits = 0
        j = bisect_left(prefix, i)
        off = i - (prefix[j - 1] if j else 0)  # 1-based offset inside start[j]
        node = start[j]
        stack = []  # ancestors whose right subtree is still pending
        push = stack.append
        # descend to the first symbol
        while True:
            visits += 1
            if right[node] < 0:
                break
            ll = length[left[node]]
            if off <= ll:
                push(node)
                node = left[node]
            else:
                off -= ll
                node = right[node]
        emit(left[node])
        count -= 1
        while count:
            if stack:
                node = right[stack.pop()]
            else:
                j += 1
                node = start[j]
            while True:
                visits += 1
                if right[node] < 0:
                    break
                push(node)
                node = left[node]
            emit(left[node])
            count -= 1
        if self.counters is not None:
            self.counters.slp_nodes_visited += visits

    def max_symbol_height(self):
        """Tallest start symbol (proxy for depth below the wide rule)."""
        return max((self.height[x] for x in self.start), default=0)

    def dump(self):
        lines = []
        for rid in range(len(self.left)):
            if self.right[rid] < 0:
                lines.append(f"{rid} -> '{self.left[rid]}'")
            else:
                lines.append(f"{rid} -> {self.left[rid]} {self.right[rid]}")
        lines.append("start: " + " ".join(map(str, self.start)))
        return "\n".join(lines)

    def drop_heights(self):
        """Release the heights; they only matter while the grammar grows."""
        if self.height is not None:
            if self.counters is not None:
                self.counters.free(len(self.height))
            self.height = None
            self._rule_words = _RULE_WORDS - 1

    def dispose(self):
        if self.counters is not None:
            self.counters.free(self._rule_words * len(self.left)
                               + 2 * len(self.start))
            self.counters = None


def from_lz77(parse, counters=None):
    """Build a balanced SLP whose start rule expands to the parse's text.

    The grown prefix is kept as a stack of subtrees with strictly decreasing
    heights (merged binary-counter style), so appending a phrase never pays
    for the full height of one evolving root; the final stack becomes the
    wide start rule.
    """
    bad = validate(parse)
    if bad:
        raise InputError("invalid parse: " + "; ".join(bad))
    slp = Slp(counters)
    slp.phrase_count = max(1, parse.z)
    height = slp.height
    stack = []   # subtree ids, left to right, strictly decreasing heights
    ends = []    # cumulative expansion lengths of stack entries

    def push(piece):
        while stack and height[stack[-1]] <= height[piece]:
            piece = slp._join(stack.pop(), piece)
            ends.pop()
        stack.append(piece)
        ends.append((ends[-1] if ends else 0) + slp.length[piece])

    def collect_range(i, j, out):
        idx = bisect_left(ends, i)
        while True:
            base = ends[idx - 1] if idx else 0
            node = stack[idx]
            hi = j - base
            node_len = slp.length[node]
            if hi <= node_len:
                slp._collect(node, i - base, hi, out)
                return
            slp._collect(node, i - base, node_len, out)
            i = base + node_len + 1
            idx += 1

    for s, l in parse.members:
        pieces = []
        if s > 0:
            collect_range(s, s + l - 1, pieces)
        else:
            end = s + l
            pieces.extend(slp._terminal(-j) for j in range(s, min(end, 0)))
            if end > 0:
                pieces.append(slp._terminal(0))
                if end > 1:
                    collect_range(1, end - 1, pieces)
        for piece in pieces:
            push(piece)
    slp.start = stack
    slp.prefix = ends
    if counters is not None:
        counters.alloc(2 * len(slp.start))
    return slp


def flatten_top(slp):
    """Widen the start rule to ~phrase_count symbols, tallest first.

    Expansion is unchanged; returns the same object.  Cutting the top levels
    bounds the height below any start symbol by roughly the height of the
    original root minus log2 of the phrase count.
    """
    z = slp.phrase_count
    if not slp.start:
        return slp
    height, left, right = slp.height, slp.left, slp.right
    occ = list(slp.start)
    nxt = list(range(1, len(occ))) + [-1]
    heap = [(-height[r], t) for t, r in enumerate(occ)]
    heapq.heapify(heap)
    count = len(occ)
    while count < z and heap:
        _, tok = heapq.heappop(heap)
        rid = occ[tok]
        if right[rid] < 0:
            continue
        occ[tok] = left[rid]
        occ.append(right[rid])
        t2 = len(occ) - 1
        nxt.append(nxt[tok])
        nxt[tok] = t2
        heapq.heappush(heap, (-height[occ[tok]], tok))
        heapq.heappush(heap, (-height[occ[t2]], t2))
        count += 1
    start = []
    tok = 0
    while tok != -1:
        start.append(occ[tok])
        tok = nxt[tok]
    if slp.counters is not None:
        slp.counters.free(2 * len(slp.start))
        slp.counters.alloc(2 * len(start))
    slp.start = start
    prefix = []
    acc = 0
    for rid in start:
        acc += slp.length[rid]
        prefix.append(acc)
    slp.prefix = prefix
    return slp
