"""Mergeable dictionary: position-ordered multisets with merge/split/shift.

A collection of treaps keyed by position, one lazy additive tag per subtree
so a whole set shifts in O(1).  Merge supports fully interleaved inputs via
recursive segment splitting.  Handles passed to a consuming operation
(merge, split, shift) become invalid; enumerate leaves its set live.

Positions form a multiset: equal positions may coexist and keep their ranks.
"""

import random

from .errors import UsageError

# position, rank, lazy offset, priority, creation id, left, right
_NODE_WORDS = 7


class _Node:
    __slots__ = ("pos", "rank", "add", "prio", "uid", "left", "right")

    def __init__(self, pos, rank, prio, uid):
        self.pos = pos
        self.rank = rank
        self.add = 0
        self.prio = prio
        self.uid = uid
        self.left = None
        self.right = None


def _push(nd):
    a = nd.add
    if a:
        nd.pos += a
        left = nd.left
        if left is not None:
            left.add += a
        right = nd.right
        if right is not None:
            right.add += a
        nd.add = 0


def _split(nd, x):
    """(everything <= x, everything > x) by effective position."""
    lo_root = hi_root = None
    lo_hook = hi_hook = None
    while nd is not None:
        a = nd.add
        if a:
            nd.pos += a
            left = nd.left
            if left is not None:
                left.add += a
            right = nd.right
            if right is not None:
                right.add += a
            nd.add = 0
        if nd.pos <= x:
            if lo_hook is None:
                lo_root = nd
            else:
                lo_hook.right = nd
            lo_hook = nd
            nd = nd.right
        else:
            if hi_hook is None:
                hi_root = nd
            else:
                hi_hook.left = nd
            hi_hook = nd
            nd = nd.left
    if lo_hook is not None:
        lo_hook.right = None
    if hi_hook is not None:
        hi_hook.left = None
    return lo_root, hi_root


def _split_at(nd, x, uid):
    """Split by the composite order (position, creation id).

    Nodes tied on position spread across both sides, so duplicate-heavy
    multisets stay balanced instead of chaining down one spine.
    """
    lo_root = hi_root = None
    lo_hook = hi_hook = None
    while nd is not None:
        a = nd.add
        if a:
            nd.pos += a
            left = nd.left
            if left is not None:
                left.add += a
            right = nd.right
            if right is not None:
                right.add += a
            nd.add = 0
        if nd.pos < x or (nd.pos == x and nd.uid <= uid):
            if lo_hook is None:
                lo_root = nd
            else:
                lo_hook.right = nd
            lo_hook = nd
            nd = nd.right
        else:
            if hi_hook is None:
                hi_root = nd
            else:
                hi_hook.left = nd
            hi_hook = nd
            nd = nd.left
    if lo_hook is not None:
        lo_hook.right = None
    if hi_hook is not None:
        hi_hook.left = None
    return lo_root, hi_root


def _union(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.prio < b.prio:
        a, b = b, a
    add = a.add
    if add:
        a.pos += add
        left = a.left
        if left is not None:
            left.add += add
        right = a.right
        if right is not None:
            right.add += add
        a.add = 0
    lo, hi = _split_at(b, a.pos, a.uid)
    a.left = _union(a.left, lo)
    a.right = _union(a.right, hi)
    return a


def _edge(nd, side):
    """Effective position of the leftmost (side=0) or rightmost item."""
    acc = 0
    while True:
        acc += nd.add
        child = nd.left if side == 0 else nd.right
        if child is None:
            return nd.pos + acc
        nd = child


class DictSet:
    """Handle to one set. Invalidated when consumed by merge/split/shift."""

    __slots__ = ("_root", "alive")

    def __init__(self, root):
        self._root = root
        self.alive = True

    def __len__(self):
        def count(nd):
            return 0 if nd is None else 1 + count(nd.left) + count(nd.right)
        return count(self._root)

    def dump(self):
        """Debug format: 'pos:rank' entries space-separated, position order."""
        return " ".join(f"{p}:{r}" for p, r in _items(self._root))


def _items(root):
    out = []
    stack = []
    node, acc = root, 0
    while node is not None or stack:
        while node is not None:
            acc += node.add
            stack.append((node, acc))
            node = node.left
        node, acc = stack.pop()
        out.append((node.pos + acc, node.rank))
        node = node.right
    return out


class DictCollection:
    """Dynamic family of DictSet handles over an ordered integer universe.

    bounds, when given as (lo, hi), constrains every position; shift raises
    UsageError if it would push an item outside.  All randomness comes from
    `seed`, so runs are reproducible.
    """

    def __init__(self, bounds=None, seed=0, counters=None):
        self.bounds = bounds
        self.live = set()
        self.counters = counters
        self._rand = random.Random(seed).random
        self._nodes = 0

    def _op(self):
        if self.counters is not None:
            self.counters.dict_ops += 1

    def _check(self, *handles):
        for h in handles:
            if not h.alive:
                raise UsageError("handle already consumed")

    def _take(self, *handles):
        self._check(*handles)
        for h in handles:
            h.alive = False
            self.live.discard(h)

    def _wrap(self, root):
        h = DictSet(root)
        self.live.add(h)
        return h

    def makeset(self, pos, rank):
        self._op()
        if self.bounds is not None and not self.bounds[0] <= pos <= self.bounds[1]:
            raise UsageError(f"position {pos} outside universe {self.bounds}")
        if self.counters is not None:
            self.counters.alloc(_NODE_WORDS)
        self._nodes += 1
        return self._wrap(_Node(pos, rank, self._rand(), self._nodes))

    # merge/split/shift inline the handle bookkeeping; they run millions of
    # times inside relocation sweeps.

    def merge(self, a, b):
        if a is b:
            raise UsageError("merge requires two distinct handles")
        if not (a.alive and b.alive):
            raise UsageError("handle already consumed")
        if self.counters is not None:
            self.counters.dict_ops += 1
        a.alive = b.alive = False
        live = self.live
        live.discard(a)
        live.discard(b)
        out = DictSet(_union(a._root, b._root))
        live.add(out)
        return out

    def split(self, g, x):
        if not g.alive:
            raise UsageError("handle already consumed")
        if self.counters is not None:
            self.counters.dict_ops += 1
        g.alive = False
        live = self.live
        live.discard(g)
        lo, hi = _split(g._root, x)
        a, b = DictSet(lo), DictSet(hi)
        live.add(a)
        live.add(b)
        return a, b

    def shift(self, g, delta):
        if not g.alive:
            raise UsageError("handle already consumed")
        if self.counters is not None:
            self.counters.dict_ops += 1
        root = g._root
        if root is not None and delta and self.bounds is not None:
            lo, hi = self.bounds
            if _edge(root, 0) + delta < lo or _edge(root, 1) + delta > hi:
                raise UsageError(f"shift by {delta} leaves universe {self.bounds}")
        g.alive = False
        live = self.live
        live.discard(g)
        if root is not None:
            root.add += delta
        out = DictSet(root)
        live.add(out)
        return out

    def enumerate(self, g):
        """All (position, rank) pairs in nondecreasing position order."""
        self._op()
        self._check(g)
        return _items(g._root)

    def first(self, g):
        """Smallest position in the set, or None when empty (non-consuming)."""
        self._check(g)
        return None if g._root is None else _edge(g._root, 0)

    def dispose(self):
        """Release the space accounting for every node ever allocated here."""
        if self.counters is not None:
            self.counters.free(_NODE_WORDS * self._nodes)
        self._nodes = 0
        self.live.clear()
