"""Greedy LZ77 factorization via a suffix automaton over the whole text.

Each state of the automaton carries the end position of the first occurrence
of its strings, which gives both the non-overlap test (a source must end
before the phrase starts) and the leftmost source for the tie-break.  The
alphabet prefix is handled as a second source channel: a phrase may copy a
descending run S[-c..] = c, c-1, ... from the virtual prefix.

Two transition layouts: flat integer arrays per symbol for tiny alphabets
(keeps million-state automata in a few dozen MB) and per-state dicts
otherwise.
"""

from array import array

from .parse import Lz77Parse, validate_text

_SMALL_SIGMA = 4


def greedy_parse(text, sigma):
    """Greedy leftmost-longest non-overlapping factorization.

    Each phrase takes the maximum length that some earlier (or
    alphabet-prefix) source can supply; among sources of that length the
    smallest start wins, so prefix sources beat text sources on ties.
    """
    validate_text(text, sigma)
    if not text:
        return Lz77Parse(sigma, 0, [])
    if sigma <= _SMALL_SIGMA:
        members = _parse_small(text, sigma)
    else:
        members = _parse_general(text)
    return Lz77Parse(sigma, len(text), members)


def _prefix_run(text, u, n):
    """Length of the descending-by-one run at u copyable from the prefix."""
    c0 = text[u - 1]
    r = 1
    while r < c0 and u + r <= n and text[u + r - 1] == c0 - r:
        r += 1
    return r


def _parse_small(text, sigma):
    # Suffix automaton with one array('i') column per symbol.
    n = len(text)
    len_ = array("i", [0])
    link = array("i", [-1])
    fpos = array("i", [0])
    cols = [array("i", [-1]) for _ in range(sigma + 1)]  # cols[c][state]

    def new_state(length, lnk, fp):
        len_.append(length)
        link.append(lnk)
        fpos.append(fp)
        for col in cols[1:]:
            col.append(-1)
        return len(len_) - 1

    last = 0
    for i in range(n):
        c = text[i]
        col = cols[c]
        cur = new_state(len_[last] + 1, -1, i + 1)
        p = last
        while p != -1 and col[p] == -1:
            col[p] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = col[p]
            if len_[q] == len_[p] + 1:
                link[cur] = q
            else:
                clone = new_state(len_[p] + 1, link[q], fpos[q])
                for cc in cols[1:]:
                    cc[-1] = cc[q]
                while p != -1 and col[p] == q:
                    col[p] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur

    members = []
    u = 1
    while u <= n:
        st = 0
        length = 0
        lim = u - 1
        while u + length <= n:
            nxt = cols[text[u + length - 1]][st]
            if nxt == -1 or fpos[nxt] > lim:
                break
            st = nxt
            length += 1
        r = _prefix_run(text, u, n)
        if r >= length:
            members.append((-text[u - 1], r))
            u += r
        else:
            members.append((fpos[st] - length + 1, length))
            u += length
    return members


def _parse_general(text):
    n = len(text)
    len_ = [0]
    link = [-1]
    fpos = [0]
    trans = [{}]

    last = 0
    for i in range(n):
        c = text[i]
        len_.append(len_[last] + 1)
        link.append(-1)
        fpos.append(i + 1)
        trans.append({})
        cur = len(len_) - 1
        p = last
        while p != -1 and c not in trans[p]:
            trans[p][c] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = trans[p][c]
            if len_[q] == len_[p] + 1:
                link[cur] = q
            else:
                len_.append(len_[p] + 1)
                link.append(link[q])
                fpos.append(fpos[q])
                trans.append(dict(trans[q]))
                clone = len(len_) - 1
                while p != -1 and trans[p].get(c) == q:
                    trans[p][c] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur

    members = []
    u = 1
    while u <= n:
        st = 0
        length = 0
        lim = u - 1
        while u + length <= n:
            nxt = trans[st].get(text[u + length - 1], -1)
            if nxt == -1 or fpos[nxt] > lim:
                break
            st = nxt
            length += 1
        r = _prefix_run(text, u, n)
        if r >= length:
            members.append((-text[u - 1], r))
            u += r
        else:
            members.append((fpos[st] - length + 1, length))
            u += length
    return members
