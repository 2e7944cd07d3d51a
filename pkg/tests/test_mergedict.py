import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lzcontext.errors import UsageError
from lzcontext.mergedict import DictCollection
from oracles import run_dict_schedule


def items(coll, handle):
    return coll.enumerate(handle)


def test_makeset_examples():
    c = DictCollection()
    assert items(c, c.makeset(5, 1)) == [(5, 1)]
    assert items(c, c.makeset(-2, 7)) == [(-2, 7)]
    a = c.makeset(3, 1)
    b = c.makeset(3, 2)
    merged = c.merge(a, b)
    assert sorted(items(c, merged)) == [(3, 1), (3, 2)]


def test_merge_examples():
    c = DictCollection()

    def build(pairs):
        handles = [c.makeset(p, r) for p, r in pairs]
        acc = handles[0]
        for h in handles[1:]:
            acc = c.merge(acc, h)
        return acc

    interleaved = c.merge(build([(1, 0), (4, 1)]), build([(2, 2), (3, 3)]))
    assert [p for p, _ in items(c, interleaved)] == [1, 2, 3, 4]

    left = build([(-2, 0), (-1, 1), (1, 2)])
    right = c.makeset(-2, 3)
    both = c.merge(left, right)
    assert [p for p, _ in items(c, both)] == [-2, -2, -1, 1]

    empty = c.split(c.makeset(9, 4), 100)[1]
    a = c.makeset(7, 5)
    assert items(c, c.merge(a, empty)) == [(7, 5)]


def test_split_examples():
    c = DictCollection()
    g = c.merge(c.merge(c.makeset(1, 0), c.makeset(2, 1)),
                c.merge(c.makeset(3, 2), c.makeset(4, 3)))
    a, b = c.split(g, 2)
    assert [p for p, _ in items(c, a)] == [1, 2]
    assert [p for p, _ in items(c, b)] == [3, 4]
    a, b = c.split(c.makeset(5, 0), 5)
    assert [p for p, _ in items(c, a)] == [5]
    assert items(c, b) == []
    a, b = c.split(c.makeset(5, 0), 8)
    assert [p for p, _ in items(c, a)] == [5]
    assert items(c, b) == []


def test_shift_examples():
    c = DictCollection()
    assert items(c, c.shift(c.makeset(5, 0), -3)) == [(2, 0)]
    assert items(c, c.shift(c.makeset(2, 0), -4)) == [(-2, 0)]
    g = c.merge(c.makeset(1, 0), c.makeset(4, 1))
    assert items(c, c.shift(g, 0)) == [(1, 0), (4, 1)]


def test_shift_composition():
    c = DictCollection()
    g = c.merge(c.makeset(1, 0), c.makeset(7, 1))
    g = c.shift(c.shift(g, 5), -2)
    h = c.merge(c.makeset(1, 0), c.makeset(7, 1))
    h = c.shift(h, 3)
    assert items(c, g) == items(c, h)


def test_split_then_merge_is_identity():
    c = DictCollection()
    g = c.merge(c.merge(c.makeset(1, 0), c.makeset(5, 1)),
                c.merge(c.makeset(5, 2), c.makeset(9, 3)))
    before = items(c, g)
    a, b = c.split(g, 5)
    g2 = c.merge(a, b)
    assert items(c, g2) == before


def test_enumerate_examples():
    c = DictCollection()
    assert items(c, c.makeset(3, 9)) == [(3, 9)]
    empty = c.split(c.makeset(3, 9), 99)[1]
    assert items(c, empty) == []


def test_consumed_handles_error():
    c = DictCollection()
    a = c.makeset(1, 0)
    b = c.makeset(2, 1)
    c.merge(a, b)
    with pytest.raises(UsageError):
        c.merge(a, b)
    with pytest.raises(UsageError):
        c.split(a, 1)
    with pytest.raises(UsageError):
        c.shift(b, 1)
    g = c.makeset(3, 2)
    with pytest.raises(UsageError):
        c.merge(g, g)


def test_bounds_checked():
    c = DictCollection(bounds=(-2, 8))
    g = c.makeset(8, 0)
    with pytest.raises(UsageError):
        c.shift(g, 1)
    g2 = c.makeset(-2, 1)
    with pytest.raises(UsageError):
        c.shift(g2, -1)
    with pytest.raises(UsageError):
        c.makeset(9, 2)
    ok = c.shift(c.makeset(0, 3), -2)
    assert items(c, ok) == [(-2, 3)]


def test_dump_format():
    c = DictCollection()
    g = c.merge(c.makeset(5, 1), c.makeset(-2, 0))
    assert g.dump() == "-2:0 5:1"


def test_against_oracle_quick():
    for seed in range(6):
        run_dict_schedule(seed, 800)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_against_oracle_property(seed):
    run_dict_schedule(seed, 150)
