from itertools import permutations

import pytest

from multiop.errors import BelowLattice
from multiop.lattice import (
    LatticePath,
    MultiIndex,
    enumerate_box,
    monotone_paths,
    path_count,
    step_down,
    step_up,
)


def idx(*e):
    return MultiIndex.of(*e)


@pytest.mark.parametrize("n, j, out", [
    ((0, 0), 1, (1, 0)),
    ((2, 1), 2, (2, 2)),
    ((3, 0, 4), 3, (3, 0, 5)),
])
def test_step_up(n, j, out):
    assert step_up(idx(*n), j) == idx(*out)


def test_step_down():
    assert step_down(idx(1, 1), 1) == idx(0, 1)
    assert step_down(idx(2, 2), 2) == idx(2, 1)
    with pytest.raises(BelowLattice):
        step_down(idx(0, 2), 1)


def test_negative_entries_rejected():
    with pytest.raises(ValueError):
        idx(-1, 0)


def test_enumerate_box():
    assert enumerate_box([1, 1]) == [idx(0, 0), idx(0, 1), idx(1, 0), idx(1, 1)]
    assert enumerate_box([0, 0]) == [idx(0, 0)]
    assert enumerate_box([2]) == [idx(0), idx(1), idx(2)]


def test_box_is_downward_ordered():
    # every predecessor of an index appears earlier
    box = enumerate_box([2, 3, 1])
    seen = set()
    for n in box:
        for j in range(1, 4):
            if n[j - 1]:
                assert step_down(n, j) in seen
        seen.add(n)
    assert len(box) == 3 * 4 * 2


def test_paths_small():
    paths = monotone_paths(idx(1, 1), 100)
    assert sorted(p.steps for p in paths) == [(1, 2), (2, 1)]
    assert [p.steps for p in monotone_paths(idx(2, 0), 100)] == [(1, 1)]


def test_paths_sampled_are_distinct_and_valid():
    everything = set(permutations((1, 1, 2, 2)))
    assert path_count(idx(2, 2)) == len(everything) == 6
    sample = monotone_paths(idx(2, 2), 3, seed=5)
    assert len(sample) == 3
    assert len({p.steps for p in sample}) == 3
    assert all(p.steps in everything for p in sample)
    assert [p.steps for p in sample] == [p.steps for p in monotone_paths(idx(2, 2), 3, seed=5)]


def test_path_indices():
    path = LatticePath((2, 1, 2), 2)
    assert path.indices() == [idx(0, 0), idx(0, 1), idx(1, 1), idx(1, 2)]
    assert path.end == idx(1, 2)


def test_path_count_multinomial():
    assert path_count(idx(2, 1, 1)) == 12
    assert path_count(idx(5, 5)) == 252
