"""Shared independent oracles for the test suite.

These deliberately avoid the package's own algorithms: set partitions
come from recursive insertion, never from restricted-growth strings.
"""

from __future__ import annotations


def brute_partitions(items):
    """All set partitions of items, by inserting one element at a time."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in brute_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1 :]
        yield part + [[first]]


def partition_key(blocks):
    """Order-free canonical key for a set partition given as lists."""
    return frozenset(frozenset(b) for b in blocks)


def standard_tableaux(shape):
    """All standard fillings of a partition shape, as row tuples."""
    total = sum(shape)
    results = []

    def grow(filling, counts, next_val):
        if next_val > total:
            results.append(tuple(tuple(row) for row in filling))
            return
        for r in range(len(shape)):
            if counts[r] >= shape[r]:
                continue
            if r > 0 and counts[r - 1] <= counts[r]:
                continue
            filling[r].append(next_val)
            counts[r] += 1
            grow(filling, counts, next_val + 1)
            counts[r] -= 1
            filling[r].pop()

    grow([[] for _ in shape], [0] * len(shape), 1)
    return results
