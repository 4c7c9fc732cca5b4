# Utility functions
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

from functools import total_ordering
from itertools import combinations
from typing import Iterator, Sequence, Tuple


## Decorator for making a class orderable
def order_by(*attrs):
    """
    Make a class orderable by a set of its attributes.

    Class decorator.

    Parameters are the names of attributes in order of priority.
    Defines __lt__ and __eq__ from the attribute values and lets functools.total_ordering
    fill in the remaining comparisons. __hash__ follows the same attributes so that
    instances stay usable as dictionary keys.
    """

    def decorate(cls):

        def key(self):
            return tuple(getattr(self, a) for a in attrs)

        def eq(self, other):
            if not isinstance(other, cls):
                return NotImplemented
            return key(self) == key(other)

        def lt(self, other):
            if not isinstance(other, cls):
                return NotImplemented

            for a in attrs:
                ours = getattr(self, a)
                theirs = getattr(other, a)
                if ours < theirs: return True
                elif ours > theirs: return False

            return False

        def hash_(self):
            return hash(key(self))

        setattr(cls, '__lt__', lt)
        setattr(cls, '__eq__', eq)
        setattr(cls, '__hash__', hash_)

        return total_ordering(cls)

    return decorate


def inversion_count(permutation: Sequence[int]) -> int:
    """Length of a permutation: number of pairs out of order."""
    return sum(1 for i, j in combinations(range(len(permutation)), 2) if permutation[i] > permutation[j])


def index_subsets(n: int, r: int) -> Iterator[Tuple[int, ...]]:
    """Strictly increasing r-subsets of 1..n."""
    return combinations(range(1, n + 1), r)
