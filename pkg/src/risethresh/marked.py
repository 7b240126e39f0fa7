"""The marked multiset D with budget domination and tightness queries.

Domination: for every member size x, the fraction of members >= x stays
at or below mark_budget(x). Ranks only change at the first occurrence of
each distinct value, so checks walk ascending run starts. Per-call cost is
O(|D|); marking attempts are bounded by the stream length.
"""

import bisect

from .curves import MEDIUM_MIN, mark_budget


def _validate_medium(size):
    if not MEDIUM_MIN <= size <= 0.5:
        raise ValueError("marked sizes must lie in [MEDIUM_MIN, 1/2], got %r" % (size,))


def _dominated(sizes, n):
    # sizes ascending; check count(>= v)/n <= mark_budget(v) at each run start
    m = len(sizes)
    for i in range(m):
        if i == 0 or sizes[i] != sizes[i - 1]:
            if (m - i) / n > mark_budget(sizes[i]):
                return False
    return True


class MarkedSet:
    """Multiset of marked medium sizes for a run with n bins."""

    def __init__(self, n):
        if not isinstance(n, int) or n < 1:
            raise ValueError("bin count must be a positive integer, got %r" % (n,))
        self.n = n
        self._sizes = []  # ascending

    def __len__(self):
        return len(self._sizes)

    @property
    def sizes(self):
        return tuple(self._sizes)

    def load(self):
        return sum(self._sizes)

    def dominated(self):
        return _dominated(self._sizes, self.n)

    def within_budget(self, candidate):
        """Would the set stay dominated after inserting candidate?"""
        _validate_medium(candidate)
        trial = list(self._sizes)
        bisect.insort(trial, candidate)
        return _dominated(trial, self.n)

    def insert(self, size):
        """Insert a size; refuses an insertion that breaks domination."""
        _validate_medium(size)
        bisect.insort(self._sizes, size)
        if not _dominated(self._sizes, self.n):
            self._sizes.remove(size)
            raise ValueError("insertion of %r would break the mark budget" % (size,))

    def count_at_least(self, x):
        return len(self._sizes) - bisect.bisect_left(self._sizes, x)

    def min_tight(self):
        """Smallest member on the verge of the budget, or None.

        A member v is tight when count(>= v)/n > mark_budget(v) - 1/n.
        """
        m = len(self._sizes)
        for i in range(m):
            v = self._sizes[i]
            if i == 0 or v != self._sizes[i - 1]:
                if (m - i) / self.n > mark_budget(v) - 1.0 / self.n:
                    return v
        return None
