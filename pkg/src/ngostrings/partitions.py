"""Integer partitions and their grouping combinatorics.

Everything downstream is indexed by partitions of the rank n: spectral dual
graphs, strata of the Hitchin base, and the string-rank recursion.  This
module enumerates partitions, filters the degree-admissible subset (parts
n_i with n_i*d/n integral), counts the ways of grouping the labelled parts
of one partition into blocks realizing a coarser one, and evaluates the
symmetric-group constants attached to a partition: the generic local-system
rank (r-1)! and the stabilizer order prod_i alpha_i!.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache


class Partition:
    """A partition of a positive integer, stored weakly decreasing.

    ``parts`` is the tuple of parts, ``n`` their sum, ``r`` the number of
    parts, and ``alpha`` the multiplicity map value -> count.  Instances are
    hashable and compare by their parts tuple, so sorting with
    ``reverse=True`` lists partitions in reverse-lexicographic order, the
    canonical enumeration order used throughout.
    """

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if not parts:
            raise ValueError("a partition needs at least one part")
        if parts[-1] < 1:
            raise ValueError("parts must be positive, got %r" % (parts,))
        self.parts = parts

    @classmethod
    def from_string(cls, text):
        """Parse the serialized form, comma-separated parts like ``"2,1,1"``."""
        pieces = [p.strip() for p in text.split(",") if p.strip()]
        if not pieces:
            raise ValueError("empty partition string %r" % text)
        try:
            return cls(int(p) for p in pieces)
        except ValueError:
            raise ValueError("cannot parse partition from %r" % text) from None

    @property
    def n(self):
        return sum(self.parts)

    @property
    def r(self):
        return len(self.parts)

    @property
    def alpha(self):
        """Multiplicity map: alpha[i] = number of parts equal to i."""
        return Counter(self.parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        return self.parts < other.parts

    def __le__(self, other):
        return self.parts <= other.parts

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return ",".join(str(p) for p in self.parts)

    def __repr__(self):
        return "Partition(%r)" % (list(self.parts),)


@lru_cache(maxsize=None)
def _partition_tuples(n, max_part):
    if n == 0:
        return ((),)
    out = []
    for k in range(min(n, max_part), 0, -1):
        for rest in _partition_tuples(n - k, k):
            out.append((k,) + rest)
    return tuple(out)


def partitions_of(n):
    """All partitions of ``n`` in reverse-lexicographic order.

    The first entry is the one-part partition {n}, the last the all-ones
    partition; the order is deterministic and shared by every table in the
    package.
    """
    if n < 1:
        raise ValueError("n must be a positive integer, got %r" % n)
    return [Partition(t) for t in _partition_tuples(int(n), int(n))]


def admissible_partitions(n, d):
    """Partitions of ``n`` whose every part ``p`` satisfies ``p*d/n`` integral.

    The result depends on ``d`` only through gcd(n, d) and is in bijection
    with the partitions of q = gcd(n, d): the admissible partitions are
    exactly those whose parts are multiples of n/q, so there are p(q) of
    them.  For d = 0 the constraint is vacuous.
    """
    if n < 2:
        raise ValueError("n must be at least 2, got %r" % n)
    return [p for p in partitions_of(n) if all(part * d % n == 0 for part in p.parts)]


def set_partitions(items):
    """Yield every set partition of ``items`` as a list of blocks.

    Blocks keep the input order of their elements and the enumeration order
    is deterministic.  The number of partitions of an n-element set is the
    Bell number B(n).
    """
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def grouping_enumerate(fine, coarse):
    """All ways to group the labelled parts of ``fine`` into blocks realizing ``coarse``.

    The parts of ``fine`` are treated as distinguishable items; a grouping is
    a set partition of them into unordered blocks whose multiset of block
    sums equals ``coarse``.  Each grouping is returned as a list of blocks,
    each block canonicalized as a Partition and the blocks sorted in the
    canonical partition order.  Groupings that look identical after
    canonicalization are still listed once per underlying set partition.

    Items are placed into capacity slots directly rather than by filtering
    all set partitions, so the cost scales with the number of valid
    groupings; slots with equal capacity are opened in a fixed order so
    every unordered grouping appears exactly once.
    """
    if fine.n != coarse.n:
        raise ValueError(
            "partition sums differ: %s sums to %d, %s sums to %d"
            % (fine, fine.n, coarse, coarse.n)
        )
    parts = fine.parts
    k = coarse.r
    remaining = list(coarse.parts)
    blocks = [[] for _ in range(k)]
    out = []

    def place(i):
        if i == len(parts):
            grouping = sorted(
                (Partition(b) for b in blocks),
                key=lambda p: p.parts,
                reverse=True,
            )
            out.append(grouping)
            return
        p = parts[i]
        opened = set()
        for j in range(k):
            if remaining[j] < p:
                continue
            if not blocks[j]:
                # empty slots of equal capacity are interchangeable
                if remaining[j] in opened:
                    continue
                opened.add(remaining[j])
            remaining[j] -= p
            blocks[j].append(p)
            place(i + 1)
            blocks[j].pop()
            remaining[j] += p

    place(0)
    return out


def _blocks_summing(avail, idx, target):
    """Sub-multisets of avail (tuples (value, count), values descending) summing to target.

    Yields (content, remaining) with content a descending tuple of parts and
    remaining the depleted availability list.
    """
    if target == 0:
        yield (), avail
        return
    if idx == len(avail):
        return
    v, c = avail[idx]
    maxtake = min(c, target // v)
    for take in range(maxtake, -1, -1):
        for rest, remaining in _blocks_summing(avail, idx + 1, target - take * v):
            depleted = list(remaining)
            depleted[idx] = (v, c - take)
            yield (v,) * take + rest, tuple(depleted)


def grouping_types(fine, coarse):
    """Groupings of grouping_enumerate aggregated by block content.

    Returns a list of (blocks, count) pairs: ``blocks`` is a tuple of
    Partitions in canonical order (repeats included) describing one multiset
    of block contents, and ``count`` is the number of groupings of the
    labelled parts of ``fine`` realizing exactly those contents, computed by
    the multinomial formula

        count = prod_v alpha_v! / (prod_types (prod_v beta_v!)^c * c!).

    Summing the counts recovers grouping_count.  The number of content types
    stays small even when the number of groupings is astronomically large,
    which is what makes the rank recursion scale.
    """
    if fine.n != coarse.n:
        raise ValueError(
            "partition sums differ: %s sums to %d, %s sums to %d"
            % (fine, fine.n, coarse, coarse.n)
        )
    avail = tuple(sorted(fine.alpha.items(), reverse=True))
    targets = coarse.parts

    def assign(slot, remaining, prev_content):
        if slot == len(targets):
            yield ()
            return
        target = targets[slot]
        for content, depleted in _blocks_summing(remaining, 0, target):
            # equal-capacity slots take contents in nonincreasing order so
            # every multiset of contents appears exactly once
            if slot > 0 and targets[slot - 1] == target and content > prev_content:
                continue
            for rest in assign(slot + 1, depleted, content):
                yield (content,) + rest

    out = []
    numerator = 1
    for _, count in avail:
        numerator *= math.factorial(count)
    for contents in assign(0, avail, None):
        denominator = 1
        for content, repeat in Counter(contents).items():
            inner = 1
            for mult in Counter(content).values():
                inner *= math.factorial(mult)
            denominator *= inner ** repeat * math.factorial(repeat)
        blocks = tuple(
            sorted((Partition(c) for c in contents), key=lambda p: p.parts, reverse=True)
        )
        out.append((blocks, numerator // denominator))
    return out


def grouping_count(fine, coarse):
    """Number of groupings of ``fine``'s labelled parts with block sums ``coarse``."""
    return sum(count for _, count in grouping_types(fine, coarse))


def local_system_rank(p):
    """Rank (r-1)! of the generic local system attached to an r-part partition."""
    return math.factorial(p.r - 1)


def stabilizer_order(p):
    """Order prod_i alpha_i! of the subgroup of S_r stabilizing the partition."""
    out = 1
    for count in p.alpha.values():
        out *= math.factorial(count)
    return out
