"""Integer partition and composition combinatorics.

Partitions index everything in this package: kappa monomials, psi-class
pushforwards, boundary-stratum dimensions, rank formulas.  A partition is
stored as a weakly decreasing tuple of positive integers; the empty tuple
is the (valid) partition of 0.  Compositions keep their order.

The total order used throughout (``order_key``) refines the partial order
"a refines b" (b is obtained by merging parts of a): more parts sorts
first, ties broken lexicographically on the part sequence.  Merging parts
strictly shortens a partition, so the key is automatically compatible
with refinement.
"""

from __future__ import annotations

import functools
import math
from typing import Iterable, Iterator

Partition = tuple[int, ...]
Composition = tuple[int, ...]


def partition(parts: Iterable[int]) -> Partition:
    """Canonicalize ``parts`` into a weakly decreasing tuple of positive ints."""
    p = tuple(sorted(parts, reverse=True))
    if p and p[-1] < 1:
        raise ValueError("partition parts must be positive integers, got %r" % (p,))
    if any(not isinstance(x, int) for x in p):
        raise ValueError("partition parts must be integers, got %r" % (p,))
    return p


def parse_partition(text: str) -> Partition:
    """Parse the CLI syntax: comma-separated parts, empty string = empty partition."""
    text = text.strip()
    if not text:
        return ()
    try:
        parts = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError("malformed partition %r (expected e.g. '3,1,1')" % text)
    return partition(parts)


def format_partition(p: Partition) -> str:
    return ",".join(str(x) for x in p)


def order_key(p: Partition) -> tuple:
    """Total-order key on P(d): length descending, then lexicographic.

    If ``a`` strictly refines ``b`` then ``order_key(a) < order_key(b)``.
    """
    return (-len(p), p)


def partitions_of(d: int) -> list[Partition]:
    """All partitions of ``d``, each once, sorted by ``order_key``."""
    if d < 0:
        raise ValueError("d must be non-negative")
    return sorted(_gen_partitions(d, d), key=order_key)


@functools.lru_cache(maxsize=None)
def _gen_partitions(d: int, max_part: int) -> tuple[Partition, ...]:
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in _gen_partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def bounded_partitions(d: int, i: int, k: int) -> list[Partition]:
    """The set P_i(d,k): partitions of d with at most k parts exceeding i.

    ``bounded_partitions(d, 0, k)`` is the alias P(d,k): at most k parts.
    """
    if d < 0 or i < 0:
        raise ValueError("d and i must be non-negative")
    return [p for p in partitions_of(d) if sum(1 for x in p if x > i) <= k]


def count_bounded(d: int, i: int, k: int) -> int:
    return len(bounded_partitions(d, i, k))


def at_most_k_parts(d: int, k: int) -> list[Partition]:
    """The set P(d,k) under the at-most-k-parts reading."""
    return bounded_partitions(d, 0, k)


def exact_length_partitions(d: int, k: int) -> list[Partition]:
    """The set P(d;k): partitions of d into precisely k parts."""
    if d < 0 or k < 0:
        raise ValueError("d and k must be non-negative")
    return [p for p in partitions_of(d) if len(p) == k]


@functools.lru_cache(maxsize=None)
def refines(a: Partition, b: Partition) -> bool:
    """True iff ``b`` can be obtained by grouping parts of ``a`` and summing groups.

    Every partition refines itself.  Backtracking over groupings; desk-scale
    sizes only (parts <= 12).
    """
    if sum(a) != sum(b):
        return False
    if not b:
        return not a
    target = b[0]
    rest_b = b[1:]
    seen = set()
    for group in _submultisets_summing_to(a, target):
        remainder = _multiset_minus(a, group)
        if remainder in seen:
            continue
        seen.add(remainder)
        if refines(remainder, rest_b):
            return True
    return False


def _submultisets_summing_to(a: Partition, target: int) -> Iterator[Partition]:
    """Distinct sub-multisets of ``a`` with the given sum, as sorted tuples."""
    values = sorted(set(a), reverse=True)
    counts = {v: a.count(v) for v in values}

    def rec(idx: int, remaining: int, chosen: list[int]) -> Iterator[Partition]:
        if remaining == 0:
            yield tuple(chosen)
            return
        if idx >= len(values):
            return
        v = values[idx]
        max_take = min(counts[v], remaining // v)
        for take in range(max_take, -1, -1):
            chosen.extend([v] * take)
            yield from rec(idx + 1, remaining - take * v, chosen)
            if take:
                del chosen[-take:]

    yield from rec(0, target, [])


def _multiset_minus(a: Partition, b: Partition) -> Partition:
    out = list(a)
    for x in b:
        out.remove(x)
    return tuple(out)


def aut(p: Partition) -> int:
    """Order of the automorphism group: product of multiplicity factorials."""
    result = 1
    for v in set(p):
        result *= math.factorial(p.count(v))
    return result


def minus(p: Partition) -> Partition:
    """Drop all parts equal to 1 and subtract 1 from each remaining part."""
    return tuple(x - 1 for x in p if x > 1)


def pad(p: Partition, l: int) -> Partition:
    """Append ``l`` parts equal to 1."""
    if l < 0:
        raise ValueError("l must be non-negative")
    return p + (1,) * l


def hat(p: Partition) -> Partition:
    """Add 1 to every part, then pad with ones to exactly sum(p) parts.

    The result is a partition of 2*sum(p) with exactly sum(p) parts.
    """
    return partition([x + 1 for x in p] + [1] * (sum(p) - len(p)))


def compositions_of(l: int) -> list[Composition]:
    """All ordered sequences of positive integers summing to ``l`` (2^(l-1) of them)."""
    if l < 1:
        raise ValueError("l must be positive")
    out: list[Composition] = []

    def rec(remaining: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for first in range(1, remaining + 1):
            rec(remaining - first, prefix + (first,))

    rec(l, ())
    return out


def multinomial(total: int, parts: Iterable[int]) -> int:
    """total! / prod(parts!); the parts must sum to ``total``."""
    parts = list(parts)
    if sum(parts) != total:
        raise ValueError("multinomial parts must sum to the total")
    result = math.factorial(total)
    for x in parts:
        result //= math.factorial(x)
    return result
