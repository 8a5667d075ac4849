"""Boundary strata as modified weight multisets, and the exact pairing.

A stable weighted graph contributes to every pairing only through its
modified weight multiset q = {(g_v, markings_v + degree_v)}, so the
enumeration of strata (``enum_Q``) works directly on candidate multisets
and applies a realizability characterization:

    E = (sum m_i - n)/2 must be a non-negative integer,
    sum g_i + E - k + 1 = g,
    and (k = 1) or (every m_i >= 1 and E >= k - 1).

(The vertex degrees d_i with 1 <= d_i <= m_i summing to 2E, a spanning
tree, and leftover half-edge pairings as loops/multi-edges can always be
chosen under these conditions.)  The characterization is validated against
``enum_Q_bruteforce``, which constructs actual connected multigraphs by
backtracking and never uses the closed form.

``pair_psi`` evaluates <psi(p), q>: the sum over all assignments of the
|p| extra points to the entries of q of the product of per-entry
psi-intersection numbers.  Per-entry dimension budgets prune the sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator

from .intersect import tau_query, tau
from .partitions import Partition, partition
from .pushforward import FormalExpr, to_psi_coordinates

Entry = tuple[int, int]  # (genus, markings + degree)


class UnsupportedGenusError(ValueError):
    pass


@dataclass(frozen=True)
class ThetaMultiset:
    """Modified weight multiset: entries (g_i, m_i) with 2*g_i + m_i > 2."""

    entries: tuple[Entry, ...]

    def __post_init__(self):
        entries = tuple(sorted(self.entries, reverse=True))
        object.__setattr__(self, "entries", entries)
        for g_i, m_i in entries:
            if g_i < 0 or m_i < 0:
                raise ValueError("entry values must be non-negative: %r" % ((g_i, m_i),))
            if 2 * g_i + m_i <= 2:
                raise ValueError("unstable entry %r" % ((g_i, m_i),))

    @property
    def k(self) -> int:
        return len(self.entries)

    def genus_total(self) -> int:
        return sum(g for g, _ in self.entries)

    def marks_total(self) -> int:
        return sum(m for _, m in self.entries)

    def num_edges(self, n: int) -> int:
        diff = self.marks_total() - n
        if diff < 0 or diff % 2:
            raise ValueError("multiset has no integral edge count for n=%d" % n)
        return diff // 2

    def dim(self) -> int:
        return sum(3 * g - 3 + m for g, m in self.entries)

    def sort_key(self) -> tuple:
        return (self.k, self.entries)

    def render(self) -> str:
        return "|".join("(%d,%d)" % e for e in self.entries)

    def __repr__(self) -> str:
        return "ThetaMultiset(%s)" % self.render()


def theta_multiset(entries: Iterable[Entry]) -> ThetaMultiset:
    return ThetaMultiset(tuple(entries))


def parse_multiset(text: str) -> ThetaMultiset:
    """Parse the CLI syntax ``(g,m)|(g,m)|...``."""
    text = text.strip()
    if not text:
        raise ValueError("empty multiset")
    entries = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ValueError("malformed multiset entry %r" % chunk)
        a, b = chunk[1:-1].split(",")
        entries.append((int(a), int(b)))
    return theta_multiset(entries)


@dataclass(frozen=True)
class StableWeightedGraph:
    """Vertices (genus, marking set), edge multiset with self-loops allowed."""

    vertices: tuple[tuple[int, frozenset[int]], ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(
            self, "vertices",
            tuple((g, frozenset(marks)) for g, marks in self.vertices))
        v_count = len(self.vertices)
        marks: list[int] = []
        for g, mark_set in self.vertices:
            if g < 0:
                raise ValueError("vertex genus must be non-negative")
            marks.extend(mark_set)
        n = len(marks)
        if sorted(marks) != list(range(1, n + 1)):
            raise ValueError("marking sets must partition {1..n}")
        for i, j in edges:
            if not (0 <= i < v_count and 0 <= j < v_count):
                raise ValueError("edge endpoint out of range")
        for v in range(v_count):
            g, mark_set = self.vertices[v]
            if 2 * g + len(mark_set) + self.degree(v) <= 2:
                raise ValueError("unstable vertex %d" % v)
        if not self._connected():
            raise ValueError("graph must be connected")

    def degree(self, v: int) -> int:
        return sum((2 if i == j == v else (i == v) + (j == v)) for i, j in self.edges)

    @property
    def n(self) -> int:
        return sum(len(marks) for _, marks in self.vertices)

    def genus(self) -> int:
        return (sum(g for g, _ in self.vertices)
                + len(self.edges) - len(self.vertices) + 1)

    def _connected(self) -> bool:
        v_count = len(self.vertices)
        if v_count == 0:
            return False
        seen = {0}
        frontier = [0]
        adj: dict[int, set[int]] = {v: set() for v in range(v_count)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == v_count


def theta(graph: StableWeightedGraph) -> ThetaMultiset:
    """The modified weight multiset {(g_v, markings_v + degree_v)}."""
    return theta_multiset(
        (g, len(marks) + graph.degree(v))
        for v, (g, marks) in enumerate(graph.vertices))


# ---------------------------------------------------------------------------
# Enumeration of Q(d; g, n)

def _member_of_Q(q: ThetaMultiset, g: int, n: int) -> bool:
    """Realizability characterization (see module docstring)."""
    diff = q.marks_total() - n
    if diff < 0 or diff % 2:
        return False
    edges = diff // 2
    if q.genus_total() + edges - q.k + 1 != g:
        return False
    if q.k == 1:
        return True
    return all(m >= 1 for _, m in q.entries) and edges >= q.k - 1


def in_Q(q: ThetaMultiset, g: int, n: int) -> bool:
    return _member_of_Q(q, g, n)


def enum_Q(d: int, g: int, n: int) -> list[ThetaMultiset]:
    """All modified weight multisets of strata of dimension d in (g, n)."""
    if g < 0 or g > 2:
        raise UnsupportedGenusError("enum_Q supports 0 <= g <= 2, got %d" % g)
    if not (0 <= d <= 3 * g - 3 + n):
        raise ValueError("d must satisfy 0 <= d <= 3g-3+n")
    edges = 3 * g - 3 + n - d
    total_m = n + 2 * edges
    results: set[ThetaMultiset] = set()
    for k in range(max(1, edges + 1 - g), edges + 2):
        sigma = g - edges + k - 1
        if sigma < 0:
            continue
        if k >= 2 and edges < k - 1:
            continue
        min_m = 1 if k >= 2 else 0
        for entries in _entry_multisets(k, sigma, total_m, min_m):
            results.add(theta_multiset(entries))
    return sorted(results, key=ThetaMultiset.sort_key)


def _entry_multisets(k: int, genus_sum: int, marks_sum: int,
                     min_m: int) -> Iterator[tuple[Entry, ...]]:
    """Multisets of k stable entries with prescribed genus and marks totals."""

    def stable(g_i: int, m_i: int) -> bool:
        return 2 * g_i + m_i > 2

    def rec(slots: int, g_left: int, m_left: int,
            bound: Entry, acc: tuple[Entry, ...]) -> Iterator[tuple[Entry, ...]]:
        if slots == 0:
            if g_left == 0 and m_left == 0:
                yield acc
            return
        if m_left < min_m * slots:
            return
        for g_i in range(min(g_left, bound[0]), -1, -1):
            m_max = m_left - min_m * (slots - 1)
            if g_i == bound[0]:
                m_max = min(m_max, bound[1])
            for m_i in range(m_max, min_m - 1, -1):
                if not stable(g_i, m_i):
                    continue
                yield from rec(slots - 1, g_left - g_i, m_left - m_i,
                               (g_i, m_i), acc + ((g_i, m_i),))

    top = (genus_sum, marks_sum)
    yield from rec(k, genus_sum, marks_sum, top, ())


def genus1_q(l: int, marks: Partition) -> ThetaMultiset:
    """The genus-1 stratum families: q_0 and q_l.

    l = 0 gives {(0, n_i+2)}; l >= 1 prepends a genus-1 entry (1, l).
    """
    marks = partition(marks)
    if l < 0:
        raise ValueError("l must be non-negative")
    if l == 0 and len(marks) == 0:
        raise ValueError("q_0 needs at least one part")
    entries = [(0, x + 2) for x in marks]
    if l >= 1:
        entries.append((1, l))
    return theta_multiset(entries)


def p_map(q: ThetaMultiset) -> Partition:
    """The partition {3g_i - 3 + m_i}; zero parts are dropped."""
    parts = []
    for g_i, m_i in q.entries:
        value = 3 * g_i - 3 + m_i
        if value < 0:
            raise ValueError("entry %r has negative dimension" % ((g_i, m_i),))
        if value > 0:
            parts.append(value)
    return partition(parts)


def is_compact_type(q: ThetaMultiset, g: int, n: int) -> bool:
    """True iff the strata underlying q are trees (all genus on vertices)."""
    return q.genus_total() == g and q.num_edges(n) == q.k - 1


def lift_multiset(q0: ThetaMultiset, g: int, n: int) -> ThetaMultiset:
    """Reinterpret a multiset from (0, n+2g) in (g, n) (the gluing lift)."""
    d = q0.dim()
    if not in_Q(q0, 0, n + 2 * g):
        raise ValueError("multiset is not a stratum of dimension %d in (0, %d)"
                         % (d, n + 2 * g))
    lifted = theta_multiset(q0.entries)
    if not in_Q(lifted, g, n):
        raise ValueError("lifted multiset is not realizable in (%d, %d)" % (g, n))
    return lifted


# ---------------------------------------------------------------------------
# Brute-force oracle: enumerate actual connected multigraphs

def enum_Q_bruteforce(d: int, g: int, n: int) -> list[ThetaMultiset]:
    """Oracle for enum_Q: backtracking construction of connected multigraphs.

    Exponential; intended for the validation ranges (edge count <= 8).
    """
    if not (0 <= d <= 3 * g - 3 + n):
        raise ValueError("d must satisfy 0 <= d <= 3g-3+n")
    edges = 3 * g - 3 + n - d
    results: set[ThetaMultiset] = set()
    for k in range(1, edges + 2):
        sigma = g - edges + k - 1
        if sigma < 0:
            continue
        if k == 1:
            degree_seqs = [(2 * edges,)]
        else:
            degree_seqs = [seq for seq in _degree_multisets(2 * edges, k)]
        for degs in degree_seqs:
            if not _has_connected_realization(degs):
                continue
            for decorated in _decorations(degs, sigma, n):
                try:
                    results.add(theta_multiset(decorated))
                except ValueError:
                    continue  # unstable vertex
    return sorted(results, key=ThetaMultiset.sort_key)


def _degree_multisets(total: int, k: int) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing degree sequences of length k, all parts >= 1."""

    def rec(slots: int, left: int, bound: int, acc: tuple[int, ...]):
        if slots == 0:
            if left == 0:
                yield acc
            return
        for v in range(min(bound, left - (slots - 1)), 0, -1):
            yield from rec(slots - 1, left - v, v, acc + (v,))

    yield from rec(k, total, total, ())


def _has_connected_realization(degs: tuple[int, ...]) -> bool:
    """Search for a connected multigraph (loops allowed) with these degrees."""
    k = len(degs)
    if k == 1:
        return degs[0] % 2 == 0
    if sum(degs) % 2:
        return False

    def rec(residual: list[int], chosen: list[tuple[int, int]]) -> bool:
        active = next((v for v in range(k) if residual[v] > 0), None)
        if active is None:
            return _edges_connected(k, chosen)
        for j in range(active + 1, k):
            if residual[j] >= 1:
                residual[active] -= 1
                residual[j] -= 1
                chosen.append((active, j))
                if rec(residual, chosen):
                    return True
                chosen.pop()
                residual[active] += 1
                residual[j] += 1
        if residual[active] >= 2:
            residual[active] -= 2
            chosen.append((active, active))
            if rec(residual, chosen):
                return True
            chosen.pop()
            residual[active] += 2
        return False

    return rec(list(degs), [])


def _edges_connected(k: int, edges: list[tuple[int, int]]) -> bool:
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        parent[find(i)] = find(j)
    return len({find(v) for v in range(k)}) == 1


def _decorations(degs: tuple[int, ...], genus_sum: int, marks_sum: int
                 ) -> Iterator[tuple[Entry, ...]]:
    """All vertex decorations (genus, extra marks) over a degree multiset."""
    classes = [(v, degs.count(v)) for v in sorted(set(degs), reverse=True)]

    def pair_multisets(count: int, g_cap: int, m_cap: int
                       ) -> Iterator[tuple[tuple[tuple[int, int], ...], int, int]]:
        def rec(slots, g_left, m_left, bound, acc):
            if slots == 0:
                yield (acc, g_left, m_left)
                return
            for g_i in range(min(g_left, bound[0]), -1, -1):
                m_max = m_left if g_i < bound[0] else min(m_left, bound[1])
                for m_i in range(m_max, -1, -1):
                    yield from rec(slots - 1, g_left - g_i, m_left - m_i,
                                   (g_i, m_i), acc + ((g_i, m_i),))
        yield from rec(count, g_cap, m_cap, (g_cap, m_cap), ())

    def rec_classes(idx: int, g_left: int, m_left: int, acc: tuple[Entry, ...]
                    ) -> Iterator[tuple[Entry, ...]]:
        if idx == len(classes):
            if g_left == 0 and m_left == 0:
                yield acc
            return
        degree, count = classes[idx]
        for pairs, g_rem, m_rem in pair_multisets(count, g_left, m_left):
            entries = tuple((g_i, m_i + degree) for g_i, m_i in pairs)
            yield from rec_classes(idx + 1, g_rem, m_rem, acc + entries)

    yield from rec_classes(0, genus_sum, marks_sum, ())


# ---------------------------------------------------------------------------
# The pairing

def pair_psi(p: Partition, q: ThetaMultiset, g: int, n: int) -> Fraction:
    """<psi(p), q>: sum over assignments of the |p| extra points to the
    entries of q of the product of per-entry intersection numbers."""
    p = partition(p)
    d = sum(p)
    if q.dim() != d:
        raise ValueError("dimension mismatch: d(p)=%d but dim(q)=%d" % (d, q.dim()))
    if not in_Q(q, g, n):
        raise ValueError("multiset %s is not a stratum in (g,n)=(%d,%d)"
                         % (q.render(), g, n))
    entries = q.entries
    budgets = [3 * g_i - 3 + m_i for g_i, m_i in entries]

    def rec(idx: int, remaining: tuple[int, ...]) -> Fraction:
        if idx == len(entries):
            return Fraction(1) if not remaining else Fraction(0)
        g_i, m_i = entries[idx]
        total = Fraction(0)
        for sub, count, rest in _budget_splits(remaining, budgets[idx]):
            exps = tuple(sorted([x + 1 for x in sub] + [0] * m_i, reverse=True))
            value = tau(tau_query(g_i, exps))
            if value:
                tail = rec(idx + 1, rest)
                if tail:
                    total += count * value * tail
        return total

    return rec(0, p)


def _budget_splits(remaining: tuple[int, ...], budget: int
                   ) -> Iterator[tuple[tuple[int, ...], int, tuple[int, ...]]]:
    """Distinct sub-multisets of ``remaining`` summing to ``budget``, with the
    number of point-assignments realizing each and the complement."""
    values = sorted(set(remaining), reverse=True)
    counts = [remaining.count(v) for v in values]

    def rec(idx: int, left: int, acc: tuple[int, ...], ways: int):
        if left == 0:
            rest = list(remaining)
            for x in acc:
                rest.remove(x)
            yield (acc, ways, tuple(rest))
            return
        if idx == len(values):
            return
        v, c = values[idx], counts[idx]
        for take in range(min(c, left // v), -1, -1):
            yield from rec(idx + 1, left - take * v, acc + (v,) * take,
                           ways * comb(c, take))

    yield from rec(0, budget, (), 1)


def pair_formal(expr: FormalExpr, basis: str, q: ThetaMultiset,
                g: int, n: int) -> Fraction:
    """Linear extension of the pairing to kappa- and bracket-basis expressions."""
    psi_expr = to_psi_coordinates(expr, basis, c0=2 * g - 2 + n)
    total = Fraction(0)
    for p, a in psi_expr.coeffs.items():
        total += a * pair_psi(p, q, g, n)
    return total


# ---------------------------------------------------------------------------
# Kappa-trivial cycles

@dataclass(frozen=True)
class KTrivialCycle:
    """A rational combination of strata asserted to pair to zero with every
    kappa class of the ambient degree."""

    terms: tuple[tuple[ThetaMultiset, Fraction], ...]
    ambient: tuple[int, int, int]  # (d, g, n)

    def __post_init__(self):
        d, g, n = self.ambient
        cleaned = tuple(sorted(
            ((q, Fraction(c)) for q, c in self.terms if c != 0),
            key=lambda item: item[0].sort_key()))
        object.__setattr__(self, "terms", cleaned)
        for q, _ in cleaned:
            if q.dim() != d:
                raise ValueError("term %s has dimension %d, ambient wants %d"
                                 % (q.render(), q.dim(), d))
            if not in_Q(q, g, n):
                raise ValueError("term %s is not a stratum in (g,n)=(%d,%d)"
                                 % (q.render(), g, n))


def ktrivial_cycle(terms: dict[ThetaMultiset, Fraction],
                   ambient: tuple[int, int, int]) -> KTrivialCycle:
    return KTrivialCycle(tuple(terms.items()), ambient)
