"""Exact psi-intersection numbers on moduli of stable curves.

``tau`` computes <tau_{a_1} ... tau_{a_n}>_g over Q.  Strategy:

* dimension filter: 0 unless sum(a_i) = 3g-3+n;
* string equation removes an exponent-0 insertion, dilaton removes an
  exponent-1 insertion (these two come first, which keeps the memo table
  small and makes each step independently testable);
* genus 0 then falls to the closed form (n-3)!/prod(a_i!);
* genus >= 1 applies the KdV/Virasoro recursion on the largest exponent,
  reducing either the number of insertions or the genus.

Base cases: <tau_0^3>_0 = 1 and <tau_1>_1 = 1/24.

Values are memoized in-process; the memo can be loaded from / saved to a
plain-text cache file (one ``g|a1,...,an|num/den`` record per line).
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator

CACHE_ENV_VAR = "KAPPA_CACHE_DIR"
CACHE_FILENAME = "tau_cache.txt"


class UnstableQueryError(ValueError):
    """Raised for top-level queries on spaces that do not exist."""


@dataclass(frozen=True)
class TauQuery:
    """A genus together with a descending multiset of psi exponents."""

    genus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents",
                           tuple(sorted(self.exponents, reverse=True)))
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be non-negative")

    @property
    def n(self) -> int:
        return len(self.exponents)

    def dimension_matched(self) -> bool:
        return sum(self.exponents) == 3 * self.genus - 3 + self.n


def tau_query(genus: int, exponents: Iterable[int]) -> TauQuery:
    return TauQuery(genus, tuple(exponents))


_memo: dict[tuple[int, tuple[int, ...]], Fraction] = {}
_memo_lock = threading.Lock()


def _double_factorial(n: int) -> int:
    # (-1)!! = 1 by convention
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def genus0_closed(exponents: Iterable[int]) -> Fraction:
    """(n-3)!/prod(a_i!) when sum(a_i) = n-3, else 0."""
    exps = tuple(exponents)
    if len(exps) < 3:
        raise UnstableQueryError("genus-0 query needs at least 3 insertions")
    if sum(exps) != len(exps) - 3:
        return Fraction(0)
    denom = 1
    for a in exps:
        denom *= factorial(a)
    return Fraction(factorial(len(exps) - 3), denom)


def tau(query: TauQuery) -> Fraction:
    """The intersection number for ``query``; exact 0 on dimension mismatch."""
    g, exps = query.genus, query.exponents
    if len(exps) < 1 or (g == 0 and len(exps) < 3):
        raise UnstableQueryError(
            "unstable query: genus %d with %d insertions" % (g, len(exps)))
    return _tau(g, exps)


def _tau(g: int, exps: tuple[int, ...]) -> Fraction:
    n = len(exps)
    if sum(exps) != 3 * g - 3 + n:
        return Fraction(0)
    key = (g, exps)
    cached = _memo.get(key)
    if cached is not None:
        return cached

    if g == 0 and n == 3:
        value = Fraction(1)  # exps is (0,0,0) once the dimension matches
    elif g == 1 and exps == (1,):
        value = Fraction(1, 24)
    elif exps[-1] == 0:
        value = _string(g, exps)
    elif exps[-1] == 1:
        value = _dilaton(g, exps)
    elif g == 0:
        value = genus0_closed(exps)
    else:
        value = _kdv(g, exps)

    with _memo_lock:
        _memo[key] = value
    return value


def _string(g: int, exps: tuple[int, ...]) -> Fraction:
    rest = exps[:-1]  # exponents sorted descending, so a 0 sits at the end
    total = Fraction(0)
    for j, a in enumerate(rest):
        if a >= 1:
            total += _tau(g, _canon(rest[:j] + (a - 1,) + rest[j + 1:]))
    return total


def _dilaton(g: int, exps: tuple[int, ...]) -> Fraction:
    rest = exps[:-1]
    return (2 * g - 2 + len(rest)) * _tau(g, rest)


def _kdv(g: int, exps: tuple[int, ...]) -> Fraction:
    """Genus-reducing recursion on the largest exponent (all exponents >= 2)."""
    k = exps[0] - 1
    rest = exps[1:]
    total = Fraction(0)
    for j, a in enumerate(rest):
        coeff = Fraction(_double_factorial(2 * (k + a) + 1),
                         _double_factorial(2 * a - 1))
        total += coeff * _tau(g, _canon(rest[:j] + (a + k,) + rest[j + 1:]))
    boundary = Fraction(0)
    for b in range(k):
        c = k - 1 - b
        weight = _double_factorial(2 * b + 1) * _double_factorial(2 * c + 1)
        boundary += weight * _tau(g - 1, _canon(rest + (b, c)))
        for part, count, complement in _split_multisets(rest):
            for g1 in range(g + 1):
                left = _tau_or_zero(g1, _canon(part + (b,)))
                if left == 0:
                    continue
                right = _tau_or_zero(g - g1, _canon(complement + (c,)))
                boundary += weight * count * left * right
    total += boundary / 2
    return total / _double_factorial(2 * k + 3)


def _tau_or_zero(g: int, exps: tuple[int, ...]) -> Fraction:
    # interior of the recursion: unstable factors contribute nothing
    if len(exps) < 1 or (g == 0 and len(exps) < 3):
        return Fraction(0)
    return _tau(g, exps)


def _canon(exps: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(exps, reverse=True))


def _split_multisets(exps: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], int, tuple[int, ...]]]:
    """Distinct sub-multisets with the number of position-subsets realizing each.

    The insertions are distinguishable markings, so each distinct multiset
    split is weighted by a product of binomial coefficients.
    """
    values = sorted(set(exps), reverse=True)
    counts = [exps.count(v) for v in values]

    def rec(idx: int, part: tuple[int, ...], count: int):
        if idx == len(values):
            complement = _multiset_diff(exps, part)
            yield (part, count, complement)
            return
        v, c = values[idx], counts[idx]
        for take in range(c + 1):
            yield from rec(idx + 1, part + (v,) * take, count * _binom(c, take))

    yield from rec(0, (), 1)


def _binom(n: int, k: int) -> int:
    return factorial(n) // (factorial(k) * factorial(n - k))


def _multiset_diff(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = list(a)
    for x in b:
        out.remove(x)
    return tuple(out)


# ---------------------------------------------------------------------------
# Disk cache

def default_cache_dir() -> str | None:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return env
    home = os.path.expanduser("~")
    if home and home != "~":
        return os.path.join(home, ".cache", "kapparing")
    return None


def cache_path(cache_dir: str | None = None) -> str | None:
    directory = cache_dir or default_cache_dir()
    if directory is None:
        return None
    return os.path.join(directory, CACHE_FILENAME)


def load_cache(cache_dir: str | None = None) -> int:
    """Merge records from the cache file into the memo; returns records read."""
    path = cache_path(cache_dir)
    if path is None or not os.path.exists(path):
        return 0
    loaded = 0
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            g_text, exps_text, value_text = line.split("|")
            g = int(g_text)
            exps = _canon(int(x) for x in exps_text.split(",") if x != "")
            num_text, den_text = value_text.split("/")
            value = Fraction(int(num_text), int(den_text))
            with _memo_lock:
                _memo[(g, exps)] = value
            loaded += 1
    return loaded


def save_cache(cache_dir: str | None = None) -> int:
    """Write the memo to the cache file (records sorted lexicographically)."""
    path = cache_path(cache_dir)
    if path is None:
        return 0
    os.makedirs(os.path.dirname(path), exist_ok=True)
    lines = []
    with _memo_lock:
        items = list(_memo.items())
    for (g, exps), value in items:
        lines.append("%d|%s|%d/%d" % (g, ",".join(str(x) for x in exps),
                                      value.numerator, value.denominator))
    lines.sort()
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + ("\n" if lines else ""))
    return len(lines)


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()
