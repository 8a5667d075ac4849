"""Tautological classes as exact polynomials in kappa variables.

The engine represents a class on the total space of an iterated forgetful
map as a ``MixedPoly``: a sum of (kappa-monomial) * (psi-monomial in the
forgettable markings) terms.  ``MixedPoly.forget_one`` pushes forward
along forgetting the last forgettable marking:

* each kappa variable k_a on the source splits as k_a + psi^a of the
  forgotten point (comparison of kappa classes under pullback);
* a leftover psi power t >= 1 at the forgotten point becomes k_{t-1} on
  the base, with k_0 folded in as the scalar 2g-2+(remaining markings);
* a leftover psi power t = 0 triggers the class-level string rule: sum
  over the remaining forgettable psi variables with positive exponent,
  decrementing that exponent (no positive exponent: the term dies).

``psi_class`` and ``bracket`` are thin wrappers that seed a MixedPoly and
forget everything.  ``psi_class_oracle`` is an independent derivation
(sum over permutations, one kappa factor per cycle) used by the tests to
guard the string-rule bookkeeping; production code never calls it.

kappa_0 is never stored as a variable, so a KappaPoly is tagged with its
ambient (g, n) and classes from different ambients must not be compared.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator

from .exactalg import LabeledMatrix, LabeledVector, Rational, solve_linear
from .partitions import Partition, order_key, partitions_of

KappaMonomial = tuple[int, ...]  # descending positive kappa indices; () = 1


class KappaPoly:
    """Exact-rational polynomial in kappa_1, kappa_2, ... on a fixed ambient."""

    __slots__ = ("terms", "ambient")

    def __init__(self, terms: dict[KappaMonomial, Rational],
                 ambient: tuple[int, int] | None):
        self.terms = {m: Fraction(c) for m, c in terms.items() if c != 0}
        self.ambient = ambient

    @staticmethod
    def zero(ambient=None) -> "KappaPoly":
        return KappaPoly({}, ambient)

    def __add__(self, other: "KappaPoly") -> "KappaPoly":
        self._check_ambient(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return KappaPoly(terms, self.ambient or other.ambient)

    def scale(self, factor: Rational) -> "KappaPoly":
        return KappaPoly({m: c * factor for m, c in self.terms.items()}, self.ambient)

    def coefficient(self, monomial: KappaMonomial) -> Rational:
        return self.terms.get(tuple(sorted(monomial, reverse=True)), Fraction(0))

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self, degree: int) -> bool:
        return self.degrees() <= {degree}

    def _check_ambient(self, other: "KappaPoly") -> None:
        if (self.ambient is not None and other.ambient is not None
                and self.ambient != other.ambient):
            raise ValueError("cannot combine classes from different ambient spaces")

    def __eq__(self, other) -> bool:
        return (isinstance(other, KappaPoly) and self.ambient == other.ambient
                and self.terms == other.terms)

    def render(self) -> str:
        """CLI rendering, terms sorted by order_key of the index partition."""
        if not self.terms:
            return "0"
        pieces = []
        for mono in sorted(self.terms, key=order_key):
            coeff = self.terms[mono]
            if mono:
                body = "*".join(
                    "k%d" % v if e == 1 else "k%d^%d" % (v, e)
                    for v, e in _monomial_powers(mono))
            else:
                body = "1"
            pieces.append("%s*%s" % (coeff, body))
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return "KappaPoly(%s @ %r)" % (self.render(), self.ambient)


def _monomial_powers(mono: KappaMonomial) -> list[tuple[int, int]]:
    return [(v, mono.count(v)) for v in sorted(set(mono))]


@dataclass(frozen=True)
class FormalExpr:
    """A formal rational combination of degree-d partitions."""

    coeffs: dict[Partition, Rational]
    degree: int

    def __post_init__(self):
        clean = {p: Fraction(c) for p, c in self.coeffs.items() if c != 0}
        object.__setattr__(self, "coeffs", clean)
        for p in clean:
            if sum(p) != self.degree:
                raise ValueError("partition %r does not have degree %d" % (p, self.degree))

    @staticmethod
    def unit(p: Partition) -> "FormalExpr":
        return FormalExpr({tuple(p): Fraction(1)}, sum(p))


class MixedPoly:
    """Intermediate pushforward state (internal representation).

    ``terms`` maps (kappa monomial, psi exponent vector over the forgettable
    markings) to a coefficient.  The ambient space carries ``base_markings``
    permanent markings plus ``len(exps)`` forgettable ones.
    """

    __slots__ = ("terms", "genus", "base_markings", "num_forgettable")

    def __init__(self, terms: dict[tuple[KappaMonomial, tuple[int, ...]], Rational],
                 genus: int, base_markings: int, num_forgettable: int):
        self.terms = {k: Fraction(v) for k, v in terms.items() if v != 0}
        self.genus = genus
        self.base_markings = base_markings
        self.num_forgettable = num_forgettable

    def forget_one(self) -> "MixedPoly":
        """Push forward along forgetting the last forgettable marking."""
        if self.num_forgettable < 1:
            raise ValueError("no forgettable marking left")
        remaining = self.base_markings + self.num_forgettable - 1
        kappa0 = 2 * self.genus - 2 + remaining
        new_terms: dict[tuple[KappaMonomial, tuple[int, ...]], Fraction] = {}

        def put(kmono, exps, coeff):
            key = (kmono, exps)
            new_terms[key] = new_terms.get(key, Fraction(0)) + coeff

        for (kmono, exps), coeff in self.terms.items():
            t0, others = exps[-1], exps[:-1]
            for sub_sum, remaining_mono, count in _kappa_splits(kmono):
                t = t0 + sub_sum
                c = coeff * count
                if t >= 2:
                    put(tuple(sorted(remaining_mono + (t - 1,), reverse=True)),
                        others, c)
                elif t == 1:
                    put(remaining_mono, others, c * kappa0)
                else:
                    for j, e in enumerate(others):
                        if e >= 1:
                            put(remaining_mono,
                                others[:j] + (e - 1,) + others[j + 1:], c)
        return MixedPoly(new_terms, self.genus, self.base_markings,
                         self.num_forgettable - 1)

    def to_kappa(self) -> KappaPoly:
        if self.num_forgettable != 0:
            raise ValueError("forgettable markings remain")
        return KappaPoly({kmono: c for (kmono, _), c in self.terms.items()},
                         (self.genus, self.base_markings))


@functools.lru_cache(maxsize=None)
def _kappa_splits_cached(kmono: KappaMonomial):
    values = sorted(set(kmono), reverse=True)
    counts = [kmono.count(v) for v in values]
    out = []

    def rec(idx, taken_sum, kept, count):
        if idx == len(values):
            out.append((taken_sum, tuple(kept), count))
            return
        v, c = values[idx], counts[idx]
        for take in range(c + 1):
            rec(idx + 1, taken_sum + take * v, kept + [v] * (c - take),
                count * comb(c, take))

    rec(0, 0, [], 1)
    return tuple(out)


def _kappa_splits(kmono: KappaMonomial):
    """Expansion of prod(k_a + psi^a): (psi-power sum, kept monomial, multiplicity)."""
    if not kmono:
        return ((0, (), 1),)
    return _kappa_splits_cached(kmono)


def pushforward_psi_monomial(exponents: Iterable[int], g: int, n: int) -> KappaPoly:
    """Pushforward of prod psi_{n+i}^{e_i} along forgetting all len(e) points."""
    exps = tuple(exponents)
    return _pushforward_cached(exps, g, n)


@functools.lru_cache(maxsize=None)
def _pushforward_cached(exps: tuple[int, ...], g: int, n: int) -> KappaPoly:
    poly = MixedPoly({((), exps): Fraction(1)}, g, n, len(exps))
    while poly.num_forgettable:
        poly = poly.forget_one()
    return poly.to_kappa()


def psi_class(p: Partition, g: int, n: int) -> KappaPoly:
    """The pushforward of prod psi^{p_i+1} along forgetting |p| points."""
    _check_stable(g, n)
    return pushforward_psi_monomial(tuple(x + 1 for x in p), g, n)


def psi_class_oracle(p: Partition) -> KappaPoly:
    """Independent cycle-sum derivation: sum over permutations of S_m of the
    monomial with one kappa_{sum of cycle} factor per cycle.

    Test oracle only; ambient-free (the expansion has no kappa_0 term).
    """
    m = len(p)
    terms: dict[KappaMonomial, Fraction] = {}
    for perm in itertools.permutations(range(m)):
        mono = tuple(sorted((sum(p[i] for i in cycle) for cycle in _cycles(perm)),
                            reverse=True))
        terms[mono] = terms.get(mono, Fraction(0)) + 1
    return KappaPoly(terms, None)


def _cycles(perm: tuple[int, ...]) -> Iterator[list[int]]:
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = perm[i]
        yield cycle


def bracket(p: Partition, j: int, g: int, n: int) -> KappaPoly:
    """Degree-j part of the pushforward of prod 1/(1 - p_i psi)."""
    _check_stable(g, n)
    if j < 0:
        return KappaPoly.zero((g, n))
    ell = len(p)
    if ell == 0:
        # empty product pushes forward along the identity
        terms = {(): Fraction(1)} if j == 0 else {}
        return KappaPoly(terms, (g, n))
    # the pushforward only sees the exponent multiset; group compositions
    weights: dict[tuple[int, ...], Fraction] = {}
    for exps in _weak_compositions(j + ell, ell):
        factor = Fraction(1)
        for base, e in zip(p, exps):
            factor *= Fraction(base) ** e
        key = tuple(sorted(exps, reverse=True))
        weights[key] = weights.get(key, Fraction(0)) + factor
    total: dict[KappaMonomial, Fraction] = {}
    for key, factor in weights.items():
        if factor == 0:
            continue
        for mono, c in pushforward_psi_monomial(key, g, n).terms.items():
            total[mono] = total.get(mono, Fraction(0)) + factor * c
    return KappaPoly(total, (g, n))


def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def evaluate_formal(expr: FormalExpr, via: str, g: int, n: int) -> KappaPoly:
    """Linear extension of the chosen basis map (psi | kappa | bracket)."""
    total = KappaPoly.zero((g, n))
    for p, a in expr.coeffs.items():
        if via == "psi":
            cls = psi_class(p, g, n)
        elif via == "kappa":
            cls = KappaPoly({tuple(p): Fraction(1)}, (g, n))
        elif via == "bracket":
            cls = bracket(p, expr.degree, g, n)
        else:
            raise ValueError("via must be one of psi, kappa, bracket")
        total = total + cls.scale(a)
    return total


def change_basis(d: int, source: str, c0: int | None = None) -> LabeledMatrix:
    """Matrix expressing each source-basis class (psi or bracket) over the
    kappa-monomial basis; degree-d monomials are indexed by partitions of d.

    Rows: source partitions.  Columns: kappa-monomial partitions.  The psi
    matrix does not depend on the ambient; the bracket matrix depends on it
    only through c0 = 2g-2+n (a positive integer).
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    parts = partitions_of(d)
    if source == "psi":
        expansions = {p: psi_class(p, 0, 3) for p in parts}
    elif source == "bracket":
        if c0 is None or c0 < 1:
            raise ValueError("bracket basis change needs an integer c0 = 2g-2+n >= 1")
        expansions = {p: bracket(p, d, 0, c0 + 2) for p in parts}
    else:
        raise ValueError("source must be 'psi' or 'bracket'")
    return LabeledMatrix.from_function(
        parts, parts, lambda p, q: expansions[p].coefficient(q))


def to_psi_coordinates(expr: FormalExpr, via: str, c0: int | None = None) -> FormalExpr:
    """Rewrite a kappa- or bracket-basis expression in the psi basis.

    Solves P^T b = (kappa coordinates of the expression); exact.
    """
    if via == "psi":
        return expr
    d = expr.degree
    parts = partitions_of(d)
    if via == "kappa":
        kappa_coords = {p: expr.coeffs.get(p, Fraction(0)) for p in parts}
    elif via == "bracket":
        q_matrix = change_basis(d, "bracket", c0)
        kappa_coords = {
            q: sum((expr.coeffs.get(p, Fraction(0)) * q_matrix.entry(p, q)
                    for p in parts), Fraction(0))
            for q in parts}
    else:
        raise ValueError("via must be one of psi, kappa, bracket")
    p_matrix = change_basis(d, "psi")
    rhs = LabeledVector(parts, [kappa_coords[q] for q in parts])
    solution = solve_linear(p_matrix.transpose(), rhs)
    if solution is None:
        raise ArithmeticError("psi basis-change matrix is singular")  # Lemma-level invariant
    return FormalExpr({p: solution[p] for p in parts}, d)


def _check_stable(g: int, n: int) -> None:
    if 2 * g - 2 + n <= 0:
        raise ValueError("unstable ambient space: (g, n) = (%d, %d)" % (g, n))
