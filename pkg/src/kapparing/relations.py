"""Relation families: kernel classes over compact type and the genus-1
kappa-trivial stratum combinations.

``injection_coeff`` evaluates the closed-form coefficients

    (-1)^(l+len(p)) / Aut(p) * prod p_i^(p_i-1)/p_i!
        * sum over injections phi of prod p_{phi(i)}^(1 - nn_i)

whose matrix over (long partitions) x P(d) has full row rank; the formal
combinations ``kernel_class`` built from them pair to zero against every
genus-0 stratum (and, in higher genus, against compact type).

The three kappa-trivial constructors return explicit rational combinations
of genus-1 strata multisets; ``verify_ktrivial`` checks the defining
property exactly, by pairing against every psi(p) of the right degree
(sufficient because the psi classes span the degree-d kappa classes).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial
from typing import Iterable

from . import exactalg
from .exactalg import LabeledMatrix
from .partitions import (Partition, aut, compositions_of, hat, minus,
                         multinomial, pad, partition, partitions_of)
from .pushforward import FormalExpr
from .strata import (KTrivialCycle, ThetaMultiset, genus1_q, ktrivial_cycle,
                     pair_psi)


def injection_coeff(nn: Partition, l: int, p: Partition) -> Fraction:
    """The relation coefficient attached to (nn, l) at the partition p."""
    if l < 1:
        raise ValueError("l must be a positive integer")
    m, ell = len(nn), len(p)
    if m > ell:
        return Fraction(0)
    injection_sum = Fraction(0)
    for targets in _injections(ell, m):
        term = Fraction(1)
        for i, t in enumerate(targets):
            term *= Fraction(p[t]) ** (1 - nn[i])
        injection_sum += term
    prefactor = Fraction((-1) ** (l + ell), aut(p))
    for part in p:
        prefactor *= Fraction(part ** (part - 1), factorial(part))
    return prefactor * injection_sum


def _injections(ell: int, m: int) -> Iterable[tuple[int, ...]]:
    if m == 0:
        return [()]
    return itertools.permutations(range(ell), m)


def kernel_level(m: Partition, g: int, n: int) -> int:
    """l = |m| - (2g-2+n-d); positive exactly on the long partitions."""
    d = sum(m)
    return len(m) - (2 * g - 2 + n - d)


def kernel_class(m: Partition, g: int, n: int) -> FormalExpr:
    """The formal bracket-basis combination attached to a long partition m.

    Pairs to zero against every stratum in genus 0; the family spans the
    kernel of the genus-0 bracket evaluation.
    """
    m = partition(m)
    d = sum(m)
    l = kernel_level(m, g, n)
    if l < 1:
        raise ValueError("partition %r is too short: need more than %d parts"
                         % (m, 2 * g - 2 + n - d))
    nn = minus(m)
    coeffs = {}
    for p in partitions_of(d):
        c = injection_coeff(nn, l, p)
        if c:
            coeffs[p] = c
    return FormalExpr(coeffs, d)


def kernel_matrix(d: int, g: int, n: int) -> LabeledMatrix:
    """Rows: partitions of d with more than 2g-2+n-d parts.  Columns: P(d)."""
    cutoff = 2 * g - 2 + n - d
    rows = [m for m in partitions_of(d) if len(m) > cutoff]
    cols = partitions_of(d)
    return LabeledMatrix.from_function(
        rows, cols,
        lambda m, p: injection_coeff(minus(m), kernel_level(m, g, n), p))


def kernel_matrix_rank(d: int, g: int, n: int) -> int:
    return exactalg.rank(kernel_matrix(d, g, n))


def expected_kernel_rank(d: int, g: int, n: int) -> int:
    cutoff = 2 * g - 2 + n - d
    return sum(1 for m in partitions_of(d) if len(m) > cutoff)


# ---------------------------------------------------------------------------
# Kappa-trivial families (genus 1)

def _ambient_for(total_marks: int, genus0_parts: int) -> tuple[int, int, int]:
    # all families live in genus 1; the common dimension is the total mark
    # count minus the part count of the genus-0 anchor term
    return (total_marks - genus0_parts, 1, total_marks)


def ktrivial_basic(big: int, append: Partition = ()) -> KTrivialCycle:
    """(1/24) q_0(big, append) - sum_i C(big-2, i-1) q_i(big-i, append)."""
    if big < 2:
        raise ValueError("the distinguished part must be at least 2")
    append = partition(append)
    total = big + sum(append)
    ambient = _ambient_for(total, len(append) + 1)
    terms: dict[ThetaMultiset, Fraction] = {}
    _add(terms, genus1_q(0, partition((big,) + append)), Fraction(1, 24))
    for i in range(1, big):
        _add(terms, genus1_q(i, partition((big - i,) + append)),
             Fraction(-comb(big - 2, i - 1)))
    return ktrivial_cycle(terms, ambient)


def ktrivial_two_part(a: int, b: int, append: Partition = ()) -> KTrivialCycle:
    """Difference of the two expansions of (1/24) q_0(a, b, append)."""
    if not a > b >= 2:
        raise ValueError("need a > b >= 2")
    append = partition(append)
    total = a + b + sum(append)
    ambient = _ambient_for(total, len(append) + 2)
    terms: dict[ThetaMultiset, Fraction] = {}
    for i in range(1, a):
        _add(terms, genus1_q(i, partition((a - i, b) + append)),
             Fraction(comb(a - 2, i - 1)))
    for j in range(1, b):
        _add(terms, genus1_q(j, partition((a, b - j) + append)),
             Fraction(-comb(b - 2, j - 1)))
    return ktrivial_cycle(terms, ambient)


def ktrivial_flatten(l: int, marks: Partition) -> KTrivialCycle:
    """q_l(pad(marks, l)) plus the signed composition expansion over genus-0
    hatted strata; kappa-trivial for every l >= 1."""
    if l < 1:
        raise ValueError("l must be positive")
    marks = partition(marks)
    total = sum(marks) + 2 * l
    ambient = _ambient_for(total, len(marks) + l)
    terms: dict[ThetaMultiset, Fraction] = {}
    _add(terms, genus1_q(l, pad(marks, l)), Fraction(1))
    for mm in compositions_of(l):
        coeff = (Fraction(1, 24) * (-1) ** len(mm)
                 * Fraction(mm[0], l) * multinomial(l, mm))
        _add(terms, genus1_q(0, partition(hat(partition(mm)) + marks)), coeff)
    return ktrivial_cycle(terms, ambient)


def _add(terms: dict[ThetaMultiset, Fraction], q: ThetaMultiset,
         coeff: Fraction) -> None:
    terms[q] = terms.get(q, Fraction(0)) + coeff


def verify_ktrivial(cycle: KTrivialCycle) -> bool:
    """Exact check: every psi(p) of the ambient degree pairs to zero."""
    d, g, n = cycle.ambient
    for p in partitions_of(d):
        total = Fraction(0)
        for q, coeff in cycle.terms:
            total += coeff * pair_psi(p, q, g, n)
        if total != 0:
            return False
    return True
