"""Ranks of the combinatorial kappa ring and the genus-1 generator matrices.

The rank in degree d is computed as the rank of the pairing matrix between
psi-pushforward classes (rows: partitions of d) and strata multisets
(columns: Q(d;g,n)); by invertibility of the basis changes this equals the
rank in any of the three generating sets.  For g <= 2 the number reported
is the rank of the combinatorial kappa ring, which coincides with the
kappa ring itself in that range.

Closed-form counts checked against machine ranks:
  genus 1: |P_1(d, n-d)|        genus 0: |P(d, n-2-d)|
and the large-n asymptotic C(n+e,e) * C(g+e,e) / (e+1)!.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import exactalg
from .exactalg import LabeledMatrix, LabeledVector
from .partitions import (Partition, at_most_k_parts, count_bounded,
                         exact_length_partitions, hat, minus, multinomial,
                         order_key, pad, partition, partitions_of,
                         compositions_of)
from .pushforward import FormalExpr, to_psi_coordinates
from .relations import injection_coeff
from .strata import ThetaMultiset, enum_Q, genus1_q, pair_psi, theta_multiset


@dataclass(frozen=True)
class RankReport:
    d: int
    g: int
    n: int
    matrix_rank: int
    formula_value: int | None
    q_count: int
    p_count: int

    @property
    def agrees(self) -> bool | None:
        if self.formula_value is None:
            return None
        return self.matrix_rank == self.formula_value

    def to_json_dict(self) -> dict:
        return {"d": self.d, "g": self.g, "n": self.n,
                "rank": self.matrix_rank, "formula": self.formula_value,
                "agrees": self.agrees}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def pairing_matrix(d: int, g: int, n: int, threads: int | None = None) -> LabeledMatrix:
    """Rows: P(d) in order-key order.  Columns: Q(d;g,n).  Entry: <psi(p), q>."""
    rows = partitions_of(d)
    cols = enum_Q(d, g, n)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            flat = list(pool.map(
                lambda rc: pair_psi(rc[0], rc[1], g, n),
                [(p, q) for p in rows for q in cols]))
        data = [flat[i * len(cols):(i + 1) * len(cols)] for i in range(len(rows))]
        return LabeledMatrix(rows, cols, data)
    return LabeledMatrix.from_function(rows, cols,
                                       lambda p, q: pair_psi(p, q, g, n))


def rank_kappa_c(d: int, g: int, n: int, threads: int | None = None) -> RankReport:
    matrix = pairing_matrix(d, g, n, threads=threads)
    matrix_rank = exactalg.rank(matrix)
    if g == 1:
        formula = genus1_rank_formula(d, n)
    elif g == 0:
        formula = count_bounded(d, 0, n - 2 - d)
    else:
        formula = None
    return RankReport(d=d, g=g, n=n, matrix_rank=matrix_rank,
                      formula_value=formula,
                      q_count=len(matrix.col_labels), p_count=len(matrix.row_labels))


def genus1_rank_formula(d: int, n: int) -> int:
    """|P_1(d, n-d)|: partitions of d with at most n-d parts exceeding 1."""
    if not (0 <= d <= n):
        raise ValueError("need 0 <= d <= n")
    return count_bounded(d, 1, n - d)


def asymptotic_formula(g: int, e: int, n: int) -> Fraction:
    """The large-n rank asymptote C(n+e,e) * C(g+e,e) / (e+1)!."""
    return Fraction(comb(n + e, e) * comb(g + e, e), factorial(e + 1))


# ---------------------------------------------------------------------------
# Genus-1 generator sets and the two structural matrices

def a1_parameters(d: int, n: int) -> list[tuple[int, Partition]]:
    """(l, marks) with l >= 1, marks a partition of n-l into exactly n-d
    parts all >= 2."""
    if n - d < 1:
        raise ValueError("need n - d >= 1")
    out = []
    for l in range(1, max(0, 2 * d - n) + 1):
        for marks in exact_length_partitions(n - l, n - d):
            if marks and marks[-1] >= 2:
                out.append((l, marks))
    return out


def a2_parameters(d: int, n: int) -> list[tuple[int, Partition]]:
    """(l, marks) with l >= 1, marks = (1, rest) of total n-l with exactly
    n-d parts and every part at most l+1."""
    if n - d < 1:
        raise ValueError("need n - d >= 1")
    out = []
    for l in range(1, n):
        for rest in exact_length_partitions(n - l - 1, n - d - 1):
            if rest and rest[0] > l + 1:
                continue
            out.append((l, partition(rest + (1,))))
    return out


def generators_A(d: int, n: int) -> tuple[list[ThetaMultiset], list[ThetaMultiset]]:
    """The two genus-1 generator families of strata multisets."""
    a1 = [genus1_q(l, marks) for l, marks in a1_parameters(d, n)]
    a2 = [genus1_q(l, marks) for l, marks in a2_parameters(d, n)]
    return a1, a2


def long_partitions(d: int, n: int) -> list[Partition]:
    """P(d) minus P(d, n-d): partitions with more than n-d parts."""
    return [p for p in partitions_of(d) if len(p) > n - d]


def hat_stratum(m: Partition) -> ThetaMultiset:
    """The genus-0 stratum q_0(hat(m)) in ambient (1, 2*sum(m))."""
    return genus1_q(0, hat(m))


def hat_pairing_matrix(d: int, n: int) -> LabeledMatrix:
    """Pairings <psi(p), q_0(hat(p'))> over the long partitions.

    Upper triangular with nonzero diagonal under the order key (each psi
    class pairs nontrivially only with strata whose dimension partition it
    refines).
    """
    if n > 2 * d:
        raise ValueError("need n <= 2d for a nonempty index set")
    labels = long_partitions(d, n)
    strata = {m: hat_stratum(m) for m in labels}
    return LabeledMatrix.from_function(
        labels, labels, lambda p, m: pair_psi(p, strata[m], 1, 2 * d))


def flatten_expansion_matrix(d: int, n: int) -> LabeledMatrix:
    """Expansion of the padded A1 generators over the hatted strata basis.

    Column for the generator with parameters (l, marks): the cycle
    q_l(pad(marks, 2d-n)) rewritten, via the composition expansion, as a
    combination of q_0(hat(m)); the coefficient lands in the row labeled by
    the partition m = sorted((marks - 1) + composition).
    """
    params = a1_parameters(d, n)
    rows = long_partitions(d, n)
    columns = [genus1_q(l, marks) for l, marks in params]
    data = {row: {col: Fraction(0) for col in columns} for row in rows}
    for (l, marks), col in zip(params, columns):
        shifted = tuple(x - 1 for x in marks)
        for mm in compositions_of(l):
            coeff = (Fraction(-1, 24) * (-1) ** len(mm)
                     * Fraction(mm[0], l) * multinomial(l, mm))
            row = partition(shifted + mm)
            data[row][col] += coeff
    return LabeledMatrix(rows, columns,
                         [[data[r][c] for c in columns] for r in rows])


def designated_row(l: int, marks: Partition) -> Partition:
    """The row carrying the (-1)^(l-1) (l-1)!/24 entry: pad(marks - 1, l)."""
    return pad(tuple(x - 1 for x in marks), l)


# ---------------------------------------------------------------------------
# Spanning check for the compact-type generating set

def spanning_check(d: int, g: int, n: int, e: int) -> bool:
    """Check that, in pairing coordinates against Q(d;g,n), every bracket
    class lies in the span of the short-partition bracket classes together
    with the compact-type kernel combinations of the long ones."""
    if e != 3 * g - 3 + n - d:
        raise ValueError("e must equal 3g-3+n-d")
    parts = partitions_of(d)
    qs = enum_Q(d, g, n)
    psi_rows = {p: [pair_psi(p, q, g, n) for q in qs] for p in parts}

    def bracket_vector(p: Partition) -> LabeledVector:
        psi_expr = to_psi_coordinates(FormalExpr.unit(p), "bracket",
                                      c0=2 * g - 2 + n)
        values = [sum((psi_expr.coeffs.get(r, Fraction(0)) * psi_rows[r][j]
                       for r in parts), Fraction(0))
                  for j in range(len(qs))]
        return LabeledVector(qs, values)

    bracket_vectors = {p: bracket_vector(p) for p in parts}
    cutoff = e - g + 1
    short = [p for p in parts if len(p) <= cutoff]
    long = [p for p in parts if len(p) > cutoff]
    basis = [bracket_vectors[p] for p in short]
    for m in long:
        nn = minus(m)
        l = len(m) - (2 * g - 2 + n - d)
        values = [Fraction(0)] * len(qs)
        for p in parts:
            c = injection_coeff(nn, l, p)
            if c:
                vec = bracket_vectors[p]
                values = [v + c * x for v, x in zip(values, vec.values)]
        basis.append(LabeledVector(qs, values))
    return all(exactalg.in_span(bracket_vectors[p], basis) for p in parts)
