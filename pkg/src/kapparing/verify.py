"""Named verification suites behind ``kapparing verify --suite ...``.

Each suite returns a list of case records ``{case, expected, got, pass}``
with all rational values rendered as exact strings.  The suites double as
the machine-checkable acceptance surface:

  genus0-relations  genus-0 pairing ranks and kernel-class vanishing
  ktrivial          the three kappa-trivial family constructors
  genus1-rank       genus-1 rank theorem, generator counting, asymptotics
  bases             engine cross-validation (psi oracle, basis changes,
                    intersection numbers, stratum enumeration oracle)
  matrices          kernel-coefficient rank and the two triangular matrices
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from . import exactalg
from .exactalg import is_triangular
from .intersect import genus0_closed, tau, tau_query
from .partitions import order_key, partitions_of
from .pushforward import change_basis, psi_class, psi_class_oracle
from .ranks import (a1_parameters, asymptotic_formula, designated_row,
                    flatten_expansion_matrix, generators_A, genus1_rank_formula,
                    hat_pairing_matrix, rank_kappa_c)
from .relations import (expected_kernel_rank, kernel_class, kernel_matrix_rank,
                        ktrivial_basic, ktrivial_flatten, ktrivial_two_part,
                        verify_ktrivial)
from .strata import (enum_Q, enum_Q_bruteforce, genus1_q, pair_formal,
                     pair_psi, theta_multiset)

SUITES = ("genus0-relations", "ktrivial", "genus1-rank", "bases", "matrices")


def _case(name: str, expected, got) -> dict:
    return {"case": name, "expected": str(expected), "got": str(got),
            "pass": str(expected) == str(got)}


def run_suite(name: str, max_d: int | None = None, max_n: int | None = None,
              threads: int | None = None) -> list[dict]:
    if name == "genus0-relations":
        return suite_genus0_relations(max_d or 5, max_n or 9, threads)
    if name == "ktrivial":
        return suite_ktrivial(max_d or 6, max_n or 8)
    if name == "genus1-rank":
        return suite_genus1_rank(max_d or 8, max_n or 8, threads)
    if name == "bases":
        return suite_bases(max_d or 8, max_n or 8)
    if name == "matrices":
        return suite_matrices(max_d or 6, max_n or 8)
    raise ValueError("unknown suite %r (choose from %s)" % (name, ", ".join(SUITES)))


def suite_genus0_relations(max_d: int, max_n: int, threads=None) -> list[dict]:
    cases = []
    for n in range(4, max_n + 1):
        for d in range(1, min(max_d, n - 3) + 1):
            report = rank_kappa_c(d, 0, n, threads=threads)
            cases.append(_case("rank d=%d g=0 n=%d" % (d, n),
                               report.formula_value, report.matrix_rank))
    for n in range(4, max_n + 1):
        for d in range(1, min(max_d, n - 3) + 1):
            bad = _first_nonvanishing_kernel_pairing(d, n)
            cases.append(_case("kernel-vanishing d=%d g=0 n=%d" % (d, n), 0, bad))
    return cases


def _first_nonvanishing_kernel_pairing(d: int, n: int):
    qs = enum_Q(d, 0, n)
    cutoff = -2 + n - d
    for m in partitions_of(d):
        if len(m) <= cutoff:
            continue
        expr = kernel_class(m, 0, n)
        for q in qs:
            value = pair_formal(expr, "bracket", q, 0, n)
            if value != 0:
                return value
    return 0


def suite_ktrivial(max_d: int, max_n: int) -> list[dict]:
    cases = []
    witness = (Fraction(1, 24) * pair_psi((1,), theta_multiset([(0, 4)]), 1, 2)
               - pair_psi((1,), theta_multiset([(1, 1), (0, 3)]), 1, 2))
    cases.append(_case("hand witness d=1 g=1 n=2", 0, witness))
    for big, append in _basic_params(max_d, max_n):
        cycle = ktrivial_basic(big, append)
        cases.append(_case("basic N=%d append=%r d=%d n=%d"
                           % (big, append, cycle.ambient[0], cycle.ambient[2]),
                           True, verify_ktrivial(cycle)))
    for a, b, append in _two_part_params(max_d, max_n):
        cycle = ktrivial_two_part(a, b, append)
        cases.append(_case("two-part a=%d b=%d append=%r d=%d n=%d"
                           % (a, b, append, cycle.ambient[0], cycle.ambient[2]),
                           True, verify_ktrivial(cycle)))
    for l, marks in _flatten_params(max_d, max_n):
        cycle = ktrivial_flatten(l, marks)
        cases.append(_case("flatten l=%d marks=%r d=%d n=%d"
                           % (l, marks, cycle.ambient[0], cycle.ambient[2]),
                           True, verify_ktrivial(cycle)))
    return cases


def _basic_params(max_d: int, max_n: int):
    for big in range(2, max_n + 1):
        for total_append in range(0, max_n - big + 1):
            for append in partitions_of(total_append):
                d = big + total_append - len(append) - 1
                if 1 <= d <= max_d:
                    yield big, append


def _two_part_params(max_d: int, max_n: int):
    for a in range(3, max_n + 1):
        for b in range(2, a):
            for total_append in range(0, max_n - a - b + 1):
                for append in partitions_of(total_append):
                    d = a + b + total_append - len(append) - 2
                    if 1 <= d <= max_d:
                        yield a, b, append


def _flatten_params(max_d: int, max_n: int):
    for l in range(1, 4):
        for total_marks in range(1, max_n - 2 * l + 1):
            for marks in partitions_of(total_marks):
                d = total_marks + l - len(marks)
                if 1 <= d <= max_d:
                    yield l, marks


def suite_genus1_rank(max_d: int, max_n: int, threads=None) -> list[dict]:
    cases = []
    for n in range(2, max_n + 1):
        for d in range(1, min(max_d, n - 1) + 1):
            report = rank_kappa_c(d, 1, n, threads=threads)
            cases.append(_case("rank d=%d g=1 n=%d" % (d, n),
                               report.formula_value, report.matrix_rank))
    for d in range(1, max_d + 1):
        for n in range(d + 1, 2 * d + 3):
            a1, a2 = generators_A(d, n)
            cases.append(_case("generators d=%d n=%d" % (d, n),
                               genus1_rank_formula(d, n), len(a1) + len(a2)))
    for e in (1, 2, 3):
        ratio = (Fraction(genus1_rank_formula(40 - e, 40))
                 / asymptotic_formula(1, e, 40))
        in_band = Fraction(85, 100) <= ratio <= Fraction(115, 100)
        cases.append(_case("asymptotic band e=%d n=40 (ratio %s)"
                           % (e, float(ratio)), True, in_band))
    for e in (1, 2, 3):
        gaps = [abs(Fraction(genus1_rank_formula(n - e, n))
                    / asymptotic_formula(1, e, n) - 1) for n in (20, 30, 40)]
        cases.append(_case("asymptotic trend e=%d" % e,
                           True, gaps[0] >= gaps[1] >= gaps[2]))
    return cases


def suite_bases(max_d: int, max_n: int) -> list[dict]:
    cases = []
    for d in range(1, max_d + 1):
        mismatch = 0
        for p in partitions_of(d):
            if psi_class(p, 0, 3).terms != psi_class_oracle(p).terms:
                mismatch += 1
        cases.append(_case("psi oracle d=%d" % d, 0, mismatch))
    for d in range(1, min(max_d, 7) + 1):
        size = len(partitions_of(d))
        cases.append(_case("psi basis-change invertible d=%d" % d,
                           size, exactalg.rank(change_basis(d, "psi"))))
        cases.append(_case("bracket basis-change invertible d=%d c0=1" % d,
                           size, exactalg.rank(change_basis(d, "bracket", 1))))
    mism = 0
    for n in range(3, 11):
        for exps in partitions_of(n - 3):
            padded = tuple(exps) + (0,) * (n - len(exps))
            if tau(tau_query(0, padded)) != genus0_closed(padded):
                mism += 1
    cases.append(_case("tau vs genus-0 closed form (<=10 insertions)", 0, mism))
    cases.append(_case("<tau_1>_1", "1/24", tau(tau_query(1, (1,)))))
    cases.append(_case("<tau_2 tau_0>_1", "1/24", tau(tau_query(1, (2, 0)))))
    for g in range(0, 3):
        for n in range(0, max_n + 1):
            if 3 * g - 3 + n < 0 or (g == 0 and n < 3):
                continue
            for d in range(0, 3 * g - 3 + n + 1):
                if 3 * g - 3 + n - d > 8:
                    continue  # brute force is exponential past this
                fast = enum_Q(d, g, n)
                slow = enum_Q_bruteforce(d, g, n)
                cases.append(_case("enum oracle d=%d g=%d n=%d" % (d, g, n),
                                   len(slow), len(fast) if fast == slow else -1))
    return cases


def suite_matrices(max_d: int, max_n: int) -> list[dict]:
    cases = []
    for g in (0, 1, 2):
        for n in range(2, max_n + 1):
            for d in range(1, max_d + 1):
                cases.append(_case("kernel rank d=%d g=%d n=%d" % (d, g, n),
                                   expected_kernel_rank(d, g, n),
                                   kernel_matrix_rank(d, g, n)))
    for d in range(1, max_d + 1):
        for n in range(d, 2 * d):
            matrix = hat_pairing_matrix(d, n)
            report = is_triangular(matrix, order_key, order_key, "upper")
            cases.append(_case("hat matrix triangular d=%d n=%d" % (d, n),
                               (True, True),
                               (report.triangular, report.diagonal_nonzero)))
            cases.append(_case("hat matrix invertible d=%d n=%d" % (d, n),
                               len(matrix.row_labels), exactalg.rank(matrix)))
    for d in range(1, max_d + 1):
        for n in range(d + 1, 2 * d):
            params = a1_parameters(d, n)
            if not params:
                continue
            matrix = flatten_expansion_matrix(d, n)
            cases.append(_case("flatten matrix rank d=%d n=%d" % (d, n),
                               len(params), exactalg.rank(matrix)))
            bad = 0
            for l, marks in params:
                want = Fraction((-1) ** (l - 1) * factorial(l - 1), 24)
                got = matrix.entry(designated_row(l, marks), genus1_q(l, marks))
                if got != want:
                    bad += 1
            cases.append(_case("flatten designated entries d=%d n=%d" % (d, n),
                               0, bad))
    return cases
