"""Exact-arithmetic computations in the kappa ring of moduli of stable curves.

Submodules:

  partitions   partition/composition combinatorics and the refinement order
  exactalg     exact rational linear algebra with labeled matrices
  intersect    psi intersection numbers (string/dilaton + KdV recursion)
  pushforward  kappa-polynomial classes, forgetful pushforward, basis changes
  strata       stable weighted graphs, stratum multisets, the exact pairing
  ranks        pairing matrices, rank formulas, generator matrices
  relations    kernel classes and the kappa-trivial cycle families
  cli          the ``kapparing`` command-line tool
"""

from .exactalg import LabeledMatrix, LabeledVector, Rational, in_span, is_triangular, rank
from .intersect import TauQuery, UnstableQueryError, genus0_closed, tau, tau_query
from .partitions import (Partition, aut, compositions_of, hat, minus, order_key,
                         pad, parse_partition, partition, partitions_of, refines)
from .pushforward import (FormalExpr, KappaPoly, bracket, change_basis,
                          evaluate_formal, psi_class, psi_class_oracle)
from .ranks import (RankReport, asymptotic_formula, generators_A,
                    genus1_rank_formula, pairing_matrix, rank_kappa_c,
                    spanning_check)
from .relations import (injection_coeff, kernel_class, kernel_matrix_rank,
                        ktrivial_basic, ktrivial_flatten, ktrivial_two_part,
                        verify_ktrivial)
from .strata import (KTrivialCycle, StableWeightedGraph, ThetaMultiset, enum_Q,
                     genus1_q, is_compact_type, lift_multiset, p_map,
                     pair_formal, pair_psi, parse_multiset, theta,
                     theta_multiset)

__version__ = "0.1.0"
