"""Verification workbench for nested harmonic sums.

Exact word and composition calculi, certified-ball numeric engines,
adaptive quadrature against closed forms, and a command-line runner for
identity databases.
"""

from .balls import Ball, ball_sum
from .compositions import (CompositionPolynomial, SignedComposition, comp,
                           parse_composition, stuffle)
from .errors import (ArityError, DivergentComposition, DivergentInput,
                     DomainError, EulersumError, ExpressionSyntaxError,
                     InadmissibleWord, InvalidQ, NoConvergence, NonConvergent,
                     NoSolution, OutOfRange, PoleAtPositiveInteger,
                     PrecisionUnreachable, ToleranceNotMet,
                     UnderdeterminedSolution, UnknownEntry,
                     UnsupportedAlphabet, UnsupportedSigns)
from .expressions import (default_tolerance, eval_expr, expression_depth,
                          parse, render)
from .mzv import eval_mzv, eval_poly
from .precision import (DEEP_TARGET_DIGITS, DEFAULT_CONTEXT, Accel,
                        PrecisionContext, deep_target)
from .quadrature import CATALOG, catalog_ids, integrate, laplace_moment
from .qzeta import eval_qmzv, q_general_residual
from .runner import (CheckOutcome, CheckReport, IdentityEntry,
                     conjecture_check, parse_identity_lines, run_check)
from .special import (finite_z21_check, hilbert_norm, lambda_gf_check,
                      sumgf_residual)
from .stirling import butzer_m3_residual, eval_zeta_via_stirling, stirling_u
from .symbolic import (Relation, ZetaPolynomial, database_relations,
                       dejavu_relation, double_shuffle, drinfeld_expand,
                       drinfeld_relation, euler_decomposition,
                       euler_reduction, kummer_coefficient, kummer_expand,
                       parfrac_check, relation_residual, sum_formula,
                       witten_reduce, zeta_poly_eval)
from .witten import WittenParams, eval_witten, witten_convergent
from .words import (TRANSFORMS, Word, WordPolynomial, apply_transform,
                    comp_to_word, dualize, parse_word_poly, shuffle,
                    solve_transform_coeffs, word_to_comp)
from .zeta3 import zeta3_apery, zeta3_bbp, zeta3_ramanujan
from .zetas import eval_polylog, eval_zeta

__version__ = "0.1.0"
