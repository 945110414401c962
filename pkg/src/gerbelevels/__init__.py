"""Exact obstruction data for basic gerbes over non-simply connected compact groups.

Given a compact simple simply connected group and a subgroup ``Z`` of its
center, the package builds the action of ``Z`` on the Weyl alcove, the
coroot-valued cochain ``e``, the ``U(1)``-valued 3-cocycle ``U`` at level
``k`` and solves ``delta u = U``.  All arithmetic is rational.
"""
from .cases import CaseError, CaseSpec, all_cases, parse_subgroup
from .center import (CenterAction, CenterData, CenterGroup, action_of, affine_action,
                     center_data, center_of, delta_e, e_table, subgroups_of)
from .cohomology import (LevelReport, PhaseCochain, chi_pair, chi_vertex, coboundary_phase,
                         is_cocycle, lemma1_check, lemma3_extend, minimal_level,
                         solution_classes, solve_coboundary, u_obstruction, verify_rtc)
from .lattice import Lattice, Vec, in_lattice, intersect, smith_normal_form, solve_linear_mod
from .report import ReportDocument
from .roots import RootSystem, build_root_system

__version__ = "0.1.0"
