"""Septic equations by two-fold origami (axiom AL6ab8).

Two origami cubics, each traced by a point folded across the tangents of a
parabola, meet in up to seven affine points; the fold lines through those
points realize the roots of a degree-7 polynomial.
"""

from .cubic import OrigamiCubic, config_from_cubic, cubic_from_config, cubic_from_line, sample_curve
from .exactmath import (
    AlgebraicReal,
    Poly1,
    Poly2,
    discriminant,
    distinct_degree_profile,
    is_perfect_square,
    isolate_real_roots,
    refine,
    resultant,
)
from .galois import census, classify
from .geometry import (
    FoldConfig,
    FoldSolution,
    Line,
    ParabolaFold,
    Point,
    perpendicular_bisector,
    reflect_point,
    tangent_at,
    verify_AL6ab8,
)
from .intersect import (
    fold_solution_from_point,
    intersect_config,
    intersect_cubics,
    septic_general,
    septic_specialized,
)
from .render import render_svg
from .solver import (
    ConstructionPlan,
    SepticNormalForm,
    TransformChain,
    lambda_search,
    normalize_septic,
    pe_polynomial,
    septisect,
    seventh_root,
    solve_generic,
    solve_septic,
    verify_plan,
)

__version__ = "0.1.0"
