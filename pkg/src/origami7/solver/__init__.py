"""Construction pipelines turning septics into AL6ab8 fold configurations."""

from .chain import Step, TransformChain
from .normal_form import SepticNormalForm, normalize_septic, pe_polynomial
from .pipelines import (
    SeptisectionPlan,
    fold_tail,
    lambda_search,
    lambda_transform,
    septisect,
    seventh_root,
    solve_generic,
    solve_septic,
)
from .plan import ConstructionPlan, PlanReport, Quantity, verify_plan

__all__ = [
    "ConstructionPlan", "PlanReport", "Quantity", "SepticNormalForm", "SeptisectionPlan", "Step",
    "TransformChain", "fold_tail", "lambda_search", "lambda_transform", "normalize_septic",
    "pe_polynomial", "septisect", "seventh_root", "solve_generic", "solve_septic", "verify_plan",
]
