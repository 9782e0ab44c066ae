"""Stratified Sets: syntax, stratification, sigma-action, normalisation."""

from . import internal
from .nominal import Atom, Permutation, fresh, permute, support
from .normalize import (
    RewriteTrace, embed, interpret, normalize, redex_positions, step,
    surface_normal_form,
)
from .sigma import sigma_pred, sigma_set, tin
from .stratify import check_stratified, infer_levels
from .surface import alpha_eq, comp, desugar, forall, size, subst
from .syntax import Mode, parse, show

__all__ = [
    "Atom", "Permutation", "fresh", "permute", "support", "internal",
    "RewriteTrace", "embed", "interpret", "normalize", "redex_positions", "step",
    "surface_normal_form", "sigma_pred", "sigma_set", "tin",
    "check_stratified", "infer_levels", "alpha_eq", "comp", "desugar", "forall",
    "size", "subst", "Mode", "parse", "show",
]
