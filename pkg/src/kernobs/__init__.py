"""Pathwidth obstructions, kernel-derived quasi-orders and an OR-cross-composition into k-Pathwidth."""
from .decomp import PathDecomposition, validate, width
from .errors import (
    CapExceededError,
    EnumerationBudgetError,
    InvalidDecompositionError,
    KernelViolation,
    KernobsError,
    MalformedInstanceError,
)
from .graph import Graph, canonical_form, inflate, is_minor, join
from .pathwidth import pathwidth, pathwidth_le

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "EnumerationBudgetError",
    "Graph",
    "InvalidDecompositionError",
    "KernelViolation",
    "KernobsError",
    "MalformedInstanceError",
    "PathDecomposition",
    "canonical_form",
    "inflate",
    "is_minor",
    "join",
    "pathwidth",
    "pathwidth_le",
    "validate",
    "width",
]
