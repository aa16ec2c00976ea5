"""Feature-interaction aware configuration prioritization for #ifdef-configurable C code."""

from .conditions import FeatureModel, parse_formula, valid_configurations
from .configspace import Configuration, PartialAssignment, contains
from .facts import SelectionTables, build_tables
from .interactions import SuspiciousSelection, detect_interactions, detect_suspicious_selections
from .metrics import BugSpec, evaluate
from .ranking import additional_prioritize, copro_prioritize, random_prioritize, sp_prioritize
from .varfront import SourceUnit, extract_options, parse_project, parse_unit

__all__ = [
    "BugSpec", "Configuration", "FeatureModel", "PartialAssignment", "SelectionTables",
    "SourceUnit", "SuspiciousSelection", "additional_prioritize", "build_tables", "contains",
    "copro_prioritize", "detect_interactions", "detect_suspicious_selections", "evaluate",
    "extract_options", "parse_formula", "parse_project", "parse_unit", "random_prioritize",
    "sp_prioritize", "valid_configurations",
]
