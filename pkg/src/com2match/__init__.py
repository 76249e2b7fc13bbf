"""Hybrid UML class-diagram matcher with decision-support workflow."""

from .engine import CompareConfig, compare_models, unmatched_elements
from .model_ir import Model, flattened_members, parse_model, serialize_model, validate_model
from .resources import Lexicon, Ontology, lexicon_lookup, load_lexicon, load_ontology
from .correspondence import (
    WModel,
    apply_decision,
    assign_level,
    parse_correspondence,
    serialize_correspondence,
)

__all__ = [
    "CompareConfig",
    "Lexicon",
    "Model",
    "Ontology",
    "WModel",
    "apply_decision",
    "assign_level",
    "compare_models",
    "flattened_members",
    "lexicon_lookup",
    "load_lexicon",
    "load_ontology",
    "parse_correspondence",
    "parse_model",
    "serialize_correspondence",
    "serialize_model",
    "unmatched_elements",
    "validate_model",
]

__version__ = "0.1.0"
