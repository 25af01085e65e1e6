"""Executable metamodel for the Bunge-Wand-Weber ontology.

BWW-ML source goes through :mod:`bww.syntax` into an immutable
:class:`~bww.kernel.Model`; :mod:`bww.semantics` answers the supplementary
functions over it and :mod:`bww.validator` checks the model's invariants.
"""
from .diagnostics import Diagnostic, Severity, SourceSpan
from .kernel import (
    NULL,
    CategoryTag,
    Event,
    History,
    Model,
    ModelBuilder,
    Property,
    PropertyForm,
    StateId,
    Thing,
    associate,
    build_model,
    conjoin,
    record_observation,
)
from .syntax import load_file, load_source
from .validator import validate

__version__ = "0.1.0"
