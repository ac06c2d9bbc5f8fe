"""
semspace: an in-memory semantic tuple space.

Payloads are written with a (meta-model, concept) annotation and a lease, and
read back by ontology similarity: every concept is indexed by all of its
root-to-concept paths, and a read returns the entries whose concept is similar
enough to the query concept.
"""

from .errors import (BindFailure, CycleDetected, FloorOutOfRange, HashCollision,
                     InvalidLease, MalformedLine, MalformedRequest,
                     ModelNotLoaded, OntologyError, PayloadTooLarge,
                     SemspaceError, UnknownConcept)
from .ontology import load_ontology, swing_fragment
from .similarity import matching_concepts, s_dice
from .space import (MetaModel, Result, SemanticQuery, Space, SpaceStats,
                    SyntacticQuery)

__version__ = "1.0.0"

__all__ = [
    "BindFailure", "CycleDetected", "FloorOutOfRange", "HashCollision",
    "InvalidLease", "MalformedLine", "MalformedRequest", "MetaModel",
    "ModelNotLoaded", "OntologyError", "PayloadTooLarge", "Result",
    "SemanticQuery", "SemspaceError", "Space", "SpaceStats", "SyntacticQuery",
    "UnknownConcept", "load_ontology", "matching_concepts", "s_dice",
    "swing_fragment",
]
