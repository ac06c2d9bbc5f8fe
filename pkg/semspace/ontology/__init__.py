"""
Ontology ingestion and the concept path index.
"""

from importlib import resources

from .hashing import (decode_path_key, encode_path_key, hash_code, hash_path,
                      string_hash31)
from .index import (FORMATS, ConceptIndex, ConceptRecord, build_concept_index,
                    concepts, create_child_parents_list,
                    create_concept_path_list, direct_parents, hash_paths_of,
                    load_ontology, path_keys_of, paths_of)
from .parsing import (RDFS_SUBCLASS_OF, is_concept_id, make_pair_list,
                      ntriples_declared_classes, parse_ntriples_subclass,
                      parse_pairs)

SWING = "http://swing.uni-muenster.de/core/Swing/"


def swing_fragment():
    """The bundled Swing taxonomy fragment as a pairs document."""
    return (resources.files("semspace") / "data" / "swing.pairs").read_text("utf-8")


__all__ = [
    "FORMATS", "RDFS_SUBCLASS_OF", "SWING", "ConceptIndex", "ConceptRecord",
    "build_concept_index", "concepts", "create_child_parents_list",
    "create_concept_path_list", "decode_path_key", "direct_parents",
    "encode_path_key", "hash_code", "hash_path", "hash_paths_of",
    "is_concept_id", "load_ontology", "make_pair_list",
    "ntriples_declared_classes", "parse_ntriples_subclass", "parse_pairs",
    "path_keys_of", "paths_of", "string_hash31", "swing_fragment",
]
