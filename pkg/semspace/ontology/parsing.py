"""
Ingestion of concept/super-concept relations.

Two formats are understood: a plain pairs file (``child parent`` per line) and
the ``rdfs:subClassOf`` subset of N-Triples. Both produce a PairList: a tuple
of ``(child, parent)`` tuples, deduplicated, in first-occurrence order.
"""

from logging import getLogger

from rdflib import BNode, URIRef
from rdflib.namespace import OWL, RDF, RDFS
from rdflib.plugins.parsers.ntriples import ParseError, W3CNTriplesParser

from ..errors import CycleDetected, MalformedLine, OntologyError
from ..util import uniquifying

logger = getLogger("semspace.ontology")

RDFS_SUBCLASS_OF = str(RDFS.subClassOf)


def is_concept_id(value):
    """A ConceptId is non-empty text without whitespace."""
    return isinstance(value, str) and bool(value) and not any(ch.isspace() for ch in value)


def make_pair_list(pairs):
    """
    Normalise an iterable of ``(child, parent)`` into a PairList.

    >>> make_pair_list([("A", "B"), ("A", "B"), ("B", "C")])
    (('A', 'B'), ('B', 'C'))
    """
    result = []
    for child, parent in uniquifying(tuple(p) for p in pairs):
        if not is_concept_id(child) or not is_concept_id(parent):
            raise OntologyError("invalid concept pair {0!r}".format((child, parent)))
        if child == parent:
            raise CycleDetected(child)
        result.append((child, parent))
    return tuple(result)


def _lines(text):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    # splitlines() would also split on form feeds and other separators
    return text.replace("\r\n", "\n").split("\n")


def parse_pairs(text):
    """
    Parse a pairs document: one ``<child> <parent>`` per line.

    Blank lines and lines starting with ``#`` are skipped.
    """
    pairs = []
    for number, line in enumerate(_lines(text), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise MalformedLine(number, "expected 2 tokens, got {0}".format(len(tokens)))
        if tokens[0] == tokens[1]:
            raise MalformedLine(number, "concept {0!r} cannot be its own parent".format(tokens[0]))
        pairs.append((tokens[0], tokens[1]))
    result = tuple(uniquifying(pairs))
    logger.debug("Parsed %d pairs (%d duplicates dropped)", len(result), len(pairs) - len(result))
    return result


class _OrderedSink:
    """rdflib sink keeping triples in document order."""

    def __init__(self):
        self.triples = []

    def triple(self, s, p, o):
        self.triples.append((s, p, o))


def _ntriples(text):
    """Yield ``(line_number, s, p, o)`` for every triple of the document."""
    sink = _OrderedSink()
    parser = W3CNTriplesParser(sink)
    for number, line in enumerate(_lines(text), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not (stripped.endswith(" .") or stripped.endswith("\t.")):
            raise MalformedLine(number, "missing ' .' terminator")
        del sink.triples[:]
        try:
            parser.parsestring(stripped)
        except ParseError as exc:
            raise MalformedLine(number, str(exc)) from exc
        for s, p, o in sink.triples:
            yield number, s, p, o


def _iri(node, number):
    value = str(node)
    if not is_concept_id(value):
        raise MalformedLine(number, "invalid IRI {0!r}".format(value))
    return value


def parse_ntriples_subclass(text):
    """
    Extract ``rdfs:subClassOf`` pairs from an N-Triples document.

    Triples with any other predicate, literal objects and blank nodes are
    silently ignored.
    """
    pairs = []
    for number, s, p, o in _ntriples(text):
        if str(p) != RDFS_SUBCLASS_OF:
            continue
        if isinstance(s, BNode) or isinstance(o, BNode) or not isinstance(o, URIRef):
            continue
        child, parent = _iri(s, number), _iri(o, number)
        if child == parent:
            raise MalformedLine(number, "concept {0!r} cannot be its own parent".format(child))
        pairs.append((child, parent))
    return tuple(uniquifying(pairs))


def ntriples_declared_classes(text):
    """Subjects typed ``rdfs:Class`` or ``owl:Class``, in document order."""
    class_types = (RDFS.Class, OWL.Class)
    declared = []
    for number, s, p, o in _ntriples(text):
        if p == RDF.type and o in class_types and isinstance(s, URIRef):
            declared.append(_iri(s, number))
    return tuple(uniquifying(declared))
