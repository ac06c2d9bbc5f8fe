"""
Per-model concept index.

For every concept the index stores all root-to-concept paths, their hash paths,
packed path keys and node sets. Building runs three steps per concept: the
upward ChildParentsList closure, the ConceptPathList expansion and the
hash/key encoding. A finished index is immutable.
"""

from collections import deque
from dataclasses import dataclass
from logging import getLogger
from types import MappingProxyType
from typing import FrozenSet, Mapping, Tuple

from ..errors import CycleDetected, HashCollision, OntologyError, UnknownConcept
from .hashing import encode_path_key, hash_code, hash_path
from .parsing import (is_concept_id, make_pair_list, ntriples_declared_classes,
                      parse_ntriples_subclass, parse_pairs)

logger = getLogger("semspace.ontology")

ConceptPath = Tuple[str, ...]


def direct_parents(pairs):
    """Map each concept to its direct parents in first-occurrence order."""
    parents = {}
    for child, parent in pairs:
        parents.setdefault(child, [])
        parents.setdefault(parent, [])
        if parent not in parents[child]:
            parents[child].append(parent)
    return parents


def _check_acyclic(starts, parents):
    """Iterative three-colour DFS along parent links."""
    state = {}
    for start in starts:
        if start in state:
            continue
        state[start] = 1
        stack = [(start, iter(parents.get(start, ())))]
        while stack:
            node, it = stack[-1]
            for parent in it:
                mark = state.get(parent)
                if mark == 1:
                    raise CycleDetected(parent)
                if mark is None:
                    state[parent] = 1
                    stack.append((parent, iter(parents.get(parent, ()))))
                    break
            else:
                state[node] = 2
                stack.pop()


def create_child_parents_list(concept, pairs, parents=None, checked=False):
    """
    Breadth-first upward closure of ``concept``.

    Returns a tuple of ``(concept, superconcepts)`` entries; the first entry is
    ``concept`` itself and every reachable ancestor is listed once.
    """
    if parents is None:
        parents = direct_parents(pairs)
    if concept not in parents:
        raise UnknownConcept(concept)
    if not checked:
        _check_acyclic([concept], parents)

    entries = [(concept, tuple(parents[concept]))]
    listed = {concept}
    queue = deque(parents[concept])
    while queue:
        current = queue.popleft()
        if current in listed:
            continue
        listed.add(current)
        supers = tuple(parents.get(current, ()))
        entries.append((current, supers))
        queue.extend(supers)
    return tuple(entries)


def create_concept_path_list(concept, cpl):
    """
    Expand a ChildParentsList into every distinct root-to-concept path.

    Paths of a node are built by extending the paths of each of its
    superconcepts in order, so the result order follows ``cpl``.
    """
    supers = dict(cpl)
    if concept not in supers:
        raise UnknownConcept(concept)
    memo = {}
    stack = [concept]
    while stack:
        node = stack[-1]
        if node in memo:
            stack.pop()
            continue
        try:
            pending = [p for p in supers[node] if p not in memo]
        except KeyError:
            raise UnknownConcept(node) from None
        if pending:
            stack.extend(reversed(pending))
            continue
        stack.pop()
        if supers[node]:
            memo[node] = tuple(path + (node,) for p in supers[node] for path in memo[p])
        else:
            memo[node] = ((node,),)
    return memo[concept]


@dataclass(frozen=True)
class ConceptRecord:
    paths: Tuple[ConceptPath, ...]
    hash_paths: Tuple[Tuple[int, ...], ...]
    path_keys: Tuple[int, ...]
    node_sets: Tuple[FrozenSet[str], ...]


@dataclass(frozen=True)
class ConceptIndex:
    concepts: Mapping[str, ConceptRecord]
    pair_source: Tuple[Tuple[str, str], ...]

    def __contains__(self, concept):
        return concept in self.concepts

    def __len__(self):
        return len(self.concepts)

    def __iter__(self):
        return iter(self.concepts)

    def record(self, concept):
        try:
            return self.concepts[concept]
        except (KeyError, TypeError):
            raise UnknownConcept(concept) from None


def build_concept_index(pairs, declared=None):
    """
    Build the index for every concept mentioned in ``pairs`` or ``declared``.

    Concepts are ordered by first appearance in the pairs, then declared-only
    concepts in sorted order.
    """
    pairs = make_pair_list(pairs)
    parents = direct_parents(pairs)
    for concept in sorted(set(declared or ()) - set(parents)):
        if not is_concept_id(concept):
            raise OntologyError("invalid concept {0!r}".format(concept))
        parents[concept] = []
    _check_acyclic(parents, parents)

    seen_codes = {}
    for concept in parents:
        code = hash_code(concept)
        other = seen_codes.setdefault(code, concept)
        if other != concept:
            raise HashCollision(other, concept, code)

    records = {}
    for concept in parents:
        cpl = create_child_parents_list(concept, pairs, parents=parents, checked=True)
        paths = create_concept_path_list(concept, cpl)
        hash_paths = tuple(hash_path(path) for path in paths)
        records[concept] = ConceptRecord(
            paths=paths,
            hash_paths=hash_paths,
            path_keys=tuple(encode_path_key(hp) for hp in hash_paths),
            node_sets=tuple(frozenset(path) for path in paths),
        )
    logger.debug("Indexed %d concepts from %d pairs", len(records), len(pairs))
    return ConceptIndex(concepts=MappingProxyType(records), pair_source=pairs)


def paths_of(index, concept):
    return index.record(concept).paths


def hash_paths_of(index, concept):
    return index.record(concept).hash_paths


def path_keys_of(index, concept):
    return index.record(concept).path_keys


def concepts(index):
    return tuple(index.concepts)


FORMATS = ("pairs", "ntriples")


def load_ontology(text, format="pairs"):
    """Parse ``text`` in the given format and build its index."""
    if format == "pairs":
        return build_concept_index(parse_pairs(text))
    if format == "ntriples":
        pairs = parse_ntriples_subclass(text)
        return build_concept_index(pairs, declared=ntriples_declared_classes(text))
    raise ValueError("unknown ontology format {0!r}, expected one of {1}".format(
        format, ", ".join(FORMATS)))
