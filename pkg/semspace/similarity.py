"""
Ancestor-path similarity between concepts.

The degree of two concepts is the Dice coefficient of the node sets of their
root paths, ``2 * |X & Y| / (|X| + |Y|)``, where each set includes the concept
itself. With several paths per concept the best path pair wins. Degrees are
kept as exact fractions internally and exposed as floats.
"""

from fractions import Fraction
from typing import NamedTuple

from .errors import FloorOutOfRange, UnknownConcept
from .ontology.index import direct_parents

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Match(NamedTuple):
    concept: str
    exact: Fraction

    @property
    def degree(self):
        return float(self.exact)


def path_similarity(x, y):
    total = len(x) + len(y)
    if not total:
        return _ZERO
    return Fraction(2 * len(x & y), total)


def _best(sets1, sets2):
    best = _ZERO
    for x in sets1:
        for y in sets2:
            value = path_similarity(x, y)
            if value > best:
                best = value
                if best == _ONE:
                    return best
    return best


def s_dice_fraction(index, c1, c2):
    if c1 == c2:
        index.record(c1)
        return _ONE
    return _best(index.record(c1).node_sets, index.record(c2).node_sets)


def s_dice(index, c1, c2):
    """
    Similarity degree of ``c1`` and ``c2`` in ``[0, 1]``.

    Raises UnknownConcept if either concept is not indexed.
    """
    return float(s_dice_fraction(index, c1, c2))


def check_floor(floor):
    if isinstance(floor, bool) or not isinstance(floor, (int, float, Fraction)):
        raise FloorOutOfRange(floor)
    if not 0 <= floor <= 1:
        raise FloorOutOfRange(floor)
    if isinstance(floor, float):
        # the shortest decimal repr, so a floor of 0.6 compares equal to 3/5
        return Fraction(repr(floor))
    return Fraction(floor)


def _passes(value, floor):
    if floor == 0:
        return True
    if floor == 1:
        return value == _ONE
    return value > floor


def matching_concepts(index, concept, floor):
    """
    Concepts whose degree against ``concept`` clears ``floor``.

    ``floor == 0`` selects every concept, ``floor == 1`` only degree-1
    concepts, anything in between requires a degree strictly above it.
    The result is sorted by degree descending, then by concept.
    """
    limit = check_floor(floor)
    query = index.record(concept).node_sets
    matches = []
    for other, record in index.concepts.items():
        value = _ONE if other == concept else _best(query, record.node_sets)
        if _passes(value, limit):
            matches.append(Match(other, value))
    matches.sort(key=lambda m: (-m.exact, m.concept))
    return tuple(matches)


def _all_paths(parents, concept):
    ups = parents[concept]
    if not ups:
        return [(concept,)]
    return [path + (concept,) for parent in ups for path in _all_paths(parents, parent)]


def brute_force_s_dice(pairs, c1, c2):
    """Reference similarity computed by naive path enumeration, no index."""
    parents = direct_parents(pairs)
    for concept in (c1, c2):
        if concept not in parents:
            raise UnknownConcept(concept)
    best = 0.0
    for p1 in _all_paths(parents, c1):
        for p2 in _all_paths(parents, c2):
            x, y = set(p1), set(p2)
            best = max(best, 2 * len(x & y) / (len(x) + len(y)))
    return best
