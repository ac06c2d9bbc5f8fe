# -*- coding: utf-8 -*-

"""Tests Utilities

Shared helpers: a settable clock, the Swing names, and the random DAG
generator and networkx oracle used by the property tests.
"""

import random
import threading

import networkx as nx

from semspace.ontology import SWING


def dprint(msg):
    # Debugging helper to trace thread-related tests.
    if 0:
        print(msg)


def swing(name):
    return SWING + name


ORGANISMS = ("Organism", "Plant", "Animal", "Invertebrate", "Vertebrate",
             "Arthropod", "Bird", "Amphibian", "Reptile", "Fish", "Mammal",
             "Frog", "Snake")

COMMUNITY = ("Community", "AdministrativeEntity", "ConsumptionEntity",
             "CommunityIdentifier", "GeographicIdentifier", "SpatialReference",
             "INSEECODE", "Identifier")


class FakeClock:
    """Millisecond clock that only moves when told to."""

    def __init__(self, start=1_700_000_000_000):
        self._now = start
        self._lock = threading.Lock()

    def __call__(self):
        with self._lock:
            return self._now

    def advance(self, ms):
        with self._lock:
            self._now += ms


def random_dag(seed, max_nodes=60, max_edges=150):
    """
    A random acyclic PairList.

    Nodes get a random topological rank and edges only point from a higher
    rank (child) to a lower one (parent), so no cycle can form.
    """
    rng = random.Random(seed)
    n = rng.randint(2, max_nodes)
    nodes = ["n{0}".format(i) for i in range(n)]
    rng.shuffle(nodes)
    # dense DAGs have exponentially many paths; keep the average degree low
    wanted = rng.randint(1, min(max_edges, n * (n - 1) // 2, 2 * n))
    pairs = []
    seen = set()
    for _ in range(wanted * 4):
        if len(pairs) == wanted:
            break
        i, j = sorted(rng.sample(range(n), 2))
        edge = (nodes[j], nodes[i])
        if edge not in seen:
            seen.add(edge)
            pairs.append(edge)
    return tuple(pairs)


def to_graph(pairs):
    """Parent -> child DiGraph of a PairList."""
    graph = nx.DiGraph()
    for child, parent in pairs:
        graph.add_edge(parent, child)
    return graph


def oracle_paths(graph, concept):
    """Every root-to-concept path, enumerated by networkx."""
    roots = [n for n in graph.nodes if graph.in_degree(n) == 0]
    if concept in roots:
        return {(concept,)}
    paths = set()
    for root in roots:
        for path in nx.all_simple_paths(graph, root, concept):
            paths.add(tuple(path))
    return paths
