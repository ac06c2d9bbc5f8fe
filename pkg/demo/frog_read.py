#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Walk through a semantic read on the Swing fragment.

One entry is written for every organism concept, then the space is read with
Frog as the query concept at a few floors. Run with ``-v`` for the space's
debug log.
"""

import logging
import sys

from semspace import SemanticQuery, Space, load_ontology, swing_fragment
from semspace.ontology import SWING, paths_of

ORGANISMS = ("Organism", "Plant", "Animal", "Invertebrate", "Vertebrate",
             "Arthropod", "Bird", "Amphibian", "Reptile", "Fish", "Mammal",
             "Frog", "Snake")


def short(concept):
    return concept[len(SWING):] if concept.startswith(SWING) else concept


def main():
    if "-v" in sys.argv[1:]:
        logging.basicConfig(format="%(levelname)s %(message)s", level=logging.DEBUG)

    index = load_ontology(swing_fragment())
    space = Space()
    space.load_model("RDFS", index)

    frog = SWING + "Frog"
    print("Paths of Frog:")
    for path in paths_of(index, frog):
        print("  " + " -> ".join(short(node) for node in path))

    for name in ORGANISMS:
        space.write(name.encode("utf-8") * 64, "RDFS", SWING + name, 60000)

    for floor in (1.0, 0.5, 0.0):
        results = space.read(SemanticQuery("RDFS", frog, floor))
        print()
        print("read(Frog, floor={0}) -> {1} entries".format(floor, len(results)))
        for result in results:
            print("  {0:<14} {1:.6f}  {2}".format(
                short(result.concept), result.degree, result.identifier))

    stats = space.stats()
    print()
    print("live entries: {0}, reads: {1}".format(stats.live_entries, stats.total_reads))


if __name__ == "__main__":
    main()
