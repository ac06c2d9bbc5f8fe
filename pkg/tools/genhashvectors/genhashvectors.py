#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Generates the string-hash test vectors in tests/fixtures/hash_vectors.tsv.

The hash is evaluated straight from its closed form,
``sum(s[i] * 31 ** (n - 1 - i))`` over UTF-16 code units with unbounded
integers, and only then reduced to a signed 32-bit value. It shares no code
with ``semspace.ontology.hashing``, so the vectors act as an independent
oracle for it.

Each output line is the JSON-quoted string, a tab, and the signed hash.

Usage:
    python genhashvectors.py [OUTPUT]
"""

import json
import logging
import sys

_log = logging.getLogger()
logging.basicConfig(level=logging.DEBUG)

SWING = "http://swing.uni-muenster.de/core/Swing/"

_names = [
    "Organism", "Plant", "Animal", "Invertebrate", "Vertebrate", "Arthropod",
    "Bird", "Amphibian", "Reptile", "Fish", "Mammal", "Frog", "Snake",
    "Community", "ConsumptionEntity", "AdministrativeEntity",
    "SpatialReference", "GeographicIdentifier", "CommunityIdentifier",
    "INSEECODE", "Identifier",
]

STRINGS = [
    "", "a", "b", "ab", "abc", "hello", "Hello, World", "polygenelubricants",
    "Aa", "BB", "0", "http://www.w3.org/2000/01/rdf-schema#subClassOf",
    "a:Frog", "café", "\U0001F600",
] + _names[:14] + [SWING + name for name in _names]


def code_units(s):
    data = s.encode("utf-16-be", "surrogatepass")
    return [int.from_bytes(data[i:i + 2], "big") for i in range(0, len(data), 2)]


def closed_form_hash(s):
    units = code_units(s)
    n = len(units)
    total = sum(unit * 31 ** (n - 1 - i) for i, unit in enumerate(units))
    total %= 2 ** 32
    return total - 2 ** 32 if total >= 2 ** 31 else total


def main():
    lines = ["{0}\t{1}".format(json.dumps(s, ensure_ascii=False), closed_form_hash(s)) for s in STRINGS]
    _log.info("Generated %d vectors", len(lines))
    text = "\n".join(lines) + "\n"
    if len(sys.argv) > 1:
        with open(sys.argv[1], "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
