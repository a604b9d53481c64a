"""Bundled example instances: polynomial texts with their expected outputs.

Each instance ships as ``<name>.poly.txt`` plus, where applicable, expected
minimal primes (``.primes.json``), the canonical nestings of its equivalence
class (``.nested.json``), a golden incidence matrix (``.incidence.csv``) and
a sample tree (``.tree.json``).  The acceptance suite runs offline against
these files.
"""

from __future__ import annotations

import json
from importlib import resources

from ..poly import Polynomial, parse_polynomial

INSTANCES = (
    "eight_atoms",
    "seven_atoms",
    "screen_pass_no_tree",
    "hospital_admissions",
    "independent_binary4",
    "independent_ternary4",
)


def text(filename: str) -> str:
    return (resources.files(__package__) / filename).read_text()


def polynomial(instance: str) -> Polynomial:
    return parse_polynomial(text(f"{instance}.poly.txt"))


def expected_json(filename: str):
    return json.loads(text(filename))
