"""Checked-in transcriptions of the reference tables, with typo annotations.

Each fixture is one JSON document under ``data/``: the eight relation
lists, the thirteen block families, the coproduct tables in all three
bases, the counit values, the two-letter building-block lists, the dual
identity display, the dual coproduct display and the normal-word basis
display.  A fixture carries the transcription exactly as displayed; when
the display is known to disagree with the derivation, an ``expected_diff``
entry documents the exact discrepancy so diff tooling can insist on "that
diff and no other".  Fixtures are data, never code: audits re-read them
without touching the derivation engine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .freealg import QuadraticRelationSet, relation_from_text
from .linalg import QQ

_CASE_SLUGS = {
    "+++": "ppp", "-++": "mpp", "+-+": "pmp", "++-": "ppm",
    "+--": "pmm", "-+-": "mpm", "--+": "mmp", "---": "mmm",
}

_BLOCK_SLUGS = {
    "N": "n", "A+": "a_plus", "A-": "a_minus", "B+": "b_plus", "B-": "b_minus",
    "C+": "c_plus", "C-": "c_minus", "AB+": "ab_plus", "AB-": "ab_minus",
    "AC+": "ac_plus", "AC-": "ac_minus", "BC+": "bc_plus", "BC-": "bc_minus",
}


@dataclass(frozen=True)
class Fixture:
    name: str
    anchor: str
    payload: dict

    @property
    def expected_diff(self):
        return self.payload.get("expected_diff")


def fixture_names():
    out = [f"relations/{s}" for s in _CASE_SLUGS.values()]
    out += [f"blocks/{s}" for s in _BLOCK_SLUGS.values()]
    out += ["coproducts/original", "coproducts/tilde", "coproducts/hat",
            "counit/values", "dual/identities", "dual/coproducts",
            "basis/words"]
    out += [f"survivors/{s}" for s in ("mpp", "pmp", "ppm", "mpm")]
    return out


def load_fixture(name: str) -> Fixture:
    """Load and validate one fixture by name, e.g. "relations/ppp"."""
    try:
        path = resources.files("braidforge").joinpath(f"data/{name}.json")
        payload = json.loads(path.read_text())
    except FileNotFoundError:
        raise KeyError(f"no fixture named {name!r}") from None
    if "anchor" not in payload:
        raise ValueError(f"fixture {name} lacks an anchor")
    if name.startswith(("relations/", "blocks/")):
        _validate_relation_payload(payload)
    return Fixture(name=name, anchor=payload["anchor"], payload=payload)


def _validate_relation_payload(payload):
    if payload.get("basis") not in ("original", "tilde", "hat"):
        raise ValueError("relation fixture lacks a basis label")
    for rel in payload["relations"]:
        for coeff, a, b in rel:
            QQ(coeff)
            relation_from_text([(coeff, a, b)])


def relation_set_from_payload(payload, key: str = "relations") -> QuadraticRelationSet:
    vectors = [relation_from_text([(c, a, b) for c, a, b in rel])
               for rel in payload[key]]
    return QuadraticRelationSet.from_vectors(payload["basis"], vectors)


def case_relations(case: str) -> Fixture:
    return load_fixture(f"relations/{_CASE_SLUGS[case]}")


def case_relation_set(case: str) -> QuadraticRelationSet:
    return relation_set_from_payload(case_relations(case).payload)


def block_sets() -> dict:
    """All thirteen block families as tilde-basis relation sets."""
    out = {}
    for name, slug in _BLOCK_SLUGS.items():
        fx = load_fixture(f"blocks/{slug}")
        out[name] = relation_set_from_payload(fx.payload)
    return out


def block_original_forms() -> dict:
    """Original-basis defining relations of each block family."""
    out = {}
    for name, slug in _BLOCK_SLUGS.items():
        fx = load_fixture(f"blocks/{slug}")
        vectors = [relation_from_text([(c, a, b) for c, a, b in rel])
                   for rel in fx.payload["original_form"]]
        out[name] = QuadraticRelationSet.from_vectors("original", vectors)
    return out


def coproduct_fixture(basis: str) -> Fixture:
    return load_fixture(f"coproducts/{basis}")


def counit_fixture() -> Fixture:
    return load_fixture("counit/values")


def survivors_fixture(case: str) -> Fixture:
    return load_fixture(f"survivors/{_CASE_SLUGS[case]}")
