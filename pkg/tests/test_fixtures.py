"""Fixture inventory, loading, and annotation discipline."""

import pytest

from braidforge.fixtures import (
    Fixture,
    block_original_forms,
    block_sets,
    case_relation_set,
    case_relations,
    fixture_names,
    load_fixture,
)


def test_load_fixture_happy_path():
    fx = load_fixture("relations/ppp")
    assert isinstance(fx, Fixture)
    assert fx.anchor == "(ppp)"
    assert len(fx.payload["relations"]) == 40


def test_load_fixture_dual_identities():
    fx = load_fixture("dual/identities")
    entries = fx.payload["identities"]
    assert len(entries) == 55
    assert any(e["lhs"] == "M N" and e["rhs"] == "-2 K" for e in entries)
    annotated = [e for e in entries if "expected_diff" in e]
    assert len(annotated) == 13
    assert all("witness" in e["expected_diff"] for e in annotated)


def test_load_fixture_missing():
    with pytest.raises(KeyError):
        load_fixture("relations/nonexistent")


def test_inventory_complete():
    # one fixture per display: 8 relation lists, 13 block families, 3
    # coproduct tables, counit values, dual relations, dual coproducts,
    # basis display (+ the four building-block lists)
    names = fixture_names()
    assert len([n for n in names if n.startswith("relations/")]) == 8
    assert len([n for n in names if n.startswith("blocks/")]) == 13
    assert len([n for n in names if n.startswith("coproducts/")]) == 3
    for n in names:
        fx = load_fixture(n)
        assert fx.anchor


def test_case_relation_sets_parse_to_monomial_spans():
    for case in ("+++", "-++", "+-+", "++-", "+--", "-+-", "--+", "---"):
        rel = case_relation_set(case)
        assert rel.basis == "tilde"
        assert rel.dim == 40
        assert rel.zero_words() is not None
        assert case_relations(case).payload["case"] == case


def test_block_sets_sizes():
    sizes = {name: rel.dim for name, rel in block_sets().items()}
    assert sizes == {"N": 12, "A+": 4, "A-": 4, "B+": 2, "B-": 2, "C+": 2,
                     "C-": 2, "AB+": 8, "AB-": 8, "AC+": 8, "AC-": 8,
                     "BC+": 4, "BC-": 4}
    originals = {name: rel.dim for name, rel in block_original_forms().items()}
    assert originals == sizes


def test_annotated_fixtures_have_notes():
    for name in ("coproducts/tilde", "coproducts/hat"):
        fx = load_fixture(name)
        for entry in fx.expected_diff.values():
            assert entry["note"]
            assert entry["delta"]
    dual_fx = load_fixture("dual/identities")
    for e in dual_fx.payload["identities"]:
        if "expected_diff" in e:
            assert e["expected_diff"]["note"]
