"""Coproduct tables, counit, and compatibility with the derived ideals."""

from braidforge.bialgebra import (
    check_coassociativity_deg1,
    check_coproduct_compatibility,
    check_counit,
    check_counit_laws_deg1,
    coproduct_deg2,
    coproduct_table,
    diff_against_fixture,
    original_coproduct,
    table_from_payload,
)
from braidforge.fixtures import coproduct_fixture
from braidforge.freealg import (
    GEN_INDEX,
    QuadraticRelationSet,
    change_basis_deg2,
    hat_change,
    relation_from_text,
)
from braidforge.linalg import QQ

BASES = ("original", "tilde", "hat")


def test_original_table_is_matrix_comultiplication():
    table = original_coproduct()
    # delta(k) = k (x) k + p (x) q + l (x) m
    k, p, l, q, m = (GEN_INDEX[g] for g in "kplqm")
    assert table.entries[k] == {(k, k): QQ(1), (p, q): QQ(1), (l, m): QQ(1)}


def test_tilde_table_entries():
    table = coproduct_table("tilde")
    r, q, p, s, t = (GEN_INDEX[g] for g in "rqpst")
    # delta(r) = r (x) r + 2 q~ (x) p~ + 2 s~ (x) t~
    assert table.entries[r] == {(r, r): QQ(1), (q, p): QQ(2), (s, t): QQ(2)}


def test_hat_table_entries():
    table = coproduct_table("hat")
    k, m, n, p, q = (GEN_INDEX[g] for g in "kmnpq")
    # delta(k^) = 2 k^ (x) k^ - 2 m^ (x) n^ + p~ (x) q~
    assert table.entries[k] == {(k, k): QQ(2), (m, n): QQ(-2), (p, q): QQ(1)}


def test_coassociativity_and_counit_laws_all_bases():
    for basis in BASES:
        table = coproduct_table(basis)
        assert check_coassociativity_deg1(table), basis
        assert check_counit_laws_deg1(table), basis


def test_hat_table_via_tilde_equals_direct():
    # conjugating the tilde table by the hat step alone matches the
    # original -> hat table
    tilde = coproduct_table("tilde")
    hat = coproduct_table("hat")
    step = hat_change()
    m, inv = step.matrix, step.inv
    for c in range(9):
        acc = {}
        for a in range(9):
            w = inv[c, a]
            if not w:
                continue
            for (x, y), coeff in tilde.entries[a].items():
                for u in range(9):
                    wx = m[x, u]
                    if not wx:
                        continue
                    for v in range(9):
                        wy = m[y, v]
                        if not wy:
                            continue
                        key = (u, v)
                        val = acc.get(key, QQ(0)) + w * coeff * wx * wy
                        if val:
                            acc[key] = val
                        else:
                            acc.pop(key, None)
        assert acc == hat.entries[c]


def test_coproduct_deg2_multiplicative():
    table = original_coproduct()
    vec = relation_from_text([(1, "k", "k")])
    grid = coproduct_deg2(vec, table)
    # delta(k)^2 has nine bidegree terms, each coefficient 1
    assert len(grid) == 9
    assert all(c == QQ(1) for c in grid.values())


def test_compatibility_all_cases_all_bases(derivations):
    for basis in ("original", "tilde"):
        table = coproduct_table(basis)
        for name, der in derivations.items():
            rel = (der.relations_original if basis == "original"
                   else der.relations_tilde)
            ok, witnesses = check_coproduct_compatibility(rel, table)
            assert ok, (basis, name, witnesses)


def test_compatibility_hat_basis(hat_relations):
    ok, _ = check_coproduct_compatibility(hat_relations, coproduct_table("hat"))
    assert ok


def test_compatibility_vacuous_on_empty_set():
    empty = QuadraticRelationSet.from_vectors("original", [])
    ok, wit = check_coproduct_compatibility(empty, original_coproduct())
    assert ok and not wit


def test_compatibility_fails_on_adversarial_span():
    bad = QuadraticRelationSet.from_vectors(
        "original", [relation_from_text([(1, "k", "p")])])
    ok, witnesses = check_coproduct_compatibility(bad, original_coproduct())
    assert not ok
    assert witnesses == [{GEN_INDEX["k"] * 9 + GEN_INDEX["p"]: QQ(1)}]


def test_counit_checks(derivations):
    for der in derivations.values():
        assert check_counit(der.relations_original)
        assert check_counit(der.relations_tilde)
    degenerate = QuadraticRelationSet.from_vectors(
        "original", [relation_from_text([(1, "k", "k"), (-1, "k", "k")])])
    assert check_counit(degenerate)  # zero vector passes
    bad = QuadraticRelationSet.from_vectors(
        "original", [relation_from_text([(1, "k", "k")])])
    assert not check_counit(bad)  # eps(k)^2 = 1


def test_display_diffs_are_exactly_the_documented_ones():
    expected_documented = {"original": set(), "tilde": {"m", "s"}, "hat": {"m"}}
    for basis in BASES:
        fx = coproduct_fixture(basis)
        out = diff_against_fixture(basis, fx.payload)
        assert not out["unexpected"], (basis, out["unexpected"])
        assert set(out["documented"]) == expected_documented[basis], basis


def test_transcribed_tables_parse():
    for basis in BASES:
        table = table_from_payload(coproduct_fixture(basis).payload)
        assert table.basis == basis
        assert sum(len(e) for e in table.entries) > 20
