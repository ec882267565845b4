"""Coproduct and counit structure, and their compatibility with the ideals.

The coproduct is the matrix comultiplication delta(T[i][j]) = sum_a
T[i][a] (x) T[a][j]; the counit sends T to the identity matrix.  Both are
extended to products multiplicatively.  Tables in the tilde and hat bases
are always recomputed by conjugating this original-basis table through the
generator substitutions, never transcribed; the transcribed displays are
test fixtures that the recomputation is diffed against.

A relation ideal R is compatible with the coproduct when delta(R) lands in
R (x) M + M (x) R, checked here through the quotient criterion
(q (x) q)(delta(r)) = 0 with q the projection onto M / R; this avoids
materializing the 6561-dimensional bidegree space.
"""

from __future__ import annotations

from dataclasses import dataclass

from .freealg import (
    GEN_NAMES,
    QuadraticRelationSet,
    basis_change,
    counit_values,
    gen_index,
)
from .linalg import QQ, quotient_projection

# a coproduct table maps each generator index to a sparse tensor
# {(left_gen, right_gen): coefficient}


@dataclass(frozen=True)
class CoproductTable:
    basis: str
    entries: tuple  # entries[g] = dict {(a, b): Fraction}

    def of(self, g) -> dict:
        return self.entries[gen_index(g)]


def original_coproduct() -> CoproductTable:
    entries = []
    for g in range(9):
        i, j = divmod(g, 3)
        entries.append({(3 * i + a, 3 * a + j): QQ(1) for a in range(3)})
    return CoproductTable("original", tuple(entries))


def coproduct_table(basis: str) -> CoproductTable:
    """The coproduct in any generator basis, derived from the original one.

    delta of a new generator is delta of its expansion in old generators,
    with every tensor factor rewritten in the new basis.
    """
    if basis == "original":
        return original_coproduct()
    change = basis_change("original", basis)
    base = original_coproduct()
    m, inv = change.matrix, change.inv
    entries = []
    for c in range(9):
        acc = {}
        for a in range(9):
            w = inv[c, a]
            if not w:
                continue
            for (x, y), coeff in base.entries[a].items():
                scale = w * coeff
                for u in range(9):
                    wx = m[x, u]
                    if not wx:
                        continue
                    for v in range(9):
                        wy = m[y, v]
                        if not wy:
                            continue
                        key = (u, v)
                        val = acc.get(key, QQ(0)) + scale * wx * wy
                        if val:
                            acc[key] = val
                        else:
                            acc.pop(key, None)
        entries.append(acc)
    return CoproductTable(basis, tuple(entries))


def coproduct_deg2(vec: dict, table: CoproductTable) -> dict:
    """delta of a degree-2 coefficient vector, as a sparse bidegree grid.

    Returns {((a, b), (c, d)): coeff} for the element
    sum coeff * (g_a g_b) (x) (g_c g_d).
    """
    out = {}
    for idx, coeff in vec.items():
        g1, g2 = divmod(idx, 9)
        for (x1, y1), c1 in table.entries[g1].items():
            for (x2, y2), c2 in table.entries[g2].items():
                key = ((x1, x2), (y1, y2))
                val = out.get(key, QQ(0)) + coeff * c1 * c2
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return out


def check_coproduct_compatibility(rel: QuadraticRelationSet, table: CoproductTable):
    """(q (x) q)(delta(r)) = 0 for every relation basis vector r.

    Returns (ok, witnesses): witnesses lists the relation vectors whose
    image in the quotient tensor square is nonzero.
    """
    if rel.basis != table.basis:
        raise ValueError("relation set and coproduct table use different bases")
    q = quotient_projection(rel.subspace)
    witnesses = []
    for row in rel.subspace.rows:
        grid = coproduct_deg2(dict(row), table)
        acc = {}
        for ((a, b), (c, d)), coeff in grid.items():
            left = q.apply({9 * a + b: QQ(1)})
            if not left:
                continue
            right = q.apply({9 * c + d: QQ(1)})
            if not right:
                continue
            for i, xi in left.items():
                for j, yj in right.items():
                    key = (i, j)
                    val = acc.get(key, QQ(0)) + coeff * xi * yj
                    if val:
                        acc[key] = val
                    else:
                        acc.pop(key, None)
        if acc:
            witnesses.append(dict(row))
    return not witnesses, witnesses


def check_counit(rel: QuadraticRelationSet) -> bool:
    """Counit substitution annihilates every relation vector."""
    eps = counit_values(rel.basis)
    for row in rel.subspace.rows:
        total = QQ(0)
        for idx, coeff in row.items():
            a, b = divmod(idx, 9)
            total += coeff * eps[a] * eps[b]
        if total:
            return False
    return True


def check_coassociativity_deg1(table: CoproductTable) -> bool:
    """(delta (x) id) delta = (id (x) delta) delta on every generator."""
    for g in range(9):
        lhs, rhs = {}, {}
        for (x, y), c in table.entries[g].items():
            for (u, v), d in table.entries[x].items():
                key = (u, v, y)
                lhs[key] = lhs.get(key, QQ(0)) + c * d
            for (u, v), d in table.entries[y].items():
                key = (x, u, v)
                rhs[key] = rhs.get(key, QQ(0)) + c * d
        lhs = {k: v for k, v in lhs.items() if v}
        rhs = {k: v for k, v in rhs.items() if v}
        if lhs != rhs:
            return False
    return True


def check_counit_laws_deg1(table: CoproductTable) -> bool:
    """(eps (x) id) delta(g) = g = (id (x) eps) delta(g) for every generator."""
    eps = counit_values(table.basis)
    for g in range(9):
        left, right = {}, {}
        for (x, y), c in table.entries[g].items():
            if eps[x]:
                left[y] = left.get(y, QQ(0)) + c * eps[x]
            if eps[y]:
                right[x] = right.get(x, QQ(0)) + c * eps[y]
        left = {k: v for k, v in left.items() if v}
        right = {k: v for k, v in right.items() if v}
        if left != {g: QQ(1)} or right != {g: QQ(1)}:
            return False
    return True


# ---------------------------------------------------------------------------
# diffing a recomputed table against a transcribed display


def table_from_payload(payload) -> CoproductTable:
    entries = [dict() for _ in range(9)]
    for g, rows in payload["table"].items():
        entries[gen_index(g)] = {
            (gen_index(a), gen_index(b)): QQ(c) for c, a, b in rows}
    return CoproductTable(payload["basis"], tuple(entries))


def diff_tables(derived: CoproductTable, transcribed: CoproductTable) -> dict:
    """Per-generator termwise difference derived - transcribed (empty = match)."""
    assert derived.basis == transcribed.basis
    diffs = {}
    for g in range(9):
        delta = dict(derived.entries[g])
        for key, c in transcribed.entries[g].items():
            val = delta.get(key, QQ(0)) - c
            if val:
                delta[key] = val
            else:
                delta.pop(key, None)
        if delta:
            diffs[GEN_NAMES[g]] = delta
    return diffs


def diff_against_fixture(basis: str, fixture_payload) -> dict:
    """Outcome of diffing the recomputed table against a display fixture.

    Returns {"matches": [...], "documented": {...}, "unexpected": {...}}:
    documented entries reproduce the fixture's expected_diff exactly,
    unexpected ones are genuine disagreements needing investigation.
    """
    derived = coproduct_table(basis)
    transcribed = table_from_payload(fixture_payload)
    diffs = diff_tables(derived, transcribed)
    expected = fixture_payload.get("expected_diff", {})
    documented, unexpected = {}, {}
    for g, delta in diffs.items():
        want = expected.get(g)
        want_delta = None
        if want:
            want_delta = {(gen_index(a), gen_index(b)): QQ(c)
                          for c, a, b in want["delta"]}
        if want_delta == delta:
            documented[g] = want["note"]
        else:
            unexpected[g] = {f"{GEN_NAMES[a]},{GEN_NAMES[b]}": str(c)
                             for (a, b), c in delta.items()}
    for g in expected:
        if g not in diffs:
            unexpected[g] = {"annotated diff did not occur": ""}
    matches = [GEN_NAMES[g] for g in range(9) if GEN_NAMES[g] not in diffs]
    return {"matches": matches, "documented": documented, "unexpected": unexpected}
