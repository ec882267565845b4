"""JSON-safe serialization of matrices, relation sets and check records."""

from __future__ import annotations

from .freealg import GEN_NAMES, QuadraticRelationSet
from .linalg import Matrix

import numpy as np


def matrix_to_json(m) -> dict:
    """Exact matrices serialize entries as [numerator, denominator] pairs,
    float matrices as plain decimals; row-major in both lanes."""
    if isinstance(m, Matrix):
        entries = [[x.numerator, x.denominator] for row in m.rows for x in row]
        return {"rows": m.nrows, "cols": m.ncols, "kind": "exact",
                "entries": entries}
    arr = np.asarray(m)
    return {"rows": int(arr.shape[0]), "cols": int(arr.shape[1]),
            "kind": "float", "entries": [float(x) for x in arr.flat]}


def relation_set_to_json(rel: QuadraticRelationSet) -> dict:
    relations = []
    for row in rel.subspace.rows:
        terms = []
        for idx in sorted(row):
            a, b = divmod(idx, 9)
            terms.append([str(row[idx]), GEN_NAMES[a], GEN_NAMES[b]])
        relations.append(terms)
    return {"basis": rel.basis, "dimension": rel.dim, "relations": relations}
