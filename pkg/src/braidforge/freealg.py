"""The free algebra on the nine generator-matrix entries, truncated at degree 2.

The 3x3 generator matrix T is

        [ k p l ]
    T = [ q r s ]
        [ m t n ]

so generator slots are ordered row-major: k p l q r s m t n (indices 0..8).
A degree-2 element lives in the 81-dimensional span of ordered monomials
g_a g_b with coordinate index 9*a + b (order matters, nothing commutes).

Relation sets are stored extensionally as subspaces of that coordinate
space, in canonical echelon form, together with a label naming the
generator basis the coordinates refer to.  A slot keeps its letter under a
change of generator basis; the label says whether slot "k" currently means
k, k-tilde or k-hat.  In the tilde basis the slots are the half-sum /
half-difference combinations

    k = k~ + n~   n = k~ - n~    l = l~ + m~   m = l~ - m~
    p = p~ + t~   t = p~ - t~    q = q~ + s~   s = q~ - s~    r = r

and the hat basis further combines

    k~ = k^ + l^   l~ = k^ - l^    m~ = m^ + n^   n~ = n^ - m^.

Note the (m^, n^) pair: this is the unique convention under which the
recomputed hat-basis coproducts and the truncated dual reproduce the
reference tables; the reference display defines the pair with the roles of
m^ and n^ exchanged, which is inconsistent with its own coproduct table
(see data/coproducts/hat.json).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .linalg import QQ, Matrix, Subspace, rref

GEN_NAMES = ("k", "p", "l", "q", "r", "s", "m", "t", "n")
GEN_INDEX = {name: i for i, name in enumerate(GEN_NAMES)}

BASES = ("original", "tilde", "hat")

# display decoration per basis; r is invariant, and in the hat basis the
# p/q/s/t slots keep their tilde meaning
_DECORATION = {
    "original": {},
    "tilde": {g: "~" for g in GEN_NAMES if g != "r"},
    "hat": {**{g: "~" for g in ("p", "q", "s", "t")},
            **{g: "^" for g in ("k", "l", "m", "n")}},
}


def gen_index(g) -> int:
    if isinstance(g, int):
        if not 0 <= g < 9:
            raise ValueError(f"generator index out of range: {g}")
        return g
    return GEN_INDEX[g]


def decorate(g, basis: str) -> str:
    name = GEN_NAMES[gen_index(g)]
    return name + _DECORATION[basis].get(name, "")


def monomial_index(a, b) -> int:
    """Coordinate of the ordered monomial g_a g_b; bijective on pairs."""
    return 9 * gen_index(a) + gen_index(b)


def index_pair(idx: int):
    return divmod(idx, 9)


def monomial_name(idx: int, basis: str = "original") -> str:
    a, b = index_pair(idx)
    return decorate(a, basis) + decorate(b, basis)


def relation_from_text(terms) -> dict:
    """Sparse degree-2 vector from (coefficient, left, right) triples.

    Coefficients may be ints, Fractions or strings like "-1/2"; e.g.
    "k^2 - n^2" is [(1, "k", "k"), (-1, "n", "n")].
    """
    vec = {}
    for coeff, a, b in terms:
        c = QQ(coeff)
        if not c:
            continue
        idx = monomial_index(a, b)
        val = vec.get(idx, QQ(0)) + c
        if val:
            vec[idx] = val
        else:
            vec.pop(idx, None)
    return vec


@dataclass(frozen=True)
class QuadraticRelationSet:
    """A relation ideal's degree-2 component, canonical within one basis."""

    basis: str
    subspace: Subspace

    def __post_init__(self):
        assert self.basis in BASES
        assert self.subspace.ambient == 81

    @classmethod
    def from_vectors(cls, basis: str, vectors) -> "QuadraticRelationSet":
        return cls(basis, rref(list(vectors), 81))

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def zero_words(self):
        """Monomials spanned by this set, if it is a span of single monomials.

        Returns the list of (left, right) generator-index pairs, or None
        when some echelon basis vector has more than one term.
        """
        words = []
        for row in self.subspace.rows:
            if len(row) != 1:
                return None
            words.append(index_pair(next(iter(row))))
        return words

    def word_is_zero(self, a, b) -> bool:
        return self.subspace.contains({monomial_index(a, b): QQ(1)})


class GeneratorBasisChange:
    """Invertible linear substitution of generators.

    ``matrix[old][new]`` is the coefficient of the new generator in the
    expansion of the old one, so a degree-1 coefficient vector transforms by
    the transpose and a degree-2 vector by the transpose of the Kronecker
    square (substitute, then re-expand).
    """

    def __init__(self, matrix: Matrix):
        assert matrix.shape == (9, 9)
        self.matrix = matrix
        self.inv = matrix.inverse()  # raises if singular

    @classmethod
    def from_rules(cls, rules) -> "GeneratorBasisChange":
        """rules: old generator -> list of (coeff, new generator); identity elsewhere."""
        m = Matrix.zeros(9, 9)
        seen = set()
        for old, terms in rules.items():
            i = gen_index(old)
            seen.add(i)
            for coeff, new in terms:
                m[i, gen_index(new)] = QQ(coeff)
        for i in range(9):
            if i not in seen:
                m[i, i] = QQ(1)
        return cls(m)

    def compose(self, then: "GeneratorBasisChange") -> "GeneratorBasisChange":
        """First substitute through self, then through ``then``."""
        return GeneratorBasisChange(self.matrix @ then.matrix)

    def inverted(self) -> "GeneratorBasisChange":
        return GeneratorBasisChange(self.inv)

    def apply_deg1(self, vec: dict) -> dict:
        """Transform a degree-1 coefficient vector (index -> Fraction)."""
        out = {}
        for a, coeff in vec.items():
            for c in range(9):
                w = self.matrix[a, c]
                if w:
                    val = out.get(c, QQ(0)) + coeff * w
                    if val:
                        out[c] = val
                    else:
                        out.pop(c, None)
        return out

    def apply_deg2(self, vec: dict) -> dict:
        """Transform a degree-2 coefficient vector under the Kronecker square."""
        m = self.matrix
        out = {}
        for idx, coeff in vec.items():
            a, b = divmod(idx, 9)
            for c in range(9):
                w1 = m[a, c]
                if not w1:
                    continue
                for d in range(9):
                    w2 = m[b, d]
                    if not w2:
                        continue
                    j = 9 * c + d
                    val = out.get(j, QQ(0)) + coeff * w1 * w2
                    if val:
                        out[j] = val
                    else:
                        out.pop(j, None)
        return out


def change_basis_deg2(rel: QuadraticRelationSet, g: GeneratorBasisChange,
                      new_basis: str) -> QuadraticRelationSet:
    """Re-express a relation set after substituting generators through g."""
    return QuadraticRelationSet.from_vectors(
        new_basis, (g.apply_deg2(dict(row)) for row in rel.subspace.rows))


@lru_cache(maxsize=None)
def tilde_change() -> GeneratorBasisChange:
    """original -> tilde substitution."""
    return GeneratorBasisChange.from_rules({
        "k": [(1, "k"), (1, "n")],
        "n": [(1, "k"), (-1, "n")],
        "l": [(1, "l"), (1, "m")],
        "m": [(1, "l"), (-1, "m")],
        "p": [(1, "p"), (1, "t")],
        "t": [(1, "p"), (-1, "t")],
        "q": [(1, "q"), (1, "s")],
        "s": [(1, "q"), (-1, "s")],
    })


@lru_cache(maxsize=None)
def hat_change() -> GeneratorBasisChange:
    """tilde -> hat substitution (see the module docstring for the m/n pair)."""
    return GeneratorBasisChange.from_rules({
        "k": [(1, "k"), (1, "l")],
        "l": [(1, "k"), (-1, "l")],
        "m": [(1, "m"), (1, "n")],
        "n": [(-1, "m"), (1, "n")],
    })


@lru_cache(maxsize=None)
def original_to_hat() -> GeneratorBasisChange:
    return tilde_change().compose(hat_change())


def basis_change(src: str, dst: str) -> GeneratorBasisChange:
    """Substitution taking src-basis coordinates to dst-basis coordinates."""
    steps = {
        ("original", "tilde"): tilde_change,
        ("tilde", "hat"): hat_change,
        ("original", "hat"): original_to_hat,
    }
    if src == dst:
        return GeneratorBasisChange(Matrix.identity(9))
    if (src, dst) in steps:
        return steps[(src, dst)]()
    return basis_change(dst, src).inverted()


def generator_exchange(pairs, signs=None) -> GeneratorBasisChange:
    """Signed permutation of generators given disjoint swap pairs.

    ``signs`` optionally scales each image by -1; default all +1.
    """
    flat = [gen_index(g) for pair in pairs for g in pair]
    if len(set(flat)) != len(flat):
        raise ValueError("swap pairs overlap")
    perm = list(range(9))
    for a, b in pairs:
        ia, ib = gen_index(a), gen_index(b)
        perm[ia], perm[ib] = ib, ia
    sgn = [1] * 9
    if signs:
        for g, s in signs.items():
            sgn[gen_index(g)] = s
    m = Matrix.zeros(9, 9)
    for i in range(9):
        m[i, perm[i]] = QQ(sgn[i])
    return GeneratorBasisChange(m)


def counit_values(basis: str = "original"):
    """Counit of each generator slot: the identity-matrix pattern, pushed
    through the basis change (degree-1 value of the slot's new meaning)."""
    eps = [QQ(0)] * 9
    for g in ("k", "r", "n"):
        eps[GEN_INDEX[g]] = QQ(1)
    if basis == "original":
        return eps
    inv = basis_change("original", basis).inv
    out = []
    for c in range(9):
        out.append(sum((inv[c, a] * eps[a] for a in range(9)), QQ(0)))
    return out


def counit_annihilates(rel: QuadraticRelationSet) -> bool:
    """Substituting counit values for generators must zero every relation."""
    eps = counit_values(rel.basis)
    for row in rel.subspace.rows:
        total = QQ(0)
        for idx, coeff in row.items():
            a, b = divmod(idx, 9)
            total += coeff * eps[a] * eps[b]
        if total:
            return False
    return True
