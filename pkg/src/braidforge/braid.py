"""The parametric 9x9 braid matrix family and its Yang-Baxter identities.

The braid operator Rhat(theta) has three "channels" a, b, c.  Each channel
carries a pair of entries

    x_plus  = (exp(m_x_plus * theta) + exp(m_x_minus * theta)) / 2
    x_minus = (exp(m_x_plus * theta) - exp(m_x_minus * theta)) / 2

placed on a fixed sparsity pattern (an anti-diagonal pairing of the nine
two-site states, with the middle state fixed).  Setting theta = 0 gives the
identity; the constant solutions put every x_plus at 1/2 and every x_minus
at one of +-1/2, giving eight sign cases.

The R-matrix of the RTT construction is R = P @ Rhat with P the two-site
flip.  theta-dependent identities are verified numerically in floats;
constant ones exactly over the rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import QQ, Matrix, embed_site, permutation_matrix

# channel letter, +/- sign and matrix position of each nonzero entry of Rhat;
# (4, 4) holds the constant 1.
RHAT_PATTERN = (
    (0, 0, "a", +1), (0, 8, "a", -1),
    (1, 1, "b", +1), (1, 7, "b", -1),
    (2, 2, "a", +1), (2, 6, "a", -1),
    (3, 3, "c", +1), (3, 5, "c", -1),
    (5, 3, "c", -1), (5, 5, "c", +1),
    (6, 2, "a", -1), (6, 6, "a", +1),
    (7, 1, "b", -1), (7, 7, "b", +1),
    (8, 0, "a", -1), (8, 8, "a", +1),
)


@dataclass(frozen=True)
class BraidParams:
    """The six exponent parameters, one +/- pair per channel."""

    m11_plus: float
    m11_minus: float
    m21_plus: float
    m21_minus: float
    m22_plus: float
    m22_minus: float

    def channel_exponents(self, channel: str):
        return {
            "a": (self.m11_plus, self.m11_minus),
            "b": (self.m21_plus, self.m21_minus),
            "c": (self.m22_plus, self.m22_minus),
        }[channel]


@dataclass(frozen=True)
class SignCase:
    """Signs of a_minus, b_minus, c_minus relative to the common value 1/2."""

    eps_a: int
    eps_b: int
    eps_c: int

    def __post_init__(self):
        if not all(e in (1, -1) for e in (self.eps_a, self.eps_b, self.eps_c)):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def parse(cls, text: str) -> "SignCase":
        if len(text) != 3 or any(ch not in "+-" for ch in text):
            raise ValueError(f"bad sign case {text!r}; expected e.g. '+-+'")
        return cls(*(1 if ch == "+" else -1 for ch in text))

    def __str__(self):
        return "".join("+" if e > 0 else "-" for e in (self.eps_a, self.eps_b, self.eps_c))


# enumeration order of the eight constant solutions
ALL_CASES = tuple(
    SignCase.parse(s)
    for s in ("+++", "-++", "+-+", "++-", "+--", "-+-", "--+", "---")
)


def _channel_values(p: BraidParams, theta: float):
    vals = {}
    for ch in "abc":
        mp, mm = p.channel_exponents(ch)
        for m in (mp * theta, mm * theta):
            if abs(m) > 700.0:
                raise OverflowError(f"exponent {m} overflows the float range")
        ep, em = math.exp(mp * theta), math.exp(mm * theta)
        vals[ch] = ((ep + em) / 2.0, (ep - em) / 2.0)
    return vals


def build_rhat(p: BraidParams, theta: float) -> np.ndarray:
    """Float 9x9 braid operator at spectral parameter theta."""
    vals = _channel_values(p, theta)
    m = np.zeros((9, 9))
    m[4, 4] = 1.0
    for i, j, ch, sign in RHAT_PATTERN:
        plus, minus = vals[ch]
        m[i, j] = plus if sign > 0 else minus
    return m


def build_R(rhat):
    """R = P @ Rhat, the RTT-side matrix; accepts the exact or float lane."""
    if isinstance(rhat, Matrix):
        if rhat.shape != (9, 9):
            raise ValueError("expected a 9x9 matrix")
        return permutation_matrix(3) @ rhat
    rhat = np.asarray(rhat)
    if rhat.shape != (9, 9):
        raise ValueError("expected a 9x9 matrix")
    return permutation_matrix(3).to_float() @ rhat


def build_constant_rhat(case: SignCase) -> Matrix:
    """Exact constant braid operator: x_plus = 1/2, x_minus = eps_x/2."""
    half = QQ(1, 2)
    eps = {"a": case.eps_a, "b": case.eps_b, "c": case.eps_c}
    m = Matrix.zeros(9, 9)
    m[4, 4] = QQ(1)
    for i, j, ch, sign in RHAT_PATTERN:
        m[i, j] = half if sign > 0 else eps[ch] * half
    return m


def build_constant_R(case: SignCase) -> Matrix:
    return build_R(build_constant_rhat(case))


def _max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m)))


def check_braid_baxterized(p: BraidParams, theta: float, theta2: float) -> float:
    """Max-abs residual of the parameter-shifted braid identity.

    Rhat12(t) Rhat23(t+t') Rhat12(t') - Rhat23(t') Rhat12(t+t') Rhat23(t).
    """
    r12_t = embed_site(build_rhat(p, theta), "12")
    r12_s = embed_site(build_rhat(p, theta2), "12")
    r23_t = embed_site(build_rhat(p, theta), "23")
    r23_s = embed_site(build_rhat(p, theta2), "23")
    mid12 = embed_site(build_rhat(p, theta + theta2), "12")
    mid23 = embed_site(build_rhat(p, theta + theta2), "23")
    return _max_abs(r12_t @ mid23 @ r12_s - r23_s @ mid12 @ r23_t)


def check_ybe_baxterized(p: BraidParams, theta: float, theta2: float) -> float:
    """Max-abs residual of R12(t) R13(t+t') R23(t') - R23(t') R13(t+t') R12(t)."""
    r12 = embed_site(build_R(build_rhat(p, theta)), "12")
    r13 = embed_site(build_R(build_rhat(p, theta + theta2)), "13")
    r23 = embed_site(build_R(build_rhat(p, theta2)), "23")
    return _max_abs(r12 @ r13 @ r23 - r23 @ r13 @ r12)


def check_constant_ybe(rhat: Matrix) -> bool:
    """Exact Yang-Baxter identity for R = P @ rhat over the rationals."""
    R = build_R(rhat)
    r12 = embed_site(R, "12")
    r13 = embed_site(R, "13")
    r23 = embed_site(R, "23")
    return r12 @ r13 @ r23 == r23 @ r13 @ r12


def check_constant_braid(rhat: Matrix) -> bool:
    """Exact braid identity Rhat12 Rhat23 Rhat12 = Rhat23 Rhat12 Rhat23."""
    r12 = embed_site(rhat, "12")
    r23 = embed_site(rhat, "23")
    return r12 @ r23 @ r12 == r23 @ r12 @ r23


def sample_params(rng: np.random.Generator, bound: float = 2.0) -> BraidParams:
    return BraidParams(*(float(x) for x in rng.uniform(-bound, bound, size=6)))
