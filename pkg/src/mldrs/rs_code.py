"""Reed-Solomon codes C_q(D, k) and the generalized-RS column scaling.

Vectors are lists of field elements indexed by the position of the
corresponding evaluation point; the evaluation order is part of the code.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import algebra
from .algebra import Matrix, Poly
from .gf2m import FieldContext

GrsScalers = tuple[int, ...]


class ZeroInEvaluationSetError(ValueError):
    """The scaled-generator identity was requested for a set containing 0."""


@dataclass(frozen=True)
class RsCode:
    ctx: FieldContext
    evaluation_set: tuple[int, ...]
    k: int

    def __post_init__(self):
        D = tuple(self.evaluation_set)
        object.__setattr__(self, "evaluation_set", D)
        self.ctx.check(*D)
        if len(set(D)) != len(D):
            raise ValueError("evaluation points must be pairwise distinct")
        if not 0 < self.k < len(D) <= self.ctx.q:
            raise ValueError(f"need 0 < k < n <= q, got k={self.k}, n={len(D)}, q={self.ctx.q}")

    @property
    def n(self) -> int:
        return len(self.evaluation_set)

    @property
    def rho(self) -> int:
        """Covering radius; n - k for any MDS code with k < n."""
        return self.n - self.k


def _check_length(code: RsCode, v: Sequence[int]) -> None:
    if len(v) != code.n:
        raise ValueError(f"vector has length {len(v)}, code length is {code.n}")


def encode(code: RsCode, message: Poly) -> list[int]:
    deg = algebra.degree(message)
    if deg is not None and deg >= code.k:
        raise ValueError(f"message degree {deg} must be below k={code.k}")
    return [algebra.eval_poly(code.ctx, message, x) for x in code.evaluation_set]


def generator_matrix(code: RsCode) -> Matrix:
    return algebra.power_matrix(code.ctx, code.evaluation_set, code.k)


def syndrome_matrix(code: RsCode) -> Matrix:
    """The (n-k) x n power matrix; its kernel is the *scaled* code, not C_q(D, k)."""
    return algebra.power_matrix(code.ctx, code.evaluation_set, code.n - code.k)


def grs_scalers(code: RsCode) -> GrsScalers:
    """phi_j = prod over beta outside D of (x_j - beta), in O(n^2).

    X^q - X has derivative 1 in characteristic 2, so phi_j = 1 / D'(x_j)
    with D(X) the monic polynomial vanishing on the evaluation set.
    """
    ctx = code.ctx
    dprime = algebra.formal_derivative(algebra.expand_roots(ctx, code.evaluation_set))
    # D'(x) only has even powers: evaluate sum d_{2i+1} (x^2)^i.
    odd = dprime[::2]
    return tuple(
        ctx.inv(algebra.eval_poly(ctx, odd, ctx.mul(x, x))) for x in code.evaluation_set
    )


def apply_scaling(ctx: FieldContext, phis: GrsScalers, v: Sequence[int]) -> list[int]:
    if len(v) != len(phis):
        raise ValueError("length mismatch between vector and scalers")
    return [ctx.mul(p, a) for p, a in zip(phis, v)]


def apply_scaling_inv(ctx: FieldContext, phis: GrsScalers, v: Sequence[int]) -> list[int]:
    if len(v) != len(phis):
        raise ValueError("length mismatch between vector and scalers")
    return [ctx.div(a, p) for p, a in zip(phis, v)]


def is_codeword(code: RsCode, v: Sequence[int]) -> bool:
    """Membership by interpolating through all n positions."""
    _check_length(code, v)
    p = algebra.interpolate(code.ctx, list(zip(code.evaluation_set, v)))
    deg = algebra.degree(p)
    return deg is None or deg < code.k


def is_codeword_syndrome(code: RsCode, v: Sequence[int], phis: GrsScalers | None = None) -> bool:
    """Membership by the syndrome of the scaled vector."""
    _check_length(code, v)
    if phis is None:
        phis = grs_scalers(code)
    s = algebra.mat_vec(code.ctx, syndrome_matrix(code), apply_scaling(code.ctx, phis, v))
    return not any(s)


def scaled_generator_matrix(code: RsCode, phis: GrsScalers) -> Matrix:
    G = generator_matrix(code)
    return [[code.ctx.mul(p, g) for p, g in zip(phis, row)] for row in G]


def scaled_generator_product(code: RsCode, phis: GrsScalers) -> Matrix:
    """G' H^T, which is the k x (n-k) zero matrix exactly when phi maps C_q(D, k) onto ker H."""
    if 0 in code.evaluation_set:
        raise ZeroInEvaluationSetError("evaluation set contains 0")
    H = syndrome_matrix(code)
    return algebra.mat_mul(code.ctx, scaled_generator_matrix(code, phis), algebra.transpose(H))


def hamming_distance(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(a != b for a, b in zip(u, v))


def weight(v: Sequence[int]) -> int:
    return sum(1 for a in v if a)
