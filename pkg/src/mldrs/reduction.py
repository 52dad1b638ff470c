"""Conversions from three-dimensional matching to Reed-Solomon ML decoding.

``convert_std`` builds a decoding instance whose code depends on the triples;
``convert_prep`` builds one whose code (field, evaluation set, dimension)
depends only on t, so that all information about the triples sits in the
target vector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

from . import algebra
from .algebra import Matrix
from .gf2m import FieldContext, build_field
from .rs_code import GrsScalers, RsCode, apply_scaling_inv, grs_scalers, syndrome_matrix

Mode = Literal["std", "prep"]
Triple = tuple[int, int, int]


class InstanceTooSmallError(ValueError):
    """A matching instance with |T| <= t + 1, which the std conversion rejects."""


@dataclass(frozen=True)
class ThreeDmInstance:
    """Triples over {1..t}^3, kept in lexicographic order."""

    t: int
    triples: tuple[Triple, ...]

    def __post_init__(self):
        if self.t < 1:
            raise ValueError(f"t must be positive, got {self.t}")
        triples = tuple(tuple(int(c) for c in tr) for tr in self.triples)
        for tr in triples:
            if len(tr) != 3 or not all(1 <= c <= self.t for c in tr):
                raise ValueError(f"triple {tr} is not in {{1..{self.t}}}^3")
        if len(set(triples)) != len(triples):
            raise ValueError("duplicate triples")
        object.__setattr__(self, "triples", tuple(sorted(triples)))


@dataclass(frozen=True)
class MldRsInstance:
    """One decoding question: is there a codeword within distance w of y?"""

    code: RsCode
    w: int
    y: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "y", tuple(self.y))
        if len(self.y) != self.code.n:
            raise ValueError(f"target has length {len(self.y)}, code length is {self.code.n}")
        self.ctx.check(*self.y)
        if self.w < 0:
            raise ValueError("decoding radius must be non-negative")

    @property
    def ctx(self) -> FieldContext:
        return self.code.ctx


@dataclass(frozen=True)
class ReductionTrace:
    mode: Mode
    gamma: int
    z: tuple[int, ...]
    phis: GrsScalers
    H: Matrix
    W: Optional[list[list[int]]] = None
    chi: Optional[tuple[int, ...]] = None


def encode_triple(ctx: FieldContext, t: int, triple: Triple) -> int:
    """a^(a-1) + a^(t+b-1) + a^(2t+c-1): one bit in each of three t-bit blocks."""
    a, b, c = triple
    if not all(1 <= v <= t for v in triple):
        raise ValueError(f"triple {triple} is not in {{1..{t}}}^3")
    if ctx.m < 3 * t:
        raise ValueError(f"field degree {ctx.m} is below 3t = {3 * t}")
    return (1 << (a - 1)) | (1 << (t + b - 1)) | (1 << (2 * t + c - 1))


def target_coefficients(ctx: FieldContext, xs: Sequence[int], gamma: int) -> list[int]:
    """Solve power_matrix(xs, len(xs)) z = (0, ..., 0, 1, gamma) in closed form.

    z_j = (gamma + sum_{i != j} x_i) / prod_{i != j} (x_j + x_i).
    """
    if len(set(xs)) != len(xs):
        raise ValueError("points must be pairwise distinct")
    total = ctx.sum(xs)
    z = []
    for j, xj in enumerate(xs):
        num = gamma ^ total ^ xj
        den = ctx.prod(xj ^ xi for i, xi in enumerate(xs) if i != j)
        z.append(ctx.div(num, den))
    return z


def _finish(ctx, D, k, w, gamma, mode, **extra):
    code = RsCode(ctx, tuple(D), k)
    phis = grs_scalers(code)
    z = target_coefficients(ctx, D[: w + 1], gamma)
    y = apply_scaling_inv(ctx, phis[: w + 1], z) + [0] * (code.n - w - 1)
    trace = ReductionTrace(mode, gamma, tuple(z), phis, syndrome_matrix(code), **extra)
    return MldRsInstance(code, w, tuple(y)), trace


def convert_std(inst: ThreeDmInstance) -> tuple[MldRsInstance, ReductionTrace]:
    t, n = inst.t, len(inst.triples)
    if n <= t + 1:
        raise InstanceTooSmallError(f"std conversion needs |T| > t + 1 = {t + 1}, got |T| = {n}")
    m, k, w = 3 * t, n - (t + 1), t
    ctx = build_field(m)
    D = [encode_triple(ctx, t, tr) for tr in inst.triples]
    gamma = (1 << m) - 1
    return _finish(ctx, D, k, w, gamma, "std")


# -- preprocessing variant -----------------------------------------------------------


def all_triples(t: int) -> list[Triple]:
    """U x U x U in lexicographic order."""
    return list(itertools.product(range(1, t + 1), repeat=3))


def prep_parameters(t: int) -> tuple[int, int, int, int]:
    """(m, k, w, n) for the preprocessing conversion."""
    t3 = t**3
    return 3 * (t3 + t), 3 * t3 - (t + 1), t3 + t, 4 * t3


def encode_point_prep(ctx: FieldContext, t: int, j: int, ordered_triples: Sequence[Triple]) -> int:
    """The j-th evaluation point (1-based) of the preprocessing code."""
    t3 = t**3
    if ctx.m != 3 * (t3 + t):
        raise ValueError(f"field degree {ctx.m} differs from 3(t^3 + t) = {3 * (t3 + t)}")
    if not 1 <= j <= 4 * t3:
        raise ValueError(f"point index {j} outside 1..{4 * t3}")
    base = 3 * t - 1
    if j <= t3:
        a, b, c = ordered_triples[j - 1]
        return encode_triple(ctx, t, (a, b, c)) | (1 << (base + j))
    if j <= 2 * t3:
        return (1 << (base + j - t3)) | (1 << (base + j)) | (1 << (base + j + t3))
    if j <= 3 * t3:
        return (1 << (base + j - t3)) | (1 << (base + j))
    return 1 << (base + j - t3)


def characteristic_vector(inst: ThreeDmInstance) -> tuple[int, ...]:
    present = set(inst.triples)
    return tuple(int(tr in present) for tr in all_triples(inst.t))


def gamma_prep(ctx: FieldContext, t: int, chi: Sequence[int]) -> int:
    """Target sum whose bits read (1^{3t}, chi, chi, 1^{t^3})."""
    t3 = t**3
    if ctx.m != 3 * (t3 + t):
        raise ValueError(f"field degree {ctx.m} differs from 3(t^3 + t)")
    if len(chi) != t3:
        raise ValueError(f"characteristic vector must have length {t3}, got {len(chi)}")
    chi_bits = sum(1 << i for i, c in enumerate(chi) if c)
    ones_t3 = (1 << t3) - 1
    return ((1 << 3 * t) - 1) | (chi_bits << 3 * t) | (chi_bits << (3 * t + t3)) | (
        ones_t3 << (3 * t + 2 * t3)
    )


def build_w_matrix(t: int, ordered_triples: Sequence[Triple]) -> list[list[int]]:
    """Binary 3(t^3+t) x 4t^3 matrix laid out as blocks.

        [U 0 0 0]
        [I I 0 0]
        [0 I I 0]
        [0 I I I]

    with column j of U the three-bit incidence pattern of the j-th triple.
    """
    t3 = t**3
    rows = 3 * t + 3 * t3
    W = [[0] * (4 * t3) for _ in range(rows)]
    for j, (a, b, c) in enumerate(ordered_triples):
        for r in (a - 1, t + b - 1, 2 * t + c - 1):
            W[r][j] = 1
    blocks = {1: (0, 1), 2: (1, 2), 3: (1, 2, 3)}
    for row_block, col_blocks in blocks.items():
        for i in range(t3):
            for cb in col_blocks:
                W[3 * t + (row_block - 1) * t3 + i][cb * t3 + i] = 1
    return W


def convert_prep(inst: ThreeDmInstance) -> tuple[MldRsInstance, ReductionTrace]:
    t = inst.t
    m, k, w, n = prep_parameters(t)
    ctx = build_field(m)
    order = all_triples(t)
    D = [encode_point_prep(ctx, t, j, order) for j in range(1, n + 1)]
    chi = characteristic_vector(inst)
    gamma = gamma_prep(ctx, t, chi)
    return _finish(ctx, D, k, w, gamma, "prep", W=build_w_matrix(t, order), chi=chi)


def convert(inst: ThreeDmInstance, mode: Mode) -> tuple[MldRsInstance, ReductionTrace]:
    if mode == "std":
        return convert_std(inst)
    if mode == "prep":
        return convert_prep(inst)
    raise ValueError(f"unknown mode {mode!r}")


def syndrome_target(ctx: FieldContext, w: int, gamma: int) -> list[int]:
    """(0, ..., 0, 1, gamma) of length w + 1."""
    if w < 1:
        raise ValueError("syndrome target needs w >= 1")
    return [0] * (w - 1) + [1, gamma]


def syndrome(ctx: FieldContext, H: Matrix, z: Sequence[int]) -> list[int]:
    """H z^T for z zero-padded to the width of H."""
    z = list(z) + [0] * (len(H[0]) - len(z))
    return algebra.mat_vec(ctx, H, z)
