"""Binary LFSR sequences: the solution space G(f) of f(L)a = 0.

A sequence is held as (characteristic polynomial, initial state), never as a
materialised stream. For f = x^n + c_{n-1}x^{n-1} + ... + c_0 the terms obey
a_{n+k} = sum_i c_i a_{i+k}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .gf2n import BinPoly, FieldCtx, FieldError, gf2_rank, monic_divisors, parse_poly


class SequenceError(ValueError):
    pass


def _as_poly(p) -> BinPoly:
    return p if isinstance(p, BinPoly) else BinPoly(parse_poly(p))


@dataclass(frozen=True)
class LfsrSeq:
    charpoly: BinPoly
    init_state: tuple[int, ...]

    def __post_init__(self):
        cp = _as_poly(self.charpoly)
        object.__setattr__(self, "charpoly", cp)
        if cp.degree < 0:
            raise SequenceError("characteristic polynomial must be nonzero")
        state = tuple(int(b) for b in self.init_state)
        if len(state) != cp.degree:
            raise SequenceError(f"initial state has {len(state)} bits, expected {cp.degree}")
        if any(b not in (0, 1) for b in state):
            raise SequenceError("state entries must be bits")
        object.__setattr__(self, "init_state", state)

    @classmethod
    def from_string(cls, charpoly, bits: str) -> "LfsrSeq":
        return cls(_as_poly(charpoly), tuple(int(c) for c in bits))

    @property
    def degree(self) -> int:
        return self.charpoly.degree

    def prefix(self, length: int) -> list[int]:
        """First `length` terms."""
        n = self.degree
        taps = [self.charpoly.coefficient(i) for i in range(n)]
        out = list(self.init_state[:length])
        while len(out) < length:
            k = len(out) - n
            bit = 0
            for i in range(n):
                if taps[i]:
                    bit ^= out[k + i]
            out.append(bit)
        return out

    def prefix_str(self, length: int) -> str:
        return "".join(map(str, self.prefix(length)))

    def term(self, k: int) -> int:
        return term(self, k)

    def state(self, k: int) -> tuple[int, ...]:
        return state(self, k)

    def is_zero(self) -> bool:
        return not any(self.init_state)

    def __add__(self, other: "LfsrSeq") -> "LfsrSeq":
        if self.charpoly != other.charpoly:
            raise SequenceError(
                f"cannot add sequences over {self.charpoly} and {other.charpoly}; "
                "lift them to a common characteristic polynomial first"
            )
        return LfsrSeq(self.charpoly, tuple(a ^ b for a, b in zip(self.init_state, other.init_state)))

    __xor__ = __add__


def term(seq: LfsrSeq, k: int) -> int:
    if k < 0:
        raise SequenceError("term index must be nonnegative")
    return seq.prefix(k + 1)[k]


def state(seq: LfsrSeq, k: int) -> tuple[int, ...]:
    """s_k = (a_k, ..., a_{k+n-1})."""
    if k < 0:
        raise SequenceError("state index must be nonnegative")
    return tuple(seq.prefix(k + seq.degree)[k:])


def shift(seq: LfsrSeq) -> LfsrSeq:
    """The left shift L a = (a_1, a_2, ...)."""
    return LfsrSeq(seq.charpoly, state(seq, 1))


def apply_poly(seq: LfsrSeq, g, length: int) -> list[int]:
    """First `length` terms of g(L) a."""
    gp = _as_poly(g)
    terms = seq.prefix(length + max(gp.degree, 0))
    coeffs = [i for i in range(gp.degree + 1) if gp.coefficient(i)]
    return [sum(terms[k + i] for i in coeffs) & 1 for k in range(length)]


def in_Gf(seq: LfsrSeq, g) -> bool:
    """True iff g(L) annihilates the sequence.

    g(L)a again satisfies the recurrence of seq.charpoly, so it vanishes as
    soon as deg(charpoly) consecutive terms vanish; the window used is longer.
    """
    gp = _as_poly(g)
    if gp.degree < 0:
        raise SequenceError("g must be a nonzero polynomial")
    window = seq.degree + gp.degree + 2 * seq.degree
    return not any(apply_poly(seq, gp, max(window, 1)))


def minimal_polynomial(seq: LfsrSeq) -> BinPoly:
    """Lowest-degree divisor of the characteristic polynomial annihilating seq."""
    for g in monic_divisors(seq.charpoly):
        if in_Gf(seq, g):
            return g
    raise AssertionError("the characteristic polynomial itself must annihilate the sequence")


def basis_sequences(ctx: FieldCtx) -> list[LfsrSeq]:
    """a_i = (l_{0,i}, l_{1,i}, ...): coordinate i of w^0, w^1, ... ."""
    n = ctx.n
    return [LfsrSeq(ctx.modulus, tuple(int(j == i) for j in range(n))) for i in range(n)]


StateMat = tuple[tuple[int, ...], ...]


def states_matrix(seq: LfsrSeq) -> StateMat:
    """Rows s_0, ..., s_{n-1}."""
    n = seq.degree
    terms = seq.prefix(2 * n - 1 if n else 0)
    return tuple(tuple(terms[r:r + n]) for r in range(n))


def row_mask(row: Sequence[int]) -> int:
    return sum(b << i for i, b in enumerate(row))


def matrix_rank(mat: Sequence[Sequence[int]]) -> int:
    return gf2_rank(row_mask(r) for r in mat)


def is_full_rank(mat: Sequence[Sequence[int]]) -> bool:
    return matrix_rank(mat) == len(mat)


def all_sequences(charpoly) -> list[LfsrSeq]:
    """Every member of G(f), one per initial state."""
    cp = _as_poly(charpoly)
    n = cp.degree
    if n < 0:
        raise FieldError("zero polynomial")
    return [LfsrSeq(cp, tuple((s >> i) & 1 for i in range(n))) for s in range(1 << n)]
