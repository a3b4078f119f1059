"""Vectors of F_2^m, simplicial complexes, and character sums over them.

Coordinates are 1-indexed as in [m] = {1, ..., m}; coordinate i lives in
bit i-1 of the bitmask. Sets of vectors are enumerated in ascending
bitmask order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union


class ComplexError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Vec2m:
    bits: int
    m: int

    def __post_init__(self):
        if self.m < 0 or not 0 <= self.bits < (1 << self.m):
            raise ComplexError(f"{self.bits:#x} is not a vector of F_2^{self.m}")

    @classmethod
    def from_tuple(cls, t) -> "Vec2m":
        return cls(sum(int(b) << i for i, b in enumerate(t)), len(t))

    @classmethod
    def unit(cls, i: int, m: int) -> "Vec2m":
        return cls(1 << (i - 1), m)

    @classmethod
    def from_support(cls, support: Iterable[int], m: int) -> "Vec2m":
        return cls(support_mask(support, m), m)

    def to_tuple(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.m))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i in range(self.m) if (self.bits >> i) & 1)

    @property
    def wt(self) -> int:
        return self.bits.bit_count()

    def covers(self, other: "Vec2m") -> bool:
        return covers(self, other)

    def __add__(self, other: "Vec2m") -> "Vec2m":
        _same_m(self, other)
        return Vec2m(self.bits ^ other.bits, self.m)

    def __str__(self):
        return "(" + ",".join(map(str, self.to_tuple())) + ")"


VecLike = Union[Vec2m, int]


def _same_m(x: Vec2m, y: Vec2m):
    if x.m != y.m:
        raise ComplexError(f"dimension mismatch: {x.m} != {y.m}")


def _bits(x: VecLike) -> int:
    return x.bits if isinstance(x, Vec2m) else int(x)


def support_mask(L: Iterable[int], m: int) -> int:
    """Bitmask of a subset of [m]."""
    mask = 0
    for i in L:
        if not 1 <= i <= m:
            raise ComplexError(f"index {i} is outside [{m}]")
        mask |= 1 << (i - 1)
    return mask


def mask_support(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


def parity(x: int) -> int:
    return x.bit_count() & 1


def covers(x: VecLike, y: VecLike) -> bool:
    """True iff Supp(y) is contained in Supp(x)."""
    if isinstance(x, Vec2m) and isinstance(y, Vec2m):
        _same_m(x, y)
    return _bits(y) & ~_bits(x) == 0


def submasks(mask: int) -> list[int]:
    """All bitmasks covered by `mask`, ascending."""
    out = []
    s = mask
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & mask
    out.reverse()
    return out


class Complex:
    """A simplicial complex of F_2^m given by its maximal elements.

    Dominated and repeated generators are pruned on construction.
    """

    def __init__(self, m: int, maximal_elements: Iterable[VecLike]):
        masks = set()
        for v in maximal_elements:
            if isinstance(v, Vec2m) and v.m != m:
                raise ComplexError(f"generator of dimension {v.m} in a complex of dimension {m}")
            b = _bits(v)
            if not 0 <= b < (1 << m):
                raise ComplexError(f"{b:#x} is not a vector of F_2^{m}")
            masks.add(b)
        if not masks:
            masks = {0}
        kept = [a for a in masks if not any(b != a and a & ~b == 0 for b in masks)]
        self.m = m
        self._maximal = tuple(sorted(kept))

    @property
    def maximal_elements(self) -> tuple[Vec2m, ...]:
        return tuple(Vec2m(b, self.m) for b in self._maximal)

    def __contains__(self, v: VecLike) -> bool:
        b = _bits(v)
        return any(b & ~g == 0 for g in self._maximal)

    def member_masks(self) -> list[int]:
        found = set()
        for g in self._maximal:
            found.update(submasks(g))
        return sorted(found)

    def members(self) -> list[Vec2m]:
        return [Vec2m(b, self.m) for b in self.member_masks()]

    def __len__(self):
        return len(self.member_masks())

    def __iter__(self) -> Iterator[Vec2m]:
        return iter(self.members())

    def __eq__(self, other):
        return isinstance(other, Complex) and (self.m, self._maximal) == (other.m, other._maximal)

    def __hash__(self):
        return hash((self.m, self._maximal))

    def __repr__(self):
        gens = ", ".join(str(v) for v in self.maximal_elements)
        return f"Complex(m={self.m}, maximal=[{gens}])"

    def to_json(self) -> list[int]:
        return self.member_masks()


class GenComplex(Complex):
    """Delta_L: the complex with the single maximal element of support L."""

    def __init__(self, m: int, L: Iterable[int]):
        self.L = frozenset(L)
        super().__init__(m, [support_mask(self.L, m)])

    @property
    def mask(self) -> int:
        return self._maximal[0]

    def complement_L(self) -> frozenset[int]:
        return frozenset(range(1, self.m + 1)) - self.L

    def dual(self) -> "GenComplex":
        """Delta_{L^c}, the orthogonal complement of Delta_L."""
        return GenComplex(self.m, self.complement_L())

    def __len__(self):
        return 1 << len(self.L)

    def __repr__(self):
        return f"GenComplex(m={self.m}, L={sorted(self.L)})"


def complex_members(c: Complex) -> list[Vec2m]:
    return c.members()


def chi(x: VecLike, P: Iterable[VecLike]) -> int:
    """Character sum sum_{y in P} (-1)^{x.y}."""
    xb = _bits(x)
    return sum(1 - 2 * parity(xb & _bits(y)) for y in P)


def chi_gen(x: VecLike, g: GenComplex) -> int:
    """chi over Delta_L in closed form: 2^|L| if Supp(x) misses L, else 0."""
    if isinstance(x, Vec2m) and x.m != g.m:
        raise ComplexError(f"dimension mismatch: {x.m} != {g.m}")
    return (1 << len(g.L)) if _bits(x) & g.mask == 0 else 0


def phi(x: VecLike, Y: Iterable[int]) -> int:
    """1 iff Supp(x) and Y are disjoint."""
    ymask = 0
    for i in Y:
        if i < 1:
            raise ComplexError(f"index {i} is outside [m]")
        ymask |= 1 << (i - 1)
    return int(_bits(x) & ymask == 0)


def chi_table(P: Iterable[int], m: int) -> list[int]:
    """chi_x(P) for every x in F_2^m, by direct summation."""
    pts = [_bits(y) for y in P]
    return [sum(1 - 2 * parity(x & y) for y in pts) for x in range(1 << m)]


def parse_L(text: str) -> frozenset[int]:
    """Parse a comma list such as "1,2,4"; an empty string gives the empty set."""
    text = text.strip()
    if not text or text in ("-", "{}"):
        return frozenset()
    try:
        return frozenset(int(t) for t in text.split(","))
    except ValueError:
        raise ComplexError(f"cannot parse index set {text!r}") from None


def parse_L_list(text: str) -> list[frozenset[int]]:
    """Parse "1,2;2,3;3,4" into one index set per layer."""
    return [parse_L(part) for part in text.split(";")]


def format_L(L: Iterable[int]) -> str:
    return ",".join(str(i) for i in sorted(L))
