"""Arithmetic in F_{2^n} = F_2(w) over the polynomial basis {1, w, ..., w^{n-1}}.

Field elements are stored as n-bit integers: bit i is the coefficient of w^i.
Binary polynomials use the same convention (bit i is the coefficient of x^i).
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_DEGREE = 8


class FieldError(ValueError):
    """Invalid polynomial, field element or field construction."""


# --------------------------------------------------------------------------
# binary polynomials


@dataclass(frozen=True, order=True)
class BinPoly:
    coeffs: int

    def __post_init__(self):
        if self.coeffs < 0:
            raise FieldError("polynomial bitmask must be nonnegative")

    @property
    def degree(self) -> int:
        """Index of the highest set bit; -1 for the zero polynomial."""
        return self.coeffs.bit_length() - 1

    def coefficient(self, i: int) -> int:
        return (self.coeffs >> i) & 1

    def __bool__(self):
        return self.coeffs != 0

    def __add__(self, other: "BinPoly") -> "BinPoly":
        return BinPoly(self.coeffs ^ other.coeffs)

    def __mul__(self, other: "BinPoly") -> "BinPoly":
        return BinPoly(clmul(self.coeffs, other.coeffs))

    def __divmod__(self, other: "BinPoly"):
        q, r = poly_divmod(self.coeffs, other.coeffs)
        return BinPoly(q), BinPoly(r)

    def __mod__(self, other: "BinPoly") -> "BinPoly":
        return divmod(self, other)[1]

    def __str__(self):
        return poly_to_str(self.coeffs)

    @classmethod
    def parse(cls, text) -> "BinPoly":
        return cls(parse_poly(text))


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bitmask polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise FieldError("division by the zero polynomial")
    db = b.bit_length() - 1
    q = 0
    while a and a.bit_length() - 1 >= db:
        s = a.bit_length() - 1 - db
        q |= 1 << s
        a ^= b << s
    return q, a


def poly_mod(a: int, b: int) -> int:
    return poly_divmod(a, b)[1]


_TERM = re.compile(r"^(?:(1)|x(?:\^(\d+))?)$")


def parse_poly(text) -> int:
    """Parse "x^3+x+1", a hex mask "0xB", or a plain int into a bitmask."""
    if isinstance(text, BinPoly):
        return text.coeffs
    if isinstance(text, int):
        if text < 0:
            raise FieldError(f"negative polynomial mask {text}")
        return text
    s = str(text).replace(" ", "").lower()
    if not s:
        raise FieldError("empty polynomial")
    if s.startswith("0x"):
        try:
            return int(s, 16)
        except ValueError:
            raise FieldError(f"bad hex polynomial {text!r}") from None
    if s.isdigit() and s not in ("0", "1"):
        raise FieldError(f"ambiguous polynomial {text!r}; use x^k terms or 0x hex")
    if s == "0":
        return 0
    mask = 0
    for term in s.split("+"):
        match = _TERM.match(term)
        if match is None:
            raise FieldError(f"cannot parse term {term!r} in {text!r}")
        if match.group(1):
            e = 0
        else:
            e = int(match.group(2)) if match.group(2) else 1
        mask ^= 1 << e
    return mask


def poly_to_str(mask: int) -> str:
    if mask == 0:
        return "0"
    terms = []
    for e in range(mask.bit_length() - 1, -1, -1):
        if (mask >> e) & 1:
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
    return "+".join(terms)


def is_irreducible(p) -> bool:
    """Trial division by every monic polynomial of degree <= deg(p)/2."""
    mask = parse_poly(p)
    if mask == 0:
        raise FieldError("the zero polynomial has no irreducibility")
    d = mask.bit_length() - 1
    if d < 1:
        return False
    for g in range(2, 1 << (d // 2 + 1)):
        if poly_mod(mask, g) == 0:
            return False
    return True


def irreducible_polys(n: int) -> list[BinPoly]:
    """All irreducible polynomials of degree n, ascending by bitmask."""
    return [BinPoly(p) for p in range(1 << n, 1 << (n + 1)) if is_irreducible(p)]


def default_modulus(n: int) -> BinPoly:
    """Smallest irreducible of degree n with nonzero constant term."""
    for p in irreducible_polys(n):
        if p.coeffs & 1:
            return p
    raise FieldError(f"no irreducible polynomial of degree {n}")


def monic_divisors(p) -> list[BinPoly]:
    """Divisors of p over F_2, ordered by degree then bitmask."""
    mask = parse_poly(p)
    if mask == 0:
        raise FieldError("the zero polynomial has no finite divisor list")
    divs = [g for g in range(1, 1 << mask.bit_length()) if poly_mod(mask, g) == 0]
    divs.sort(key=lambda g: (g.bit_length(), g))
    return [BinPoly(g) for g in divs]


# --------------------------------------------------------------------------
# GF(2) bit matrices (rows as int bitmasks)


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of a list of row bitmasks."""
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return len(pivots)


# --------------------------------------------------------------------------
# the field


@dataclass(frozen=True)
class FieldCtx:
    """F_2(w) with w a root of `modulus`, plus the coordinates of w^0..w^K."""

    n: int
    modulus: BinPoly
    power_table: tuple[int, ...] = field(repr=False)

    @property
    def q(self) -> int:
        return 1 << self.n

    @property
    def K(self) -> int:
        return len(self.power_table) - 1

    def l(self, k: int, i: int) -> int:
        """Coefficient of w^i in the reduced expression of w^k."""
        return (self.power_table[k] >> i) & 1

    def power(self, k: int) -> int:
        if k < len(self.power_table):
            return self.power_table[k]
        return self.pow(self.reduce(0b10), k)

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not an element of GF(2^{self.n})")
        return a

    def reduce(self, a: int) -> int:
        return poly_mod(a, self.modulus.coeffs)

    def mul(self, a: int, b: int) -> int:
        return self.reduce(clmul(a, b))

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.q - 2)

    def mul_table(self):
        """q x q multiplication table as a uint8 numpy array."""
        import numpy as np

        q = self.q
        tab = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            for b in range(a, q):
                tab[a, b] = tab[b, a] = self.mul(a, b)
        return tab

    def power_table_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k"] + [f"l{i}" for i in range(self.n)])
        for k, row in enumerate(self.power_table):
            w.writerow([k] + [(row >> i) & 1 for i in range(self.n)])
        return buf.getvalue()


def make_ctx(p, K: int | None = None) -> FieldCtx:
    """Build F_2[x]/(p); the power table covers w^0 .. w^K (default 2n-2)."""
    mask = parse_poly(p)
    if mask == 0 or not is_irreducible(mask):
        raise FieldError(f"{poly_to_str(mask)} is not irreducible over F_2")
    n = mask.bit_length() - 1
    if n > MAX_DEGREE:
        raise FieldError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")
    if K is None:
        K = 2 * n - 2
    if K < 2 * n - 2:
        raise FieldError(f"K={K} is below 2n-2={2 * n - 2}")
    rows = [1]
    for _ in range(K):
        rows.append(poly_mod(rows[-1] << 1, mask))
    return FieldCtx(n, BinPoly(mask), tuple(rows))


@dataclass(frozen=True)
class Fq:
    """A field element given by its n coordinate bits."""

    coords: int
    n: int

    def __post_init__(self):
        if not 0 <= self.coords < (1 << self.n):
            raise FieldError(f"coords {self.coords} do not fit in {self.n} bits")

    def bits(self) -> tuple[int, ...]:
        return tuple((self.coords >> i) & 1 for i in range(self.n))

    def __bool__(self):
        return self.coords != 0

    def __add__(self, other: "Fq") -> "Fq":
        return add(self, other)


def _same_n(a: Fq, b: Fq):
    if a.n != b.n:
        raise FieldError(f"mismatched extension degrees {a.n} and {b.n}")


def add(a: Fq, b: Fq) -> Fq:
    _same_n(a, b)
    return Fq(a.coords ^ b.coords, a.n)


def mul(a: Fq, b: Fq, ctx: FieldCtx) -> Fq:
    _same_n(a, b)
    if a.n != ctx.n:
        raise FieldError(f"elements of degree {a.n} used with a degree-{ctx.n} field")
    return Fq(ctx.mul(a.coords, b.coords), ctx.n)


def dot(v: Sequence[Fq], d: Sequence[Fq], ctx: FieldCtx) -> Fq:
    """Field-valued inner product sum_i v_i d_i."""
    if len(v) != len(d):
        raise FieldError(f"length mismatch {len(v)} != {len(d)}")
    acc = Fq(0, ctx.n)
    for a, b in zip(v, d):
        acc = add(acc, mul(a, b, ctx))
    return acc


def dot_int(v: Sequence[int], d: Sequence[int], ctx: FieldCtx) -> int:
    if len(v) != len(d):
        raise FieldError(f"length mismatch {len(v)} != {len(d)}")
    acc = 0
    for a, b in zip(v, d):
        acc ^= ctx.mul(a, b)
    return acc


def eval_poly_at(p, x: int, ctx: FieldCtx) -> int:
    """Evaluate a binary polynomial at a field element (Horner)."""
    mask = parse_poly(p)
    acc = 0
    for e in range(mask.bit_length() - 1, -1, -1):
        acc = ctx.mul(acc, x) ^ ((mask >> e) & 1)
    return acc


def field_rank(rows: Sequence[Sequence[int]], ctx: FieldCtx) -> int:
    """Rank over F_{2^n} by Gaussian elimination."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = ctx.inv(M[rank][col])
        M[rank] = [ctx.mul(inv, x) for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col]:
                f = M[r][col]
                M[r] = [x ^ ctx.mul(f, y) for x, y in zip(M[r], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank


# --------------------------------------------------------------------------
# F_{2^n}^m  <->  n layers of F_2^m
#
# A vector (v_1, ..., v_m) over F_{2^n} is written v = a_0 + w a_1 + ... +
# w^{n-1} a_{n-1} with a_i in F_2^m; bit j-1 of a_i is coordinate i of v_j.
# The packed form is the nm-bit integer sum_i a_i << (i*m).


def split_layers(vec: Sequence[int], n: int) -> tuple[int, ...]:
    """Field vector -> (a_0, ..., a_{n-1})."""
    return tuple(
        sum(((x >> i) & 1) << j for j, x in enumerate(vec)) for i in range(n)
    )


def join_layers(layers: Sequence[int], m: int) -> tuple[int, ...]:
    """(a_0, ..., a_{n-1}) -> field vector of length m."""
    return tuple(
        sum(((a >> j) & 1) << i for i, a in enumerate(layers)) for j in range(m)
    )


def pack_layers(layers: Sequence[int], m: int) -> int:
    z = 0
    for i, a in enumerate(layers):
        z |= a << (i * m)
    return z


def unpack_layers(z: int, n: int, m: int) -> tuple[int, ...]:
    mask = (1 << m) - 1
    return tuple((z >> (i * m)) & mask for i in range(n))
