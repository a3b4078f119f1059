"""Defining-set codes C_{D*}, C_{D^c} over F_{2^n} and their binary subfield codes.

A point d = d_0 + w d_1 + ... + w^{n-1} d_{n-1} of F_{2^n}^m is stored packed
as the nm-bit integer sum_i d_i << (i*m). The same integer is the point
(d_0, ..., d_{n-1}) of the subfield defining set D^{(2)}, and ascending
packed order is the canonical codeword coordinate order.

Weights are computed by brute force: every message is encoded with real
field arithmetic and its nonzero symbols are counted.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .gf2n import (
    FieldCtx,
    dot_int,
    field_rank,
    gf2_rank,
    join_layers,
    pack_layers,
    split_layers,
    unpack_layers,
)
from .simplicial import format_L, submasks, support_mask

DSTAR = "dstar"
DC = "dc"
VARIANTS = (DSTAR, DC)

DEFAULT_MESSAGE_BUDGET = 1 << 20
DEFAULT_LENGTH_BUDGET = 1 << 12
MINIMALITY_BUDGET = 1 << 16
BUDGET_ENV = "SIMPLICIAL_CODES_BUDGET"

_CACHE_LIMIT = 1 << 12  # full message x point tables are cached up to this many points


class CodeError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def message_budget() -> int:
    env = os.environ.get(BUDGET_ENV)
    return int(env, 0) if env else DEFAULT_MESSAGE_BUDGET


# --------------------------------------------------------------------------
# defining sets


@dataclass(frozen=True)
class DefiningSet:
    ctx: FieldCtx
    m: int
    layers: tuple[tuple[int, ...], ...]
    variant: str
    points: tuple[int, ...] = field(repr=False)
    L_list: tuple[frozenset, ...] | None = None

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def length(self) -> int:
        return len(self.points)

    @property
    def size_D(self) -> int:
        size = 1
        for layer in self.layers:
            size *= len(layer)
        return size

    def field_points(self) -> list[tuple[int, ...]]:
        return [join_layers(unpack_layers(z, self.n, self.m), self.m) for z in self.points]

    def describe(self) -> dict:
        return {
            "n": self.n,
            "modulus": str(self.ctx.modulus),
            "m": self.m,
            "variant": self.variant,
            "L": [format_L(L) for L in self.L_list] if self.L_list is not None else None,
        }


def _points_for(layers, n: int, m: int, variant: str) -> tuple[int, ...]:
    D = sorted(pack_layers(ds, m) for ds in product(*layers))
    if variant == DSTAR:
        return tuple(z for z in D if z != 0)
    if variant == DC:
        inside = set(D)
        return tuple(z for z in range(1 << (n * m)) if z not in inside)
    raise CodeError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def build_defining_set(ctx: FieldCtx, m: int, L_list: Sequence[Iterable[int]], variant: str = DSTAR) -> DefiningSet:
    """D = Delta_{L_0} + w Delta_{L_1} + ... + w^{n-1} Delta_{L_{n-1}} and its D*/D^c variant."""
    if len(L_list) != ctx.n:
        raise CodeError(f"need {ctx.n} index sets for GF(2^{ctx.n}), got {len(L_list)}")
    Ls = tuple(frozenset(L) for L in L_list)
    for L in Ls:
        bad = [i for i in L if not 1 <= i <= m]
        if bad:
            raise CodeError(f"indices {bad} are outside [{m}]")
    layers = tuple(tuple(submasks(support_mask(L, m))) for L in Ls)
    return DefiningSet(ctx, m, layers, variant, _points_for(layers, ctx.n, m, variant), Ls)


def defining_set_from_layers(ctx: FieldCtx, m: int, layers: Sequence[Iterable[int]], variant: str = DSTAR) -> DefiningSet:
    """Same construction with arbitrary (not necessarily complex) layer subsets."""
    if len(layers) != ctx.n:
        raise CodeError(f"need {ctx.n} layers for GF(2^{ctx.n}), got {len(layers)}")
    norm = []
    for layer in layers:
        s = sorted(set(int(x) for x in layer))
        if any(not 0 <= x < (1 << m) for x in s):
            raise CodeError(f"layer element outside F_2^{m}")
        norm.append(tuple(s))
    norm = tuple(norm)
    return DefiningSet(ctx, m, norm, variant, _points_for(norm, ctx.n, m, variant), None)


def r_sets(L_list: Sequence[frozenset]) -> list[frozenset]:
    """R_i = L_i minus the union of the other L_j."""
    out = []
    for i, L in enumerate(L_list):
        others = set()
        for j, Lj in enumerate(L_list):
            if j != i:
                others |= Lj
        out.append(frozenset(L) - others)
    return out


def hypothesis_flags(L_list: Sequence[frozenset] | None, n: int, m: int) -> dict:
    if L_list is None:
        return {"layers_are_complexes": False}
    Ls = [frozenset(L) for L in L_list]
    total = sum(len(L) for L in Ls)
    R = r_sets(Ls)
    union = frozenset().union(*Ls)
    return {
        "layers_are_complexes": True,
        "all_nonempty": all(Ls),
        "R_nonempty": all(R[: n - 1]),
        "some_proper": any(len(L) < m for L in Ls),
        "all_equal": all(L == Ls[0] for L in Ls),
        "union_is_full": len(union) == m,
        "sum_L": total,
        "union_size": len(union),
        "sum_le_nm_minus_n_minus_1": total <= n * m - (n + 1),
        "sum_le_nm_minus_2": total <= n * m - 2,
    }


# --------------------------------------------------------------------------
# encoding


def encode(ds: DefiningSet, v: Sequence[int]) -> tuple[int, ...]:
    """(v.d)_{d in D-variant} with plain field arithmetic."""
    if len(v) != ds.m:
        raise CodeError(f"message has length {len(v)}, expected {ds.m}")
    for x in v:
        ds.ctx.check(x)
    return tuple(dot_int(v, d, ds.ctx) for d in ds.field_points())


def subfield_encode(ds: DefiningSet, z: int) -> tuple[int, ...]:
    """(z.d mod 2)_{d in D^{(2)}} for z = (a_0, ..., a_{n-1}) packed."""
    if not 0 <= z < (1 << (ds.n * ds.m)):
        raise CodeError(f"message {z} is not in (F_2^{ds.m})^{ds.n}")
    return tuple((z & d).bit_count() & 1 for d in ds.points)


def hamming_weight(word: Sequence[int]) -> int:
    return sum(1 for x in word if x)


@lru_cache(maxsize=8)
def _mul_table(ctx: FieldCtx) -> np.ndarray:
    return ctx.mul_table()


def _coordinate_elements(packed: np.ndarray, n: int, m: int) -> np.ndarray:
    """(len, m) array: field element at each coordinate of each packed vector."""
    out = np.zeros((len(packed), m), dtype=np.uint8)
    for j in range(m):
        for i in range(n):
            out[:, j] |= (((packed >> (i * m + j)) & 1) << i).astype(np.uint8)
    return out


def _field_block(ctx: FieldCtx, m: int, msgs: np.ndarray, pts: np.ndarray) -> np.ndarray:
    tab = _mul_table(ctx)
    ev = _coordinate_elements(msgs, ctx.n, m)
    ep = _coordinate_elements(pts, ctx.n, m)
    out = np.zeros((len(msgs), len(pts)), dtype=np.uint8)
    for j in range(m):
        out ^= tab[ev[:, j][:, None], ep[:, j][None, :]]
    return out


def _bits_matrix(packed: np.ndarray, width: int) -> np.ndarray:
    return ((packed[:, None] >> np.arange(width, dtype=np.int64)[None, :]) & 1).astype(np.float32)


def _binary_block(nm: int, msgs: np.ndarray, pts: np.ndarray) -> np.ndarray:
    prod = _bits_matrix(msgs, nm) @ _bits_matrix(pts, nm).T
    return (prod.astype(np.int64) & 1).astype(np.uint8)


@lru_cache(maxsize=4)
def _full_field_table(ctx: FieldCtx, m: int) -> np.ndarray:
    allv = np.arange(1 << (ctx.n * m), dtype=np.int64)
    return _field_block(ctx, m, allv, allv)


@lru_cache(maxsize=4)
def _full_binary_table(nm: int) -> np.ndarray:
    allv = np.arange(1 << nm, dtype=np.int64)
    return _binary_block(nm, allv, allv)


def codeword_block(ds: DefiningSet, msgs: np.ndarray, binary: bool = False) -> np.ndarray:
    """Codewords (rows) for the packed messages `msgs`."""
    pts = np.asarray(ds.points, dtype=np.int64)
    nm = ds.n * ds.m
    if (1 << nm) <= _CACHE_LIMIT:
        full = _full_binary_table(nm) if binary else _full_field_table(ds.ctx, ds.m)
        return full[np.ix_(msgs, pts)]
    if binary:
        return _binary_block(nm, msgs, pts)
    return _field_block(ds.ctx, ds.m, msgs, pts)


def message_weights(ds: DefiningSet, binary: bool = False, budget: int | None = None, workers: int = 1) -> np.ndarray:
    """Hamming weight of the codeword of every message, in packed-message order."""
    nm = ds.n * ds.m
    count = 1 << nm
    budget = message_budget() if budget is None else budget
    if count > budget:
        raise BudgetExceeded(f"{count} messages exceed the enumeration budget {budget}")
    if ds.length > DEFAULT_LENGTH_BUDGET:
        raise BudgetExceeded(f"length {ds.length} exceeds the length budget {DEFAULT_LENGTH_BUDGET}")
    step = max(1, (1 << 24) // max(ds.length, 1))
    starts = range(0, count, step)

    def run(start):
        msgs = np.arange(start, min(start + step, count), dtype=np.int64)
        return np.count_nonzero(codeword_block(ds, msgs, binary), axis=1)

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(s) for s in starts]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


# --------------------------------------------------------------------------
# generator matrices and dimension


def generator_matrix(ds: DefiningSet) -> list[list[int]]:
    """m x N matrix over F_{2^n}; column t is the t-th point of the defining set."""
    pts = ds.field_points()
    return [[d[j] for d in pts] for j in range(ds.m)]


def subfield_generator_matrix(ds: DefiningSet) -> np.ndarray:
    """Stack G_0, ..., G_{n-1}, the coordinate planes of the field generator."""
    G = np.asarray(generator_matrix(ds), dtype=np.int64).reshape(ds.m, ds.length)
    planes = [((G >> i) & 1).astype(np.uint8) for i in range(ds.n)]
    return np.vstack(planes)


def _independent_rows(rows: Sequence[Sequence[int]], ctx: FieldCtx) -> list[int]:
    """Indices of a maximal set of independent rows, chosen greedily."""
    chosen: list[int] = []
    rank = 0
    for i in range(len(rows)):
        r = field_rank([rows[j] for j in chosen] + [rows[i]], ctx)
        if r > rank:
            chosen.append(i)
            rank = r
    return chosen


def _binary_row_masks(ds: DefiningSet) -> list[int]:
    G2 = subfield_generator_matrix(ds)
    return [sum(1 << t for t in np.nonzero(row)[0].tolist()) for row in G2]


# --------------------------------------------------------------------------
# minimality


def _class_representatives(ds: DefiningSet, binary: bool) -> np.ndarray:
    """One codeword per nonzero codeword up to scalars, as rows."""
    if binary:
        rows = _binary_row_masks(ds)
        basis_idx = []
        for i in range(len(rows)):
            if gf2_rank([rows[j] for j in basis_idx] + [rows[i]]) > len(basis_idx):
                basis_idx.append(i)
        k = len(basis_idx)
        coeffs = [c for c in product((0, 1), repeat=k) if any(c)]
        msgs = np.array(
            [sum(1 << basis_idx[t] for t in range(k) if c[t]) for c in coeffs], dtype=np.int64
        )
        return codeword_block(ds, msgs, binary=True) if len(msgs) else np.zeros((0, ds.length), np.uint8)
    G = generator_matrix(ds)
    piv = _independent_rows(G, ds.ctx)
    q, n, m = ds.q, ds.n, ds.m
    msgs = []
    # message coefficient vectors over the pivot rows whose first nonzero entry is 1
    for c in product(range(q), repeat=len(piv)):
        nz = next((x for x in c if x), 0)
        if nz != 1:
            continue
        vec = [0] * m
        for t, j in enumerate(piv):
            vec[j] = c[t]
        msgs.append(pack_layers(split_layers(vec, n), m))
    if not msgs:
        return np.zeros((0, ds.length), np.uint8)
    return codeword_block(ds, np.asarray(msgs, dtype=np.int64))


def is_minimal_exhaustive(ds: DefiningSet, binary: bool = False) -> bool:
    """Every nonzero codeword covers no codeword outside its own scalar multiples.

    Classes of codewords modulo scalars are compared pairwise; u' can only be
    covered by u when wt(u') <= wt(u), and at equal weight only by sharing the
    support.
    """
    reps = _class_representatives(ds, binary)
    if len(reps) <= 1:
        return True
    supp = reps != 0
    wts = supp.sum(axis=1)
    packed = np.packbits(supp, axis=1)
    _, counts = np.unique(packed, axis=0, return_counts=True)
    if (counts > 1).any():
        return False
    S = supp.astype(np.float32)
    Z = (~supp).astype(np.float32)
    levels = np.unique(wts)
    for lvl in levels[1:]:
        hi = np.nonzero(wts == lvl)[0]
        lo = np.nonzero(wts < lvl)[0]
        for start in range(0, len(hi), 256):
            blk = hi[start:start + 256]
            # overlap of each lighter support with each heavier zero set
            overlap = S[lo] @ Z[blk].T
            if (overlap == 0).any():
                return False
    return True


# --------------------------------------------------------------------------
# reports


def griesmer_sum(k: int, d: int, q: int) -> int:
    return sum(-(-d // q**i) for i in range(k))


def load_bounds(path) -> dict[tuple[int, int, int], int]:
    """Local table of best known distances: CSV with columns q,length,k,best_d."""
    table = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            table[(int(row["q"]), int(row["length"]), int(row["k"]))] = int(row["best_d"])
    return table


@dataclass
class CodeReport:
    q: int
    length: int
    k: int
    d: int | None
    weights: list[list[int]]
    griesmer_sum: int
    is_griesmer: bool
    distance_optimal: bool | None
    ab_ratio: float | None
    ab_minimal: bool | None
    exhaustive_minimal: bool | None
    hypotheses: dict
    instance: dict = field(default_factory=dict)

    @property
    def nonzero_weights(self) -> list[int]:
        return [w for w, c in self.weights if w > 0 and c > 0]

    @property
    def weight_count(self) -> int:
        return len(self.nonzero_weights)

    @property
    def params(self) -> tuple:
        return (self.length, self.k, self.d)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "CodeReport":
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "CodeReport":
        return cls.from_dict(json.loads(text))

    def summary(self) -> str:
        ws = ", ".join(f"{w}:{c}" for w, c in self.weights)
        return (
            f"[{self.length}, {self.k}, {self.d}] over F_{self.q}  weights {{{ws}}}\n"
            f"griesmer_sum={self.griesmer_sum} is_griesmer={self.is_griesmer} "
            f"distance_optimal={self.distance_optimal}\n"
            f"ab_ratio={self.ab_ratio} ab_minimal={self.ab_minimal} "
            f"exhaustive_minimal={self.exhaustive_minimal}"
        )


def report_from_weights(
    msg_weights: np.ndarray,
    q: int,
    length: int,
    k: int,
    *,
    hypotheses: dict,
    instance: dict,
    exhaustive_minimal: bool | None,
    bounds: dict | None = None,
) -> CodeReport:
    total = len(msg_weights)
    kernel = total // q**k
    if kernel * q**k != total:
        raise AssertionError("message count is not a multiple of the codeword count")
    values, counts = np.unique(msg_weights, return_counts=True)
    weights = []
    for w, c in zip(values.tolist(), counts.tolist()):
        if c % kernel:
            raise AssertionError(f"weight {w} occurs {c} times, not a multiple of {kernel}")
        weights.append([int(w), c // kernel])
    nonzero = [w for w, _ in weights if w > 0]
    d = min(nonzero) if nonzero else None
    gs = griesmer_sum(k, d, q) if d is not None else 0
    is_g = d is not None and gs == length
    optimal = True if is_g else None
    if bounds is not None and d is not None and (q, length, k) in bounds:
        optimal = bounds[(q, length, k)] <= d
    if nonzero:
        wmin, wmax = min(nonzero), max(nonzero)
        ratio = float(Fraction(wmin, wmax))
        ab = wmin * q > wmax * (q - 1)
    else:
        ratio, ab = None, None
    return CodeReport(
        q=q,
        length=length,
        k=k,
        d=d,
        weights=weights,
        griesmer_sum=gs,
        is_griesmer=is_g,
        distance_optimal=optimal,
        ab_ratio=ratio,
        ab_minimal=ab,
        exhaustive_minimal=exhaustive_minimal,
        hypotheses=hypotheses,
        instance=instance,
    )


def code_dimension(ds: DefiningSet, binary: bool = False) -> int:
    if ds.length == 0:
        return 0
    if binary:
        return gf2_rank(_binary_row_masks(ds))
    return field_rank(generator_matrix(ds), ds.ctx)


def _report(ds, binary, budget, bounds, minimality, workers, msg_weights=None):
    if ds.length == 0:
        raise CodeError("the defining set is empty")
    q = 2 if binary else ds.q
    k = code_dimension(ds, binary)
    if msg_weights is None:
        msg_weights = message_weights(ds, binary, budget, workers)
    exhaustive = None
    if minimality and q**k <= MINIMALITY_BUDGET:
        exhaustive = is_minimal_exhaustive(ds, binary)
    instance = ds.describe()
    instance["subfield"] = binary
    return report_from_weights(
        msg_weights,
        q,
        ds.length,
        k,
        hypotheses=hypothesis_flags(ds.L_list, ds.n, ds.m),
        instance=instance,
        exhaustive_minimal=exhaustive,
        bounds=bounds,
    )


def code_report(ds: DefiningSet, *, budget=None, bounds=None, minimality=True, workers=1) -> CodeReport:
    """Parameters, weight distribution and optimality/minimality verdicts of C_{D-variant}."""
    return _report(ds, False, budget, bounds, minimality, workers)


@dataclass(frozen=True)
class SubfieldSpec:
    base: DefiningSet
    points: tuple[int, ...]

    @property
    def ambient_dimension(self) -> int:
        return self.base.n * self.base.m

    def tuples(self) -> list[tuple[int, ...]]:
        return [unpack_layers(z, self.base.n, self.base.m) for z in self.points]


def subfield_expand(ds: DefiningSet) -> SubfieldSpec:
    """D^{(2)}: each point d_0 + w d_1 + ... becomes (d_0, ..., d_{n-1}) in F_2^{nm}."""
    return SubfieldSpec(ds, ds.points)


def subfield_report(ss: SubfieldSpec, variant: str | None = None, *, budget=None, bounds=None, minimality=True, workers=1) -> CodeReport:
    ds = ss.base
    if variant is not None and variant != ds.variant:
        ds = DefiningSet(ds.ctx, ds.m, ds.layers, variant, _points_for(ds.layers, ds.n, ds.m, variant), ds.L_list)
    return _report(ds, True, budget, bounds, minimality, workers)
