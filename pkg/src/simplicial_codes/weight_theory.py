"""Closed-form weights of c_{D*}(v) and c_{D^c}(v) via character sums.

Writing v = a_0 + w a_1 + ... and d = d_0 + w d_1 + ..., the F_2-coordinate
eta_i of v.d is sum_r beta_{i,r} . d_r, where beta_{i,r} is an F_2-combination
of the a_k. Row r of the bit matrix M_i holds the coefficients of beta_{i,r}
(bit k <-> a_k). W is the span of gamma_i = (rows of M_i), and

    wt(c_{D*}(v)) = |D| - 2^{-n} sum_{w in W} prod_j chi_{~w_j}(D_j)

where ~w_j is w_j realised against the concrete a_k.

Matrices are stored 0-indexed as tuples of row bitmasks (bit c = column c);
entry (r, c) here is entry (r+1, c+1) in 1-indexed notation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .gf2n import FieldCtx, gf2_rank, join_layers, split_layers
from .lfsr import basis_sequences, state
from .simplicial import chi_table, support_mask

BitMatrix = tuple[int, ...]


def antidiagonal(n: int, k: int) -> BitMatrix:
    """A_k: ones where row + column == k (0-indexed)."""
    return tuple((1 << (k - r)) if 0 <= k - r < n else 0 for r in range(n))


def mat_add(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    return tuple(x ^ y for x, y in zip(a, b))


def mat_to_lists(a: BitMatrix, n: int) -> list[list[int]]:
    return [[(row >> c) & 1 for c in range(n)] for row in a]


def mat_from_lists(rows: Sequence[Sequence[int]]) -> BitMatrix:
    return tuple(sum(int(b) << c for c, b in enumerate(r)) for r in rows)


@dataclass(frozen=True)
class EtaSystem:
    ctx: FieldCtx
    A: tuple[BitMatrix, ...]
    M: tuple[BitMatrix, ...]

    @property
    def n(self) -> int:
        return self.ctx.n

    def combination(self, subset: int) -> BitMatrix:
        """Sum of the M_i with bit i set in `subset`."""
        acc = (0,) * self.n
        for i in range(self.n):
            if (subset >> i) & 1:
                acc = mat_add(acc, self.M[i])
        return acc


def build_eta_system(ctx: FieldCtx) -> EtaSystem:
    n = ctx.n
    if ctx.K < 2 * n - 2:
        raise ValueError("power table too short")
    A = tuple(antidiagonal(n, k) for k in range(2 * n - 1))
    M = []
    for i in range(n):
        Mi = A[i]
        for j in range(n, 2 * n - 1):
            if ctx.l(j, i):
                Mi = mat_add(Mi, A[j])
        M.append(Mi)
    es = EtaSystem(ctx, A, tuple(M))
    # rows of M_i must be the first n states of the i-th basis sequence
    for i, seq in enumerate(basis_sequences(ctx)):
        for r in range(n):
            expect = sum(b << c for c, b in enumerate(state(seq, r)))
            if es.M[i][r] != expect:
                raise AssertionError(f"row {r} of M_{i} disagrees with state s_{r} of a_{i}")
    return es


def check_all_combinations_invertible(es: EtaSystem) -> bool:
    n = es.n
    return all(gf2_rank(es.combination(s)) == n for s in range(1, 1 << n))


@dataclass(frozen=True)
class WSpace:
    """All 2^n elements of W, element s being sum of gamma_i over bits i of s."""

    n: int
    elements: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def nonzero(self):
        return self.elements[1:]


def build_wspace(es: EtaSystem) -> WSpace:
    return WSpace(es.n, tuple(es.combination(s) for s in range(1 << es.n)))


@dataclass(frozen=True)
class MsgDecomp:
    """v = a_0 + w a_1 + ... + w^{n-1} a_{n-1} with a_i in F_2^m."""

    alphas: tuple[int, ...]
    m: int

    @classmethod
    def from_vector(cls, v: Sequence[int], n: int) -> "MsgDecomp":
        return cls(split_layers(v, n), len(v))

    def vector(self) -> tuple[int, ...]:
        return join_layers(self.alphas, self.m)

    def is_zero(self) -> bool:
        return not any(self.alphas)

    def realize(self, coeffs: int) -> int:
        """The F_2^m vector sum_k coeffs_k a_k for a formal V-coordinate vector."""
        acc = 0
        for k, a in enumerate(self.alphas):
            if (coeffs >> k) & 1:
                acc ^= a
        return acc


def _chi_tables(D_layers: Sequence[Iterable[int]], m: int) -> list[list[int]]:
    return [chi_table(layer, m) for layer in D_layers]


def _layer_sets(D_layers, n):
    layers = [sorted(set(int(x) for x in layer)) for layer in D_layers]
    if len(layers) != n:
        raise ValueError(f"expected {n} layers, got {len(layers)}")
    return layers


def char_product_sum(ws: WSpace, alphas: MsgDecomp, tables: Sequence[Sequence[int]], skip_zero=False) -> int:
    """sum over w in W (or W*) of prod_j chi_{~w_j}(D_j)."""
    total = 0
    for w in ws.nonzero() if skip_zero else ws.elements:
        prod = 1
        for j, wj in enumerate(w):
            prod *= tables[j][alphas.realize(wj)]
            if prod == 0:
                break
        total += prod
    return total


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num}/{den} is not an integer")
    return q


def weight_cD_star_formula(es: EtaSystem, ws: WSpace, alphas: MsgDecomp, D_layers, *, tables=None) -> int:
    """wt(c_{D*}(v)) = |D| - 2^{-n} sum_{w in W} prod_j chi_{~w_j}(D_j)."""
    n, m = es.n, alphas.m
    layers = _layer_sets(D_layers, n)
    size = 1
    for layer in layers:
        size *= len(layer)
    tables = tables or _chi_tables(layers, m)
    s = char_product_sum(ws, alphas, tables)
    return _exact_div(size * (1 << n) - s, 1 << n)


def weight_cDc_formula(es: EtaSystem, ws: WSpace, alphas: MsgDecomp, D_layers, *, tables=None) -> int:
    """wt(c_{D^c}(v)) from the disjoint decomposition

    D^c = |_|_t  D_0 + ... + w^{t-1} D_{t-1} + w^t D_t^c + w^{t+1} F_2^m + ...

    Each piece is a product set, so its weight is |piece| minus 2^{-n} times
    the character-product sum over W with the per-layer sets substituted.
    """
    n, m = es.n, alphas.m
    layers = _layer_sets(D_layers, n)
    full = 1 << m
    tables = tables or _chi_tables(layers, m)
    # chi over F_2^m is 2^m delta_0; chi over a complement is that minus chi over the set
    full_tab = [full if x == 0 else 0 for x in range(full)]
    comp_tabs = [[full_tab[x] - t[x] for x in range(full)] for t in tables]
    total_size = 0
    total_chi = 0
    for t in range(n):
        piece_tabs = list(tables[:t]) + [comp_tabs[t]] + [full_tab] * (n - t - 1)
        piece_size = 1
        for j in range(t):
            piece_size *= len(layers[j])
        piece_size *= full - len(layers[t])
        piece_size *= full ** (n - t - 1)
        total_size += piece_size
        total_chi += char_product_sum(ws, alphas, piece_tabs)
    return _exact_div(total_size * (1 << n) - total_chi, 1 << n)


def weight_cDc_collapsed(es: EtaSystem, ws: WSpace, alphas: MsgDecomp, D_layers) -> int:
    """|D^c| - 2^{-n} sum_{w in W} (2^{nm} delta_{0,~w} - prod_j chi_{~w_j}(D_j))."""
    n, m = es.n, alphas.m
    layers = _layer_sets(D_layers, n)
    size = 1
    for layer in layers:
        size *= len(layer)
    tables = _chi_tables(layers, m)
    delta = sum(1 for w in ws if all(alphas.realize(wj) == 0 for wj in w))
    s = (1 << (n * m)) * delta - char_product_sum(ws, alphas, tables)
    return _exact_div(((1 << (n * m)) - size) * (1 << n) - s, 1 << n)


def complementarity_check(es: EtaSystem, ws: WSpace, alphas: MsgDecomp, D_layers) -> bool:
    """wt(c_{D^c}(v)) + wt(c_{D*}(v)) == (2^n - 1) 2^{n(m-1)} (1 - delta_{0,v})."""
    n, m = es.n, alphas.m
    tables = _chi_tables(_layer_sets(D_layers, n), m)
    lhs = weight_cDc_formula(es, ws, alphas, D_layers, tables=tables) + weight_cD_star_formula(
        es, ws, alphas, D_layers, tables=tables
    )
    rhs = 0 if alphas.is_zero() else ((1 << n) - 1) << (n * (m - 1))
    return lhs == rhs


def g_value(w: Sequence[int], alphas: MsgDecomp, L_masks: Sequence[int]) -> int:
    """prod_j phi(~w_j | L_j)."""
    return int(all(alphas.realize(wj) & L == 0 for wj, L in zip(w, L_masks)))


def theta(ws: WSpace, alphas: MsgDecomp, L_list: Sequence[Iterable[int]]) -> int:
    """Number of w in W whose realised components avoid the matching L_j."""
    if len(L_list) != ws.n:
        raise ValueError(f"expected {ws.n} index sets, got {len(L_list)}")
    masks = [support_mask(L, alphas.m) for L in L_list]
    return sum(g_value(w, alphas, masks) for w in ws)


def weight_from_theta(theta_value: int, L_list: Sequence[Iterable[int]], n: int) -> int:
    """2^{sum|L_i| - n} (2^n - theta), computed without negative shifts."""
    total = sum(len(set(L)) for L in L_list)
    return _exact_div(((1 << n) - theta_value) << total, 1 << n)


# --------------------------------------------------------------------------
# the same formulas evaluated for every message at once (packed order)


def _realized_all(w: Sequence[int], n: int, m: int) -> list[np.ndarray]:
    """For each component w_j, the realised vector ~w_j for every packed message."""
    z = np.arange(1 << (n * m), dtype=np.int64)
    mask = (1 << m) - 1
    alphas = [(z >> (k * m)) & mask for k in range(n)]
    out = []
    for wj in w:
        acc = np.zeros_like(z)
        for k in range(n):
            if (wj >> k) & 1:
                acc ^= alphas[k]
        out.append(acc)
    return out


def _product_sum_all(ws: WSpace, m: int, tables: Sequence[np.ndarray]) -> np.ndarray:
    n = ws.n
    total = np.zeros(1 << (n * m), dtype=np.int64)
    for w in ws.elements:
        prod = np.ones(1 << (n * m), dtype=np.int64)
        for j, r in enumerate(_realized_all(w, n, m)):
            prod *= tables[j][r]
        total += prod
    return total


def formula_weights_all(es: EtaSystem, ws: WSpace, D_layers, m: int) -> tuple[np.ndarray, np.ndarray]:
    """(wt c_{D*}(v), wt c_{D^c}(v)) for every message v, from the character sums."""
    n = es.n
    layers = _layer_sets(D_layers, n)
    full = 1 << m
    tabs = [np.asarray(chi_table(layer, m), dtype=np.int64) for layer in layers]
    full_tab = np.zeros(full, dtype=np.int64)
    full_tab[0] = full
    size = 1
    for layer in layers:
        size *= len(layer)
    s_star = _product_sum_all(ws, m, tabs)
    star = size * (1 << n) - s_star
    c_num = np.zeros_like(star)
    for t in range(n):
        piece = list(tabs[:t]) + [full_tab - tabs[t]] + [full_tab] * (n - t - 1)
        piece_size = 1
        for j in range(t):
            piece_size *= len(layers[j])
        piece_size *= (full - len(layers[t])) * full ** (n - t - 1)
        c_num += piece_size * (1 << n) - _product_sum_all(ws, m, piece)
    if (star % (1 << n)).any() or (c_num % (1 << n)).any():
        raise ArithmeticError("character sums are not divisible by 2^n")
    return star >> n, c_num >> n


def theta_all(ws: WSpace, L_list: Sequence[Iterable[int]], m: int) -> np.ndarray:
    """theta(v) for every packed message v."""
    n = ws.n
    masks = [support_mask(L, m) for L in L_list]
    total = np.zeros(1 << (n * m), dtype=np.int64)
    for w in ws.elements:
        ok = np.ones(1 << (n * m), dtype=bool)
        for r, L in zip(_realized_all(w, n, m), masks):
            ok &= (r & L) == 0
        total += ok
    return total


def expansion_terms(ws: WSpace) -> list[tuple[tuple[int, ...], ...]]:
    """For every nonzero w, the a-index sets of its components (for display)."""
    out = []
    for w in ws.nonzero():
        out.append(tuple(tuple(k for k in range(ws.n) if (wj >> k) & 1) for wj in w))
    return out


def format_combination(idx: Sequence[int]) -> str:
    return "+".join(f"a{k}" for k in idx) if idx else "0"


def all_messages(n: int, m: int):
    """Every MsgDecomp of F_{2^n}^m, in packed-layer order."""
    for alphas in product(range(1 << m), repeat=n):
        yield MsgDecomp(tuple(reversed(alphas)), m)
