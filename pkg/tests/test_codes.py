import json
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplicial_codes.codes import (
    DC,
    DSTAR,
    BudgetExceeded,
    CodeError,
    CodeReport,
    build_defining_set,
    code_dimension,
    code_report,
    codeword_block,
    defining_set_from_layers,
    encode,
    griesmer_sum,
    hamming_weight,
    hypothesis_flags,
    is_minimal_exhaustive,
    load_bounds,
    message_weights,
    r_sets,
    subfield_encode,
    subfield_expand,
    subfield_generator_matrix,
    subfield_report,
)
from simplicial_codes.gf2n import default_modulus, join_layers, make_ctx, unpack_layers

CTX2 = make_ctx("x^2+x+1")
CTX3 = make_ctx("x^3+x+1")


def all_codewords(ds, binary):
    """Every codeword by direct encoding, deduplicated."""
    words = set()
    for z in range(1 << (ds.n * ds.m)):
        if binary:
            words.add(subfield_encode(ds, z))
        else:
            words.add(encode(ds, join_layers(unpack_layers(z, ds.n, ds.m), ds.m)))
    return words


def naive_minimal(words, q):
    """Definition: every support containment forces a scalar multiple."""
    supp = {w: frozenset(i for i, x in enumerate(w) if x) for w in words if any(w)}
    for a, sa in supp.items():
        for b, sb in supp.items():
            if a != b and sb <= sa:
                if q == 2 or not _is_multiple(a, b):
                    return False
    return True


def _is_multiple(a, b):
    ratios = {(x, y) for x, y in zip(a, b) if x or y}
    # over a field, b = c*a iff supports agree and the coordinate ratio is constant;
    # for supports equal and q = 4 checking the fixed multiplication table is enough
    ctx = CTX2
    return any(all(ctx.mul(c, x) == y for x, y in zip(a, b)) for c in range(1, 4))


def test_defining_set_sizes():
    ds = build_defining_set(CTX3, 4, [{1, 2}, {2, 3}, {3, 4}], DSTAR)
    assert ds.length == 63 and ds.size_D == 64
    dc = build_defining_set(CTX3, 4, [{1, 2}, {2, 3}, {3, 4}], DC)
    assert dc.length == 8**4 - 64
    assert set(ds.points).isdisjoint(dc.points) and len(set(ds.points) | set(dc.points)) == 4095


def test_defining_set_validation():
    with pytest.raises(CodeError):
        build_defining_set(CTX3, 4, [{1}, {2}], DSTAR)
    with pytest.raises(CodeError):
        build_defining_set(CTX3, 2, [{1}, {2}, {3}], DSTAR)
    with pytest.raises(CodeError):
        build_defining_set(CTX2, 2, [{1}, {2}], "bogus")


def test_r_sets_and_flags():
    Ls = [frozenset({1, 2}), frozenset({2, 3}), frozenset({3, 4})]
    assert r_sets(Ls) == [{1}, set(), {4}]
    flags = hypothesis_flags(Ls, 3, 4)
    assert flags["sum_L"] == 6 and flags["union_is_full"] and not flags["R_nonempty"]


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 3), st.integers(1, 3), st.data())
def test_block_matches_encode(n, m, data):
    ctx = make_ctx(default_modulus(n))
    layers = [data.draw(st.sets(st.integers(0, (1 << m) - 1), min_size=1)) for _ in range(n)]
    variant = data.draw(st.sampled_from([DSTAR, DC]))
    ds = defining_set_from_layers(ctx, m, layers, variant)
    z = data.draw(st.integers(0, (1 << (n * m)) - 1))
    row = codeword_block(ds, np.array([z]), False)[0]
    v = join_layers(unpack_layers(z, n, m), m)
    assert tuple(int(x) for x in row) == encode(ds, v)
    brow = codeword_block(ds, np.array([z]), True)[0]
    assert tuple(int(x) for x in brow) == subfield_encode(ds, z)


def test_message_weights_totals():
    ds = build_defining_set(CTX2, 3, [{1, 2}, {2, 3}], DC)
    w = message_weights(ds)
    assert w[0] == 0 and len(w) == 64
    rep = code_report(ds)
    assert sum(c for _, c in rep.weights) == 4**rep.k


def test_griesmer_sum():
    assert griesmer_sum(3, 48, 4) == 48 + 12 + 3
    assert griesmer_sum(4, 8, 2) == 15


def test_small_dc_minimality_against_definition():
    ds = build_defining_set(CTX2, 3, [{1, 2}, {2, 3}], DC)
    words = all_codewords(ds, False)
    assert len(words) == 4**3
    assert is_minimal_exhaustive(ds, False) == naive_minimal(words, 4)


def test_non_minimal_code_detected():
    # two coordinates (1,0) and (1,1) over F_2^2 in the binary subfield setting:
    # codewords 11 and 10 have nested supports
    ds = defining_set_from_layers(make_ctx("x+1"), 2, [[1, 3]], DSTAR)
    words = all_codewords(ds, True)
    assert not naive_minimal(words, 2)
    assert is_minimal_exhaustive(ds, True) is False


def test_subfield_dimension_and_generator():
    ds = build_defining_set(CTX2, 3, [{1, 2}, {2, 3}], DC)
    G = subfield_generator_matrix(ds)
    assert G.shape == (6, 48)
    assert code_dimension(ds, True) == 6
    words = all_codewords(ds, True)
    assert len(words) == 2**6


def test_subfield_expand_keeps_points():
    ds = build_defining_set(CTX3, 2, [{1}, {2}, {1, 2}], DSTAR)
    ss = subfield_expand(ds)
    assert ss.ambient_dimension == 6 and len(ss.tuples()) == ds.length
    rep = subfield_report(ss)
    assert rep.params == (ds.length, 4, 8)


def test_report_round_trip():
    ds = build_defining_set(CTX2, 4, [{1, 2, 3}, {1, 2, 3}], DSTAR)
    rep = code_report(ds)
    again = CodeReport.from_json(rep.to_json())
    assert again == rep
    assert json.loads(rep.to_json())["weights"] == [[0, 1], [48, 63]]


def test_bounds_table(tmp_path):
    p = tmp_path / "b.csv"
    p.write_text("q,length,k,best_d\n4,48,3,36\n")
    ds = build_defining_set(CTX2, 3, [{1, 2}, {2, 3}], DC)
    rep = code_report(ds, bounds=load_bounds(p))
    assert rep.distance_optimal is True
    p.write_text("q,length,k,best_d\n4,48,3,37\n")
    assert code_report(ds, bounds=load_bounds(p)).distance_optimal is False


def test_budget_exceeded():
    ds = build_defining_set(CTX3, 4, [{1, 2}, {2, 3}, {3, 4}], DSTAR)
    with pytest.raises(BudgetExceeded):
        message_weights(ds, budget=100)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("SIMPLICIAL_CODES_BUDGET", "10")
    ds = build_defining_set(CTX2, 2, [{1}, {2}], DSTAR)
    with pytest.raises(BudgetExceeded):
        code_report(ds)


def test_empty_dc_rejected():
    ds = build_defining_set(CTX2, 2, [{1, 2}, {1, 2}], DC)
    assert ds.length == 0
    with pytest.raises(CodeError):
        code_report(ds)


def test_workers_agree():
    ds = build_defining_set(CTX3, 4, [{1, 2}, {2, 3}, {3, 4}], DC)
    a = message_weights(ds, True, workers=1)
    b = message_weights(ds, True, workers=2)
    assert (a == b).all()
