import csv
import io
import itertools
import json
import math

import pytest
from hypothesis import given, strategies as st

from lzchain import bounds, condlz, gen, lz78
from lzchain.empirical import CapExceededError
from lzchain.seqcore import BINARY, PairedSequence, Sequence, pair
from strategies import sequences


def bseq(s):
    return Sequence.from_text(s, "01")


WORKED = pair(bseq("010101"), bseq("010001"))
IID = gen.iid(2, 4096, (0.5, 0.5), seed=3)
CONST = gen.periodic("0", 1024, BINARY)


def assert_accounting(rep):
    assert rep.rhs == pytest.approx(sum(rep.terms.values()), abs=1e-9)
    assert rep.holds == (rep.slack >= -1e-9)


# -- redundancy terms -----------------------------------------------------


def test_delta_examples():
    assert bounds.delta(1, 1, 2) == pytest.approx(math.log2(1 + math.log2(3)))
    assert bounds.delta(1, 1, 2) == pytest.approx(1.37014, abs=1e-5)
    assert bounds.delta(1, 1, 1) == pytest.approx(1.0)


def test_delta_large_arguments_stay_finite():
    huge = 2 ** 4096
    v = bounds.delta(8, huge, 2)
    assert math.isfinite(v)
    assert v == pytest.approx(2 * 4096 / 8, rel=1e-3)
    assert math.isfinite(bounds.delta(2000, 3, 7))


@given(st.integers(1, 64), st.integers(1, 40), st.integers(2, 5))
def test_delta_matches_direct_formula(s, l, alpha):
    if alpha ** l > 1e300:
        return
    direct = math.log2(s * s * (1 + math.log2(1 + alpha ** l / s))) / l
    assert bounds.delta(l, s, alpha) == pytest.approx(direct, rel=1e-12)


def test_delta_decreasing_once_length_dominates():
    for s in (1, 4, 16):
        vals = [bounds.delta(l, s, 2) for l in range(8, 40)]
        assert all(b < a for a, b in zip(vals, vals[1:]))


def test_max_phrase_count_examples():
    assert bounds.max_phrase_count(1, 2) == 1
    assert bounds.max_phrase_count(3, 2) == 3
    assert bounds.max_phrase_count(15, 2) >= 8


@pytest.mark.parametrize("alpha,max_n", [(1, 14), (2, 14), (3, 8)])
def test_max_phrase_count_is_the_exhaustive_maximum(alpha, max_n):
    for n in range(1, max_n + 1):
        best = max(lz78.phrase_count(s) for s in itertools.product(range(alpha), repeat=n))
        assert bounds.max_phrase_count(n, alpha) == best


@given(sequences(max_size=200))
def test_max_phrase_count_bounds_every_parse(x):
    assert lz78.phrase_count(x.symbols) <= bounds.max_phrase_count(len(x), x.alpha)


def test_epsilon1_examples_and_monotonicity():
    assert bounds.epsilon1(1, 2) == pytest.approx(6.0)
    grid = [bounds.epsilon1(2 ** i, 2) for i in range(4, 21)]
    assert all(b <= a for a, b in zip(grid, grid[1:]))


@pytest.mark.parametrize("n,alpha", [(10, 2), (100, 2), (1000, 3), (64, 4)])
def test_epsilon1_is_max_over_feasible_c(n, alpha):
    cmax = bounds.max_phrase_count(n, alpha)
    brute = max((lz78.code_length_bound(c, alpha) - lz78.xlogx(c)) / n for c in range(1, cmax + 1))
    assert bounds.epsilon1(n, alpha) == pytest.approx(brute, rel=1e-12)


@pytest.mark.parametrize("n,s,alpha", [(10, 1, 2), (100, 2, 2), (1000, 4, 3), (64, 16, 2)])
def test_epsilon2_is_clamped_max_over_feasible_c(n, s, alpha):
    cmax = bounds.max_phrase_count(n, alpha)
    brute = max(lz78.xlogx(c) / n - bounds.zl_lower_bound(c, n, s) for c in range(1, cmax + 1))
    assert bounds.epsilon2(n, s, alpha) == pytest.approx(max(0.0, brute), rel=1e-9, abs=1e-12)


def test_epsilon2_clamp_and_monotone_in_s():
    # with a huge state count the bound is far below zero for every feasible c
    assert bounds.epsilon2(4, 10 ** 6, 2) >= 0.0
    assert bounds.epsilon2(1, 1, 2) == 0.0
    for n in (16, 256, 4096):
        vals = [bounds.epsilon2(n, s, 2) for s in (1, 2, 4, 16, 256, 2 ** 20)]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


def test_zl_lower_bound_stable_form():
    for c, s in [(10, 1), (1000, 3), (5, 100)]:
        direct = (c + s * s) * math.log2((c + s * s) / (4 * s * s)) + 2 * s * s
        assert bounds.zl_lower_bound(c, 1, s) == pytest.approx(direct, rel=1e-9, abs=1e-9)


def test_lz_coder_respects_epsilon1_on_corpus():
    for name, x in gen.corpus():
        c = lz78.phrase_count(x.symbols)
        assert lz78.encoded_length(x) <= lz78.xlogx(c) + len(x) * bounds.epsilon1(len(x), x.alpha), name


# -- single-sequence reports ---------------------------------------------


@pytest.mark.parametrize("fn,param", [
    (bounds.verify_lower, 4), (bounds.verify_lower_nob, 4),
    (bounds.verify_upper, 2), (bounds.verify_upper_nob, 2),
])
def test_reports_hold_on_examples(fn, param):
    for x, k in [(CONST, 64), (IID, 64), (IID, 256), (IID, 4096), (CONST, 1024)]:
        rep = fn(x, k, param)
        assert rep.holds, rep
        assert_accounting(rep)


def test_lower_on_constant_has_nonpositive_rhs():
    rep = bounds.verify_lower(CONST, 64, 4)
    assert rep.terms["entropy"] == 0.0 and rep.rhs < 0 <= rep.lhs


def test_single_block_lower_equals_complexity():
    x = gen.iid(2, 1024, seed=9)
    rep = bounds.verify_lower(x, 1024, 3)
    assert rep.lhs == pytest.approx(lz78.complexity(x))
    assert rep.holds


def test_upper_m1_has_entropy_plus_one():
    rep = bounds.verify_upper(IID, 256, 1)
    assert rep.terms["one_over_m"] == 1.0
    assert rep.holds


def test_report_errors():
    with pytest.raises(ValueError):
        bounds.verify_lower(IID, 100, 2)
    with pytest.raises(ValueError):
        bounds.verify_lower_nob(IID, 64, 3)
    with pytest.raises(CapExceededError):
        bounds.verify_lower(IID, 64, 23)
    with pytest.raises(CapExceededError):
        bounds.verify_upper(IID, 64, 22)
    with pytest.raises(ValueError):
        bounds.verify_upper(IID, 64, 0)


# -- paired reports -------------------------------------------------------


def test_cond_sandwich_examples():
    same = PairedSequence(IID[:1024], IID[:1024])
    fwd, rev = bounds.cond_sandwich(same, 64, 2)
    # only a duplicated final phrase can leave a count of 2 in a block
    assert fwd.lhs == 0.0 and 0.0 <= fwd.terms["cond_complexity"] <= 2 / 64
    assert fwd.holds and rev.holds
    fwd, rev = bounds.cond_sandwich(WORKED, 6, 2)
    assert fwd.holds and "epsilon3" in fwd.terms
    assert rev.mode == "reported_slack" and rev.required_slack >= 0
    indep = PairedSequence(IID[:1024], gen.iid(2, 1024, seed=77))
    fwd, rev = bounds.cond_sandwich(indep, 256, 4)
    assert fwd.lhs > 0.5 and fwd.holds
    for rep in (fwd, rev):
        assert_accounting(rep)


def test_chain_upper_examples():
    x = IID[:4096]
    same = PairedSequence(x, x)
    rep = bounds.verify_chain_upper(same, 256, 16, 2)
    assert rep.holds
    assert rep.terms["cond_complexity"] >= 0.0
    indep = PairedSequence(x, gen.iid(2, 4096, seed=11))
    rep = bounds.verify_chain_upper(indep, 256, 16, 2)
    assert rep.holds and rep.slack > 0
    const = PairedSequence(CONST, CONST)
    rep = bounds.verify_chain_upper(const, 256, 16, 2)
    assert rep.holds
    assert_accounting(rep)


def test_chain_upper_identical_pair_doubles_alphabet():
    x = gen.iid(2, 1024, seed=5)
    same = PairedSequence(x, x)
    doubled = Sequence(BINARY.__class__(4), tuple(3 * s for s in x.symbols))
    assert bounds.verify_chain_upper(same, 256, 16, 1).lhs == pytest.approx(
        lz78.block_average_complexity(doubled, 256))


def test_chain_lower_reported_slack():
    for p, k, r, p_ord in [(WORKED, 2, 6, 1), (PairedSequence(IID, IID), 64, 256, 2),
                           (PairedSequence(CONST, CONST), 64, 256, 2)]:
        rep = bounds.verify_chain_lower(p, k, r, p_ord)
        assert rep.mode == "reported_slack"
        assert rep.holds
        assert rep.required_slack >= 0
        assert rep.strict_holds == (rep.required_slack == 0.0)
        assert rep.terms["epsilon4"] == -rep.required_slack
        assert_accounting(rep)


def test_rho_plus_minus():
    x = gen.iid(2, 1024, seed=2)
    hi, lo = bounds.rho_plus_minus(PairedSequence(x, x), 64)
    assert hi >= lo
    # identical pair: decompositions differ only by a duplicated final phrase per block
    assert 0.0 <= hi - lo <= 2 / 64
    y = gen.iid(2, 1024, seed=8)
    hi, lo = bounds.rho_plus_minus(PairedSequence(x, y), 64)
    assert hi >= lo
    with pytest.raises(ValueError):
        bounds.rho_plus_minus(WORKED, 4)


@given(st.data())
def test_rho_plus_minus_order(data):
    n = data.draw(st.sampled_from([4, 8, 12, 16, 24]))
    k = data.draw(st.sampled_from([d for d in (1, 2, 4, 8) if n % d == 0]))
    xs = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    ys = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    p = PairedSequence(Sequence(BINARY, xs), Sequence(BINARY.__class__(3), ys))
    hi, lo = bounds.rho_plus_minus(p, k)
    assert hi >= lo - 1e-12


# -- sweeps, serialization ------------------------------------------------


def test_sweep_empty_grid():
    res = bounds.sweep(IID, [])
    assert res.reports == [] and res.errors == []


def test_sweep_default_grid_and_diagnostics():
    x = gen.iid(2, 1024, seed=4)
    res = bounds.sweep(x)
    assert res.reports and all(r.holds for r in res.reports)
    assert [k for k, _ in res.diagnostics["rho_k"]] == sorted({r.params["k"] for r in res.reports})
    assert all(e.get("doubling_ok", True) for e in res.diagnostics["h_csw_per_symbol"])


def test_sweep_pairs_have_gap_series():
    p = gen.corpus_pairs((256,))[1][1]
    res = bounds.sweep(p, [{"theorem": "chain-upper", "k": 64, "q": 16, "m": 2}])
    assert res.reports[0].holds
    assert res.diagnostics["rho_pm_gap"][0]["gap"] >= 0
    assert "one_sided_chain_gap" in res.diagnostics


def test_sweep_collects_errors():
    grid = [{"theorem": "lb", "k": 64, "l": 4}, {"theorem": "lb", "k": 7, "l": 2},
            {"theorem": "ub", "k": 64, "m": 40}, {"theorem": "chain-upper", "k": 4, "q": 4, "m": 1}]
    with pytest.raises(bounds.SweepError) as info:
        bounds.sweep(IID, grid)
    assert len(info.value.errors) == 3
    assert len(info.value.result.reports) == 1
    res = bounds.sweep(IID, grid, raise_errors=False)
    assert len(res.errors) == 3


def test_sweep_parallel_matches_serial():
    x = gen.iid(2, 256, seed=6)
    grid = bounds.default_grid(256, 2)[:12]
    a = bounds.sweep(x, grid, jobs=1)
    b = bounds.sweep(x, grid, jobs=2)
    assert [r.to_dict() for r in a.reports] == [r.to_dict() for r in b.reports]


def test_default_grid_respects_caps_and_divisibility():
    grid = bounds.default_grid(4096, 2)
    assert grid
    for pt in grid:
        assert 4096 % pt["k"] == 0
        d = pt.get("l", pt.get("m"))
        assert 2 ** d <= bounds.TABLE_CAP
    pgrid = bounds.default_grid(256, 2, 2)
    assert {pt["theorem"] for pt in pgrid} == {"chain-upper", "chain-lower"}
    assert all(4 ** pt.get("m", pt.get("p", 0)) <= bounds.TABLE_CAP for pt in pgrid)


def test_json_and_csv_serialization():
    reps = [bounds.verify_lower(IID, 64, 4), bounds.verify_chain_lower(WORKED, 2, 6, 1)]
    data = json.loads(bounds.reports_to_json(reps))
    assert data[0]["theorem"] == "lb" and set(data[0]["terms"]) == set(reps[0].terms)
    assert data[0]["lhs"] == float(f"{reps[0].lhs:.12g}")
    rows = list(csv.DictReader(io.StringIO(bounds.reports_to_csv(reps))))
    assert len(rows) == 2
    assert rows[1]["mode"] == "reported_slack"
    assert rows[0]["term:epsilon1"] != "" and rows[0]["term:epsilon4"] == ""


def test_oscillation_gap_structure():
    p = gen.oscillating_pair((512, 4096), seed=0, factor=8)
    res = bounds.oscillation_gap(p, 64, (512, 4608))
    assert res.gap == pytest.approx(max(res.x) + max(res.cond) - max(res.joint))
    # x silent on the first segment, random afterwards
    assert res.x[0] < res.x[1]
    # y|x is random on the first segment and a copy afterwards
    assert res.cond[0] > res.cond[1]
