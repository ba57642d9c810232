import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from raidkit import codes
from raidkit.codes import (UnrecoverableError, azure_layout, check_parities, decodable_fraction, decode,
                           expand_erasures, hvpc_decode, hvpc_encode, hvpc_layout, lrc_build,
                           random_stripe, rdp_decode, rdp_encode, rdp_layout, recoverable,
                           recoverable_by_generator, repair_metrics, xcode_decode, xcode_layout,
                           xor_recoverable, xorbas_local_parities)
from raidkit.rng import stream


def _all_pairs_ok(lay, rng, lanes=64):
    s = random_stripe(lay, lanes, rng)
    for pair in itertools.combinations(range(lay.cols), 2):
        out = xcode_decode(lay, s, pair) if lay.name == "xcode" else rdp_decode(lay, s, pair)
        if not np.array_equal(out, s):
            return pair
    return None


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_rdp_two_column_erasures(p):
    assert _all_pairs_ok(rdp_layout(p), stream(1, p)) is None


@pytest.mark.parametrize("n", [5, 7, 11])
def test_xcode_two_column_erasures(n):
    assert _all_pairs_ok(xcode_layout(n), stream(2, n)) is None


@pytest.mark.parametrize("bad", [1, 4, 6, 9])
def test_rdp_needs_prime(bad):
    with pytest.raises(ValueError, match="prime"):
        rdp_layout(bad)


def test_three_columns_rejected():
    lay = rdp_layout(5)
    s = random_stripe(lay, 4, stream(0, 0))
    with pytest.raises(UnrecoverableError):
        rdp_decode(lay, s, (0, 1, 2))


def test_rdp_encode_shape_checked():
    with pytest.raises(ValueError):
        rdp_encode(5, np.zeros((3, 4, 1), dtype=np.uint8))


def test_rdp_parities_hold():
    data = stream(3, 0).integers(0, 256, size=(4, 4, 32), dtype=np.uint8)
    lay, s = rdp_encode(5, data)
    assert check_parities(lay, s) == []
    s[0, 0, 0] ^= 1
    assert check_parities(lay, s)


def test_hvpc_three_cells_and_rectangles():
    lay = hvpc_layout(3, 3)
    s = random_stripe(lay, 8, stream(4, 0))
    cells = lay.cells
    for size in (1, 2, 3):
        for e in itertools.combinations(cells, size):
            out, stuck = hvpc_decode(lay, s, e)
            assert not stuck and np.array_equal(out, s)
    for r1, r2 in itertools.combinations(range(lay.rows), 2):
        for c1, c2 in itertools.combinations(range(lay.cols), 2):
            e = [(r1, c1), (r1, c2), (r2, c1), (r2, c2)]
            assert not recoverable(lay, e)
            _, stuck = hvpc_decode(lay, s, e)
            assert stuck


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2 ** 32 - 1))
def test_hvpc_any_single_erasure(k1, k2, seed):
    lay = hvpc_layout(k1, k2)
    s = random_stripe(lay, 4, stream(seed, 0))
    rng = stream(seed, 1)
    c = lay.cells[int(rng.integers(len(lay.cells)))]
    out, stuck = hvpc_decode(lay, s, [c])
    assert not stuck and np.array_equal(out, s)


def test_azure_metrics():
    rep = repair_metrics(azure_layout(10, 6, 3), pairs=False)
    assert (rep.arc, rep.nrc, rep.drc) == (Fraction(18, 5), Fraction(6), Fraction(3))
    assert codes.azure_arc_closed(10, 6, 3) == Fraction(18, 5)


def test_xorbas_implied_parity():
    data = stream(5, 0).integers(0, 256, size=(10, 64), dtype=np.uint8)
    res = xorbas_local_parities(data)
    assert res["ok"]
    assert not (res["S1"] ^ res["S2"] ^ res["S3"]).any()


@pytest.mark.parametrize("kg", [3, 6])
def test_lrc_rank_routes_agree(kg):
    lay = lrc_build(kg, 2, 2)
    f3, ok3, _ = decodable_fraction(lay, 3)
    assert f3 == 1.0
    f4, ok4, pats = decodable_fraction(lay, 4)
    gen = lay.generator()
    oracle = [recoverable_by_generator(lay, [(0, c) for c in p], gen) for p in pats]
    assert list(ok4) == oracle


def test_lrc_4_failure_fractions():
    assert decodable_fraction(lrc_build(3, 2, 2), 4)[0] == pytest.approx(180 / 210)
    assert abs(decodable_fraction(lrc_build(6, 2, 2), 4)[0] - 0.86) <= 0.02


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_lrc_decoder_matches_rank(seed):
    lay = lrc_build(3, 2, 2)
    rng = stream(seed, 0)
    size = int(rng.integers(1, 5))
    cols = sorted(int(x) for x in rng.choice(lay.cols, size, replace=False))
    s = random_stripe(lay, 8, rng)
    e = expand_erasures(lay, columns=cols)
    out, stuck = decode(lay, s, e)
    if recoverable(lay, e):
        assert not stuck and np.array_equal(out, s)
    else:
        assert stuck


def test_xor_oracle_on_xcode():
    lay = xcode_layout(5)
    for pair in itertools.combinations(range(5), 2):
        e = expand_erasures(lay, columns=pair)
        assert xor_recoverable(lay, e) == recoverable(lay, e)


def test_pmds_example_classes():
    assert codes.pmds_sd_check(codes.pmds_example(), 1, 2)["class"] == "PMDS"
    assert codes.pmds_sd_check(codes.sd_only_example(), 1, 2)["class"] == "SD-only"


def test_single_rebuild_plan_reconstructs():
    lay = xcode_layout(5)
    s = random_stripe(lay, 8, stream(6, 0))
    plan = codes.single_rebuild_plan(lay, 2)
    out = codes.rebuild_with_plan(lay, s, plan)
    assert np.array_equal(out, s)
    assert plan["cost"] <= plan["naive_cost"]


def test_hamming_locate():
    assert codes.hamming_locate([1, 4]) == 5
    assert codes.hamming_locate([]) is None
    with pytest.raises(ValueError):
        codes.hamming_locate([3])
