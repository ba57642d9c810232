import json
from math import comb, gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from raidkit import layouts as L
from raidkit.rng import stream


def test_builtin_bibd_valid():
    des = L.bibd_builtin_10_4()
    chk = L.bibd_check(des)
    assert chk["valid"] and (chk["b"], chk["r"], chk["L"]) == (15, 6, 2)


def test_bibd_duplicate_block_flagged():
    des = L.bibd_builtin_10_4()
    bad = L.BIBDDesign(des.n, des.k, list(des.blocks[:-1]) + [des.blocks[0]])
    assert not L.bibd_check(bad)["valid"]


def test_complete_design_lambda():
    des = L.bibd_complete(5, 4)
    chk = L.bibd_check(des)
    assert chk["valid"] and chk["L"] == comb(3, 2)


def test_bibd_layout_rebuild_balanced():
    lay = L.bibd_layout(L.bibd_builtin_10_4())
    reads = L.reconstruction_reads(lay, 3)
    assert reads[3] == 0 and set(np.delete(reads, 3)) == {2}
    assert list(lay.parity_counts()) == [2, 2, 2, 2, 1, 1, 1, 2, 1, 1]
    assert lay.alpha == pytest.approx(1 / 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 31), st.integers(5, 9))
def test_durstenfeld_is_permutation(seed, n):
    p = L.durstenfeld(n, stream(seed, 0))
    assert sorted(p) == list(range(n))


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 13), st.integers(2, 13), st.integers(0, 1000))
def test_nrp_groups_on_distinct_disks(n, g, seed):
    if g > n:
        g = n
    lay = L.nrp_layout(n, g, seed)
    props = L.layout_properties(lay)
    assert props["i_single_failure"] and not props["bad_groups"]
    assert lay.rows == L.nrp_rows_per_permutation(n, g) or lay.rows % L.nrp_rows_per_permutation(n, g) == 0


def test_nrp_counts_lcm_rows():
    # 9 disks, groups of 6: lcm/N = 2 rows per permutation
    assert L.nrp_rows_per_permutation(9, 6) == 2
    assert L.nrp_rows_per_permutation(10, 4) == 2


@pytest.mark.parametrize("n", range(4, 14))
def test_shifted_parity_balanced(n):
    for g in range(2, n + 1):
        lay = L.shifted_layout(n, g)
        props = L.layout_properties(lay)
        assert props["i_single_failure"]
        assert props["ii_parity_balanced"]


def test_raid4_not_distributed():
    assert not L.layout_properties(L.raid4_clustered(5, 5))["ii_parity_balanced"]
    assert L.layout_properties(L.raid5_clustered(5, 5))["ii_parity_balanced"]


def test_layout_json_roundtrip():
    lay = L.nrp_layout(10, 4, 42)
    back = L.ClusteredLayout.from_json(lay.to_json())
    assert np.array_equal(back.pg, lay.pg) and back.role == lay.role


def test_copysets_exact_nine_nodes(frozen):
    perms = [[0, 1, 2, 3, 4, 5, 6, 7, 8], [0, 3, 6, 1, 4, 7, 2, 5, 8]]
    cr = L.copysets_permutation(9, 3, 2, permutations=perms)
    win = L.copysets_random_window(9, 3, 4)
    assert len(win.copysets) == 54
    assert L.copyset_pdl_exact(cr) == frozen["copyset9"]["cr"][0] / frozen["copyset9"]["cr"][1]
    assert L.copyset_pdl_exact(win) == 54 / 84
    assert L.copyset_pdl_exact(cr, 2) == 0.0


def test_window_loss_matches_plan():
    plan = L.copysets_random_window(12, 3, 4)
    sets = {frozenset(c) for c in plan.copysets}
    rng = stream(11, 0)
    for _ in range(200):
        f = set(int(x) for x in rng.choice(12, int(rng.integers(0, 7)), replace=False))
        expect = any(s <= f for s in sets)
        assert L.window_loss(f, 12, 3, 4) == expect


def test_copyset_csv_roundtrip():
    plan = L.copysets_permutation(9, 3, 2, seed=1)
    back = L.CopysetPlan.from_csv(plan.to_csv(), 9)
    assert back.copysets == plan.copysets


@pytest.mark.parametrize("org", ["BM", "ID", "GRD", "CD"])
@pytest.mark.parametrize("n", [4, 6, 8])
def test_mirror_survivable_closed(org, n):
    c = 2 if org == "ID" else None
    m = L.mirror_map(org, n, c)
    for i in range(n + 1):
        assert m.survivable_count(i) == L.survivable_closed(org, n, i, c)


def test_mirror_survivor_loads():
    assert max(L.mirror_map("BM", 8).survivor_load(0)) == 2.0
    cd = L.mirror_map("CD", 8).survivor_load(0)
    assert cd[1] == pytest.approx(8 / 7)
    grd = L.mirror_map("GRD", 8).survivor_load(0)
    assert grd[4] == pytest.approx(1.25)
