import math
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from raidkit import reliability as R
from raidkit.layouts import mirror_map


def test_chen_angus_rows():
    d = R.DriveParams(2000, 1)
    assert R.mttdl_closed_form("chen", 10, 0, d) == pytest.approx(200.0)
    assert R.mttdl_closed_form("chen", 10, 1, d) == pytest.approx(4.444e4, rel=1e-3)
    d8 = R.DriveParams(1500, 1)
    assert R.mttdl_closed_form("chen", 10, 2, d8) == pytest.approx(4.688e6, rel=1e-3)
    assert R.mttdl_closed_form("angus", 10, 2, d8) == pytest.approx(9.438e6, rel=1e-3)


def test_kofn_exact_against_symbolic(frozen):
    for key, want in frozen["kofn"].items():
        n, k, mttf = map(int, key.split(":"))
        d = R.DriveParams(mttf, 1)
        assert R.kofn_mttdl(n, n - k, d, "proportional") == pytest.approx(want, rel=1e-12)


def test_raid5_against_symbolic(frozen):
    for key, want in frozen["raid5"].items():
        nd, delta, mu = key.split(":")
        assert R.raid5_mttdl(int(nd), float(delta), float(mu)) == pytest.approx(want, rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 20), st.floats(1e-7, 1e-2), st.floats(1e-3, 10.0))
def test_raid5_three_routes(n, delta, mu):
    closed = R.raid5_mttdl(n, delta, mu)
    chain = R.ctmc_mtta(R.raid5_chain(n, delta, mu))[0]
    mix = R.raid5_mixture(n, R.DriveParams(1 / delta, 1 / mu)).mttf()
    assert chain == pytest.approx(closed, rel=1e-6)
    assert mix == pytest.approx(closed, rel=1e-6)


def test_raid5_transient_against_expm(frozen):
    d = R.DriveParams(1000, 10)
    # 5 disks: 4 data plus parity
    r = R.raid5_transient(4, d, 500.0)
    p = R.ctmc_transient(R.raid5_chain(4, d.delta, d.mu), 500.0)
    want = frozen["raid5_transient_500"]
    assert p == pytest.approx(want, abs=1e-10)
    assert r == pytest.approx(want[0] + want[1], rel=1e-10)


def test_kofn_no_repair():
    assert R.kofn_no_repair(3, 1, 0.9) == pytest.approx(0.972)
    assert R.kofn_no_repair(5, 0, 1.0) == 1.0


def test_afr():
    exact, lin = R.afr_from_mttf(1e6)
    assert lin == pytest.approx(8766e-6)
    assert exact < lin
    assert R.DriveParams.from_afr(exact).mttf == pytest.approx(1e6)


def test_birth_death_matches_ctmc():
    up, down = [0.5, 0.3, 0.2], [0.0, 2.0, 3.0]
    assert R.birth_death_mtta(up, down) == pytest.approx(R.ctmc_mtta(R.birth_death_chain(up, down))[0])


def test_unreachable_absorption():
    m = R.CTMCModel.from_transitions(["A", "B", "X"], [("A", "B", 1.0), ("B", "A", 1.0)], ["X"])
    with pytest.raises(R.SingularChainError):
        R.ctmc_mtta(m)


def test_ctmc_json_roundtrip():
    m = R.raid5_chain(4, 1e-3, 0.1)
    back = R.CTMCModel.from_json(m.to_json())
    assert R.ctmc_mtta(back)[0] == pytest.approx(R.ctmc_mtta(m)[0])


def test_uniformization_long_horizon():
    m = R.raid5_chain(4, 1e-3, 0.1)
    p = R.ctmc_transient(m, 1e5)
    assert p.sum() == pytest.approx(1.0, abs=1e-9)


# --- latent sector errors -------------------------------------------------

def test_pseg_independent(frozen):
    p = R.LSEParams()
    for s, want in frozen["pseg_independent"].items():
        assert R.pseg(s, "independent", p) == pytest.approx(want, rel=1e-9)


def test_puf_independent(frozen):
    p = R.LSEParams()
    for s, want in frozen["puf_independent"].items():
        got = R.puf(8, 1, R.pseg(s, "independent", p), p, 300e9)
        assert got == pytest.approx(want, rel=1e-6)


def test_burst_pmf():
    p = R.LSEParams()
    assert sum(p.burst) == pytest.approx(1.0)
    assert p.mean_burst == pytest.approx(1.0291)
    with pytest.raises(ValueError):
        R.LSEParams(burst=(0.5, 0.4))


def test_lse_mttdl_matches_chain():
    n, d, mu, puf = 8, 1e-5, 0.1, 0.05
    assert R.mttdl_raid5_lse(n, d, mu, puf) == pytest.approx(
        R.ctmc_mtta(R.raid5_lse_chain(n, d, mu, puf))[0], rel=1e-9)
    assert R.mttdl_raid6_lse(n, d, mu, 0.05, 0.01, 0.2) == pytest.approx(
        R.ctmc_mtta(R.raid6_lse_chain(n, d, mu, 0.05, 0.01, 0.2))[0], rel=1e-9)


def test_lse_reduces_without_errors():
    n, d, mu = 8, 1e-5, 0.1
    assert R.mttdl_raid5_lse(n, d, mu, 0.0) == pytest.approx(R.raid5_mttdl(n - 1, d, mu))


def test_scrub_probabilities():
    assert R.scrub_error_prob("deterministic", 1.0, 1e-8, 1.0) == pytest.approx(5e-9)
    for x in (1e-3, 0.1):
        assert R.scrub_error_prob("exponential", 1.0, x, 1.0) <= R.scrub_error_prob_approx(
            "exponential", 1.0, x, 1.0)
    with pytest.raises(R.InfeasibleLoadError):
        R.scrub_min_period(4, 1e9, 128, 0.3, 1e9, 0.5, 5.0)


# --- reliability polynomials -------------------------------------------------

@pytest.mark.parametrize("org", ["BM", "ID", "GRD", "CD"])
@pytest.mark.parametrize("n", [4, 6, 8, 10, 12])
def test_mirror_poly_matches_enumeration(org, n):
    c = 2 if org == "ID" else None
    pred = R.mirror_loss_predicate(org, n, c)
    assert R.enumerate_poly(pred, n).coeffs == R.mirror_poly(org, n, c).coeffs


def test_mttf_fractions(frozen):
    for s, want in frozen["mttf_fraction"].items():
        assert R.system_poly(s, 8).mttf_fraction() == Fraction(want)
    table = {"cd": "379/840", "grd": "3/8", "lsi": "82/105", "raid7": "533/840", "sspiral": "701/840"}
    for s, want in table.items():
        assert R.system_poly(s, 8).mttf_fraction() == Fraction(want)
    assert R.mirror_poly("id", 8, 2).mttf_fraction() == Fraction(61, 168)


def test_lsi_enumeration():
    assert R.hybrid_poly("lsi", 8).coeffs == (1, 8, 28, 52, 45)


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_leading_terms(n):
    for s in ("bm", "cd", "grd", "raid5", "raid6"):
        assert R.system_poly(s, n).leading_term() == R.shortcut_term(s, n)
    assert R.mirror_poly("id", n, 2).leading_term() == R.shortcut_term("id", n, 2)


def test_multilevel_terms():
    for n in (3, 4, 5):
        assert R.system_poly("raid15", n).leading_term() == R.shortcut_term("raid15", n)
        assert R.system_poly("raid51", n).leading_term() == R.shortcut_term("raid51", n)


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 8), st.floats(0.5, 1.0))
def test_raid51_beats_raid15(n, r):
    assert R.raid51_reliability(n, r) >= R.raid15_reliability(n, r) - 1e-15


def test_numeric_slope():
    assert R.numeric_slope(R.system_poly("raid6", 8)) == pytest.approx(3, abs=0.01)


def test_hda():
    assert R.hda_terms() == ((16, 2), (32, 2))
    c1, c2 = R.hda_compare(1e-3)
    assert c1 > c2


# --- other models ------------------------------------------------------------

def test_raid15_exact_vs_approx():
    d = R.DriveParams(1e5, 10)
    assert R.raid15_mttdl_exact(4, d) == pytest.approx(R.raid15_mttdl_approx(4, d), rel=0.05)


def test_raid51_path_closed():
    d = R.DriveParams(1e5, 10)
    res = R.raid51_path(5, d)
    assert res["mttdl"] == pytest.approx(res["closed"])


def test_placement_three_way_prefers_declustered():
    cl = R.placement_metrics("clustered", 100, 1e12, 3, 1e8, 1e-5)
    de = R.placement_metrics("declustered", 100, 1e12, 3, 1e8, 1e-5)
    assert de[0] > cl[0] and de[1] < cl[1]


def test_expmixture_mttf():
    m = R.ExpMixture(((0.5, 1.0), (0.5, 2.0)))
    assert m.mttf() == pytest.approx(0.75)
    assert m.reliability(0) == pytest.approx(1.0)


def test_lrc_chain_order_of_magnitude():
    v = R.lrc_mttdl()
    assert 1e12 < v < 1e13
