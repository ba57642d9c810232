import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from raidkit import perf as P


def test_seek_pmf_basics():
    pmf = P.seek_pmf(300)
    assert pmf.sum() == pytest.approx(1.0, abs=1e-12)
    assert P.pmf_mean(pmf) == pytest.approx(300 / 3, rel=0.01)
    point = P.seek_pmf(50, 1.0)
    assert point[0] == 1.0 and point[1:].sum() == 0
    with pytest.raises(ValueError):
        P.seek_pmf(10, 1.5)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 100_000), st.floats(0, 1))
def test_seek_pmf_normalized(C, p):
    assert P.seek_pmf(C, p).sum() == pytest.approx(1.0, abs=1e-9)


def test_zbr_reduces_to_uniform():
    g = P.DiskGeometry([(200, 100)], 6.0, (1.0, 0.5))
    assert np.allclose(P.zbr_seek_pmf(g), P.seek_pmf(200), atol=1e-15, rtol=0)


def test_zbr_two_zone(frozen):
    z = frozen["zbr"]
    g = P.DiskGeometry([tuple(x) for x in z["zones"]], 6.0, (1.0, 0.5))
    pmf = P.zbr_seek_pmf(g)
    assert pmf.sum() == pytest.approx(1.0, abs=1e-12)
    assert P.pmf_mean(pmf) == pytest.approx(z["mean"], rel=1e-12)
    assert P.pmf_mean(pmf) < z["C"] / 3


def test_geometry_json_roundtrip():
    g = P.DiskGeometry([(10, 20), (5, 10)], 8.0, ((0.0, 0), (2.0, 1), (9.0, 14)))
    back = P.DiskGeometry.from_json(g.to_json())
    assert back.capacity == g.capacity == (10 * 20 + 5 * 10) * 512
    assert np.allclose(back.seek_time([0, 1, 7, 14]), g.seek_time([0, 1, 7, 14]))


def test_latency_moments():
    m = P.latency_moments(6.0)
    assert (m.m1, m.m2) == (3.0, pytest.approx(12.0))


def test_f_sr():
    assert P.f_sr(1.0, 0.0) == 1.0
    assert P.f_sr(0.0, 1.0) == 0.5


def test_moment_sum_matches_convolution():
    a = P.Discrete((1.0, 2.0, 5.0), (0.2, 0.5, 0.3))
    b = P.Discrete((0.5, 3.0), (0.6, 0.4))
    vals, probs = [], []
    for x, px in zip(a.values, a.probs):
        for y, py in zip(b.values, b.probs):
            vals.append(x + y)
            probs.append(px * py)
    direct = P.Discrete(tuple(vals), tuple(probs)).moments()
    s = a.moments() + b.moments()
    for u, v in ((s.m1, direct.m1), (s.m2, direct.m2), (s.m3, direct.m3)):
        assert u == pytest.approx(v, rel=1e-12)


def test_service_moments_modes():
    g = P.default_geometry()
    w = P.WorkloadMix(0.01, 1.0, 8)
    a, b = P.service_moments(g, w, "raid5_normal"), P.service_moments(g, w, "plain")
    assert (a.m1, a.m2, a.m3) == pytest.approx((b.m1, b.m2, b.m3), rel=1e-12)
    with pytest.raises(ValueError):
        P.service_moments(g, w, "bogus")


def test_mm1_and_mmm():
    R, W, rho = P.mm1(0.5, 1.0)
    assert W == pytest.approx(1.0) and rho == 0.5
    assert P.mm1(0.0, 2.0)[0] == 2.0
    with pytest.raises(P.UnstableQueueError):
        P.mm1(1.0, 1.0)
    assert P.mmm(0.3, 1.0, 1) == pytest.approx(P.mm1(0.3, 1.0)[0])
    assert P.mmm(1.8, 1.0, 2) == pytest.approx(1 / (1 - 0.81))


def test_mm2_against_truncated_chain(frozen):
    assert P.mmm(1.8, 1.0, 2) == pytest.approx(frozen["mm2_rho09"], rel=1e-5)


def test_shared_queue_beats_split():
    for rho in (0.3, 0.6, 0.9):
        assert P.mmm(2 * rho, 1.0, 2) < P.mm1(rho, 1.0)[0]


def test_balanced_example():
    rb, ru = P.balanced_example()
    assert round(rb, 2) == 2.5 and round(ru, 2) == 3.89


def test_mg1():
    s = P.ServiceMoments.exponential(1.0)
    q = P.mg1(0.5, s)
    assert q.W == pytest.approx(P.mm1(0.5, 1.0)[1])
    det = P.mg1(0.5, P.ServiceMoments.deterministic(1.0))
    assert det.W == pytest.approx(0.5)
    near = P.mg1(0.999, P.ServiceMoments.deterministic(1.0))
    assert near.scv_R == pytest.approx(1.0, rel=0.02)
    assert q.R2 == pytest.approx(q.W2 + s.m2 + 2 * q.W * s.m1)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 0.95), st.floats(0.01, 0.95))
def test_waiting_increasing(r1, r2):
    s = P.ServiceMoments(1.0, 1.5, 3.0)
    lo, hi = sorted((r1, r2))
    assert 0 <= P.mg1(lo, s).W <= P.mg1(hi, s).W


def test_priority_wait():
    s = P.ServiceMoments(1.0, 1.5, 3.0)
    assert P.priority_wait(0.6, s, 0.6) == pytest.approx(P.mg1(0.6, s).W)
    assert P.priority_wait(0.6, s, 0.0) == pytest.approx(0.6 * 1.5 / 2)
    for h in np.linspace(0, 0.59, 20):
        assert P.priority_wait(0.6, s, h) < P.mg1(0.6, s).W


def test_percentiles():
    assert P.percentile_tools(2.0, 1 - 1 / math.e)[0] == pytest.approx(2.0)
    assert P.percentile_tools(1.0, 0.9)[0] == pytest.approx(math.log(10))
    assert P.percentile_tools(1e12, 0.9, m1=2.0)[1] == pytest.approx(0.5)


def test_gim1(frozen):
    s, W = P.gim1_erlang2(0.5, 1.0)
    assert s == pytest.approx(frozen["gim1_sigma"]["0.5"], rel=1e-10)
    assert P.gim1_erlang2(0.8, 1.0)[0] == pytest.approx(frozen["gim1_sigma"]["0.8"], rel=1e-10)
    for rho in np.linspace(0.01, 0.99, 50):
        sig, w = P.gim1_erlang2(rho, 1.0)
        assert sig < rho and w <= P.mm1(rho, 1.0)[1]


def test_fork_join_forms():
    assert P.fj_response(2, 0.0, 1.0, method="exact2") == 1.5
    assert P.fj_response(3, 0.0, 1.0, method="max_exp") == pytest.approx(11 / 6)
    for rho in np.linspace(0, 0.95, 40):
        a = P.fj_response(2, rho, 1.0, method="exact2")
        assert abs(P.fj_response(2, rho, 1.0, method="nelson") - a) <= 1e-12
        assert P.fj_response(2, rho, 1.0, method="max_exp") >= a
    with pytest.raises(ValueError):
        P.fj_response(3, 0.1, 1.0, method="exact2")
    with pytest.raises(ValueError):
        P.fj_response(40, 0.1, 1.0, method="nelson")
    evd = P.fj_response(4, 0, 1.0, 0.5, "max_evd")
    assert P.fj_response(4, 0, 1.0, 0.5, "max_evd", calibrate=True) < evd


def test_max_erlang_quadrature(frozen):
    for n in (2, 3, 8):
        assert P.fj_response(n, 0, 1.0, 1.0, "max_erlang") == pytest.approx(P.harmonic(n), rel=1e-3)
    assert P.expected_max_erlang(3, 1.0, 2) == pytest.approx(frozen["erlang_max"]["3:2"], rel=1e-8)
    assert P.expected_max_erlang(5, 2.0, 4) == pytest.approx(frozen["erlang_max"]["5:4"], rel=1e-8)


def test_asymmetric_max(frozen):
    assert P.fj_max_asymmetric2(1.0, 1, 1.0, 1) == pytest.approx(1.5)
    assert P.fj_max_asymmetric2(3.0, 2, 0.0, 2) == 3.0
    assert P.fj_max_asymmetric2(1.0, 2, 2.0, 3) == pytest.approx(frozen["erlang_max2"]["1:2:2:3"], rel=1e-9)
    sym = P.fj_max_asymmetric2(1.0, 2, 1.0, 2)
    assert sym == pytest.approx(P.expected_max_erlang(2, 1.0, 2), rel=1e-3)


def test_degraded_load():
    assert P.degraded_load(10, f_r=1.0)[0] == pytest.approx(2.0)
    _, full = P.degraded_load(8, 8, 1.0, (1.0, 1.0, 1.0), 0.8)
    assert full["rho_read"] == pytest.approx(2 * 0.8 / 8)
    reads = [P.degraded_load(13, g, 1.0, (1.0, 1.0, 1.0), 1.0)[1]["rho_read"] for g in range(2, 14)]
    diffs = np.diff(reads)
    assert np.allclose(diffs, diffs[0])
    with pytest.raises(ValueError):
        P.degraded_load(5, 6)


def test_vacation_lst_consistency():
    v = P.disk_vacations(P.default_geometry())
    assert v.check()
    mix = v.mixed_moments(0.05)
    num = P.numeric_lst_moments(lambda s: v.mixed_lst(s, 0.05), mix.m1)
    for a, b in zip(num, (mix.m1, mix.m2, mix.m3)):
        assert a == pytest.approx(b, rel=1e-6)


def test_vsm_limits():
    g = P.default_geometry()
    s = P.service_moments(g, P.WorkloadMix(0.0, 1.0, 8))
    v = P.disk_vacations(g)
    idle = P.vsm_rebuild(1e-12, s, v, 100)
    mix0 = v.type2.moments()
    assert idle.W == pytest.approx(mix0.m2 / (2 * mix0.m1), rel=1e-9)
    assert idle.T_rebuild == pytest.approx(100 * g.rotation_ms, rel=1e-6)
    tiny = P.VacationSpec(P.Deterministic(1e-12), P.Deterministic(1e-12))
    assert P.vsm_rebuild(0.05, s, tiny, 100).W == pytest.approx(P.mg1(0.05, s).W, rel=1e-9)


def test_vsm_deterministic_tracks():
    T = 6.0
    v = P.VacationSpec(P.Deterministic(T), P.Deterministic(T))
    s = P.ServiceMoments.exponential(5.0)
    lam = 0.03
    r = P.vsm_rebuild(lam, s, v, 1000)
    e = math.exp(-lam * T)
    assert r.n_track == pytest.approx(1 + e / (1 - e))


def test_vsm_monotone_and_unstable():
    g = P.default_geometry()
    s = P.service_moments(g, P.WorkloadMix(0.0, 1.0, 8))
    v = P.disk_vacations(g)
    ts = [P.vsm_rebuild(rho / s.m1, s, v, 1000, k=4).T_rebuild for rho in np.linspace(0.01, 0.45, 12)]
    assert all(b > a for a, b in zip(ts, ts[1:]))
    with pytest.raises(P.UnstableQueueError):
        P.vsm_rebuild(0.6 / s.m1, s, v, 10)


def test_rebuild_shortcuts():
    assert P.rebuild_shortcuts("beta", T0=3.0, rho=0.0) == 3.0
    with pytest.raises(P.UnstableQueueError):
        P.rebuild_shortcuts("beta", T0=3.0, rho=0.6)
    hi = P.rebuild_shortcuts("bandwidth", lam=1e3, x_ru=6.0, s_ru=1e5, T_R=6.0)
    assert hi["n_ru"] == pytest.approx(1.0)
    assert hi["latency"] == pytest.approx(6.0)


@settings(max_examples=1000, deadline=None)
@given(st.floats(0, 10), st.floats(0, 100), st.floats(0, 100))
def test_pcm_vs_vsm(lam, x, w):
    pv, pp = P.pcm_vs_vsm(lam, x, w)
    assert pv <= pp


def test_pcm_vs_vsm_edges():
    assert P.pcm_vs_vsm(0.0, 3.0, 1.0) == (0.0, 0.0)
    a, b = P.pcm_vs_vsm(0.2, 3.0, 0.0)
    assert a == b


def test_misc(frozen):
    assert P.lfs_bso(0.6) == pytest.approx(frozen["lfs_bso_06"], abs=1e-9)
    assert abs(P.lfs_bso(0.6) - 0.324) <= 0.001
    assert P.ioe(4) == pytest.approx(1.08)
    assert P.satf_scale(10.0, 32) == pytest.approx(10 / 2)
    assert P.seek_minmax(300, 1) == (100.0, pytest.approx(100.0))
    assert P.seek_minmax(300, 2)[0] == 60.0
    assert P.delayed_encoding(0.25, 4) == pytest.approx(3.25)
    with pytest.raises(ValueError):
        P.lfs_bso(1.2)


def test_optimal_routing():
    rates, R = P.optimal_routing(1.2, [(1.0, 2.0), (1.0, 2.0)])
    assert rates == pytest.approx([0.6, 0.6]) and R == pytest.approx(2.5)
    rates, _ = P.optimal_routing(0.3, [(1.0, 2.0), (10.0, 200.0)])
    assert rates[1] == 0.0
    with pytest.raises(P.UnstableQueueError):
        P.optimal_routing(2.0, [(1.0, 2.0), (1.0, 2.0)])
    assert P.misc_formulas("ioe", k_kb=50) == 2.0
