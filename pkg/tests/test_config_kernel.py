import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gwknots import config_checks as cc
from gwknots import config_kernel as ck

TOL = 1e-9
TREFOIL = Path(__file__).resolve().parents[1] / "knots" / "trefoil.json"


def rng(seed):
    return np.random.default_rng(seed)


def test_unit_insertion():
    c = cc.random_spatial(rng(1), 4, collide=False)
    for i in range(1, 5):
        assert ck.insert(c, i, ck.UNIT).distance(c) == 0.0


def test_doubling_example():
    x = np.array([[-1.0, 0, 0], [0.1, 0.2, -0.3], [0.5, 0.0, 0.4], [1.0, 0, 0]])
    c = ck.FramedConfig(x, ck.directions(x), np.tile(np.eye(3), (4, 1, 1)))
    mu = ck.InfConfig(np.array([[[0, 0, 0], [1.0, 0, 0]], [[-1.0, 0, 0], [0, 0, 0]]]), np.tile(np.eye(3), (2, 1, 1)))
    out = ck.insert(c, 1, mu)
    assert out.n == 3
    np.testing.assert_array_equal(out.x[1], x[1])
    np.testing.assert_array_equal(out.x[2], x[1])
    np.testing.assert_array_equal(out.u[1, 2], [1.0, 0, 0])
    np.testing.assert_array_equal(out.frames[1:3], np.tile(np.eye(3), (2, 1, 1)))
    # the rest of the configuration is carried over
    np.testing.assert_allclose(out.u[1, 3], c.u[1, 2])
    np.testing.assert_allclose(out.u[2, 3], c.u[1, 2])


def test_insertion_rotates_block_by_frame():
    alpha = cc.random_frames(rng(2), 1)[0]
    x = np.array([[-1.0, 0, 0], [0.0, 0.0, 0.0], [1.0, 0, 0]])
    frames = np.stack([np.eye(3), alpha, np.eye(3)])
    c = ck.FramedConfig(x, ck.directions(x), frames)
    out = ck.insert(c, 1, ck.MU)
    np.testing.assert_allclose(out.u[1, 2], alpha @ ck.MU.u[0, 1], atol=1e-15)
    np.testing.assert_allclose(out.frames[1], alpha, atol=1e-15)


def test_index_errors():
    c = cc.random_spatial(rng(3), 2, collide=False)
    with pytest.raises(IndexError):
        ck.insert(c, 3, ck.MU)
    with pytest.raises(IndexError):
        ck.coface(4, c)
    with pytest.raises(IndexError):
        ck.codegeneracy(0, c)
    with pytest.raises(IndexError):
        ck.coface_inf(5, cc.random_inf(rng(3), 3))


def test_non_orthogonal_frame_rejected():
    c = cc.random_spatial(rng(4), 2, collide=False)
    c.frames[1] = c.frames[1] * 1.01
    with pytest.raises(ck.ConfigError):
        ck.insert(c, 1, ck.MU)


def test_drift_is_reorthonormalized_and_counted():
    base = ck.stats["reorthonormalized"]
    c = cc.random_spatial(rng(5), 2, collide=False)
    c.frames[1] = c.frames[1] * (1 + 4e-10)
    out = ck.insert(c, 1, ck.MU)
    assert ck.stats["reorthonormalized"] > base
    for a in out.frames:
        assert np.max(np.abs(a.T @ a - np.eye(3))) < 1e-12


def test_u_consistency_check():
    c = cc.random_spatial(rng(6), 3, collide=False)
    c.check()
    c.u[1, 2] = -c.u[1, 2]
    with pytest.raises(ck.ConfigError):
        c.check()


@pytest.mark.parametrize("seed", range(30))
def test_spatial_and_operadic_identities(seed):
    r = rng(seed)
    for errors in (cc.spatial_identities(r), cc.operadic_identities(r)):
        assert set(errors) == {"dd", "ss", "sd_lt", "sd_eq", "sd_gt"}
        assert max(errors.values()) < TOL


@pytest.mark.parametrize("seed", range(30))
def test_insertion_checks(seed):
    r = rng(seed)
    assert cc.insertion_associativity(r) < TOL
    assert cc.insertion_unit(r) < TOL
    assert cc.operadic_coface_paths(r) < TOL


def test_operadic_d0_is_mu_insertion():
    c = cc.random_inf(rng(7), 2)
    for i in range(4):
        assert ck.coface_inf(i, c).distance(ck.coface_inf_by_insertion(i, c)) < 1e-12
    np.testing.assert_allclose(ck.coface_inf(0, c).u, ck.insert_inf(ck.MU, 2, c).u, atol=1e-15)


def test_cofaces_preserve_u_consistency():
    c = cc.random_spatial(rng(8), 4, collide=False)
    for i in range(c.n + 2):
        ck.coface(i, c).check()


def test_straight_line_baseline():
    K = ck.FramedKnot.straight()
    for t in ([], [0.3], [-0.5, 0.1, 0.1, 0.7], [0.2, 0.2, 0.2]):
        c = ck.evaluate(K, t)
        for j in range(c.size):
            for k in range(j + 1, c.size):
                assert c.u[j, k].tolist() == [-1.0, 0.0, 0.0]
        assert np.array_equal(c.frames, np.tile(np.eye(3), (c.size, 1, 1)))
        assert np.array_equal(c.x[1:-1, 0], np.asarray(t, float))


@pytest.mark.parametrize("seed", range(10))
def test_evaluation_checks(seed):
    r = rng(seed)
    assert cc.evaluation_cofaces(r) < TOL
    assert cc.projection_evaluation(r) < TOL
    assert cc.finite_difference(r) < cc.FD_TOL


def test_monotone_stable():
    K = ck.random_knot(rng(9))
    t = [-0.4, 0.1, 0.1, 0.1, 0.6]
    perm = [t[0], t[3], t[1], t[2], t[4]]
    a, b = ck.evaluate(K, t), ck.evaluate(K, sorted(perm))
    assert a.distance(b) == 0.0


def test_non_monotone_times_rejected():
    with pytest.raises(ck.ConfigError):
        ck.evaluate(ck.FramedKnot.straight(), [0.5, 0.1])


def test_knot_frames_adapted():
    K = ck.random_knot(rng(10))
    for t in np.linspace(-1, 1, 17):
        A = K.frame(float(t))
        np.testing.assert_allclose(A[:, 0], K.tangent(float(t)), atol=1e-12)
        np.testing.assert_allclose(A.T @ A, np.eye(3), atol=1e-12)


def test_knot_json_round_trip(tmp_path):
    K = ck.random_knot(rng(11))
    path = tmp_path / "k.json"
    path.write_text(json.dumps(K.to_json()))
    L = ck.FramedKnot.load(str(path))
    assert np.array_equal(K.curve, L.curve) and np.array_equal(K.chart, L.chart)
    assert np.array_equal(K.breaks, L.breaks)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda o: o.pop("segments"),
        lambda o: o["segments"][0].__setitem__("coeffs", [[0, 1]]),
        lambda o: o["segments"][0]["coeffs"][0].__setitem__(0, 5.0),
        lambda o: o["framing"]["segments"].pop(),
        lambda o: o["segments"][0].__setitem__("t0", -0.5),
    ],
)
def test_malformed_knots(mutate):
    obj = ck.random_knot(rng(12), pieces=3).to_json()
    mutate(obj)
    with pytest.raises(ck.ConfigError):
        ck.FramedKnot.from_json(obj)


def test_malformed_knot_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ck.ConfigError):
        ck.FramedKnot.load(str(path))


def test_trefoil_file():
    K = ck.FramedKnot.load(str(TREFOIL))
    assert K.is_embedded()
    r = rng(13)
    for _ in range(20):
        assert cc.equivariance(r, K) < TOL
        assert cc.projection_action(r, K) < TOL


def test_action_examples():
    K = ck.random_knot(rng(14))
    same = ck.act_on_knots(ck.IntervalFamily(((-1.0, 1.0),)), [K])
    for t in np.linspace(-1, 1, 33):
        np.testing.assert_allclose(same.position(float(t)), K.position(float(t)), atol=1e-15)
    S = ck.FramedKnot.straight()
    Ls = ck.IntervalFamily(((-0.8, -0.2), (0.1, 0.9)))
    line = ck.act_on_knots(Ls, [S, S])
    for t in np.linspace(-1, 1, 33):
        np.testing.assert_allclose(line.position(float(t)), [t, 0, 0], atol=1e-15)
    t = [-0.9, -0.5, -0.5, 0.0, 0.3]
    c = ck.act_on_samples(Ls, [ck.evaluator(S)] * 2, t)
    assert c.distance(ck.evaluate(S, t)) < 1e-15
    with pytest.raises(ck.ConfigError):
        ck.act_on_knots(Ls, [S])


def test_samples_inside_one_interval():
    K = ck.random_knot(rng(15))
    Ls = ck.IntervalFamily(((-0.5, 0.5),))
    t = [-0.3, 0.0, 0.2]
    c = ck.act_on_samples(Ls, [ck.evaluator(K)], t)
    inner = ck.evaluate(K, [s / 0.5 for s in t])
    np.testing.assert_allclose(c.x[1:-1], 0.5 * inner.x[1:-1], atol=1e-15)
    np.testing.assert_allclose(c.u[1:-1, 1:-1], inner.u[1:-1, 1:-1], atol=1e-15)


def test_projection_on_straight_line():
    S = ck.FramedKnot.straight()
    p = ck.restriction_projection(ck.evaluator(S))
    t = [-0.2, 0.4]
    assert p(t).distance(ck.evaluate(S, t)) == 0.0


@pytest.mark.parametrize("seed", range(10))
def test_action_checks(seed):
    r = rng(seed)
    assert cc.equivariance(r) < TOL
    assert cc.projection_action(r) < TOL
    assert cc.action_associativity(r) < TOL


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_identities_property(seed):
    r = rng(seed)
    assert max(cc.spatial_identities(r).values()) < TOL
    assert max(cc.operadic_identities(r).values()) < TOL
    assert cc.insertion_associativity(r) < TOL


def test_run_checks_rows():
    rows = cc.run_checks(seed=3, samples=5)
    assert all(r.passed for r in rows)
    names = {r.check for r in cc.summarize(rows)}
    assert {"ev_equivariance", "proj_ev", "straight_line", "finite_difference"} <= names
    text = cc.to_csv(cc.summarize(rows))
    assert text.splitlines()[0] == "check,seed,max_error,tolerance,passed"
    assert cc.to_csv(cc.run_checks(seed=3, samples=5)) == cc.to_csv(rows)
    with pytest.raises(ValueError):
        cc.run_checks(samples=0)
    with pytest.raises(ValueError):
        cc.run_checks(tol=0.0)


def test_probe_error_is_second_order():
    # the centered secant error drops 100x per 10x smaller step
    K = ck.random_knot(rng(16), pieces=3)
    t = float(0.5 * (K.breaks[1] + K.breaks[2]))
    tied = ck.evaluate(K, [t, t]).u[1, 2]

    def err(h):
        d = K.position(t - h / 2) - K.position(t + h / 2)
        return np.max(np.abs(tied - d / np.linalg.norm(d)))

    ratio = err(1e-3) / err(1e-4)
    assert 80 < ratio < 120


def test_random_knot_min_gap():
    K = ck.random_knot(rng(17), pieces=3, min_gap=0.4)
    assert np.min(np.diff(K.breaks)) > 0.4
    with pytest.raises(ValueError):
        ck.random_knot(rng(17), pieces=4, min_gap=0.5)
