import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphricci.curvature import (
    INF,
    check_cd,
    check_dimension,
    curvature_oracle,
    graph_curvature,
    local_forms,
    vertex_curvature,
)
from graphricci.graph import gen_bridge_cliques, gen_complete, gen_cycle, gen_hypercube, gen_product
from graphricci.operators import apply_laplacian, gamma, gamma2_local
from graphricci.spectra import harmonic_eigenpairs

from conftest import connected_graphs

K2 = gen_complete(2)
DIMS = [2.0, 5.0, 10.0, INF]


@pytest.mark.parametrize("m", [1.5, 2.0, 5.0, 100.0, INF])
def test_k2_closed_form(m):
    # Q(t) = (1 − 1/m) t², Γ(t) = t²/2
    expect = 2.0 if math.isinf(m) else 2.0 - 2.0 / m
    assert vertex_curvature(K2, 0, m) == pytest.approx(expect, abs=1e-12)


def test_k2_local_forms():
    lf = local_forms(K2, 0, INF)
    assert lf.s1 == (1,) and lf.s2 == ()
    np.testing.assert_allclose(lf.q, [[1.0]])
    np.testing.assert_allclose(lf.g1, [[0.5]])


def test_ball_shapes():
    for n in range(2, 7):
        assert all(local_forms(gen_complete(n), x).s2 == () for x in range(n))
    lf = local_forms(gen_cycle(4), 0)
    assert (len(lf.s1), len(lf.s2)) == (2, 1)


def test_dimension_validation():
    for bad in (1.0, 0.5, -3.0, float("nan")):
        with pytest.raises(ValueError):
            check_dimension(bad)
    assert check_dimension(INF) == INF


def test_k3_matches_oracle():
    kv = vertex_curvature(gen_complete(3), 0, INF)
    ko = curvature_oracle(gen_complete(3), 0, INF, trials=20, seed=1)
    assert abs(kv - ko) <= 1e-6
    assert ko == pytest.approx(1.25, abs=1e-6)


def test_oracle_k2_and_c4():
    assert curvature_oracle(K2, 0, INF, trials=100) == pytest.approx(2.0, abs=1e-6)
    c4 = gen_cycle(4)
    assert abs(curvature_oracle(c4, 0, INF, trials=100) - vertex_curvature(c4, 0, INF)) <= 1e-6


def test_oracle_is_seed_deterministic():
    g = gen_bridge_cliques(3)
    assert curvature_oracle(g, 0, 2.0, trials=3, seed=7) == curvature_oracle(g, 0, 2.0, trials=3, seed=7)


@pytest.mark.parametrize("k", range(1, 5))
def test_hypercube_nonnegative(k):
    assert graph_curvature(gen_hypercube(k), INF).kappa >= -1e-9


def test_k2_graph_curvature():
    r = graph_curvature(K2, INF)
    assert r.kappa == pytest.approx(2.0, abs=1e-12)
    assert r.argmin == 0


@pytest.mark.parametrize(
    "g", [gen_cycle(5), gen_cycle(8), gen_hypercube(3), gen_complete(5), gen_product(gen_cycle(3), gen_cycle(4))]
)
@pytest.mark.parametrize("m", [2.0, INF])
def test_vertex_transitive_constant(g, m):
    pv = graph_curvature(g, m).per_vertex
    assert np.ptp(pv) <= 1e-9


def test_bridge5_against_oracle():
    g = gen_bridge_cliques(5)
    r = graph_curvature(g, INF)
    oracle = min(curvature_oracle(g, x, INF, trials=3) for x in range(g.n))
    assert abs(r.kappa - oracle) <= 1e-6


def test_threaded_matches_serial():
    g = gen_product(gen_cycle(4), gen_cycle(4))
    a = graph_curvature(g, 2.0, workers=1)
    b = graph_curvature(g, 2.0, workers=4)
    assert np.array_equal(a.per_vertex, b.per_vertex) and a.argmin == b.argmin


def test_check_cd_examples():
    assert check_cd(K2, INF, 2.0).holds
    assert not check_cd(K2, INF, 2.0 + 1e-3).holds
    c = check_cd(gen_bridge_cliques(4), INF, -0.3)
    assert not c.holds and c.worst_vertex in (0, 4)


def test_check_cd_known_lower_bounds(corpus_graphs):
    for _, g in corpus_graphs:
        r = graph_curvature(g, 2.0)
        d = float(g.degrees.max())
        assert check_cd(g, 2.0, 1.0 / d - 1.0, curvature=r).holds
        assert check_cd(g, 2.0, -1.0, curvature=r).holds


def test_maximality(small_corpus):
    for _, g in small_corpus[:30]:
        for m in (2.0, INF):
            r = graph_curvature(g, m)
            assert check_cd(g, m, r.kappa, 1e-9, curvature=r).holds
            assert not check_cd(g, m, r.kappa + 1e-6, 0.0, curvature=r).holds


def test_monotone_in_dimension(corpus_graphs):
    for _, g in corpus_graphs:
        rows = [graph_curvature(g, m).per_vertex for m in DIMS]
        for lo, hi in zip(rows, rows[1:]):
            assert np.all(lo <= hi + 1e-12)


def test_below_first_eigenvalue(corpus_graphs):
    for _, g in corpus_graphs:
        lam1 = harmonic_eigenpairs(g).lambda1
        for m in (2.0, 5.0, INF):
            assert graph_curvature(g, m).kappa <= lam1 + 1e-9


def _coords_form_value(lf, u):
    return float(u @ lf.q @ u)


@st.composite
def graph_vertex_dim(draw):
    g = draw(connected_graphs(max_n=9))
    x = draw(st.integers(0, g.n - 1))
    m = draw(st.sampled_from([1.5, 2.0, 3.0, 10.0, INF]))
    return g, x, m


@settings(max_examples=150, deadline=None)
@given(graph_vertex_dim(), st.integers(0, 2**32 - 1))
def test_local_forms_match_operators(args, seed):
    g, x, m = args
    lf = local_forms(g, x, m)
    k1 = len(lf.s1)
    assert np.array_equal(lf.q, lf.q.T)
    assert np.all(np.diag(lf.g1) > 0)
    s2_block = lf.q[k1:, k1:]
    assert np.all(np.diag(s2_block) > 0)
    assert np.array_equal(s2_block, np.diag(np.diag(s2_block)))

    rng = np.random.default_rng(seed)
    f = np.zeros(g.n)
    f[list(lf.s1 + lf.s2)] = rng.normal(size=len(lf.s1) + len(lf.s2))
    f[x] = rng.normal()
    f[[v for v in range(g.n) if v not in lf.s1 + lf.s2 + (x,)]] = rng.normal(size=g.n - 1 - len(lf.s1 + lf.s2))
    u = lf.coords(f)
    lap = apply_laplacian(g, f)[x]
    expect = gamma2_local(g, f, x) - (0.0 if math.isinf(m) else 1.0 / m) * lap**2
    scale = 1.0 + float(np.max(f**2))
    assert abs(_coords_form_value(lf, u) - expect) <= 1e-10 * scale
    g1u = u[:k1] @ lf.g1 @ u[:k1]
    assert abs(g1u - gamma(g, f, f, x)) <= 1e-12 * scale


@settings(max_examples=40, deadline=None)
@given(graph_vertex_dim())
def test_oracle_never_undercuts(args):
    g, x, m = args
    kv = vertex_curvature(g, x, m)
    ko = curvature_oracle(g, x, m, trials=2, seed=0)
    assert ko >= kv - 1e-6
    assert abs(ko - kv) <= 1e-6


@settings(max_examples=40, deadline=None)
@given(connected_graphs(max_n=9), st.sampled_from([0.05, 0.5, 7.0, 300.0]))
def test_scale_invariant(g, c):
    for m in (2.0, INF):
        a = graph_curvature(g, m).per_vertex
        b = graph_curvature(g.scaled(c), m).per_vertex
        np.testing.assert_allclose(a, b, atol=1e-9)
