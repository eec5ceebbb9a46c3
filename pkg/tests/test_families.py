import pytest

from drguniform import (
    BudgetExceeded,
    Graph,
    InvalidParams,
    cartesian_product,
    classical_parameters,
    graph_isomorphic,
    intersection_array,
    near_polygon_check,
    spectrum,
)
from drguniform.families import (
    doob,
    dual_polar_2a,
    dual_polar_generator_bases,
    halved_cube,
    hamming,
    johnson,
)
from drguniform.fields import hermitian_inner, rank_gf
from drguniform.tmodules import tightness


def test_hamming_small_cases():
    k4 = hamming(1, 4)
    assert k4.n == 4 and k4.m == 6
    c4 = hamming(2, 2)
    cycle4 = graph_isomorphic(c4, Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))
    assert cycle4 is not None


def test_hamming_array(h33):
    ia = intersection_array(h33)
    assert ia.c == (1, 2, 3) and ia.b == (6, 4, 2)
    assert h33.n == 27 and h33.degree(0) == 6


def test_hamming_is_cartesian_power():
    k3 = hamming(1, 3)
    power = cartesian_product(cartesian_product(k3, k3), k3)
    assert graph_isomorphic(hamming(3, 3), power) is not None


def test_johnson_cases(j94, j63):
    assert johnson(4, 2).n == 6
    assert j94.n == 126
    cp = classical_parameters(intersection_array(j94))
    assert (cp.D, cp.q, cp.alpha, cp.beta) == (4, 1, 1, 5)
    ia = intersection_array(j63)
    sp = spectrum(ia)
    tight, gap = tightness(ia, sp.eigenvalues[1], sp.eigenvalues[-1])
    assert tight and gap == 0
    with pytest.raises(InvalidParams):
        johnson(3, 2)


def test_halved_cube_cases(halved7, halved8):
    hc4 = halved_cube(4)
    assert hc4.n == 8 and hc4.diameter() == 2
    assert halved7.n == 64 and halved7.diameter() == 3
    assert halved8.n == 128 and halved8.diameter() == 4


def test_shrikhande_vs_rook(shrik):
    ia = intersection_array(shrik)
    assert shrik.n == 16 and ia.k == 6
    assert ia.c == (1, 2) and ia.a == (0, 2, 4)  # srg(16, 6, 2, 2)
    h24 = hamming(2, 4)
    assert intersection_array(h24) == ia
    assert graph_isomorphic(shrik, h24) is None


def _local_graph(g, v):
    nbrs = sorted(g.adj[v])
    index = {u: i for i, u in enumerate(nbrs)}
    edges = [
        (index[a], index[b])
        for a in nbrs
        for b in nbrs
        if a < b and g.adjacent(a, b)
    ]
    return Graph(len(nbrs), edges)


def test_local_graphs_distinguish_shrikhande(shrik):
    local_s = _local_graph(shrik, 0)
    local_h = _local_graph(hamming(2, 4), 0)
    # hexagon versus two triangles
    assert all(local_s.degree(v) == 2 for v in range(6))
    assert local_s.is_connected()
    assert not local_h.is_connected()


def test_doob_cases(doob11, shrik, h34):
    d10 = doob(1, 0)
    assert graph_isomorphic(d10, shrik) is not None
    assert doob11.n == 64 and doob11.diameter() == 3
    assert intersection_array(doob11) == intersection_array(h34)
    assert graph_isomorphic(doob11, h34) is None  # Doob is not Hamming
    k4 = hamming(1, 4)
    direct = cartesian_product(shrik, k4)
    assert sorted(direct.edges()) == sorted(doob11.edges())


def test_gosset_graph(gosset_graph):
    g = gosset_graph
    assert g.n == 56
    assert g.degree(0) == 27
    assert g.diameter() == 3
    ia = intersection_array(g)
    sp = spectrum(ia)
    tight, gap = tightness(ia, sp.eigenvalues[1], sp.eigenvalues[-1])
    assert tight and gap == 0
    cp = classical_parameters(ia)
    assert (cp.D, cp.q) == (3, 1)


def test_dual_polar_small(dp22):
    assert dp22.n == 27
    ia = intersection_array(dp22)
    assert ia.D == 2


def test_dual_polar_891(dp23):
    assert dp23.n == 891
    ia = intersection_array(dp23)
    assert ia.c == (1, 5, 21) and ia.b == (42, 40, 32)
    cp = classical_parameters(ia)
    assert cp.q == -2
    assert near_polygon_check(dp23, ia)


def test_dual_polar_isotropy_post_hoc():
    field, points, bases = dual_polar_generator_bases(2, 2)
    assert len(bases) == 27
    for rows in bases[::5]:  # sample
        assert len(rows) == 2
        assert rank_gf(field, rows) == 2
        for u in rows:
            for v in rows:
                assert hermitian_inner(field, u, v) == 0


def test_hermitian_forms(her22, her23):
    assert her22.n == 16 and her22.degree(0) == 5
    assert her23.n == 512 and her23.diameter() == 3
    ia = intersection_array(her23)
    cp = classical_parameters(ia)
    assert cp.q == -2
    assert not near_polygon_check(her23, ia)


def test_budgets():
    with pytest.raises(BudgetExceeded):
        hamming(6, 10)
    with pytest.raises(BudgetExceeded):
        hamming(3, 3, budget=10)
    with pytest.raises(BudgetExceeded):
        dual_polar_2a(2, 4)  # ~114k vertices, over the default budget


def test_every_family_distance_regular(
    h33, j63, halved7, shrik, doob11, gosset_graph, dp22, her22
):
    for g in (h33, j63, halved7, shrik, doob11, gosset_graph, dp22, her22):
        ia = intersection_array(g)  # raises if not distance-regular
        assert ia.n == g.n


def test_classical_q_signs(h33, j63, halved7, doob11, gosset_graph, dp23, her23):
    for g in (h33, j63, halved7, doob11, gosset_graph):
        assert classical_parameters(intersection_array(g)).q == 1
    for g in (dp23, her23):
        assert classical_parameters(intersection_array(g)).q == -2
