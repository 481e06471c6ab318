"""Dimension layer: admissible colorings, graded dimensions, closed forms."""

import numpy as np
import pytest

from unrolledsl2.errors import DomainError, NonGenericError
from unrolledsl2.qscalar import RootParams
from unrolledsl2.tqftdim import (
    GraphEdge,
    TrivalentGraph,
    add_leg,
    add_point_chain,
    basic_algebra_generic,
    circle_graph,
    dumbbell_graph,
    enumerate_colorings,
    graded_dimension,
    hh0_dimension_generic,
    multiplicity_dims,
    necklace_graph,
    random_generic_graph,
    tetrahedron_graph,
    theta_graph,
    triple_admissible,
    verlinde,
)


def _generic(rng):
    while True:
        v = float(rng.uniform(0.1, 1.9))
        if abs(v - round(v)) > 0.05:
            return v


# ----------------------------------------------------------------------
# admissible triples
# ----------------------------------------------------------------------


def test_triple_admissible_examples():
    # odd root: at most one degree, fixed by the weight-window shift
    ctx3 = RootParams(3)
    assert triple_admissible(ctx3, 0.5, 0.5, 1.0) == {0}
    assert triple_admissible(ctx3, 0.5, 0.5, 1.0 + 2 * ctx3.rprime) == {1}
    assert triple_admissible(ctx3, 0.5, 0.5, 1.5) == set()
    # even root: parity must match the odd lattice; (1/2,1/2,1) sums to an
    # even integer and is inadmissible, (1/2,1/2,0) admits two consecutive
    ctx2 = RootParams(2)
    assert triple_admissible(ctx2, 0.5, 0.5, 1.0) == set()
    ks = triple_admissible(ctx2, 0.5, 0.5, 0.0)
    assert len(ks) == 2 and max(ks) == min(ks) + 1


def test_triple_admissible_shapes():
    rng = np.random.default_rng(21)
    for r in (2, 3, 5, 6, 7):
        ctx = RootParams(r)
        for _ in range(60):
            a, b = _generic(rng), _generic(rng)
            c = float(rng.integers(-3, 4)) - a - b + (ctx.r - 1)
            ks = triple_admissible(ctx, a, b, c)
            if r % 2:
                assert len(ks) <= 1
            else:
                assert len(ks) in (0, 2)
                if ks:
                    assert max(ks) == min(ks) + 1
            # symmetry in the colors
            assert ks == triple_admissible(ctx, c, a, b)
            # nonreal colors admit nothing
            assert triple_admissible(ctx, a + 0.3j, b, c) == set()


# ----------------------------------------------------------------------
# graph validation
# ----------------------------------------------------------------------


def test_graph_validation_errors():
    ctx = RootParams(5)
    with pytest.raises(DomainError):
        # not trivalent
        TrivalentGraph(
            ctx, (GraphEdge("e", "u", "v", 0.3), GraphEdge("f", "u", "v", -0.3))
        )
    with pytest.raises(DomainError):
        # gradings do not close up to a 1-cycle
        theta = (
            GraphEdge("e1", "u", "v", 0.3),
            GraphEdge("e2", "u", "v", 0.4),
            GraphEdge("e3", "u", "v", 0.2),
        )
        TrivalentGraph(ctx, theta)
    with pytest.raises(DomainError):
        # external leg color degree must match the grading
        edges = (
            GraphEdge("c", "x", "x", 0.5),
            GraphEdge("p", None, "x", 0.1, color=0.4),
        )
        TrivalentGraph(ctx, edges)


def test_graph_genus():
    ctx = RootParams(5)
    assert circle_graph(ctx, 0.3).genus == 1
    assert theta_graph(ctx, 0.3, 0.4).genus == 2
    assert tetrahedron_graph(ctx, 0.21, 0.34, 0.42).genus == 3
    assert necklace_graph(ctx, 4).genus == 4


# ----------------------------------------------------------------------
# counting
# ----------------------------------------------------------------------


def test_circle_counts():
    for r in (2, 3, 5, 6, 7):
        ctx = RootParams(r)
        gd = graded_dimension(circle_graph(ctx, 0.37))
        assert sum(gd.coefficients.values()) == ctx.rprime
        assert set(gd.coefficients) == {0}


def test_closed_form_counts():
    rng = np.random.default_rng(23)
    for r in (2, 3, 5, 6, 7):
        ctx = RootParams(r)
        for g in (2, 3):
            graph = random_generic_graph(ctx, rng, g)
            total = sum(graded_dimension(graph).coefficients.values())
            if r % 2:
                assert total == r ** (3 * g - 3)
            else:
                assert total == r ** (3 * g - 3) // 2 ** (g - 1)


def test_enumeration_matches_histogram():
    rng = np.random.default_rng(25)
    for r in (3, 6):
        ctx = RootParams(r)
        graph = theta_graph(ctx, _generic(rng), _generic(rng))
        colorings = enumerate_colorings(graph)
        gd = graded_dimension(graph)
        hist: dict[int, int] = {}
        for col in colorings:
            hist[col.total_degree] = hist.get(col.total_degree, 0) + 1
        assert hist == gd.coefficients


# ----------------------------------------------------------------------
# Verlinde identity
# ----------------------------------------------------------------------


def test_verlinde_genus_one_value():
    for r in (2, 3, 5, 6, 7):
        ctx = RootParams(r)
        assert abs(verlinde(ctx, 1, 1.0 / 3) - ctx.rprime) < 1e-10


def test_verlinde_domain():
    ctx = RootParams(5)
    with pytest.raises(DomainError):
        verlinde(ctx, -1, 0.3)
    with pytest.raises(DomainError):
        verlinde(ctx, 1, 2.0)


def test_verlinde_identity_spot(tol=1e-9):
    rng = np.random.default_rng(27)
    for r in (3, 6):
        ctx = RootParams(r)
        graph = random_generic_graph(ctx, rng, 2)
        gd = graded_dimension(graph)
        for _ in range(5):
            beta = _generic(rng)
            v = verlinde(ctx, 2, beta)
            assert abs(gd.evaluate_at(ctx, beta) - v) < 1e-8 * (1 + abs(v))


def test_verlinde_with_points():
    rng = np.random.default_rng(29)
    for r in (2, 3, 5):
        ctx = RootParams(r)
        graph = random_generic_graph(ctx, rng, 2, 2)
        gd = graded_dimension(graph)
        points = []
        for e in graph.external_edges:
            c = complex(e.color)
            points.append(c if e.head is not None else -c)
        for _ in range(5):
            beta = _generic(rng)
            v = verlinde(ctx, 2, beta, points)
            assert abs(gd.evaluate_at(ctx, beta) - v) < 1e-8 * (1 + abs(v))


# ----------------------------------------------------------------------
# graph independence
# ----------------------------------------------------------------------


def test_histogram_graph_independence():
    rng = np.random.default_rng(31)
    for r in (2, 3, 5, 6, 7):
        ctx = RootParams(r)
        h1 = graded_dimension(necklace_graph(ctx, 3, [0.21, 0.83], 0.55))
        h2 = graded_dimension(tetrahedron_graph(ctx, 0.31, 0.44, 0.62))
        assert h1.coefficients == h2.coefficients
        t1 = graded_dimension(theta_graph(ctx, _generic(rng), _generic(rng)))
        t2 = graded_dimension(theta_graph(ctx, _generic(rng), _generic(rng)))
        assert t1.coefficients == t2.coefficients


def test_dumbbell_bridge_is_non_generic():
    ctx = RootParams(5)
    with pytest.raises(NonGenericError):
        graded_dimension(dumbbell_graph(ctx, 0.3, 0.7))


# ----------------------------------------------------------------------
# marked points
# ----------------------------------------------------------------------


def test_single_point_needs_trivial_degree():
    ctx = RootParams(5)
    graph = add_leg(circle_graph(ctx, 0.37), "c0", 0.0)
    assert len(graph.external_edges) == 1
    # generic color: the meridian sum obstruction
    with pytest.raises(DomainError):
        add_leg(circle_graph(ctx, 0.37), "c0", 0.4)
    with pytest.raises(DomainError):
        random_generic_graph(RootParams(2), np.random.default_rng(0), 1, 1)


def test_point_chain_compensates():
    ctx = RootParams(5)
    base = theta_graph(ctx, 0.3, 0.45)
    graph = add_point_chain(base, "e1", [0.4, -0.4])
    assert len(graph.external_edges) == 2
    assert graph.genus == 2
    # genus g with n points has 3g-3+n internal edges: one color choice each
    total = sum(graded_dimension(graph).coefficients.values())
    assert total == ctx.r ** 5


def test_point_chain_needs_zero_degree_sum():
    ctx = RootParams(5)
    base = theta_graph(ctx, 0.3, 0.45)
    with pytest.raises(DomainError):
        add_point_chain(base, "e1", [0.4, 0.3])


# ----------------------------------------------------------------------
# Hochschild route
# ----------------------------------------------------------------------


def test_hh0_equals_enumeration_spot():
    rng = np.random.default_rng(33)
    for r in (2, 3, 5, 6, 7):
        ctx = RootParams(r)
        for _ in range(4):
            genus = int(rng.integers(1, 4))
            legs = int(rng.integers(0, 3))
            if legs == 1 and r % 2 == 0:
                legs = 2
            graph = random_generic_graph(ctx, rng, genus, legs)
            a = graded_dimension(graph)
            b = hh0_dimension_generic(graph)
            assert a.coefficients == b.coefficients
            assert a.parity_mode == b.parity_mode


def test_hh0_non_generic_rejected():
    ctx = RootParams(5)
    with pytest.raises(NonGenericError):
        hh0_dimension_generic(circle_graph(ctx, 1.0))


# ----------------------------------------------------------------------
# multiplicity modules and the basic algebra
# ----------------------------------------------------------------------


def test_multiplicity_symmetry_and_total():
    rng = np.random.default_rng(35)
    for r in (2, 3, 5):
        ctx = RootParams(r)
        a, b = _generic(rng), _generic(rng)
        # the three gradings must sum to an even integer to admit colorings
        c = 2.0 - a - b
        m1 = multiplicity_dims(ctx, a, b, c)
        m2 = multiplicity_dims(ctx, b, c, a)
        assert m1 == m2
        total = sum(m1.values())
        expect = ctx.rprime ** 3 if r % 2 else 2 * ctx.rprime ** 3
        assert total == expect


def test_basic_algebra_generic():
    for r in (2, 3, 5, 6, 7):
        ctx = RootParams(r)
        alg = basic_algebra_generic(ctx, 0.37)
        assert len(alg.simple_summands) == ctx.rprime
        assert alg.graded_endomorphism_dims == {0: ctx.rprime}


def test_evaluate_super_sign():
    ctx = RootParams(6)
    gd = graded_dimension(theta_graph(ctx, 0.3, 0.45))
    plain = sum(gd.coefficients.values())
    superd = gd.evaluate(1.0)
    # the super evaluation flips odd degrees
    expected = sum(v * (-1) ** k for k, v in gd.coefficients.items())
    assert abs(superd - expected) < 1e-12
    assert plain != expected or all(k % 2 == 0 for k in gd.coefficients)
