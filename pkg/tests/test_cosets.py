"""Double cosets and the interaction graph."""

import io
import random

import pytest

from coxhecke import (CoxeterSystem, DomainError, InputError, InfinitePair,
                      brute_force_min_rep, build_gamma_ball,
                      gamma_neighbors, shortest_rep,
                      verify_component_structure)
from coxhecke.cosets import coset_elements, dihedral_words


def test_infinite_pair_validation(free3, z2xz2):
    pair = InfinitePair.of(free3, "s", "t")
    assert (pair.s, pair.t) == (0, 1)
    with pytest.raises(InputError):
        InfinitePair.of(free3, "s", "s")
    with pytest.raises(InputError):
        InfinitePair.of(z2xz2, "s", "t")


def test_dihedral_words():
    sys = CoxeterSystem("st")
    pair = InfinitePair.of(sys, "s", "t")
    words = list(dihedral_words(pair, 3))
    assert len(words) == 7
    assert () in words and (0, 1, 0) in words and (1, 0, 1) in words


def test_shortest_rep_examples(free3, z2sq_z2):
    pair = InfinitePair.of(free3, "s", "t")
    info = shortest_rep(free3, pair, free3.element("sts"))
    assert info.w0.is_identity and not info.nondegenerate
    info = shortest_rep(free3, pair, free3.element("u"))
    assert str(info.w0) == "u" and info.nondegenerate
    assert not info.commutes_s and not info.commutes_t
    pair2 = InfinitePair.of(z2sq_z2, "s", "t")
    info = shortest_rep(z2sq_z2, pair2, z2sq_z2.element("s"))
    assert info.w0.is_identity and not info.nondegenerate


def test_shortest_rep_has_no_boundary_descents(named_systems):
    for sys in named_systems.values():
        pair = InfinitePair.of(sys, 0, next(
            t for t in range(1, sys.n) if not sys.commutes(0, t)))
        for w in sys.ball(4):
            w0 = shortest_rep(sys, pair, w).w0
            boundary = {pair.s, pair.t}
            assert not (sys.left_descents(w0) & boundary)
            assert not (sys.right_descents(w0) & boundary)


def test_shortest_rep_matches_brute_force(named_systems):
    for sys in named_systems.values():
        pair = InfinitePair.of(sys, 0, next(
            t for t in range(1, sys.n) if not sys.commutes(0, t)))
        for w in sys.ball(4):
            greedy = shortest_rep(sys, pair, w).w0
            oracle = brute_force_min_rep(sys, pair, w, bound=len(w) + 2)
            assert greedy == oracle
            reversed_order = shortest_rep(sys, pair, w,
                                          strip_order="right-first").w0
            assert greedy == reversed_order


def test_brute_force_bound_validation(free3):
    pair = InfinitePair.of(free3, "s", "t")
    with pytest.raises(InputError):
        brute_force_min_rep(free3, pair, free3.element("u"), bound=1)


def test_nondegeneracy_is_coset_invariant(free3, z2sq_z2):
    rng = random.Random(2)
    for sys in (free3, z2sq_z2):
        pair = InfinitePair.of(sys, "s", "t")
        for w in rng.sample(sys.ball(3), 10):
            info = shortest_rep(sys, pair, w)
            for v in coset_elements(sys, info, radius=len(info.w0) + 3):
                assert shortest_rep(sys, pair, v).w0 == info.w0


def test_gamma_neighbors(free3, z2sq_z2):
    assert gamma_neighbors(free3, free3.identity) == set()
    nb = {str(x) for x in gamma_neighbors(free3, free3.element("u"))}
    assert {"u.s", "s.u", "u.t", "t.u"} <= nb
    # the generator of the Z2 free factor is isolated
    assert gamma_neighbors(z2sq_z2, z2sq_z2.element("s")) == set()


def test_partial_support_dichotomy(named_systems):
    """A nontrivial element with partial support is either the lone free
    factor generator of a Z2 * Z2^k shape or has edges through some
    generator outside its support."""
    for sys in named_systems.values():
        z2gen = sys.free_z2_factor_generator()
        for w in sys.ball(4):
            if w.is_identity or sys.support(w) == frozenset(range(sys.n)):
                continue
            if z2gen is not None and w.word == (z2gen,):
                assert gamma_neighbors(sys, w) == set()
                continue
            outside = set(range(sys.n)) - sys.support(w)
            from coxhecke.cosets import edge_generators
            assert set(edge_generators(sys, w)) & outside


def test_build_gamma_ball_radius_zero(free3):
    g = build_gamma_ball(free3, 0)
    assert len(g.vertices) == 1 and not g.edges and g.n_components == 1


def test_gamma_ball_structure(free3):
    g = build_gamma_ball(free3, 4)
    # identity isolated; every other vertex of length <= 2 in one component
    assert [str(v) for v in g.isolated_vertices()] == ["e"]
    labels = {w: g.component_label[i] for i, w in enumerate(g.vertices)}
    core_labels = {labels[w] for w in g.vertices
                   if 0 < len(w) <= 2}
    assert len(core_labels) == 1


def test_gamma_edges_symmetric_under_rescan(z2sq_z2):
    g = build_gamma_ball(z2sq_z2, 4)
    index = {w: i for i, w in enumerate(g.vertices)}
    for i, j in g.edges:
        v, w = g.vertices[i], g.vertices[j]
        assert w in gamma_neighbors(z2sq_z2, v) or \
            v in gamma_neighbors(z2sq_z2, w)
        # undirected reading: each edge is shared by both endpoints' scans
        touched_from_v = {index.get(x) for x in gamma_neighbors(z2sq_z2, v)}
        touched_from_w = {index.get(x) for x in gamma_neighbors(z2sq_z2, w)}
        assert j in touched_from_v or i in touched_from_w


def test_component_structure_reports(free3, z2sq_z2, pentagon):
    rep = verify_component_structure(free3, 6, 2)
    assert rep.passed
    assert [str(w) for w in rep.exceptional] == ["e"]
    rep = verify_component_structure(z2sq_z2, 6, 2)
    assert rep.passed
    assert [str(w) for w in rep.exceptional] == ["e", "s"]
    rep = verify_component_structure(pentagon, 5, 2)
    assert rep.passed
    assert [str(w) for w in rep.exceptional] == ["e"]
    assert "pass" in rep.summary()


def test_component_structure_domain_errors(dihedral, z2xz2):
    with pytest.raises(DomainError):
        verify_component_structure(dihedral, 5)
    with pytest.raises(DomainError):
        verify_component_structure(z2xz2, 5)


def test_edge_list_export(free3):
    g = build_gamma_ball(free3, 2)
    buf = io.StringIO()
    g.write_edge_list(buf)
    lines = buf.getvalue().strip().splitlines()
    assert len(lines) == len(g.edges)
    for line in lines:
        u, v = line.split(" ")
        assert u != v
