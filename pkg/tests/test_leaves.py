import itertools

import pytest

from conftest import framed, vec
from oracles import leaf_oracle, roots_oracle, sigma_oracle
from quiverweyl.cartan import AFFINE, classify_form
from quiverweyl.leaves import (
    RepType,
    assemble_namikawa_weyl,
    enumerate_codim2_leaves_general,
    enumerate_codim2_leaves_sigma0,
    leaf_dimension,
)
from quiverweyl.quiver import Quiver, build_framed, p_value, pair_simple, tits_pairing
from quiverweyl.sigma import SIGMA0, DecompositionTable, canonical_string_decomposition


def leaves_of(name):
    fp = framed(name)
    sd = canonical_string_decomposition(fp)
    return fp, sd, enumerate_codim2_leaves_general(fp, sd)


def named_parts(q, tau):
    return sorted((tuple(sorted(q.as_dict(v).items())), m) for v, m in tau.parts)


def test_leaf_dimension_examples():
    fp = framed("example3")
    q = fp.framed
    delta = vec(q, _0=1, _1=1, _2=1)
    tau1 = RepType(((vec(q, inf=1), 1), (vec(q, beta=1), 2), (delta, 1), (delta, 1), (delta, 1)))
    assert leaf_dimension(q, tau1) == 6
    c = vec(q, inf=1, beta=2, _0=3, _1=2, _2=2)
    assert p_value(q, c) == 3
    tau2 = RepType(((c, 1), (vec(q, _1=1), 1), (vec(q, _2=1), 1)))
    assert leaf_dimension(q, tau2) == 6
    assert leaf_dimension(q, RepType(((fp.vtilde, 1),))) == 2 * p_value(q, fp.vtilde)


def test_example3_leaves():
    fp, sd, leaves = leaves_of("example3")
    q = fp.framed
    delta = vec(q, _0=1, _1=1, _2=1)
    c = vec(q, inf=1, beta=2, _0=3, _1=2, _2=2)
    tau1 = RepType(((vec(q, inf=1), 1), (vec(q, beta=1), 2), (delta, 1), (delta, 1), (delta, 1)))
    tau2 = RepType(((c, 1), (vec(q, _1=1), 1), (vec(q, _2=1), 1)))
    got = {tuple(named_parts(q, lf.rep_type)): lf for lf in leaves}
    assert set(got) == {tuple(named_parts(q, tau1)), tuple(named_parts(q, tau2))}
    g2 = got[tuple(named_parts(q, tau1))]
    assert g2.slice_type.label == "G2"
    assert g2.folded_cartan == ((2, -3), (-1, 2))
    assert g2.coordinates == (vec(q, beta=1), delta)
    assert sorted(g2.component_dims) == [1, 1, 1, 1, 2]
    centre = g2.component_dims.index(2)
    assert g2.components[centre] == vec(q, beta=1)
    assert g2.components[g2.deleted_node] == vec(q, inf=1)
    assert g2.warnings  # the deleted component is the real root alpha_inf
    a2 = got[tuple(named_parts(q, tau2))]
    assert a2.slice_type.label == "A2"
    assert a2.coordinates == (vec(q, _1=1), vec(q, _2=1))
    nw = assemble_namikawa_weyl(leaves)
    assert nw.order == 72 and sorted(nw.factors) == [("A", 2), ("G", 2)]


def test_sigma0_leaves_direct_call():
    fp = framed("example3")
    q = fp.framed
    leaves = enumerate_codim2_leaves_sigma0(q, fp.vtilde, q.index("inf"))
    assert len(leaves) == 2
    with pytest.raises(ValueError):
        enumerate_codim2_leaves_sigma0(q, fp.vtilde, q.index("beta"))  # coefficient 2
    with pytest.raises(ValueError):
        enumerate_codim2_leaves_sigma0(q, vec(q, beta=1), q.index("beta"))  # real root


def test_example4_has_no_leaves():
    fp, sd, leaves = leaves_of("example4")
    assert leaves == []
    q = fp.framed
    for f in sd.factors:
        assert enumerate_codim2_leaves_sigma0(q, f.vector, f.frame_vertex) == []
    assert assemble_namikawa_weyl(leaves).order == 1


def test_example2_leaves():
    fp, sd, leaves = leaves_of("example2")
    q = fp.framed
    delta = vec(q, _0=1, _1=1)
    expected = {
        tuple(named_parts(q, RepType(((vec(q, inf=1), 1), (vec(q, _0=1), 1), (vec(q, _1=1), 1), (delta, 1))))),
        tuple(named_parts(q, RepType(((vec(q, inf=1), 1), (delta, 2))))),
    }
    assert {tuple(named_parts(q, lf.rep_type)) for lf in leaves} == expected
    assert [lf.slice_type.label for lf in leaves] == ["A1", "A1"]
    finite = next(lf for lf in leaves if lf.kind == "affine-finite")
    assert finite.coordinates == (vec(q, _1=1),)
    nw = assemble_namikawa_weyl(leaves)
    assert nw.order == 4 and nw.label == "A1 x A1"


def test_example1_leaf():
    fp, sd, leaves = leaves_of("example1")
    assert len(leaves) == 1
    assert leaves[0].slice_type.label == "A3"
    assert assemble_namikawa_weyl(leaves).order == 24


def test_general_matches_sigma0_for_single_factor():
    fp, sd, leaves = leaves_of("example3")
    q = fp.framed
    direct = enumerate_codim2_leaves_sigma0(q, fp.vtilde, q.index("inf"))
    assert [lf.rep_type for lf in direct] == [lf.rep_type for lf in leaves]


# structural invariants on every fixture


def test_codimension_two(fixture_name):
    fp, sd, leaves = leaves_of(fixture_name)
    target = 2 * p_value(fp.framed, fp.vtilde) - 2
    for lf in leaves:
        assert leaf_dimension(fp.framed, lf.rep_type) == target
        assert lf.rep_type.total(len(fp.framed)) == fp.vtilde


def test_slice_quivers_affine(fixture_name):
    fp, sd, leaves = leaves_of(fixture_name)
    for lf in leaves:
        fc = classify_form(lf.component_quiver.cartan_matrix())
        assert fc.kind == AFFINE and fc.delta == lf.component_dims
        assert all(lf.folded_cartan[k][k] == 2 for k in range(len(lf.folded_cartan)))


def test_real_root_uniqueness(fixture_name):
    fp, sd, leaves = leaves_of(fixture_name)
    q = fp.framed
    for k, f in enumerate(sd.factors):
        if f.kind != SIGMA0:
            continue
        mine = [lf for lf in leaves if lf.factor == k]
        for i in fp.base_indices:
            if not f.vector[i]:
                continue
            holders = [lf for lf in mine if lf.active.contains_simple(i)]
            if pair_simple(q, fp.vtilde, i) == 0:
                assert len(holders) == 1
            elif pair_simple(q, fp.vtilde, i) < 0:
                assert holders == []


def test_cross_leaf_orthogonality(fixture_name):
    fp, sd, leaves = leaves_of(fixture_name)
    q = fp.framed
    for a, b in itertools.permutations(leaves, 2):
        if a.factor != b.factor:
            continue
        for v, _ in a.active.parts:
            if sum(v) != 1:
                continue
            if any(v == u for u, _ in b.active.parts):
                continue
            for u, _ in b.active.parts:
                assert tits_pairing(q, v, u) == 0


def test_matches_leaf_oracle(fixture_name):
    fp, sd, leaves = leaves_of(fixture_name)
    q = fp.framed
    for k, f in enumerate(sd.factors):
        if f.kind != SIGMA0:
            continue
        roots = roots_oracle(q.mult, f.vector)
        sigma = sigma_oracle(q.mult, f.vector)
        expected = leaf_oracle(q.mult, f.vector, sigma, roots)
        got = {tuple(sorted(lf.active.parts)) for lf in leaves if lf.factor == k}
        assert got == expected


def _sigma0_problems():
    shapes = {
        "A3": Quiver.from_edges("abc", [("a", "b", 1), ("b", "c", 1)]),
        "tri": Quiver.from_edges("abc", [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)]),
        "D4": Quiver.from_edges("cabd", [("c", "a", 1), ("c", "b", 1), ("c", "d", 1)]),
        "kr": Quiver.from_edges("ab", [("a", "b", 2)]),
    }
    for name, q in shapes.items():
        n = len(q)
        for v in itertools.product(range(3), repeat=n):
            for w in itertools.product(range(2), repeat=n):
                if not any(w) or not any(v):
                    continue
                fp = build_framed(q, v, w)
                if p_value(fp.framed, fp.vtilde) > 3:
                    continue
                t = DecompositionTable(fp.framed, fp.vtilde)
                if t.in_sigma(fp.vtilde):
                    yield f"{name}-{''.join(map(str, v))}-{''.join(map(str, w))}", fp, t


def test_leaf_oracle_scan():
    count = 0
    for label, fp, table in _sigma0_problems():
        q = fp.framed
        inf = q.index("inf")
        mine = enumerate_codim2_leaves_sigma0(q, fp.vtilde, inf, table)
        roots = roots_oracle(q.mult, fp.vtilde)
        sigma = sigma_oracle(q.mult, fp.vtilde)
        expected = leaf_oracle(q.mult, fp.vtilde, sigma, roots)
        assert {tuple(sorted(lf.active.parts)) for lf in mine} == expected, label
        for lf in mine:
            assert leaf_dimension(q, lf.rep_type) == 2 * p_value(q, fp.vtilde) - 2
        count += 1
    assert count > 20
