import collections
import itertools
import math

import numpy as np
import pytest

from conftest import kron_sum, random_graph
from graphbell import dense
from graphbell.bell import (
    LC4_SWAP,
    SQRT2,
    BellInequality,
    ObservableMap,
    PartyLayout,
    TwoSettingExpression,
    ardehali_bound,
    ardehali_expression,
    ardehali_pattern,
    basic_inequality,
    composite,
    composition_conflicts,
    condition_on_z,
    expand,
    family_composite,
    fc3_operator,
    greedy_composite,
    lc4_set,
    lc_block_centers,
    lc_composite,
    mermin_bound,
    mermin_pattern,
    select_blocks,
    theorem1_operator,
)
from graphbell.errors import CompositionError, ConstructionError, GraphBellError
from graphbell.graph import Graph, family, graph_state_expectation, is_independent_set
from graphbell.lhv import classical_max
from graphbell.pauli import PauliString, PauliSum

# vertices 1-2-3 form a path; leaves {4,7} on 1, {5,8} on 2, {6,9} on 3
PATH_WITH_LEAVES = Graph.from_edges(9, [(1, 2), (2, 3), (1, 4), (1, 7), (2, 5), (2, 8), (3, 6), (3, 9)])


def signed(b):
    return sorted(str(p if c > 0 else -p) for c, p in b.pauli_form)


def test_lc3_operator():
    b = theorem1_operator(family("LC", 3), 2, {1, 3})
    assert str(b.pauli_form) == "+ZXZ +YYZ +ZYY -YXY"
    assert b.classical_bound == 2
    assert b.quantum_value == 4
    assert b.violation == 2


def test_single_neighbor_is_not_a_bell_inequality():
    b = theorem1_operator(family("LC", 5), 2, {1})
    assert len(b.pauli_form) == 2
    assert b.classical_bound == mermin_bound(2) == 2
    assert b.quantum_value == 2 and b.violation == 1


def test_star_five():
    b = theorem1_operator(family("ST", 5), 1, {2, 3, 4, 5})
    assert len(b.pauli_form) == 16
    assert b.classical_bound == 4 and b.quantum_value == 16 and b.violation == 4


@pytest.mark.parametrize(
    "g, i, I",
    [(family("FC", 3), 1, {2, 3}), (family("LC", 5), 2, {4}), (family("LC", 5), 2, set()), (family("LC", 5), 2, {2})],
)
def test_theorem1_preconditions(g, i, I):
    with pytest.raises(ConstructionError):
        theorem1_operator(g, i, I)


def test_mermin_bounds():
    assert [mermin_bound(m) for m in range(1, 8)] == [1, 2, 2, 4, 4, 8, 8]
    assert [ardehali_bound(m) for m in range(2, 7)] == [2, 4, 4, 8, 8]


def test_fc3_operator():
    b = fc3_operator(family("FC", 3), (1, 2, 3))
    assert signed(b) == sorted(["XZZ", "ZXZ", "ZZX", "-XXX"])
    assert b.classical_bound == 2 and b.quantum_value == 4
    assert signed(fc3_operator(family("RC", 3), (1, 2, 3))) == signed(b)


def test_fc3_on_larger_complete_graph():
    b = fc3_operator(family("FC", 5), (1, 2, 3))
    assert all(p.letter(4) == "Z" and p.letter(5) == "Z" for _, p in b.pauli_form)
    assert b.classical_bound == 2
    assert classical_max(b.pauli_form).classical_max == 2


def test_fc3_needs_triangle():
    with pytest.raises(ConstructionError):
        fc3_operator(family("LC", 3), (1, 2, 3))


def test_lc8_composite():
    g = family("LC", 8)
    b = composite([theorem1_operator(g, 2, {1, 3}), theorem1_operator(g, 6, {5, 7})], g)
    assert len(b.pauli_form) == 16
    assert b.classical_bound == 4 and b.quantum_value == 16 and b.violation == 4


def test_composite_of_one_part_is_that_part():
    b = theorem1_operator(family("LC", 3), 2, {1, 3})
    assert composite([b]) is b


def test_lc5_overlapping_blocks_rejected_naming_qubit_3():
    g = family("LC", 5)
    parts = [theorem1_operator(g, 2, {1, 3}), theorem1_operator(g, 4, {3, 5})]
    assert 3 in [q for q, _ in composition_conflicts(parts)]
    with pytest.raises(CompositionError) as exc:
        composite(parts, g)
    assert 3 in exc.value.qubits
    assert "qubit 3" in str(exc.value)


def test_shared_single_letter_is_allowed():
    # both blocks put only Z on qubit 4 of LC_7
    g = family("LC", 7)
    a, b = theorem1_operator(g, 2, {1, 3}), theorem1_operator(g, 6, {5, 7})
    c = composite([a, b], g)
    assert c.classical_bound == 4 and c.violation == 4
    assert classical_max(c.pauli_form).classical_max == 4


@pytest.mark.parametrize("n, centers, ratio", [(4, [2], 2), (7, [2, 6], 4), (12, [2, 6, 10], 8)])
def test_lc_composite(n, centers, ratio):
    assert lc_block_centers(n) == centers
    b = lc_composite(n)
    assert b.violation == ratio


@pytest.mark.parametrize("name, n, ratio", [("RC", 8, 4), ("ST", 12, 32), ("RC", 3, 2)])
def test_family_composite(name, n, ratio):
    assert family_composite(name, n).violation == ratio


def test_select_blocks_examples():
    grid = family("GRID", 3, 3)
    blocks = select_blocks(grid)
    assert len(blocks) >= 1
    composite([theorem1_operator(grid, i, I) for i, I in blocks], grid)
    assert select_blocks(Graph.empty(4)) == []
    assert [i for i, _ in select_blocks(family("LC", 12))] == [2, 6, 10]


@pytest.mark.parametrize("seed", range(10))
def test_select_blocks_are_composable(seed):
    g = random_graph(np.random.default_rng(seed), 9, p=0.3)
    blocks = select_blocks(g)
    for i, I in blocks:
        assert len(I) >= 2 and is_independent_set(g, I)
        assert set(I) <= set(g.neighbors(i))
    if blocks:
        b = greedy_composite(g)
        assert b.violation == math.prod(theorem1_operator(g, i, I).violation for i, I in blocks)


def test_ardehali_star_four():
    b = ardehali_expression(family("ST", 4), 1, {2, 3, 4})
    assert b.classical_bound == 4
    assert b.quantum_value == pytest.approx(8 * SQRT2, abs=1e-12)
    assert b.violation == pytest.approx(2 * SQRT2, abs=1e-12)
    base = theorem1_operator(family("ST", 4), 1, {2, 3, 4})
    assert expand(b.expression, b.observables).isclose(base.pauli_form.scale(SQRT2), 1e-12)


def test_ardehali_star_five_below_mermin():
    g = family("ST", 5)
    b = ardehali_expression(g, 1, {2, 3, 4, 5})
    assert b.classical_bound == 8
    assert b.quantum_value == pytest.approx(16 * SQRT2)
    assert b.violation < theorem1_operator(g, 1, {2, 3, 4, 5}).violation == 4


def test_ardehali_needs_two_neighbors():
    with pytest.raises(ConstructionError):
        ardehali_expression(family("LC", 3), 2, {1})


def test_ardehali_observables_are_dichotomic():
    b = ardehali_expression(family("ST", 4), 1, {2, 3, 4})
    for pair in b.observables.observables:
        for o in pair:
            m = kron_sum(o)
            np.testing.assert_allclose(m @ m, np.eye(m.shape[0]), atol=1e-12)


def test_condition_leaves_away_gives_three_qubit_mermin():
    b = theorem1_operator(PATH_WITH_LEAVES, 2, {1, 3})
    assert b.layout.parties == ((2, 5, 8), (1, 4, 7), (3, 6, 9))
    c = condition_on_z(b, {k: 1 for k in range(4, 10)})
    assert str(c.pauli_form) == "+ZXZIIIIII +YYZIIIIII +ZYYIIIIII -YXYIIIIII"
    assert c.classical_bound == 2
    assert c.layout.parties == ((2,), (1,), (3,))


def test_condition_on_absent_qubits_changes_nothing():
    b = theorem1_operator(family("LC", 5), 2, {1, 3})
    c = condition_on_z(b, {5: 1})
    assert c.pauli_form.isclose(b.pauli_form)


def test_condition_flips_terms_with_z1():
    g = family("LC", 5)
    b = theorem1_operator(g, 3, {2, 4})
    c = condition_on_z(b, {1: -1, 5: 1})
    for (cb, pb), (cc, pc) in zip(b.pauli_form, c.pauli_form):
        assert pc.letters == "I" + pb.letters[1:4] + "I"
        assert cc == (-cb if pb.letter(1) == "Z" else cb)
    post = dense.project_z(dense.graph_state_vector(g), {1: -1, 5: 1})
    assert dense.expectation(post, c.pauli_form) == pytest.approx(4, abs=1e-12)


def test_condition_rejects_non_z_qubit():
    b = theorem1_operator(family("LC", 3), 2, {1, 3})
    with pytest.raises(ConstructionError):
        condition_on_z(b, {1: 1})


LC4_TERMS = {
    1: ["XIXZ", "ZYYZ", "XIYY", "-ZYXY"],
    2: ["IZXZ", "ZYYZ", "IZYY", "-ZYXY"],
}


def test_lc4_listed_members():
    members = lc4_set()
    assert len(members) == 8
    for k, terms in LC4_TERMS.items():
        assert signed(members[k - 1]) == sorted(terms)


def test_lc4_swapped_partner_of_first():
    # X4 X2 Z1 + Z4 Y3 Y2 Z1 + X4 Y2 Y1 - Z4 Y3 X2 Y1, written qubit 1 first
    assert signed(lc4_set()[4]) == sorted(["ZXIX", "ZYYZ", "YYIX", "-YXYZ"])


def test_lc4_partners_are_relabelled_copies():
    members = lc4_set()
    for a, b in zip(members[:4], members[4:]):
        assert a.pauli_form.permute(LC4_SWAP).isclose(b.pauli_form)


def test_lc4_member_two_is_vertex_neighborhood_operator():
    g = family("LC", 4)
    b2 = lc4_set()[1]
    assert b2.pauli_form.isclose(theorem1_operator(g, 3, {2, 4}).pauli_form)
    assert all(graph_state_expectation(g, p if c > 0 else -p) == 1 for c, p in b2.pauli_form)


def test_lc4_members_well_formed():
    for b in lc4_set():
        assert b.n == 4 and b.classical_bound == 2 and b.quantum_value == 4
        assert all(c in (1, -1) and p.is_hermitian for c, p in b.pauli_form)


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


def _random_theorem1(rng, n, min_size=1):
    while True:
        g = random_graph(rng, n, connected=True)
        i = int(rng.integers(1, n + 1))
        nb = list(g.neighbors(i))
        rng.shuffle(nb)
        I = []
        for v in nb:
            if is_independent_set(g, I + [v]):
                I.append(v)
        if len(I) >= min_size:
            return g, i, tuple(sorted(I))


@pytest.mark.parametrize("seed", range(30))
def test_expansion_identity(seed):
    rng = np.random.default_rng(seed)
    g, i, I = _random_theorem1(rng, int(rng.integers(2, 9)))
    b = theorem1_operator(g, i, I)
    assert len(b.pauli_form) == 1 << len(I)
    for c, p in b.pauli_form:
        assert c in (1, -1)
        assert graph_state_expectation(g, p if c > 0 else -p) == 1
    assert b.quantum_value == 1 << len(I)
    assert b.classical_bound == mermin_bound(len(I) + 1)


@pytest.mark.parametrize("size", [2, 3, 4])
def test_mermin_pattern_recovered(size):
    g = family("ST", size + 1)
    b = theorem1_operator(g, 1, range(2, size + 2))
    assert b.expression.as_dict() == mermin_pattern(size + 1).as_dict()
    assert expand(b.expression, b.observables).isclose(b.pauli_form)


@pytest.mark.parametrize("seed", range(20))
def test_mermin_pattern_recovered_on_random_graphs(seed):
    rng = np.random.default_rng(1000 + seed)
    g, i, I = _random_theorem1(rng, int(rng.integers(3, 9)), min_size=2)
    I = I[:4]
    b = theorem1_operator(g, i, I)
    assert collections.Counter(b.expression.as_dict().items()) == collections.Counter(
        mermin_pattern(len(I) + 1).as_dict().items()
    )


@pytest.mark.parametrize("seed", range(10))
def test_composite_multiplicativity(seed):
    rng = np.random.default_rng(2000 + seed)
    g = random_graph(rng, int(rng.integers(6, 11)), p=0.3)
    blocks = select_blocks(g)
    if len(blocks) < 2:
        g = family("LC", 8)
        blocks = select_blocks(g)
    parts = [theorem1_operator(g, i, I) for i, I in blocks[:2]]
    c = composite(parts, g)
    assert c.classical_bound == parts[0].classical_bound * parts[1].classical_bound
    assert classical_max(c.pauli_form).classical_max == c.classical_bound


@pytest.mark.parametrize("size", [2, 3, 4])
def test_ardehali_consistency(size):
    g = family("ST", size + 1)
    I = range(2, size + 2)
    a = ardehali_expression(g, 1, I)
    t = theorem1_operator(g, 1, I)
    assert a.pauli_form.isclose(t.pauli_form.scale(SQRT2), 1e-12)
    assert a.expression.as_dict() == ardehali_pattern(size + 1).as_dict()


@pytest.mark.parametrize("seed", range(30))
def test_basic_inequality_violation_two(seed):
    rng = np.random.default_rng(3000 + seed)
    n = int(rng.integers(3, 7))
    g = random_graph(rng, n, connected=True)
    if max(g.degree(k) for k in range(1, n + 1)) < 2:
        return
    b = basic_inequality(g)
    assert b.violation == 2


def test_basic_inequality_needs_degree_two():
    with pytest.raises(ConstructionError):
        basic_inequality(family("LC", 2))


def test_expression_rejects_duplicates_and_zeros():
    with pytest.raises(GraphBellError):
        TwoSettingExpression(2, ((1, (0, 0)), (1, (0, 0))))
    with pytest.raises(GraphBellError):
        TwoSettingExpression(2, ((0, (0, 1)),))


def test_layout_and_observable_checks():
    with pytest.raises(GraphBellError):
        PartyLayout(((1, 2), (2, 3)))
    x = PauliSum.from_strings(["XI"])
    bad = PauliSum.from_strings(["IX"])
    with pytest.raises(GraphBellError):
        ObservableMap(((x, bad),)).check(PartyLayout(((1,),)))
    not_dichotomic = PauliSum.from_strings(["XI", "ZI"])
    with pytest.raises(GraphBellError):
        ObservableMap(((x, not_dichotomic),)).check(PartyLayout(((1,),)))


def test_inconsistent_pauli_form_rejected():
    b = theorem1_operator(family("LC", 3), 2, {1, 3})
    with pytest.raises(GraphBellError):
        BellInequality(
            n=3,
            expression=b.expression,
            classical_bound=2,
            pauli_form=b.pauli_form.scale(2),
            layout=b.layout,
            observables=b.observables,
        )


def test_overlapping_reduced_neighborhoods_still_build():
    # vertex 4 neighbors both 1 and 3 of the centre-2 block
    g = Graph.from_edges(4, [(1, 2), (2, 3), (1, 4), (3, 4)])
    b = theorem1_operator(g, 2, {1, 3})
    assert len(b.pauli_form) == 4
    assert b.expression.as_dict() == mermin_pattern(3).as_dict()
    assert classical_max(b.pauli_form).classical_max == 2


def test_json_record_shape():
    d = theorem1_operator(family("LC", 3), 2, {1, 3}).to_dict()
    assert d["parties"] == [[2], [1], [3]]
    assert d["terms"][-1] == {"coeff": -1, "pauli": "YXY"}
    assert (d["classical_bound"], d["quantum_value"], d["violation"]) == (2, 4, 2)


@pytest.mark.parametrize("k", range(8))
def test_lc4_quantum_value_on_cluster_state(k):
    s = dense.graph_state_vector(family("LC", 4))
    assert dense.expectation(s, lc4_set()[k].pauli_form) == pytest.approx(4, abs=1e-12)


def test_lc4_all_members_distinct():
    forms = [tuple(signed(b)) for b in lc4_set()]
    assert len(set(forms)) == 8
    assert all(len(f) == 4 for f in forms)
    assert all(a != b for a, b in itertools.combinations(forms, 2))


def test_theorem1_pauli_form_is_hermitian_matrix():
    b = theorem1_operator(family("LC", 5), 3, {2, 4})
    m = kron_sum(b.pauli_form)
    np.testing.assert_allclose(m, m.conj().T)
    assert PauliString.from_text("ZXZ").is_hermitian
