import itertools

import pytest

from aprsat.hypergraph import Family, ap_hypergraph
from aprsat.instances import (
    NBClauseSet,
    ParameterTuple,
    SearchSpaceTooLarge,
    build_instance,
    classify_tuple,
    solve_nb_bruteforce,
)


def test_tuple_parse_and_format():
    t = ParameterTuple.parse("2,3,3")
    assert t.entries == (2, 3, 3)
    assert t.m == 3
    assert str(t) == "2,3,3"
    assert list(t) == [2, 3, 3]


@pytest.mark.parametrize("text", ["3,2", "1,3", "", "a,3", "3,,4"])
def test_tuple_rejects_bad_input(text):
    with pytest.raises(ValueError):
        ParameterTuple.parse(text)


def test_classify_examples():
    assert classify_tuple((2, 2)).labels == {"trivial", "diagonal"}
    c = classify_tuple((2, 2, 3, 4))
    assert c.extended_core and c.mixed
    assert c.extension_length == 2
    assert c.core_part == (3, 4)
    assert classify_tuple((5,)).labels == {"simple"}


def test_classify_more():
    assert classify_tuple((3, 3, 3)).labels == {"core", "diagonal"}
    assert classify_tuple((3, 4)).labels == {"core", "mixed"}
    assert classify_tuple((2, 2, 3)).labels == {"transversal", "mixed"}
    assert classify_tuple((2,)).labels == {"trivial", "simple"}


def test_build_instance_gt333_5():
    f = build_instance(Family.GT, (3, 3, 3), 5)
    assert f.domains == {2: 3, 3: 3, 5: 3, 7: 3, 11: 3}
    assert len(f.clauses) == 6
    assert all(len(c) == 3 for c in f.clauses)


def test_build_instance_gt23_4():
    f = build_instance("gt", (2, 3), 4)
    ones = {frozenset(v for v, _ in c) for c in f.clauses if c[0][1] == 1}
    twos = [c for c in f.clauses if c[0][1] == 2]
    assert ones == {frozenset(p) for p in itertools.combinations([2, 3, 5, 7], 2)}
    assert twos == [((3, 2), (5, 2), (7, 2))]


def test_build_instance_empty():
    f = build_instance(Family.VDW, (3, 3), 0)
    assert f.variables == [] and f.clauses == []


def test_bruteforce_examples():
    sat, witness = solve_nb_bruteforce(build_instance(Family.GT, (2, 3), 4))
    assert sat and build_instance(Family.GT, (2, 3), 4).satisfied_by(witness)
    assert solve_nb_bruteforce(NBClauseSet([(1, 2)], [()])) == (False, None)
    assert solve_nb_bruteforce(build_instance(Family.GT, (3, 3, 3), 5))[0]


def test_bruteforce_search_limit():
    with pytest.raises(SearchSpaceTooLarge):
        solve_nb_bruteforce(build_instance(Family.VDW, (3, 3, 3), 20))


def test_nbclauseset_validation():
    with pytest.raises(ValueError):
        NBClauseSet([(1, 2)], [((1, 3),)])
    with pytest.raises(ValueError):
        NBClauseSet([(1, 2)], [((2, 1),)])
    with pytest.raises(ValueError):
        NBClauseSet([(1, 2)], [((1, 1), (1, 2))])


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("t", [(3, 3), (2, 3, 3), (3, 4), (2, 2, 3)])
def test_clause_count_is_edge_sum(family, t):
    for n in (0, 7, 15, 30):
        f = build_instance(family, t, n)
        assert len(f.clauses) == sum(len(ap_hypergraph(family, k, n).edges) for k in t)


@pytest.mark.parametrize("family", list(Family))
def test_instances_nest(family):
    for n in range(0, 25):
        a = set(build_instance(family, (3, 4), n).clauses)
        b = set(build_instance(family, (3, 4), n + 1).clauses)
        assert a <= b


def _colouring_exists(family, t, n):
    verts = ap_hypergraph(family, 1, n).vertices
    edges = {k: [set(e) for e in ap_hypergraph(family, k, n).edges] for k in set(t)}
    for colours in itertools.product(range(len(t)), repeat=n):
        classes = [{v for v, c in zip(verts, colours) if c == i} for i in range(len(t))]
        if all(not any(e <= classes[i] for e in edges[k]) for i, k in enumerate(t)):
            return True
    return False


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("t", [(3, 3), (2, 3), (2, 2, 3)])
def test_bruteforce_matches_colouring_enumerator(family, t):
    for n in range(0, 13):
        assert solve_nb_bruteforce(build_instance(family, t, n))[0] == _colouring_exists(family, t, n)
