import random
from fractions import Fraction

import pytest

from chromaplex import (
    hypergraph,
    hypergraph_from_json,
    hypergraph_from_system,
    hypergraph_to_json,
    independence_polynomial,
    independence_system,
    independent_sets,
    induced_subhypergraph,
    is_even,
    is_marked_independent,
    is_simple,
    marked_independence_series,
    system_from_json,
    system_series,
    system_to_json,
    system_validate,
    validate,
)

F = Fraction

FIG1 = hypergraph(5, [(1, 2, 3), (2, 4, 5), (1, 4)], special=(2, 3))


def test_constructor_normalizes():
    g = hypergraph(4, [(3, 4), (2, 1, 3), (3, 4)], special=(2, 2))
    assert g.edges == ((3, 4), (1, 2, 3))
    assert g.special == (2,)
    with pytest.raises(ValueError):
        hypergraph(3, [(1, 5)])
    with pytest.raises(ValueError):
        hypergraph(3, [()])
    with pytest.raises(ValueError):
        hypergraph(2, [], special=(3,))
    with pytest.raises(ValueError):
        hypergraph(-1, [])


def test_shape_flags():
    assert validate(FIG1) == (True, False)
    assert is_simple(FIG1) and not is_even(FIG1)
    assert is_even(hypergraph(4, [(1, 2), (3, 4)]))
    assert is_even(hypergraph(3, []))
    assert not is_simple(hypergraph(3, [(1,)]))
    assert not is_simple(hypergraph(3, [(1, 2), (1, 2, 3)]))


def test_independent_sets():
    g = hypergraph(3, [(1, 2, 3)])
    got = independent_sets(g)
    assert got[0] == ()
    assert len(got) == 7
    assert (1, 2, 3) not in got
    sizes = [len(s) for s in got]
    assert sizes == sorted(sizes)
    fig1 = independent_sets(FIG1)
    assert len(fig1) == 1 + 5 + 9 + 5
    assert (1, 4) not in fig1
    assert (2, 3, 5) in fig1


def test_independence_polynomial():
    g = hypergraph(2, [(1, 2)])
    p = independence_polynomial(g, (1, 1))
    assert p.terms == {(0, 0): F(1), (1, 0): F(1), (0, 1): F(1)}


def test_is_marked_independent():
    assert is_marked_independent(FIG1, (0, 3, 2, 0, 0))
    assert is_marked_independent(FIG1, (1, 2, 0, 0, 1))
    assert not is_marked_independent(FIG1, (1, 0, 0, 1, 0))
    assert not is_marked_independent(FIG1, (2, 0, 0, 0, 0))
    assert is_marked_independent(FIG1, (0, 0, 0, 0, 0))


def test_marked_series_fig1_coefficients():
    s = marked_independence_series(FIG1, (2, 3, 2, 2, 2))
    assert s.terms[(0, 3, 0, 0, 0)] == F(1)
    assert s.terms[(1, 2, 0, 0, 1)] == F(1)
    assert (1, 0, 0, 1, 0) not in s.terms
    assert s.terms[(0, 1, 1, 1, 0)] == F(1)
    assert (0, 1, 0, 1, 1) not in s.terms
    assert s.terms[(0, 2, 2, 0, 1)] == F(1)
    assert (2, 0, 0, 0, 0) not in s.terms


def test_marked_series_special_geometric():
    g = hypergraph(1, [], special=(1,))
    s = marked_independence_series(g, (4,))
    assert s.terms == {(k,): F(1) for k in range(5)}


def test_induced_subhypergraph():
    h, kept = induced_subhypergraph(FIG1, (1, 2, 3))
    assert kept == (1, 2, 3)
    assert h.n == 3
    assert h.edges == ((1, 2, 3),)
    assert h.special == (2, 3)
    h2, kept2 = induced_subhypergraph(FIG1, (4, 5, 2))
    assert kept2 == (2, 4, 5)
    assert h2.edges == ((1, 2, 3),)
    assert h2.special == (1,)
    h3, _ = induced_subhypergraph(FIG1, (1, 5))
    assert h3.edges == ()


def test_system_validate():
    a = independence_system(3, [(), (1,), (2,), (3,), (1, 2)])
    assert system_validate(a).simple is True
    partial = independence_system(2, [(), (1,)])
    assert system_validate(partial).simple is False
    with pytest.raises(ValueError):
        system_validate(independence_system(2, [(), (1, 2)]))
    with pytest.raises(ValueError):
        system_validate(independence_system(2, [(1,)]))


def test_hypergraph_from_system():
    a = independence_system(3, [(), (1,), (2,), (3,), (1, 2)])
    g = hypergraph_from_system(a)
    assert g.edges == ((1, 3), (2, 3))
    assert g.special == ()
    members = set(a.members)
    assert set(independent_sets(g)) == members
    g2 = hypergraph_from_system(a, special=(1,))
    assert g2.special == (1,)


def test_system_round_trip_random():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 4)
        g = hypergraph(n, [])
        edges = []
        for _ in range(rng.randint(0, 3)):
            size = rng.randint(2, n) if n >= 2 else 0
            if size >= 2:
                e = tuple(sorted(rng.sample(range(1, n + 1), size)))
                edges.append(e)
        try:
            g = hypergraph(n, edges)
        except ValueError:
            continue
        members = independent_sets(g)
        a = independence_system(n, members)
        if not is_simple(g):
            continue
        back = hypergraph_from_system(a)
        assert set(independent_sets(back)) == set(members)


def test_system_series_matches_hypergraph_series():
    a = independence_system(3, [(), (1,), (2,), (3,), (1, 2)])
    s = system_series(a, (1,), (2, 1, 1))
    g = hypergraph_from_system(a, (1,))
    assert s == marked_independence_series(g, (2, 1, 1))
    assert s.terms[(2, 0, 0)] == F(1)
    assert s.terms[(1, 1, 0)] == F(1)
    assert (1, 0, 1) not in s.terms


def test_system_series_warns_on_uncovered():
    a = independence_system(2, [(), (1,)])
    with pytest.warns(UserWarning):
        system_series(a, (), (1, 1))


def test_json_round_trips():
    obj = hypergraph_to_json(FIG1)
    assert obj == {
        "n": 5,
        "edges": [[1, 4], [1, 2, 3], [2, 4, 5]],
        "special": [2, 3],
    }
    assert hypergraph_from_json(obj) == FIG1
    a = independence_system(2, [(), (1,), (2,)])
    assert system_from_json(system_to_json(a)) == a
    with pytest.raises(ValueError):
        hypergraph_from_json({"n": 2})
