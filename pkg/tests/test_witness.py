import itertools

import pytest
from hypothesis import given, settings, strategies as st

from johnson_kernel.errors import DimensionError, InvalidInputError, NoDistinguishingIndexError
from johnson_kernel.linalg import IntMatrix
from johnson_kernel.splittings import Splitting, apply, enumerate_coset_reps, standard_splitting
from johnson_kernel.symplectic import HVector, SymplecticContext, psi_pq
from johnson_kernel.witness import (
    WitnessProblem,
    components,
    distinguishing_index,
    find_generic_x,
    projections,
    verify_generic,
)

CTX = SymplecticContext(3)
W0 = standard_splitting(CTX)
MOVED = [apply(psi_pq(CTX, p, q), W0) for p, q in ((1, 2), (1, 3), (2, 3))]


def four():
    return WitnessProblem((W0, *MOVED))


def test_projections_of_standard_splitting():
    P1, P2, P3 = projections(W0)
    assert P1 == IntMatrix.diag([1, 1, 0, 0, 0, 0])
    assert P3 == IntMatrix.diag([0, 0, 0, 0, 1, 1])


@pytest.mark.parametrize("S", [W0, *MOVED])
def test_projections_are_complementary_idempotents(S):
    Ps = projections(S)
    total = Ps[0] + Ps[1] + Ps[2]
    assert total == IntMatrix.identity(6)
    for i, j in itertools.product(range(3), repeat=2):
        expected = Ps[i] if i == j else IntMatrix.zeros(6, 6)
        assert Ps[i] @ Ps[j] == expected
    for Pi, summand in zip(Ps, S.summands):
        for v in summand.vectors:
            assert Pi @ v == v


def test_distinguishing_index():
    S = MOVED[0]  # handles 1 and 2 mixed, handle 3 untouched
    assert distinguishing_index(W0, S) == 1
    assert distinguishing_index(MOVED[2], W0) == 2
    with pytest.raises(NoDistinguishingIndexError):
        distinguishing_index(W0, W0)
    with pytest.raises(DimensionError):
        distinguishing_index(W0, standard_splitting(SymplecticContext(2)))


def test_duplicates_are_rejected():
    with pytest.raises(NoDistinguishingIndexError):
        WitnessProblem((W0, MOVED[0], W0))
    with pytest.raises(InvalidInputError):
        WitnessProblem(())


def test_four_splittings():
    P = four()
    res = find_generic_x(P)
    assert verify_generic(res.x, P)
    assert res.components == components(res.x, P)
    for row, dec in zip(res.components, res.decomposition):
        for c, (n, a) in zip(row, dec):
            assert n >= 1 and n * a == c
    assert find_generic_x(P).x == res.x


def test_result_is_first_in_box_order():
    P = four()
    res = find_generic_x(P)
    m = max(map(abs, res.x.coords))
    earlier = [
        c for c in itertools.product(range(-m, m + 1), repeat=6)
        if max(map(abs, c)) < m
    ]
    assert not any(verify_generic(HVector(3, c), P) and _strict(HVector(3, c), P) for c in earlier)


def _strict(x, P):
    # the stronger conditions the search imposes
    comps = components(x, P)
    for (s, q), i in P._index.items():
        if any(comps[s][i - 1] == c for c in comps[q]):
            return False
    return True


def test_non_generic_classes():
    P = four()
    assert not verify_generic(CTX.A(1), P)
    assert not verify_generic(CTX.zero(), P)
    with pytest.raises(DimensionError):
        verify_generic(SymplecticContext(2).A(1), P)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_verify_means_distinct_component_sets(coords):
    P = four()
    x = HVector(3, coords)
    comps = components(x, P)
    ok = verify_generic(x, P)
    if ok:
        assert all(not c.is_zero() for row in comps for c in row)
        sets = [frozenset(c.coords for c in row) for row in comps]
        assert len(set(sets)) == len(sets)


def test_larger_family():
    reps = enumerate_coset_reps(CTX, 8)
    P = WitnessProblem(tuple(apply(X, W0) for X in reps))
    assert verify_generic(find_generic_x(P).x, P)


def test_problem_json_round_trip():
    P = four()
    Q = WitnessProblem.from_json(P.to_json())
    assert Q.splittings == P.splittings
    assert find_generic_x(Q).x == find_generic_x(P).x
    assert isinstance(Q.splittings[0], Splitting)
    js = find_generic_x(P).to_json()
    assert set(js) == {"x", "components", "decomposition"}
    assert len(js["components"]) == 4
