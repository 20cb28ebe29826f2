import itertools

import pytest

from conftest import random_word
from johnson_kernel.errors import DimensionError, InvalidInputError
from johnson_kernel.linalg import IntMatrix
from johnson_kernel.seifert import (
    SeifertForm,
    SeparatingTwistSpec,
    base_seifert,
    delta_spec,
    epsilon_spec,
    lambda_pq_table,
    morita_lambda,
    morita_lambda_expanded,
    pullback,
    seifert_pq,
)
from johnson_kernel.symplectic import SpElement, SymplecticContext, intersection, psi_pq


def test_base_form_values(ctx):
    L = base_seifert(ctx)
    A, B = ctx.A, ctx.B
    assert L(B(1), A(1)) == 1
    assert L(A(1), B(1)) == 0
    assert L(A(1), A(1)) == L(B(1), B(1)) == 0
    assert L.matrix.T - L.matrix == ctx.J


def test_seifert_relation_is_checked():
    with pytest.raises(InvalidInputError):
        SeifertForm(IntMatrix.zeros(4, 4))
    with pytest.raises(DimensionError):
        SeifertForm(IntMatrix.zeros(3, 3))


def test_relation_between_values(ctx3, rng):
    L = seifert_pq(ctx3, 1, 3)
    basis = [ctx3.basis_vector(k) for k in range(ctx3.dim)]
    for x, y in itertools.product(basis, repeat=2):
        assert L(y, x) == L(x, y) + intersection(ctx3, x, y)


def test_pullback_chains_keep_the_relation(ctx3, rng):
    for _ in range(30):
        L = base_seifert(ctx3)
        for _ in range(rng.randint(1, 15)):
            L = pullback(L, random_word(rng, ctx3, 3))
        assert L.matrix.T - L.matrix == ctx3.J


def test_pullback_rejects_non_symplectic(ctx3):
    with pytest.raises(InvalidInputError):
        pullback(base_seifert(ctx3), IntMatrix.diag([2, 1, 1, 1, 1, 1]))
    with pytest.raises(DimensionError):
        pullback(base_seifert(ctx3), SpElement.identity(SymplecticContext(2)))


def test_pq_form_is_a_pullback(ctx3):
    psi = psi_pq(ctx3, 1, 2)
    L = seifert_pq(ctx3, 1, 2)
    L0 = base_seifert(ctx3)
    x, y = ctx3.A(1), ctx3.B(2)
    assert L(x, y) == L0(psi @ x, psi @ y)


def test_lambda_on_base_form_vanishes(ctx3):
    L0 = base_seifert(ctx3)
    for i in (1, 2, 3):
        assert morita_lambda(L0, delta_spec(ctx3, i)) == 0


def test_lambda_values_g3(ctx3):
    t = lambda_pq_table(ctx3, 1, 2)
    assert t.delta == (1, 1, 0)
    assert t.epsilon == ()
    assert lambda_pq_table(ctx3, 2, 3).delta == (0, 1, 1)


@pytest.mark.parametrize("g", [4, 5, 6, 7])
def test_lambda_tables(g):
    ctx = SymplecticContext(g)
    for p, q in itertools.combinations(range(1, g + 1), 2):
        t = lambda_pq_table(ctx, p, q)
        assert t.delta == tuple(int(i in (p, q)) for i in range(1, g + 1))
        assert t.epsilon == tuple(int(p <= i < q) for i in range(2, g - 1))


def test_expanded_form_agrees(rng):
    for g in (3, 4, 5):
        ctx = SymplecticContext(g)
        specs = [delta_spec(ctx, i) for i in range(1, g + 1)]
        specs += [epsilon_spec(ctx, i) for i in range(2, g - 1)]
        for _ in range(10):
            L = base_seifert(ctx)
            for _ in range(4):
                L = pullback(L, random_word(rng, ctx, 3))
            for spec in specs:
                assert morita_lambda(L, spec) == morita_lambda_expanded(L, spec)


@pytest.mark.parametrize("g", [4, 5])
def test_value_does_not_depend_on_the_side_basis(g):
    ctx = SymplecticContext(g)
    spec = epsilon_spec(ctx, 2)
    (a1, b1), (a2, b2) = spec.pairs
    # the handle swap and a shear inside the first handle
    moved = SeparatingTwistSpec(ctx.g, ((a2, b2), (a1, b1 + a1)))
    for p, q in itertools.combinations(range(1, ctx.g + 1), 2):
        L = seifert_pq(ctx, p, q)
        assert morita_lambda(L, moved) == morita_lambda(L, spec)


def test_spec_validation(ctx3):
    A, B = ctx3.A, ctx3.B
    with pytest.raises(InvalidInputError):
        SeparatingTwistSpec(3, ())
    with pytest.raises(InvalidInputError):  # a . b = -1
        SeparatingTwistSpec(3, ((B(1), A(1)),))
    with pytest.raises(InvalidInputError):  # not a symplectic family
        SeparatingTwistSpec(3, ((A(1), B(1)), (A(2), B(1) + B(2))))
    with pytest.raises(DimensionError):
        SeparatingTwistSpec(3, ((SymplecticContext(2).A(1), B(1)),))
    with pytest.raises(InvalidInputError):
        delta_spec(ctx3, 4)
    with pytest.raises(InvalidInputError):
        epsilon_spec(SymplecticContext(5), 1)
    with pytest.raises(DimensionError):
        morita_lambda(base_seifert(SymplecticContext(4)), delta_spec(ctx3, 1))


def test_table_rows_and_json():
    t = lambda_pq_table(SymplecticContext(5), 2, 4)
    names = [n for n, _ in t.rows()]
    assert names == ["delta_1", "delta_2", "delta_3", "delta_4", "delta_5", "epsilon_2", "epsilon_3"]
    js = t.to_json()
    assert js["values"]["epsilon_3"] == 1 and js["values"]["epsilon_2"] == 1
    assert js["values"]["delta_1"] == 0
    assert delta_spec(SymplecticContext(3), 2).to_json() == {
        "g": 3,
        "pairs": [[[0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]]],
    }
