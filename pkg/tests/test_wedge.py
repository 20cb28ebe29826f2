from math import comb

import pytest
import sympy

from conftest import random_word
from johnson_kernel.errors import DimensionError, InvalidInputError
from johnson_kernel.linalg import IntMatrix, lattice_contains, lattice_equal, lattice_from_generators
from johnson_kernel.symplectic import SpElement, SymplecticContext, psi_pq, transvection
from johnson_kernel.wedge import (
    UVector,
    exterior_cube,
    fixed_sublattice_check,
    in_Ua,
    in_Ub,
    induced_on_U,
    omega_embedding,
    u_space,
    ua_lattice,
    ub_lattice,
    wedge3,
)


def test_wedge3_antisymmetry(ctx3):
    A, B = ctx3.A, ctx3.B
    w = wedge3(A(1), A(2), B(3))
    assert wedge3(A(2), A(1), B(3)) == tuple(-x for x in w)
    assert wedge3(B(3), A(1), A(2)) == w
    assert not any(wedge3(A(1), A(1), B(2)))
    assert sum(map(abs, w)) == 1


def test_wedge3_length_mismatch():
    with pytest.raises(DimensionError):
        wedge3((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0, 0, 0))


def test_exterior_cube_is_multiplicative(ctx3, rng):
    for _ in range(5):
        X, Y = random_word(rng, ctx3, 4), random_word(rng, ctx3, 4)
        assert exterior_cube(X.matrix @ Y.matrix) == exterior_cube(X.matrix) @ exterior_cube(Y.matrix)
    assert exterior_cube(IntMatrix.identity(6)) == IntMatrix.identity(20)


@pytest.mark.parametrize("g, r", [(2, 0), (3, 14), (4, 48), (5, 110)])
def test_u_rank(g, r):
    us = u_space(SymplecticContext(g))
    assert us.rank == r == comb(2 * g, 3) - 2 * g
    assert us.elementary_divisors == (1,) * (2 * g)


def test_projection_and_section(ctx):
    us = u_space(ctx)
    assert us.projection @ us.embedding == IntMatrix.zeros(us.rank, ctx.dim)
    assert us.projection @ us.section == IntMatrix.identity(us.rank)


def test_omega_is_invariant(ctx3, rng):
    # x ^ Omega is equivariant: (wedge^3 X) E = E X
    E = omega_embedding(ctx3)
    for _ in range(5):
        X = random_word(rng, ctx3).matrix
        assert exterior_cube(X) @ E == E @ X


def test_induced_action_is_a_homomorphism(ctx3, rng):
    us = u_space(ctx3)
    for _ in range(5):
        X, Y = random_word(rng, ctx3, 4), random_word(rng, ctx3, 4)
        assert induced_on_U(X @ Y, us) == induced_on_U(X, us) @ induced_on_U(Y, us)
    assert induced_on_U(SpElement.identity(ctx3), us) == IntMatrix.identity(us.rank)


def test_induced_action_rejects_bad_input(ctx3):
    us = u_space(ctx3)
    with pytest.raises(InvalidInputError):
        induced_on_U(IntMatrix.diag([2, 1, 1, 1, 1, 1]), us)
    with pytest.raises(DimensionError):
        induced_on_U(IntMatrix.identity(4), us)


def test_transvection_fixes_pure_a_class(ctx3):
    us = u_space(ctx3)
    A, B = ctx3.A, ctx3.B
    theta = us.class_of(wedge3(A(1), A(2), A(3)))
    T = induced_on_U(transvection(ctx3, A(1)), us)
    assert T @ theta.coords == theta.coords
    moved = us.class_of(wedge3(B(1), A(2), A(3)))
    assert T @ moved.coords != moved.coords


def test_a_wedge_omega_vanishes_in_U(ctx3):
    us = u_space(ctx3)
    A, B = ctx3.A, ctx3.B
    total = [0] * us.wedge_dim
    for j in (2, 3):
        total = [x + y for x, y in zip(total, wedge3(A(1), A(j), B(j)))]
    assert us.class_of(total).is_zero()
    assert not us.class_of(wedge3(A(1), A(2), B(2))).is_zero()


def test_split_lattices(ctx3):
    us = u_space(ctx3)
    A, B = ctx3.A, ctx3.B
    assert in_Ua(us.class_of(wedge3(A(1), A(2), B(3))))
    assert not in_Ub(us.class_of(wedge3(A(1), A(2), B(3))))
    assert in_Ub(us.class_of(wedge3(A(1), B(2), B(3))))
    assert not in_Ua(us.class_of(wedge3(B(1), B(2), B(3))))
    Ua, Ub = ua_lattice(ctx3), ub_lattice(ctx3)
    assert Ua.rank + Ub.rank == us.rank
    both = lattice_from_generators(Ua.vectors + Ub.vectors, us.rank)
    assert both.rank == us.rank
    assert lattice_equal(both, lattice_from_generators(IntMatrix.identity(us.rank).tolist(), us.rank))


@pytest.mark.parametrize("g", [3, 4])
def test_fixed_vectors_lie_in_Ua(g):
    ctx = SymplecticContext(g)
    rep = fixed_sublattice_check(ctx)
    Ua = ua_lattice(ctx)
    assert all(lattice_contains(Ua, v) for v in rep.computed.vectors)


def fixed_rank_over_Q(g):
    """Independent rank of the fixed part, by sympy over the rationals.

    In wedge^3 H it is the nullity of the stacked T_i - I. In U a class is
    fixed when (T_i - I) w lands in the image of the embedding, so we kill
    that image with its left annihilator and subtract dim(image).
    """
    ctx = SymplecticContext(g)
    E = sympy.Matrix(omega_embedding(ctx).tolist())
    ann = sympy.Matrix.vstack(*[v.T for v in E.T.nullspace()])
    n = E.rows
    blocks = []
    for i in range(1, g + 1):
        T = sympy.Matrix(exterior_cube(transvection(ctx, ctx.A(i)).matrix).tolist())
        blocks.append(T - sympy.eye(n))
    in_wedge = n - sympy.Matrix.vstack(*blocks).rank()
    in_u = n - sympy.Matrix.vstack(*[ann * M for M in blocks]).rank() - E.rank()
    return in_wedge, in_u


@pytest.mark.parametrize("g", [3, 4])
def test_fixed_sublattice_matches_generators(g):
    rep = fixed_sublattice_check(SymplecticContext(g))
    assert rep.equal
    in_wedge, in_u = fixed_rank_over_Q(g)
    assert rep.rank == in_u
    # the generators span C(g,3) + g(g-1) dimensions upstairs; the relations
    # a_i ^ Omega = 0 cut g of them in the quotient
    assert in_wedge == comb(g, 3) + g * (g - 1)
    assert in_u == comb(g, 3) + g * (g - 2)
    assert rep.generator_count == comb(g, 3) + g * (g - 1)


def test_fixed_sublattice_in_a_moved_basis(ctx3):
    X = psi_pq(ctx3, 1, 2) @ transvection(ctx3, ctx3.B(3))
    rep = fixed_sublattice_check(ctx3, X)
    assert rep.equal
    assert rep.rank == fixed_sublattice_check(ctx3).rank
    with pytest.raises(DimensionError):
        fixed_sublattice_check(ctx3, SpElement.identity(SymplecticContext(4)))


def test_uvector_json_and_section_guard(ctx3):
    us = u_space(ctx3)
    theta = us.class_of(wedge3(ctx3.A(1), ctx3.A(2), ctx3.B(3)))
    assert UVector.from_json(theta.to_json()) == theta
    assert us.class_of(us.lift(theta)) == theta
    other = UVector(3, theta.coords, "0" * 16)
    with pytest.raises(DimensionError):
        us.lift(other)
    with pytest.raises(DimensionError):
        UVector(3, (1, 2), us.fingerprint)
    with pytest.raises(DimensionError):
        us.class_of((0,) * 5)
