from math import comb

import pytest
import sympy

from johnson_kernel.errors import DimensionError, InvalidInputError
from johnson_kernel.linalg import IntMatrix
from johnson_kernel.pairing import (
    AbelianCycleSpec,
    CocycleRef,
    a0_twists,
    abelian_pairing,
    pairing_matrix,
    phi_cocycles,
    verify_prop22,
)
from johnson_kernel.seifert import SeparatingTwistSpec, delta_spec, epsilon_spec
from johnson_kernel.symplectic import SymplecticContext


def displayed_matrix(g):
    """C written down from the closed-form lambda values, no Seifert forms involved."""
    refs = [(1, q) for q in range(2, g + 1)] + [(p, p + 1) for p in range(2, g)]
    rows = []
    for p, q in refs:
        row = [int(i in (p, q)) for i in range(1, g + 1)]
        row += [int(p <= i < q) for i in range(2, g - 1)]
        rows.append(row)
    return rows


def test_g3_matrix(ctx3):
    C = pairing_matrix(ctx3, phi_cocycles(ctx3), a0_twists(ctx3))
    assert C == IntMatrix([[1, 1, 0], [1, 0, 1], [0, 1, 1]])
    assert abelian_pairing(C) == 2


@pytest.mark.parametrize("g", range(3, 13))
def test_matrix_and_pairing_against_oracle(g):
    ctx = SymplecticContext(g)
    cocycles = phi_cocycles(ctx)
    twists = a0_twists(ctx)
    assert len(cocycles) == len(twists) == 2 * g - 3
    C = pairing_matrix(ctx, cocycles, twists)
    rows = displayed_matrix(g)
    assert C.tolist() == rows
    d = int(sympy.Matrix(rows).det())
    assert d == -(2 ** (g - 2))
    rep = verify_prop22(ctx)
    assert rep.det_c == d
    assert rep.pairing == (-1) ** (comb(2 * g - 3, 2) % 2) * d == (-1) ** (g - 1) * 2 ** (g - 2)
    assert rep.passed


def test_pairing_small_cases():
    assert abelian_pairing(IntMatrix([[5]])) == 5
    assert abelian_pairing(IntMatrix([[1, 2], [3, 4]])) == 2
    with pytest.raises(DimensionError):
        abelian_pairing(IntMatrix([[1, 2]]))


def test_swapping_twists_flips_the_sign(ctx3):
    twists = a0_twists(ctx3)
    swapped = AbelianCycleSpec((twists.twists[1], twists.twists[0], twists.twists[2]))
    C = pairing_matrix(ctx3, phi_cocycles(ctx3), twists)
    D = pairing_matrix(ctx3, phi_cocycles(ctx3), swapped)
    assert abelian_pairing(D) == -abelian_pairing(C)


def test_cocycle_ref():
    assert str(CocycleRef(1, 3)) == "lambda_1,3"
    for p, q in ((2, 2), (3, 1), (0, 1)):
        with pytest.raises(InvalidInputError):
            CocycleRef(p, q)


def test_pairing_matrix_errors(ctx3):
    with pytest.raises(InvalidInputError):
        pairing_matrix(ctx3, [CocycleRef(1, 2)], a0_twists(ctx3))
    with pytest.raises(InvalidInputError):
        pairing_matrix(ctx3, [CocycleRef(1, 4)] * 3, a0_twists(ctx3))
    with pytest.raises(DimensionError):
        pairing_matrix(SymplecticContext(4), phi_cocycles(ctx3), a0_twists(ctx3))


def test_nested_sides_are_compatible():
    ctx = SymplecticContext(5)
    AbelianCycleSpec((delta_spec(ctx, 1), epsilon_spec(ctx, 2), epsilon_spec(ctx, 3)))
    AbelianCycleSpec((delta_spec(ctx, 5), epsilon_spec(ctx, 3)))


def test_crossing_twists_are_rejected(ctx3):
    A, B = ctx3.A, ctx3.B
    crossing = SeparatingTwistSpec(3, ((A(1) + A(2), B(1)),))
    with pytest.raises(InvalidInputError):
        AbelianCycleSpec((delta_spec(ctx3, 1), crossing))
    with pytest.raises(InvalidInputError):
        AbelianCycleSpec(())
    with pytest.raises(DimensionError):
        AbelianCycleSpec((delta_spec(ctx3, 1), delta_spec(SymplecticContext(4), 1)))


def test_report_json(ctx3):
    assert verify_prop22(ctx3).to_json() == {
        "g": 3,
        "detC": -2,
        "pairing": 2,
        "expected": 2,
        "pass": True,
    }
    with pytest.raises(InvalidInputError):
        verify_prop22(SymplecticContext(2))
