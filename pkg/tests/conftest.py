import random

import pytest

from johnson_kernel.splittings import default_generators
from johnson_kernel.symplectic import SymplecticContext


@pytest.fixture(params=[2, 3, 4])
def ctx(request):
    return SymplecticContext(request.param)


@pytest.fixture
def ctx3():
    return SymplecticContext(3)


def random_word(rng, ctx, max_len=8):
    gens = default_generators(ctx)
    pool = gens + [h.inverse() for h in gens]
    X = rng.choice(pool)
    for _ in range(rng.randint(0, max_len - 1)):
        X = X @ rng.choice(pool)
    return X


@pytest.fixture
def rng():
    return random.Random(20240611)
