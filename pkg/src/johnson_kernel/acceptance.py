"""
Exit criteria for the package, runnable from the CLI (``selftest``) and pytest.

Every check is exact integer equality. Random inputs come from fixed seeds so
a run is reproducible. Each criterion also carries a wall-time budget.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from math import comb

from .linalg import IntMatrix, det, elementary_divisors, snf
from .pairing import verify_prop22
from .seifert import (
    SeifertForm,
    SeparatingTwistSpec,
    base_seifert,
    delta_spec,
    epsilon_spec,
    lambda_pq_table,
    morita_lambda,
    seifert_pq,
)
from .splittings import (
    apply,
    default_generators,
    enumerate_coset_reps,
    same_left_coset,
    standard_splitting,
)
from .symplectic import HVector, SpElement, SymplecticContext, psi_pq, symplectic_form
from .wedge import fixed_sublattice_check, omega_embedding, u_space
from .witness import WitnessProblem, find_generic_x, verify_generic


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    @property
    def within_budget(self):
        return self.seconds < self.budget

    def line(self):
        status = "PASS" if self.passed and self.within_budget else "FAIL"
        return (
            f"[{status}] criterion {self.number}: {self.title} -- {self.detail} "
            f"({self.seconds:.2f}s / {self.budget:g}s)"
        )

    def to_json(self):
        return {
            "criterion": self.number,
            "title": self.title,
            "pass": self.passed and self.within_budget,
            "detail": self.detail,
        }


# -- independent oracles -------------------------------------------------------


def cofactor_det(rows):
    """Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * a * cofactor_det(minor)
    return total


def permutes_handles(M: IntMatrix) -> bool:
    """Membership in SL(2,Z)^g x| S_g read straight off the block pattern.

    Each handle's two columns must be supported on a single 2x2 row block,
    and distinct handles must land in distinct blocks.
    """
    g = M.rows // 2
    targets = []
    for i in range(g):
        blocks = {
            r // 2 for c in (2 * i, 2 * i + 1) for r in range(M.rows) if M[r, c]
        }
        if len(blocks) != 1:
            return False
        targets.append(blocks.pop())
    return len(set(targets)) == g


def random_word(rng, generators, max_len):
    """Product of up to ``max_len`` generators or their inverses."""
    pool = list(generators) + [h.inverse() for h in generators]
    X = None
    for _ in range(rng.randint(1, max_len)):
        h = rng.choice(pool)
        X = h if X is None else X @ h
    return X


def random_sp2h(rng, h, length=8):
    """Random element of Sp(2h, Z) as a product of elementary transvections."""
    J = symplectic_form(h)
    n = 2 * h
    M = IntMatrix.identity(n)
    for _ in range(length):
        a = [0] * n
        k = rng.randrange(n)
        a[k] = 1
        if h > 1 and rng.random() < 0.5:
            a[rng.randrange(n)] += 1
        if not any(a):
            continue
        Ja = J @ a
        sign = rng.choice((1, -1))
        T = IntMatrix([[int(i == j) + sign * a[i] * Ja[j] for j in range(n)] for i in range(n)])
        M = M @ T
    return M


def rebase(spec: SeparatingTwistSpec, Y: IntMatrix) -> SeparatingTwistSpec:
    """Same summand, new symplectic basis: columns (a_1, b_1, ...) times Y."""
    F = IntMatrix.from_columns([v.coords for pair in spec.pairs for v in pair])
    G = F @ Y
    cols = [HVector(spec.g, G.col(k)) for k in range(G.cols)]
    return SeparatingTwistSpec(spec.g, tuple(zip(cols[0::2], cols[1::2])))


# -- criteria --------------------------------------------------------------------


def criterion_prop22():
    reports = [verify_prop22(SymplecticContext(g)) for g in range(3, 13)]
    bad = [r.g for r in reports if not r.passed]
    ok = not bad
    detail = "pairing and det C match for g=3..12" if ok else f"mismatch at g={bad}"
    return ok, detail


def criterion_lambda_tables():
    checked = 0
    bad = []
    for g in range(3, 13):
        ctx = SymplecticContext(g)
        for p, q in itertools.combinations(range(1, g + 1), 2):
            t = lambda_pq_table(ctx, p, q)
            want_delta = tuple(int(i in (p, q)) for i in range(1, g + 1))
            want_eps = tuple(int(p <= i < q) for i in range(2, g - 1))
            checked += 1
            if t.delta != want_delta or t.epsilon != want_eps:
                bad.append((g, p, q))
    ok = not bad
    return ok, f"{checked} tables checked" + ("" if ok else f", mismatches {bad[:5]}")


def criterion_fixed_sublattice():
    parts = []
    ok = True
    for g in (3, 4, 5):
        rep = fixed_sublattice_check(SymplecticContext(g))
        want = comb(g, 3) + g * (g - 1)
        good = rep.equal and rep.rank == want
        ok &= good
        parts.append(f"g={g}: equal={rep.equal} rank={rep.rank} (expected {want})")
    return ok, "; ".join(parts)


def criterion_seifert_invariant(trials=1000, max_len=20, seed=4):
    rng = random.Random(seed)
    ctxs = {g: SymplecticContext(g) for g in (3, 4, 5)}
    gens = {g: default_generators(c) for g, c in ctxs.items()}
    ok = all(
        base_seifert(c).matrix.T - base_seifert(c).matrix == c.J for c in ctxs.values()
    )
    for _ in range(trials):
        g = rng.choice((3, 4, 5))
        pool = gens[g] + [h.inverse() for h in gens[g]]
        L = base_seifert(ctxs[g]).matrix
        for _ in range(rng.randint(1, max_len)):
            X = rng.choice(pool).matrix
            L = X.T @ L @ X
            if L.T - L != ctxs[g].J:
                ok = False
        SeifertForm(L)
    return ok, f"base forms plus {trials} pullback chains (length <= {max_len})"


def criterion_basis_invariance(trials=200, seed=5):
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        g = rng.choice((3, 4, 5))
        ctx = SymplecticContext(g)
        specs = [delta_spec(ctx, i) for i in range(1, g + 1)]
        specs += [epsilon_spec(ctx, i) for i in range(2, g - 1)]
        spec = rng.choice(specs)
        if rng.random() < 0.5:
            p, q = sorted(rng.sample(range(1, g + 1), 2))
            L = seifert_pq(ctx, p, q)
        else:
            X = random_word(rng, default_generators(ctx), 10)
            L = SeifertForm(X.matrix.T @ base_seifert(ctx).matrix @ X.matrix)
        Y = random_sp2h(rng, spec.subgenus)
        if morita_lambda(L, rebase(spec, Y)) != morita_lambda(L, spec):
            bad += 1
    return bad == 0, f"{trials} rebasings, {bad} changed the value"


def criterion_coset_separation(count=25):
    ctx = SymplecticContext(3)
    reps = enumerate_coset_reps(ctx, count)
    ok = len(reps) == count and reps[0] == SpElement.identity(ctx)
    clashes = 0
    for X, Y in itertools.combinations(reps, 2):
        Z = X.inverse() @ Y
        if same_left_coset(X, Y) or permutes_handles(Z.matrix):
            clashes += 1
    ok &= clashes == 0
    return ok, f"{len(reps)} representatives, {clashes} coinciding pairs"


def criterion_witness():
    ctx = SymplecticContext(3)
    W0 = standard_splitting(ctx)
    P = WitnessProblem(
        (W0,) + tuple(apply(psi_pq(ctx, p, q), W0) for p, q in ((1, 2), (1, 3), (2, 3)))
    )
    res = find_generic_x(P)
    ok = verify_generic(res.x, P)
    for comp_row, dec_row in zip(res.components, res.decomposition):
        for c, (n, a) in zip(comp_row, dec_row):
            ok &= n >= 1 and n * a == c
    return ok, f"x = {list(res.x.coords)}"


def criterion_linalg_oracles(det_trials=500, snf_trials=200, seed=8):
    rng = random.Random(seed)
    det_bad = 0
    for _ in range(det_trials):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        if det(IntMatrix(rows)) != cofactor_det(rows):
            det_bad += 1
    snf_bad = 0
    for _ in range(snf_trials):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        A = IntMatrix([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
        D, S, T = snf(A)
        d = [D[i, i] for i in range(min(r, c))]
        off_diag = any(D[i, j] for i in range(r) for j in range(c) if i != j)
        chain = all(
            (d[i + 1] % d[i] == 0) if d[i] else d[i + 1] == 0 for i in range(len(d) - 1)
        )
        if (
            S @ A @ T != D
            or abs(cofactor_det(S.tolist())) != 1
            or abs(cofactor_det(T.tolist())) != 1
            or off_diag
            or not chain
            or any(x < 0 for x in d)
        ):
            snf_bad += 1
    ok = det_bad == 0 and snf_bad == 0
    return ok, f"det mismatches {det_bad}/{det_trials}, SNF failures {snf_bad}/{snf_trials}"


def criterion_split_embedding():
    parts = []
    ok = True
    for g in range(3, 9):
        ctx = SymplecticContext(g)
        divs = elementary_divisors(omega_embedding(ctx))
        r = u_space(ctx).rank
        good = divs == (1,) * (2 * g) and r == comb(2 * g, 3) - 2 * g
        ok &= good
        parts.append(f"g={g}: r={r}")
    return ok, ", ".join(parts)


CRITERIA = [
    (1, "pairing of the product class with the abelian cycle", criterion_prop22, 5.0),
    (2, "lambda_{p,q} tables on delta and epsilon twists", criterion_lambda_tables, 10.0),
    (3, "fixed sublattice of U under the T_{a_i}", criterion_fixed_sublattice, 30.0),
    (4, "Seifert relation L^T - L = J under pullback", criterion_seifert_invariant, 10.0),
    (5, "basis invariance of the twist formula", criterion_basis_invariance, 10.0),
    (6, "left-coset separation at g=3", criterion_coset_separation, 30.0),
    (7, "generic class for four splittings", criterion_witness, 10.0),
    (8, "determinant and Smith form oracles", criterion_linalg_oracles, 10.0),
    (9, "x -> x ^ Omega is a split embedding", criterion_split_embedding, 20.0),
]


def run_criterion(number) -> CriterionResult:
    for num, title, fn, budget in CRITERIA:
        if num == number:
            t0 = time.perf_counter()
            passed, detail = fn()
            return CriterionResult(num, title, bool(passed), detail, time.perf_counter() - t0, budget)
    raise KeyError(number)


def run_all():
    return [run_criterion(num) for num, *_ in CRITERIA]
