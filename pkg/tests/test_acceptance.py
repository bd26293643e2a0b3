"""Acceptance suite: one ``acceptance`` marker per criterion.

The terminal summary (see ``conftest.py``) prints one PASS/FAIL line per
criterion.  Tolerances and reference values are pinned below; statistical
targets are compared against the published means for the random study.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from cauchy_radius import (
    MatrixPoly,
    MultiplierKind,
    NormKind,
    Relation,
    ScalarPoly,
    Side,
    Strategy,
    apply_multiplier,
    apply_scalar_multiplier,
    matrix_cauchy_radius,
    matrix_multiplier,
    monicize,
    refine_matrix,
    refine_scalar,
    scalar_cauchy_radius,
    scalar_multiplier,
    select_multiplier,
    spectral_max_modulus,
)
from cauchy_radius.bench import ExperimentConfig, run_experiment
from cauchy_radius.matrix import gap_profile as matrix_gap
from cauchy_radius.matrix import leading_zero_count as matrix_lzc
from cauchy_radius.scalar import gap_profile as scalar_gap
from cauchy_radius.structure import admissible_kinds, factor_degree, guaranteed_leading_zeros

from conftest import NILPOTENT

# ---- pinned tolerances -------------------------------------------------------
MONOTONE_TOL = 1e-10          # rho[q] <= rho[p] * (1 + tol)
ORACLE_TOL = 1e-8             # max |eigenvalue| <= radius * (1 + tol)
GOLDEN_TOL = 1e-10            # relative, analytic cases
STRICT_TRIGGER = 1e-8         # rho[q] >= rho[p] * (1 - tol) counts as "no improvement"
STRICT_ROOT_TOL = 1e-6        # a root within tol * rho of the circle |z| = rho

# ---- published means for the random study (n=20, m=25, 1-norm, left) ---------
STUDY = dict(n=20, m=25, samples=200, levels=5, seed=7, norm=NormKind.INDUCED_1, side=Side.LEFT)
K1_L1 = dict(level0=8.442, sel1=2.003, rs1=2.880, sel5=1.194)
LEVEL0 = {(3, 5): 1.991, (5, 3): 1.482}
LEVEL0_TOL = 0.20
LEVEL_TOL = 0.15
STUDY_CASES = [(1, 1), (3, 5), (5, 3), (5, 5)]

SCALAR_COUNT = 10_000
MATRIX_COUNT = 500
AUDIT_COUNT = 100
STRICT_COUNT = 1_000

Q1, Q2, Q3, RS = MultiplierKind.Q1, MultiplierKind.Q2, MultiplierKind.Q3, MultiplierKind.RS
PHI = (1 + math.sqrt(5)) / 2


def within(value: float, target: float, rel: float) -> bool:
    return abs(value - target) <= rel * target


def uniform_complex(rng, shape):
    return rng.uniform(-10, 10, shape) + 1j * rng.uniform(-10, 10, shape)


def oracle_scalar(p: ScalarPoly) -> float:
    return spectral_max_modulus(MatrixPoly.from_scalar(p.coeffs))


# ---- random study -------------------------------------------------------------

@pytest.fixture(scope="session")
def study():
    cache = {}

    def get(k: int, ell: int):
        if (k, ell) not in cache:
            cache[(k, ell)] = run_experiment(ExperimentConfig(k=k, ell=ell, **STUDY))
        return cache[(k, ell)]

    return get


@pytest.mark.slow
@pytest.mark.acceptance(1, "random study k=l=1: level-0, level-1 and level-5 means")
class TestRandomStudyK1:
    def test_level0_mean(self, study):
        r = study(1, 1)
        assert r.skipped == []
        assert within(r.mean(0), K1_L1["level0"], LEVEL0_TOL), r.mean(0)

    def test_level1_selected_mean(self, study):
        assert within(study(1, 1).mean(1, Strategy.SELECTED), K1_L1["sel1"], LEVEL_TOL)

    def test_level1_rs_mean(self, study):
        assert within(study(1, 1).mean(1, Strategy.RS), K1_L1["rs1"], LEVEL_TOL)

    def test_level5_selected_mean(self, study):
        r = study(1, 1)
        assert within(r.mean(5, Strategy.SELECTED), K1_L1["sel5"], LEVEL_TOL)
        assert r.mean(5, Strategy.SELECTED) <= r.mean(1, Strategy.SELECTED)


@pytest.mark.slow
@pytest.mark.acceptance(2, "random study gap cases: level-0 means, selected <= rs at level 1")
class TestRandomStudyGaps:
    @pytest.mark.parametrize("case", sorted(LEVEL0))
    def test_level0_mean(self, study, case):
        assert within(study(*case).mean(0), LEVEL0[case], LEVEL0_TOL), study(*case).mean(0)

    @pytest.mark.parametrize("case", STUDY_CASES)
    def test_selected_beats_rs_at_level1(self, study, case):
        r = study(*case)
        assert r.mean(1, Strategy.SELECTED) <= r.mean(1, Strategy.RS)


# ---- scalar property suite ----------------------------------------------------

def random_scalar_case(rng) -> ScalarPoly:
    n = int(rng.integers(3, 31))
    a = uniform_complex(rng, n + 1)
    mode = rng.integers(3)
    if mode == 1:
        a[:-1][rng.random(n) < rng.uniform(0.1, 0.7)] = 0
    elif mode == 2:
        # explicit gap pattern below the lead
        k = int(rng.integers(1, n + 1))
        a[n - k + 1: n] = 0
        if k < n:
            ell = int(rng.integers(1, n - k + 1))
            a[n - k - ell + 1: n - k] = 0
    if not np.any(a[:-1]):
        a[0] = 1
    return ScalarPoly(a)


@pytest.mark.slow
@pytest.mark.acceptance(3, "scalar property suite: monotone for every kind, oracle-sound ladder")
def test_scalar_property_suite():
    rng = np.random.default_rng(1003)
    failures = []
    for i in range(SCALAR_COUNT):
        p = random_scalar_case(rng)
        r0 = scalar_cauchy_radius(p)
        for kind in admissible_kinds(scalar_gap(p)):
            r = scalar_cauchy_radius(apply_scalar_multiplier(p, kind))
            if r > r0 * (1 + MONOTONE_TOL):
                failures.append((i, kind.value, r0, r))
        lam = oracle_scalar(p)
        for strategy in Strategy:
            trace = refine_scalar(p, 5, strategy)
            if not trace.is_monotone(MONOTONE_TOL):
                failures.append((i, strategy.value, "not monotone", trace.radii))
            if any(lam > r * (1 + ORACLE_TOL) for r in trace.radii):
                failures.append((i, strategy.value, lam, trace.radii))
    assert not failures, failures[:5]


# ---- matrix property suite ----------------------------------------------------

@pytest.mark.slow
@pytest.mark.acceptance(4, "matrix property suite: both norms and sides, monotone and oracle-sound")
def test_matrix_property_suite():
    rng = np.random.default_rng(1004)
    failures = []
    for i in range(MATRIX_COUNT):
        n, m = int(rng.integers(2, 9)), int(rng.integers(1, 11))
        a = uniform_complex(rng, (n + 1, m, m))
        a[:-1][rng.random(n) < rng.uniform(0.0, 0.6)] = 0
        if not np.any(a[:-1]):
            a[0] = uniform_complex(rng, (m, m))
        p = monicize(MatrixPoly(a))
        lam = spectral_max_modulus(p)
        gap = matrix_gap(p)
        for norm in NormKind:
            r0 = matrix_cauchy_radius(p, norm)
            for side in Side:
                for kind in admissible_kinds(gap):
                    r = matrix_cauchy_radius(apply_multiplier(p, matrix_multiplier(p, kind, side)), norm)
                    if r > r0 * (1 + MONOTONE_TOL):
                        failures.append((i, norm.value, side.value, kind.value, r0, r))
                trace = refine_matrix(p, 5, norm, side)
                if not trace.is_monotone(MONOTONE_TOL):
                    failures.append((i, norm.value, side.value, "not monotone", trace.radii))
                if any(lam > r * (1 + ORACLE_TOL) for r in trace.radii):
                    failures.append((i, norm.value, side.value, lam, trace.radii))
    assert not failures, failures[:5]


# ---- structural audit ---------------------------------------------------------

def schoolbook(f: np.ndarray, p: np.ndarray, side: Side) -> np.ndarray:
    out = np.zeros((len(f) + len(p) - 1,) + p.shape[1:], dtype=complex)
    for i, fi in enumerate(f):
        for j, pj in enumerate(p):
            out[i + j] += fi @ pj if side is Side.LEFT else pj @ fi
    return out


def lzc_raw(coeffs: np.ndarray) -> int:
    nonnull = [bool(np.any(c)) for c in coeffs]
    count = 0
    for flag in reversed(nonnull[:-1]):
        if flag:
            break
        count += 1
    return count


def constructed_poly(rng, relation: Relation) -> MatrixPoly:
    """Monic, small-integer coefficients so every product is exact in floating point."""
    k = int(rng.integers(1, 5))
    if relation is Relation.ELL_LT_K:
        k = max(k, 2)
        ell = int(rng.integers(1, k))
    elif relation is Relation.ELL_GT_K:
        ell = int(rng.integers(k + 1, k + 5))
    else:
        ell = k
    n = k + ell + int(rng.integers(0, 4))
    m = int(rng.integers(1, 5))
    a = rng.integers(-3, 4, (n + 1, m, m)).astype(complex)
    a[n] = np.eye(m)
    a[n - k + 1: n] = 0
    a[n - k - ell + 1: n - k] = 0
    for j in (n - k, n - k - ell):
        while not np.any(a[j]):
            a[j] = rng.integers(-3, 4, (m, m))
    p = MatrixPoly(a)
    g = matrix_gap(p)
    assert (g.k, g.ell, g.relation) == (k, ell, relation)
    return p


@pytest.mark.acceptance(5, "structural audit: product degrees exact, leading zeros >= guaranteed count")
@pytest.mark.parametrize("relation", [Relation.ELL_LT_K, Relation.ELL_GT_K, Relation.ELL_EQ_K])
def test_structural_audit(relation):
    # guaranteed counts for (kind, relation), written out independently of the library
    expected_zeros = {
        (Q1, Relation.ELL_LT_K): lambda k, l: k + l,
        (Q1, Relation.ELL_GT_K): lambda k, l: 2 * k - 1,
        (Q1, Relation.ELL_EQ_K): lambda k, l: 2 * k - 1,
        (Q2, Relation.ELL_LT_K): lambda k, l: k + l - 1,
        (Q2, Relation.ELL_GT_K): lambda k, l: 2 * k,
        (Q2, Relation.ELL_EQ_K): lambda k, l: 2 * k - 1,
        (Q3, Relation.ELL_EQ_K): lambda k, l: 2 * k,
    }
    expected_degree = {Q1: lambda n, k, l: n + k + l, Q2: lambda n, k, l: n + 2 * k,
                       Q3: lambda n, k, l: n + 2 * k}
    rng = np.random.default_rng(1005 + list(Relation).index(relation))
    failures = []
    for i in range(AUDIT_COUNT):
        p = constructed_poly(rng, relation)
        g = matrix_gap(p)
        n, k, ell = p.degree, g.k, g.ell
        for kind in (Q1, Q2, Q3):
            if (kind, relation) not in expected_zeros:
                continue
            need = expected_zeros[(kind, relation)](k, ell)
            assert guaranteed_leading_zeros(g, kind) == need
            for side in Side:
                choice = matrix_multiplier(p, kind, side)
                raw = schoolbook(choice.factor.coeffs, p.coeffs, side)
                q = apply_multiplier(p, choice)
                deg = expected_degree[kind](n, k, ell)
                if q.degree != deg or len(raw) - 1 != deg or factor_degree(g, kind) + n != deg:
                    failures.append((i, kind.value, side.value, "degree", q.degree, deg))
                if lzc_raw(raw) < need or matrix_lzc(q) < need:
                    failures.append((i, kind.value, side.value, "zeros", lzc_raw(raw), need))
    assert not failures, failures[:5]


# ---- analytic golden cases ------------------------------------------------------

@pytest.mark.acceptance(6, "analytic golden cases")
class TestGoldenCases:
    def test_golden_ratio(self):
        assert scalar_cauchy_radius(ScalarPoly([-1, -1, 1])) == pytest.approx(PHI, rel=GOLDEN_TOL)

    def test_cubic_without_strict_improvement(self):
        p = ScalarPoly([-4, -2, 0, 1])
        assert scalar_cauchy_radius(p) == pytest.approx(2.0, rel=GOLDEN_TOL)
        assert select_multiplier(p) is Q1
        q = apply_scalar_multiplier(p, Q1)
        assert scalar_cauchy_radius(q) == pytest.approx(2.0, rel=GOLDEN_TOL)
        assert p(2.0) == 0

    def test_unit_radius_product(self):
        p = ScalarPoly([1, 1, 1])
        assert scalar_multiplier(p, Q3) == ScalarPoly([0, -1, 1])
        q = apply_scalar_multiplier(p, Q3)
        assert scalar_cauchy_radius(q) == pytest.approx(1.0, rel=GOLDEN_TOL)
        assert oracle_scalar(q) == pytest.approx(1.0, rel=GOLDEN_TOL)

    def test_nilpotent_quadratic_radius(self, nilpotent_quadratic):
        assert matrix_cauchy_radius(nilpotent_quadratic) == pytest.approx(2.0, rel=GOLDEN_TOL)

    def test_nilpotent_quadratic_refined_radius(self, nilpotent_quadratic):
        # expected value as stated in the criterion; see the decisions ledger
        refined = refine_matrix(nilpotent_quadratic, 1).radii[1]
        assert refined == pytest.approx(math.sqrt(2.0), rel=GOLDEN_TOL)

    def test_nilpotent_quadratic_oracle(self, nilpotent_quadratic):
        assert spectral_max_modulus(nilpotent_quadratic) == pytest.approx(math.sqrt(2.0), rel=GOLDEN_TOL)


# ---- strictness contrapositive ------------------------------------------------

def circle_root_poly(rng, n: int) -> ScalarPoly:
    """All coefficients nonzero, phases aligned so that rho[p] e^{i delta} is a root."""
    mags = rng.uniform(0.1, 10, n + 1)
    delta, phi_n = rng.uniform(0, 2 * np.pi, 2)
    j = np.arange(n + 1)
    phases = (n - j) * delta + phi_n - np.pi
    phases[n] = phi_n
    return ScalarPoly(mags * np.exp(1j * phases))


def contrapositive_failure(p: ScalarPoly):
    rho = scalar_cauchy_radius(p)
    q = apply_scalar_multiplier(p, select_multiplier(p))
    if scalar_cauchy_radius(q) < rho * (1 - STRICT_TRIGGER):
        return None, False
    roots = np.roots(p.coeffs[::-1])
    gap = float(np.min(np.abs(np.abs(roots) - rho)))
    return (None if gap <= STRICT_ROOT_TOL * rho else gap), True


@pytest.mark.slow
@pytest.mark.acceptance(7, "strictness: no improvement only with a root on the radius circle")
class TestStrictness:
    def test_random_all_nonzero(self):
        rng = np.random.default_rng(1007)
        failures = []
        for i in range(STRICT_COUNT):
            n = int(rng.integers(2, 21))
            p = ScalarPoly(uniform_complex(rng, n + 1))
            assert np.all(p.coeffs != 0)
            bad, _ = contrapositive_failure(p)
            if bad is not None:
                failures.append((i, bad))
        assert not failures, failures[:5]

    def test_constructed_circle_roots(self):
        # random instances almost never trigger the hypothesis; these always do
        rng = np.random.default_rng(2007)
        triggered = 0
        for _ in range(200):
            p = circle_root_poly(rng, int(rng.integers(2, 21)))
            bad, hit = contrapositive_failure(p)
            assert bad is None
            triggered += hit
        assert triggered == 200


# ---- second experiment --------------------------------------------------------

@pytest.mark.acceptance(8, "structural-dynamics experiment not reproduced; covered by 1-7")
def test_external_data_experiment_is_documented():
    from pathlib import Path

    readme = (Path(__file__).resolve().parents[1] / "README.md").read_text()
    assert "Not reproduced" in readme
