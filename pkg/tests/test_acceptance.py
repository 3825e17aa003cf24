"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
Desk scale: shapes (1,1), (2,1), (1,2), (2,2), weight entries <= 4, r <= 2,
N, M <= 2. All comparisons are bit-exact rational equality.
"""

import json
import time
from fractions import Fraction
from itertools import product

import pytest

from gtyangian.drinfeld import (
    drinfeld_data,
    drinfeld_of_tensor,
    highest_weight_series,
    strong_noncrossing,
    theta_to_skew,
)
from gtyangian.errors import PoleHitError
from gtyangian.exact import Poly, RatFunc, mat_mul, rank
from gtyangian.glmod import build_module, smat_to_dense, verify_superalgebra
from gtyangian.patterns import SuperShape, enumerate_patterns, is_covariant
from gtyangian.spectra import (
    build_xi,
    chi,
    eta_vector,
    gt_spectrum,
    is_simple,
    leftmost_factor,
    raise_xi,
    xi_plan,
    zeta,
    zeta_product,
)
from gtyangian.yangian import (
    berezinian_direct_point,
    berezinian_factors,
    coefficient_matrices,
    d_series,
    evaluation_action,
    gt_series,
    skew_action,
    tensor_action,
    verify_defining_relations,
    verify_gt_lemmas,
)

SUITE_START = time.monotonic()
DESK_SHAPES = [SuperShape(1, 1), SuperShape(2, 1), SuperShape(1, 2), SuperShape(2, 2)]
U = Poly.x()


def report(criterion: int, ok: bool, detail: str = ""):
    print(f"ACCEPTANCE {criterion:>2}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {criterion} failed: {detail}"


def covariant_weights(shape, total_max):
    out = []
    for entries in product(range(total_max + 1), repeat=shape.size):
        if sum(entries) <= total_max and is_covariant(shape, entries):
            out.append(entries)
    return out


@pytest.fixture(scope="module")
def test_modules():
    """The evaluation, tensor, and skew modules exercised by criteria 3/5/6."""
    e1 = evaluation_action(build_module(SuperShape(1, 1), (1, 0)), 0)
    e1h = evaluation_action(build_module(SuperShape(1, 1), (1, 0)), Fraction(1, 2))
    e2 = evaluation_action(build_module(SuperShape(2, 1), (1, 0, 0)), Fraction(1, 2))
    e3 = evaluation_action(build_module(SuperShape(1, 2), (2, 1, 0)), 0)
    e4 = evaluation_action(build_module(SuperShape(2, 2), (1, 1, 0, 0)), Fraction(1, 3))
    t1 = tensor_action([e1, e1h])
    s1 = skew_action(SuperShape(1, 1), (2, 1, 0), (1,), 0)
    s2 = skew_action(SuperShape(2, 1), (2, 1, 1, 0), (1,), Fraction(1, 2))
    t2 = tensor_action(
        [
            skew_action(SuperShape(1, 1), (3, 1, 0), (1,), 0),
            skew_action(SuperShape(1, 1), (3, 1, 0), (1,), Fraction(1, 2)),
        ]
    )
    return {
        "eval(1|1)": e1,
        "eval(2|1)": e2,
        "eval(1|2)": e3,
        "eval(2|2)": e4,
        "tensor(1|1)x2": t1,
        "skew(1|1)r1": s1,
        "skew(2|1)r1": s2,
        "skew-tensor(1|1)": t2,
    }


def test_c01_superalgebra_relations():
    start = time.monotonic()
    checked = 0
    for shape in DESK_SHAPES:
        for weight in covariant_weights(shape, 3):
            mod = build_module(shape, weight)
            violations = verify_superalgebra(mod)
            assert violations == [], (shape, weight, violations[:3])
            checked += 1
    elapsed = time.monotonic() - start
    report(1, elapsed < 60, f"{checked} modules, all relations hold, {elapsed:.1f}s")


def test_c02_dimension_oracle():
    from test_patterns import brute_force_patterns

    total = 0
    for shape in DESK_SHAPES:
        for weight in covariant_weights(shape, 3):
            pats = enumerate_patterns(shape, weight)
            oracle = brute_force_patterns(shape, weight)
            assert [p.rows for p in pats] == oracle, (shape, weight)
            total += 1
        natural = (1,) + (0,) * (shape.size - 1)
        assert len(enumerate_patterns(shape, natural)) == shape.size
    for a in range(1, 5):
        for b in range(0, 5):
            if is_covariant(SuperShape(1, 1), (a, b)):
                assert len(enumerate_patterns(SuperShape(1, 1), (a, b))) == 2
    assert len(enumerate_patterns(SuperShape(1, 1), (0, 0))) == 1
    report(2, True, f"{total} weights vs brute force, natural dims, gl(1|1) rule")


def test_c03_defining_relations(test_modules):
    for name, ym in test_modules.items():
        violations = verify_defining_relations(ym)
        assert violations == [], (name, violations[:3])
    report(3, True, f"(def-rel) empty on 3 point pairs for {len(test_modules)} modules")


def test_c04_zeta_chi_spectra():
    # the named [DERIVED] oracle: gl(1|1) natural d_2 eigenvalues
    from gtyangian.exact import rf_str

    ym = evaluation_action(build_module(SuperShape(1, 1), (1, 0)), 0)
    d2 = d_series(ym, 2)
    assert sorted([rf_str(d2.get(0, 0)), rf_str(d2.get(1, 1))]) == sorted(
        ["(u^2)/(u+1)", "u"]
    )
    skews = [
        (SuperShape(1, 1), (2, 1, 0), (1,), Fraction(0)),
        (SuperShape(1, 1), (2, 1, 0), (1,), Fraction(1, 2)),
        (SuperShape(1, 1), (3, 1, 1), (1,), Fraction(0)),
        (SuperShape(2, 1), (2, 1, 1, 0), (1,), Fraction(1, 2)),
        (SuperShape(1, 2), (2, 1, 1, 0), (1,), Fraction(0)),
        (SuperShape(1, 1), (1, 1, 1, 0), (1, 1), Fraction(0)),
    ]
    count = 0
    for shape, lam, mu, h in skews:
        ym = skew_action(shape, lam, mu, h)
        r = len(mu)
        pats = ym.factors[0].patterns
        Bs, _ = berezinian_factors(ym)
        for k in range(1, shape.size + 1):
            dk = d_series(ym, k)
            bk = Bs[k - 1]
            for a, pat in enumerate(pats):
                assert dk.get(a, a) == zeta(pat, k, r, h), (shape, lam, k, pat)
                assert bk.get(a, a) == chi(pat, k, r, h), (shape, lam, k, pat)
            # single skew factors act diagonally: no off-diagonal entries
            assert all(a == b for (a, b) in bk.entries)
            count += 1
    report(4, True, f"d_k and B_k spectra equal zeta/chi on {count} (module, k) pairs")


def test_c05_berezinian(test_modules):
    for name, ym in test_modules.items():
        Bs, B = berezinian_factors(ym)
        # SeriesOperator identity: the factorized B equals the permutation-sum
        # Berezinian; two rational matrices of bounded degree are equal iff
        # they agree on more points than the degree bound
        den_deg = B.master_denominator().degree
        num_deg = max((v.num.degree for v in B.entries.values()), default=0)
        needed = den_deg + num_deg + 2
        points = []
        candidate = 2
        while len(points) < max(needed, 3):
            try:
                direct = berezinian_direct_point(ym, candidate)
                if B.eval(candidate) != direct:
                    report(5, False, f"{name}: factorization fails at u={candidate}")
                points.append(candidate)
            except Exception:
                pass
            candidate += 1
        # centrality at three of the sampled points, against every generator
        gens = coefficient_matrices(ym)
        for u0 in points[:3]:
            Bu = B.eval(u0)
            for g in gens:
                gd = smat_to_dense(g, ym.dim, ym.dim)
                assert mat_mul(Bu, gd) == mat_mul(gd, Bu), (name, u0)
    report(5, True, f"Berezinian factorization + centrality on {len(test_modules)} modules")


def test_c06_gt_lemmas(test_modules):
    for name, ym in test_modules.items():
        violations = verify_gt_lemmas(ym)
        assert violations == [], (name, violations[:3])
    report(6, True, f"Lemma identities (xy, exchange, commuting) on {len(test_modules)} modules")


def test_c07_section4_suite(test_modules):
    start = time.monotonic()
    W = test_modules["skew-tensor(1|1)"]
    fs = W.factors
    assert [f.h for f in fs] == [Fraction(0), Fraction(1, 2)]
    # (i) simultaneous eigenbasis with prod |S| eigenvectors, distinct tuples
    rep = gt_spectrum(W)
    sizes = [len(f.patterns) for f in fs]
    assert rep.tame and rep.simple_spectrum
    assert len(rep.eigen) == sizes[0] * sizes[1] == W.dim == 16
    # (ii) build_xi reproduces each eigenvalue exactly (Theorem on d_k xi)
    series = gt_series(W)
    vectors = []
    for p in fs[0].patterns:
        for q in fs[1].patterns:
            vec = build_xi(W, [p, q])
            assert any(vec), "valid multi-pattern must give a nonzero vector"
            vectors.append(vec)
            for k in (1, 2):
                expected = zeta_product(fs, [p, q], k)
                dk = series[("d", k)]
                image = {}
                for (a, b), v in dk.entries.items():
                    if vec[b]:
                        image[a] = image.get(a, RatFunc(Poly())) + v * vec[b]
                for a in range(W.dim):
                    got = image.get(a, RatFunc(Poly()))
                    assert got == expected * RatFunc(Poly.constant(vec[a]))
    assert rank(vectors) == W.dim  # GT-type basis spans
    # (iii) vanishing for an invalid pattern
    from gtyangian.patterns import GTPattern

    bad = GTPattern(SuperShape(2, 1), ((1,), (0, 0), (2, 1, 0)))
    assert not bad.is_valid()
    assert not any(build_xi(W, [bad, fs[1].patterns[0]]))
    # (iv) raising roundtrip with c != 0 on the non-degenerate plans
    clean = 0
    for p in fs[0].patterns:
        for q in fs[1].patterns:
            if not xi_plan(fs, [p, q]):
                continue
            w, L = leftmost_factor(W, [p, q])
            xi = build_xi(W, [p, q])
            try:
                raised = raise_xi(W, xi, w, L)
            except PoleHitError:
                continue
            eta = eta_vector(W, [p, q])
            nz = next(i for i, x in enumerate(eta) if x)
            c = raised[nz] / eta[nz]
            assert c != 0 and raised == [c * x for x in eta]
            clean += 1
    assert clean >= 10
    # (v) simplicity
    ok, _ = is_simple(W)
    assert ok
    elapsed = time.monotonic() - start
    report(7, elapsed < 300, f"eigenbasis/xi/raise({clean} clean)/simple in {elapsed:.1f}s")


def test_c08_noncrossing_equivalence():
    shape = SuperShape(1, 1)
    weights = [w for w in product(range(5), repeat=2) if is_covariant(shape, w)]
    assert len(weights) == 21
    results = {}
    for a in weights:
        for b in weights:
            V = tensor_action(
                [
                    evaluation_action(build_module(shape, a), 0),
                    evaluation_action(build_module(shape, b), 0),
                ]
            )
            s = strong_noncrossing(shape, [a, b], 0)
            rep = gt_spectrum(V)
            assert s == rep.tame, (a, b)
            results[(a, b)] = s
    assert results[((3, 1), (1, 0))] is True
    assert results[((1, 0), (1, 0))] is False
    trues = sum(1 for v in results.values() if v)
    falses = sum(1 for v in results.values() if not v)
    # spot-check bigger shapes with small entries and desk-size dims
    extra = 0
    for shape2 in (SuperShape(2, 1), SuperShape(1, 2)):
        ws = [w for w in covariant_weights(shape2, 2) if any(w)]
        for a in ws:
            for b in ws:
                mods = [
                    evaluation_action(build_module(shape2, x), 0) for x in (a, b)
                ]
                if mods[0].dim * mods[1].dim > 12:
                    continue
                V = tensor_action(mods)
                assert strong_noncrossing(shape2, [a, b], 0) == gt_spectrum(V).tame, (
                    shape2,
                    a,
                    b,
                )
                extra += 1
    report(8, True, f"441 gl(1|1) pairs ({trues} tame, {falses} not) + {extra} larger-shape pairs")


def test_c09_drinfeld_consistency():
    from gtyangian.yangian import flip_twist, twist_omega_f

    cases = [
        (SuperShape(1, 1), [(1, 0)], Fraction(0)),
        (SuperShape(1, 1), [(3, 1), (1, 0)], Fraction(0)),
        (SuperShape(1, 1), [(2, 1), (2, 0)], Fraction(1, 3)),
        (SuperShape(2, 1), [(2, 1, 0)], Fraction(0)),
        (SuperShape(2, 1), [(2, 1, 1), (1, 1, 0)], Fraction(1, 2)),
        (SuperShape(1, 2), [(2, 1, 0)], Fraction(0)),
        (SuperShape(2, 2), [(2, 1, 1, 0)], Fraction(1, 2)),
    ]
    for shape, theta, h in cases:
        mods = [evaluation_action(build_module(shape, lam), h) for lam in theta]
        W = tensor_action(mods) if len(mods) > 1 else mods[0]
        via = drinfeld_data(highest_weight_series(W), shape.m, shape.n)
        assert via == drinfeld_of_tensor(shape, theta, h), (shape, theta)
        f = RatFunc(U + 3, U + 1)
        tw = twist_omega_f(W, f)
        assert drinfeld_data(highest_weight_series(tw), shape.m, shape.n) == via
    # flip law: P~_i(u) = P_{m+n-i}(u-1) on even flipped indices; odd flipped
    # indices carry the opposite shift forced by the ratio functional equation
    flips = [
        (SuperShape(1, 2), [(2, 1, 0)], Fraction(0)),
        (SuperShape(1, 2), [(2, 2, 1)], Fraction(1, 3)),
        (SuperShape(2, 1), [(2, 1, 1)], Fraction(0)),
    ]
    for shape, theta, h in flips:
        W = tensor_action(
            [evaluation_action(build_module(shape, lam), h) for lam in theta]
        ) if len(theta) > 1 else evaluation_action(build_module(shape, theta[0]), h)
        dd = drinfeld_data(highest_weight_series(W), shape.m, shape.n)
        dd_f = drinfeld_data(highest_weight_series(flip_twist(W)), shape.n, shape.m)
        P, P_f = dict(dd.P), dict(dd_f.P)
        assert set(P_f) == {shape.size - k for k in P}
        for i in P_f:
            shift = 1 if i <= shape.n else -1
            assert P_f[i] == tuple(sorted(r + shift for r in P[shape.size - i])), (
                shape,
                theta,
                i,
            )
    report(9, True, f"two-route equality, omega_f invariance, flip law on {len(cases)}+{len(flips)} cases")


def test_c10_theta_to_skew_correspondence():
    instances = [
        (SuperShape(1, 1), [(3, 1), (1, 0)], Fraction(0)),
        (SuperShape(2, 1), [(4, 4, 1), (1, 0, 0)], Fraction(0)),
    ]
    for shape, theta, h in instances:
        plan = theta_to_skew(shape, theta, h)
        factors = [skew_action(shape, plan.lam, plan.mu, h)]
        for tail in plan.tails:
            factors.append(evaluation_action(build_module(shape, tail), h))
        M = tensor_action(factors) if len(factors) > 1 else factors[0]
        left = drinfeld_of_tensor(shape, theta, h)
        right = drinfeld_data(highest_weight_series(M), shape.m, shape.n)
        assert left == right, (shape, theta, plan)
    report(10, True, "skew-plan Drinfeld data equals the tensor's on both instances")


def test_c11_determinism_and_runtime(capsys):
    from gtyangian.cli import main

    argv = [
        "spectrum", "--m", "1", "--n", "1", "--weight", "1|0", "--weight", "1|0",
        "--shift", "0", "--shift", "1/2",
    ]
    assert main(list(argv)) == 0
    out1 = capsys.readouterr().out
    assert main(list(argv)) == 0
    out2 = capsys.readouterr().out
    assert out1 == out2 and out1.endswith("\n")
    json.loads(out1)
    elapsed = time.monotonic() - SUITE_START
    with capsys.disabled():
        report(11, elapsed < 540, f"byte-identical JSON; acceptance wall time {elapsed:.1f}s")
