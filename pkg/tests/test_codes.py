import random

import pytest

from skewrank.codes import (
    additive_twisted_lrs,
    adjoint_closed_form,
    adjoint_code,
    apply_isometry,
    codeword_iter,
    dual_closed_form,
    dual_code,
    encode,
    generator_csv,
    generator_matrix,
    is_msrd,
    lrs,
    max_blocks,
    mds_tower,
    min_distance,
    same_code,
    subspace_code,
    singleton_bound,
    tz_code,
    tz_mds,
    twisted_lrs,
    weight_distribution,
)
from skewrank.errors import (
    BadDimensionError,
    EnumerationBudgetExceededError,
    EtaConditionViolatedError,
    GammaConditionViolatedError,
    InexactDistanceError,
    LambdaNotCyclicGroupError,
    LambdaNotSquaresError,
    MessageFieldViolationError,
    NonUnitMultiplierError,
    OddExtensionDegreeError,
)
from skewrank.gf import build_tower
from skewrank.sumrank import QuotientElem, adjoint, make_context, weight


@pytest.fixture(scope="module")
def t52():
    return build_tower(5, 1, 2)


@pytest.fixture(scope="module")
def t32e():
    return build_tower(3, 1, 2, intermediate=2)


def first_eta(t, ctx, k):
    grp = t.subgroup_generated(ctx.lambdas).elements
    for a in range(1, t.order):
        v = t.norm(a)
        if (k * t.n) % 2:
            v = t.K.neg(v)
        if v not in grp:
            return a
    raise AssertionError("no admissible η")


def nonsquare_norm(t):
    sq = t.squares().elements
    return next(a for a in range(1, t.order) if t.norm(a) not in sq)


def test_lrs_parameters(t52):
    ctx = make_context(t52, [1, 2, 3])
    for k in (1, 2, 3):
        C = lrs(ctx, k)
        assert C.dim == k and C.field_name() == "L"
        r = min_distance(C)
        assert r.exact and r.d == ctx.N - k + 1 and r.verdict == "MSRD"
    with pytest.raises(BadDimensionError):
        lrs(ctx, 0)


def test_twisted_condition_and_linearity(t52):
    ctx = make_context(t52, [1, 4])
    with pytest.raises(EtaConditionViolatedError):
        twisted_lrs(ctx, 2, 1, 0)
    eta = first_eta(t52, ctx, 2)
    C = twisted_lrs(ctx, 2, eta, 1)
    assert C.field_name() == "K"  # θ^1 fixes only K
    assert twisted_lrs(ctx, 2, eta, 0).field_name() == "L"
    assert is_msrd(C, min_distance(C))


def test_encoding_and_message_fields(t32e):
    ctx = make_context(t32e, [1])
    g = nonsquare_norm(t32e)
    C = tz_code(ctx, 1, g)
    assert C.linearity == t32e.field_degree("E")
    F = encode(C, [1, 2])
    assert F.coeffs == (1, t32e.mul(g, 2))
    with pytest.raises(MessageFieldViolationError):
        encode(C, [3, 0])  # 3 is the generator of F_9, not in E = F_3


def test_tz_validation(t32e):
    ctx = make_context(t32e, [1])
    with pytest.raises(GammaConditionViolatedError):
        tz_code(ctx, 1, 1)
    with pytest.raises(LambdaNotSquaresError):
        tz_code(make_context(t32e, [2]), 1, nonsquare_norm(t32e))
    with pytest.raises(OddExtensionDegreeError):
        tz_code(make_context(build_tower(3, 1, 3), [1]), 1, 2)


def test_tz_mds_family():
    t = mds_tower(3)
    sq = sorted(t.squares().elements)
    g = next(a for a in range(1, t.order) if a not in t.squares().elements)
    for k in (1, 2, 3):
        C = tz_mds(3, k, g, sq, tower=t)
        r = min_distance(C)
        assert (C.ctx.ell, C.size, r.d) == (4, 9**k, 5 - k)


def test_additive_counterexample_to_sign_only_condition():
    t = build_tower(3, 1, 2)
    ctx = make_context(t, [1])
    # τ = identity: (-1)^k N(1) = -1 avoids ⟨Λ⟩, yet f0 (1 + X) has weight 1
    C = additive_twisted_lrs(ctx, 1, 1, 1, 0, check=False)
    assert min_distance(C).d == 1
    with pytest.raises(EtaConditionViolatedError):
        additive_twisted_lrs(ctx, 1, 1, 1, 0)


def test_additive_codes_are_msrd():
    t = build_tower(2, 2, 2)  # K = F_4, τ = Frobenius of F_2
    ctx = make_context(t, [1])
    found = 0
    for k in (1,):
        for h in range(4):
            for eta in range(1, t.order):
                try:
                    C = additive_twisted_lrs(ctx, k, eta, h, 1)
                except EtaConditionViolatedError:
                    continue
                found += 1
                r = min_distance(C)
                assert r.d == ctx.N - k + 1
    assert found


def test_closed_form_duals_match_bruteforce(t52, t32e):
    ctxg = make_context(t52, [1, 4])
    ctxn = make_context(t52, [4])  # not closed under products
    for ctx in (ctxg, ctxn):
        for k in range(1, ctx.N + 1):
            C = lrs(ctx, k)
            assert same_code(dual_code(C), dual_closed_form(C))
    for k in (1, 2, 3):
        eta = first_eta(t52, ctxg, k)
        for h in (0, 1):
            C = twisted_lrs(ctxg, k, eta, h)
            assert same_code(dual_code(C), dual_closed_form(C))
    with pytest.raises(LambdaNotCyclicGroupError):
        dual_closed_form(twisted_lrs(ctxn, 1, first_eta(t52, ctxn, 1), 0))
    ctx = make_context(t32e, [1])
    for g in range(1, t32e.order):
        if t32e.norm(g) not in t32e.squares().elements:
            C = tz_code(ctx, 1, g)
            assert same_code(dual_code(C), dual_closed_form(C))
    t = mds_tower(3)
    sq = sorted(t.squares().elements)
    g = next(a for a in range(1, t.order) if a not in t.squares().elements)
    for k in (1, 2, 3):
        C = tz_mds(3, k, g, sq, tower=t)
        assert same_code(dual_code(C), dual_closed_form(C))
        assert same_code(adjoint_code(C), adjoint_closed_form(C))


def test_closed_form_adjoints_match_bruteforce(t52, t32e):
    ctx = make_context(t52, [1, 4])
    for k in (1, 2, 3):
        C = lrs(ctx, k)
        assert same_code(adjoint_code(C), adjoint_closed_form(C))
        eta = first_eta(t52, ctx, k)
        for h in (0, 1):
            C = twisted_lrs(ctx, k, eta, h)
            assert same_code(adjoint_code(C), adjoint_closed_form(C))
    c3 = make_context(t32e, [1])
    C = tz_code(c3, 1, nonsquare_norm(t32e))
    assert same_code(adjoint_code(C), adjoint_closed_form(C))


def test_duals_of_msrd_codes_are_msrd(t52):
    ctx = make_context(t52, [1, 4])
    for k in (1, 2, 3):
        eta = first_eta(t52, ctx, k)
        for C in (lrs(ctx, k), twisted_lrs(ctx, k, eta, 1)):
            D = dual_code(C)
            assert is_msrd(D, min_distance(D, projective=True))


def test_isometry_preserves_weight_distribution(t52):
    ctx = make_context(t52, [1, 4])
    C = twisted_lrs(ctx, 2, first_eta(t52, ctx, 2), 1)
    base = weight_distribution(C)
    rng = random.Random(50)
    units = [ctx.monomial(1), ctx.elem([2]), ctx.elem([1, 1])]
    units = [u for u in units if weight(u) == ctx.N]
    for _ in range(3):
        left, right = rng.choice(units), rng.choice(units)
        img = apply_isometry(C, left, right, [1, 0], [rng.randrange(2), rng.randrange(2)])
        assert img.size == C.size
        assert weight_distribution(img) == base
    with pytest.raises(NonUnitMultiplierError):
        apply_isometry(C, ctx.zero(), ctx.one(), [0, 1], [0, 0])


def test_vectorised_weights_match_gcrd_weights(t52):
    ctx = make_context(t52, [1, 4, 2])
    rng = random.Random(51)
    polys = [ctx.elem([rng.randrange(25) for _ in range(ctx.N)]) for _ in range(3)]
    polys.append(ctx.elem([1, 0, 0, 0, 0, 1]))  # a low-weight element
    C = subspace_code(ctx, polys, 1)
    dist = weight_distribution(C)
    counts = {}
    for F in codeword_iter(C):
        w = weight(F)
        counts[w] = counts.get(w, 0) + 1
    assert dist == counts


def test_projective_and_full_enumeration_agree(t52):
    ctx = make_context(t52, [1, 2, 3])
    C = lrs(ctx, 2)
    a = min_distance(C)
    b = min_distance(C, projective=True)
    assert a.d == b.d and b.enumerated == (C.size - 1) // (C.scalar_order - 1)
    assert weight(b.witness) == b.d


def test_sampled_mode_bounds_and_budget(t52):
    ctx = make_context(t52, [1, 2, 3, 4])
    C = lrs(ctx, 4)
    r = min_distance(C, budget=500, seed=3)
    assert r.method == "sampled" and r.lower <= 5 <= r.upper
    again = min_distance(C, budget=500, seed=3)
    assert again.to_dict() == r.to_dict()
    with pytest.raises(EnumerationBudgetExceededError):
        min_distance(C, budget=500, strict=True)
    if not r.exact:
        with pytest.raises(InexactDistanceError):
            is_msrd(C, r)
    with pytest.raises(EnumerationBudgetExceededError):
        list(codeword_iter(C, budget=10))


def test_threaded_scan_matches(monkeypatch, t52):
    ctx = make_context(t52, [1, 2, 3])
    C = lrs(ctx, 3)
    ref = weight_distribution(C)
    monkeypatch.setenv("SKEWRANK_THREADS", "4")
    assert weight_distribution(C) == ref


def test_singleton_and_max_blocks(t52):
    ctx = make_context(t52, [1, 2])
    assert singleton_bound(lrs(ctx, 2)) == 3
    assert max_blocks("lrs", 5) == 4
    assert max_blocks("twisted", 5) == 2
    assert max_blocks("twisted", 7) == 3
    assert max_blocks("tz", 5) == 2
    assert max_blocks("tz", 4) == 0


def test_generator_export(t52):
    ctx = make_context(t52, [1, 4])
    C = lrs(ctx, 2)
    G = generator_matrix(C)
    assert len(G) == 2 and all(len(r) == ctx.N for r in G)
    csv = generator_csv(C).splitlines()
    assert [list(map(int, line.split(","))) for line in csv] == G


def test_adjoint_of_codeword_is_in_adjoint_code(t52):
    ctx = make_context(t52, [1, 4])
    C = lrs(ctx, 2)
    A = adjoint_code(C)
    F = QuotientElem(ctx, C.basis[1])
    assert same_code(A, A.right_multiply(ctx.one()))
    assert same_code(subspace_code(ctx, [adjoint(F)] + list(A.basis), A.linearity), A)
